/**
 * Typed client for the glyph scoring service.
 *
 * Every scoring fact the workbench shows comes from the service: levels
 * from POST /derive, averages and weights from POST /aggregate, rankings
 * from GET /compare. The client never recomputes any of them. GET
 * responses carry an X-Revision header; mutating requests send it back so
 * a concurrent edit fails with 409 instead of silently overwriting.
 */

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

/** A mutating request lost the race: the stored revision moved first. */
export class ConflictError extends ApiError {
  constructor(message: string) {
    super(409, message);
  }
}

export type AssessmentMode = "A" | "D" | "null";

export interface VariableEntry {
  variable: string;
  score: string;
  rationale?: string;
}

export interface Assessment {
  criterion: string;
  mode: AssessmentMode;
  weight: string;
  direct_score?: string;
  variable_entries?: VariableEntry[];
  inputs?: Record<string, unknown>;
}

export interface SheetDocument {
  schema_version: string;
  design: string;
  assessor: string;
  timestamp: string;
  assessments: Assessment[];
}

export interface DesignDocument {
  schema_version: string;
  id: string;
  name: string;
  [key: string]: unknown;
}

export interface ReportCriterionRow {
  criterion: string;
  weight: string;
  score: string | null;
  display: string | null;
}

export interface ReportDocument {
  schema_version: string;
  kind: string;
  design: string;
  assessors: string[];
  merge: string;
  criteria: ReportCriterionRow[];
  total_weight: string;
  weighted_average: string;
  weighted_average_display: string;
  weight_overrides: unknown[];
}

export interface RankingRow {
  rank: number;
  design: string;
  weighted_average: string;
  display: string;
  total_weight: string;
}

export interface SpreadRow {
  criterion: string;
  scores: Record<string, string | null>;
  spread: string | null;
}

export interface ComparisonDocument {
  schema_version: string;
  kind: string;
  ranking: RankingRow[];
  criteria: SpreadRow[];
}

export interface DeriveResult {
  criterion: string;
  level: number | null;
  notes?: string[];
  [detail: string]: unknown;
}

export interface KopRow {
  channel_kind: string;
  table_version: string;
  ratings: Record<string, string>;
}

export interface GeometryCell {
  index: number;
  scale: string;
  size_cm: string;
  width_px: number;
  height_px: number;
  x: number;
  y: number;
}

export interface GeometryManifest {
  schema_version: string;
  kind: string;
  shape: string;
  vf_deg: string;
  vd_cm: string;
  ppcm: string;
  base_cm: string;
  cells: GeometryCell[];
  calibration_square: { size_cm: string; size_px: number; x: number; y: number };
}

export interface ColorimetryCell {
  index: number;
  row: number;
  col: number;
  kappa_ctr: string;
  kappa_brt: string;
  x: number;
  y: number;
  width_px: number;
  height_px: number;
}

export interface ColorimetryManifest {
  schema_version: string;
  kind: string;
  cells: ColorimetryCell[];
  [key: string]: unknown;
}

export interface DegradationResponse<M> {
  manifest: M;
  png_base64: string;
}

export interface AggregateRequest {
  assessor?: string;
  merge?: "mean" | "consensus";
  scores?: Record<string, string>;
  note?: string;
}

export interface GeometryParams {
  vf?: string;
  vd?: string;
  ppcm?: string;
  shape?: string;
}

/** A document plus the revision and exact bytes the service returned. */
export interface Versioned<T> {
  doc: T;
  revision: string;
  text: string;
}

async function errorMessage(response: Response): Promise<string> {
  const raw = await response.text();
  try {
    const doc = JSON.parse(raw) as { error?: unknown };
    if (typeof doc.error === "string") return doc.error;
  } catch {
    // not a JSON error body; fall through to the raw text
  }
  return raw || `${response.status} ${response.statusText}`;
}

export class ServiceClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      const message = await errorMessage(response);
      if (response.status === 409) throw new ConflictError(message);
      throw new ApiError(response.status, message);
    }
    return response;
  }

  private async versioned<T>(response: Response): Promise<Versioned<T>> {
    const text = await response.text();
    return {
      doc: JSON.parse(text) as T,
      revision: response.headers.get("X-Revision") ?? "",
      text,
    };
  }

  async listDesigns(): Promise<string[]> {
    const response = await this.request("/designs");
    const doc = (await response.json()) as { designs: string[] };
    return doc.designs;
  }

  async getDesign(designId: string): Promise<Versioned<DesignDocument>> {
    return this.versioned(await this.request(`/designs/${encodeURIComponent(designId)}`));
  }

  async putDesign(
    doc: DesignDocument,
    assessor: string,
    expectedRevision?: string,
  ): Promise<Versioned<DesignDocument>> {
    const headers: Record<string, string> = {
      "Content-Type": "application/json",
      "X-Assessor": assessor,
    };
    if (expectedRevision) headers["X-Revision"] = expectedRevision;
    const response = await this.request(`/designs/${encodeURIComponent(doc.id)}`, {
      method: "PUT",
      headers,
      body: JSON.stringify(doc),
    });
    return this.versioned(response);
  }

  async listAssessors(designId: string): Promise<string[]> {
    const response = await this.request(`/sheets/${encodeURIComponent(designId)}`);
    const doc = (await response.json()) as { design: string; assessors: string[] };
    return doc.assessors;
  }

  async getSheet(designId: string, assessor: string): Promise<Versioned<SheetDocument>> {
    const path = `/sheets/${encodeURIComponent(designId)}/${encodeURIComponent(assessor)}`;
    return this.versioned(await this.request(path));
  }

  /** Saves a sheet; the document's own assessor signs the X-Assessor header. */
  async putSheet(doc: SheetDocument, expectedRevision?: string): Promise<Versioned<SheetDocument>> {
    const headers: Record<string, string> = {
      "Content-Type": "application/json",
      "X-Assessor": doc.assessor,
    };
    if (expectedRevision) headers["X-Revision"] = expectedRevision;
    const path = `/sheets/${encodeURIComponent(doc.design)}/${encodeURIComponent(doc.assessor)}`;
    const response = await this.request(path, {
      method: "PUT",
      headers,
      body: JSON.stringify(doc),
    });
    return this.versioned(response);
  }

  async aggregate(designId: string, body: AggregateRequest = {}): Promise<ReportDocument> {
    const response = await this.request(`/aggregate/${encodeURIComponent(designId)}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return (await response.json()) as ReportDocument;
  }

  async compare(designIds: string[], assessor?: string): Promise<ComparisonDocument> {
    const params = new URLSearchParams({ ids: designIds.join(",") });
    if (assessor) params.set("assessor", assessor);
    const response = await this.request(`/compare?${params.toString()}`);
    return (await response.json()) as ComparisonDocument;
  }

  async derive(criterion: string, inputs: Record<string, unknown>): Promise<DeriveResult> {
    const response = await this.request(`/derive/${encodeURIComponent(criterion)}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(inputs),
    });
    return (await response.json()) as DeriveResult;
  }

  async geometrySheet(
    png: BodyInit,
    params: GeometryParams = {},
  ): Promise<DegradationResponse<GeometryManifest>> {
    const search = new URLSearchParams(params as Record<string, string>);
    const query = search.toString();
    const path = query ? `/invariance/geometry?${query}` : "/invariance/geometry";
    const response = await this.request(path, {
      method: "POST",
      headers: { "Content-Type": "image/png" },
      body: png,
    });
    return (await response.json()) as DegradationResponse<GeometryManifest>;
  }

  async colorimetrySheet(png: BodyInit): Promise<DegradationResponse<ColorimetryManifest>> {
    const response = await this.request("/invariance/colorimetry", {
      method: "POST",
      headers: { "Content-Type": "image/png" },
      body: png,
    });
    return (await response.json()) as DegradationResponse<ColorimetryManifest>;
  }

  async kopRow(channelKind: string): Promise<KopRow> {
    const response = await this.request(`/kop/${encodeURIComponent(channelKind)}`);
    return (await response.json()) as KopRow;
  }
}
