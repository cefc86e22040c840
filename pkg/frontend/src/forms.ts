/**
 * Guided entry forms, one per criterion.
 *
 * A form collects the raw observation record for its criterion and the
 * workbench posts it to /derive/{criterion}; the service answers with the
 * level. Forms never map observations to levels themselves. Validation
 * messages from the service render inline under the form.
 */

import type { DeriveResult, KopRow, ServiceClient } from "./api.js";
import {
  COLORIMETRY_MAGNITUDES,
  DOMAIN_CONVENTIONS,
  GEOMETRY_SCALES,
  KOPS,
  LEARNING_MODES,
  METAPHOR_QUALITIES,
  REPEATED_EFFORTS,
  SEVERITIES,
  criterionLabel,
} from "./criteria.js";

export interface ChoiceField {
  kind: "choice";
  name: string;
  label: string;
  options: { value: string; label: string }[];
}

export interface IntField {
  kind: "int";
  name: string;
  label: string;
}

export interface NumberField {
  kind: "number";
  name: string;
  label: string;
  hint?: string;
}

/** Yes/no judgement per ladder step (scale factors, kappa magnitudes). */
export interface ToggleMapField {
  kind: "toggles";
  name: string;
  label: string;
  keys: string[];
}

export type Field = ChoiceField | IntField | NumberField | ToggleMapField;

export interface FormSpec {
  criterion: string;
  /** Plain fields; criteria with bespoke widgets list none here. */
  fields: Field[];
  /** Bespoke widget: box grid, severity pickers, channel walk, viewer embed. */
  widget?: "box_grid" | "severities" | "typedness" | "geometry_viewer" | "colorimetry_viewer";
}

export const FORM_SPECS: Record<string, FormSpec> = {
  typedness: { criterion: "typedness", fields: [], widget: "typedness" },
  discernability: {
    criterion: "discernability",
    fields: [
      { kind: "int", name: "pairs_easy", label: "pairs easy to tell apart" },
      { kind: "int", name: "pairs_differentiable", label: "pairs differentiable with effort" },
      { kind: "int", name: "pairs_not", label: "pairs not differentiable" },
    ],
  },
  intuitiveness: {
    criterion: "intuitiveness",
    fields: [
      { kind: "choice", name: "domain_convention", label: "domain convention", options: DOMAIN_CONVENTIONS },
      { kind: "choice", name: "metaphor", label: "applied metaphor", options: METAPHOR_QUALITIES },
    ],
  },
  invariance_geometry: {
    criterion: "invariance_geometry",
    fields: [
      { kind: "toggles", name: "invariant_at", label: "readable at scale", keys: GEOMETRY_SCALES },
    ],
    widget: "geometry_viewer",
  },
  invariance_colorimetry: {
    criterion: "invariance_colorimetry",
    fields: [
      {
        kind: "toggles",
        name: "invariant_at",
        label: "readable at contrast/brightness shift",
        keys: COLORIMETRY_MAGNITUDES,
      },
    ],
    widget: "colorimetry_viewer",
  },
  composition_separability: { criterion: "composition_separability", fields: [], widget: "severities" },
  composition_comparability: {
    criterion: "composition_comparability",
    fields: [
      { kind: "int", name: "major", label: "major obstacles" },
      { kind: "int", name: "medium", label: "medium obstacles" },
      { kind: "int", name: "minor", label: "minor obstacles" },
      { kind: "int", name: "pair_count", label: "comparable pairs" },
    ],
  },
  attention_importance: { criterion: "attention_importance", fields: [], widget: "box_grid" },
  attention_balance: {
    criterion: "attention_balance",
    fields: [{ kind: "int", name: "weak_count", label: "important variables on weak channels" }],
  },
  searchability: {
    criterion: "searchability",
    fields: [
      { kind: "int", name: "high", label: "variables needing high search effort" },
      { kind: "int", name: "medium", label: "variables needing medium effort" },
      { kind: "int", name: "low", label: "variables found at a glance" },
    ],
  },
  learnability: {
    criterion: "learnability",
    fields: [
      { kind: "number", name: "learning_time_hours", label: "learning time (hours)", hint: "fractions welcome, e.g. 1/2" },
      { kind: "choice", name: "learning_mode", label: "how readers learn it", options: LEARNING_MODES },
      { kind: "choice", name: "repeated_effort", label: "repeated reading effort", options: REPEATED_EFFORTS },
    ],
  },
  memorability: {
    criterion: "memorability",
    fields: [
      { kind: "number", name: "pct_1h", label: "% recalled after one hour" },
      { kind: "number", name: "pct_24h", label: "% recalled after a day" },
    ],
  },
};

// --- input record builders -----------------------------------------------

/** k x k importance grid -> the boxes record /derive expects. */
export function boxGridInputs(counts: number[][]): Record<string, unknown> {
  return { boxes: counts.map((row) => [...row]) };
}

/** 2x2 shorthand: diagonal-heavy grids are the common hand-filled case. */
export function boxShorthandInputs(n11: number, n12: number, n21: number, n22: number): Record<string, unknown> {
  const boxes: Record<string, number> = {};
  if (n11) boxes.n11 = n11;
  if (n12) boxes.n12 = n12;
  if (n21) boxes.n21 = n21;
  if (n22) boxes.n22 = n22;
  return { boxes };
}

/** Per-channel severity picks -> separability inputs with estimate readout. */
export function severityInputs(channelSeverities: string[], method: "exact" | "estimate" = "exact"): Record<string, unknown> {
  return { channel_scores: [...channelSeverities], method };
}

export interface TypednessChannel {
  kind: string;
  overrides?: Record<string, string>;
}

/** One variable's channel walk -> typedness inputs. */
export function typednessInputs(dataType: string, channels: TypednessChannel[]): Record<string, unknown> {
  return {
    data_type: dataType,
    channels: channels.map((c) => {
      const item: Record<string, unknown> = { kind: c.kind };
      if (c.overrides && Object.keys(c.overrides).length) item.overrides = { ...c.overrides };
      return item;
    }),
  };
}

/** Ladder toggles -> the invariant_at record for either invariance criterion. */
export function toggleInputs(keys: string[], judged: Record<string, boolean>): Record<string, unknown> {
  const invariant_at: Record<string, boolean> = {};
  for (const key of keys) invariant_at[key] = Boolean(judged[key]);
  return { invariant_at };
}

// --- rendering -------------------------------------------------------------

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function renderField(criterion: string, field: Field, values: Record<string, unknown>): string {
  const id = `${criterion}-${field.name}`;
  if (field.kind === "choice") {
    const options = field.options
      .map((o) => {
        const selected = values[field.name] === o.value ? " selected" : "";
        return `<option value="${escapeHtml(o.value)}"${selected}>${escapeHtml(o.label)}</option>`;
      })
      .join("");
    return `
      <label for="${id}">${escapeHtml(field.label)}</label>
      <select id="${id}" name="${field.name}">${options}</select>`;
  }
  if (field.kind === "toggles") {
    const judged = (values[field.name] ?? {}) as Record<string, boolean>;
    const boxes = field.keys
      .map((key) => {
        const checked = judged[key] ? " checked" : "";
        return `
        <label class="toggle">
          <input type="checkbox" name="${field.name}" value="${escapeHtml(key)}"${checked}>
          ${escapeHtml(key)}
        </label>`;
      })
      .join("");
    return `<fieldset><legend>${escapeHtml(field.label)}</legend>${boxes}</fieldset>`;
  }
  const value = values[field.name];
  const rendered = value === undefined || value === null ? "" : escapeHtml(String(value));
  const inputMode = field.kind === "int" ? ` inputmode="numeric"` : "";
  const hint = field.kind === "number" && field.hint ? `<small>${escapeHtml(field.hint)}</small>` : "";
  return `
      <label for="${id}">${escapeHtml(field.label)}</label>
      <input id="${id}" name="${field.name}" value="${rendered}"${inputMode}>${hint}`;
}

export function renderBoxGrid(k: number, counts: number[][]): string {
  let rows = "";
  for (let i = 0; i < k; i++) {
    let cells = "";
    for (let j = 0; j < k; j++) {
      const count = counts[i]?.[j] ?? 0;
      const diagonal = i === j ? ` class="diagonal"` : "";
      cells += `<td${diagonal}><input name="box-${i}-${j}" value="${count}" inputmode="numeric"></td>`;
    }
    rows += `<tr><th>rank ${i + 1}</th>${cells}</tr>`;
  }
  const header = Array.from({ length: k }, (_, j) => `<th>salience ${j + 1}</th>`).join("");
  return `
    <table class="box-grid">
      <thead><tr><th>importance</th>${header}</tr></thead>
      <tbody>${rows}</tbody>
    </table>`;
}

export function renderSeverityPickers(channelSeverities: string[]): string {
  const rows = channelSeverities
    .map((severity, index) => {
      const options = SEVERITIES.map((s) => {
        const selected = s.value === severity ? " selected" : "";
        return `<option value="${s.value}"${selected}>${s.label}</option>`;
      }).join("");
      return `
      <div class="severity-row">
        <span>channel ${index + 1} worst interference</span>
        <select name="severity-${index}">${options}</select>
      </div>`;
    })
    .join("");
  return `<div class="severity-pickers">${rows}</div>`;
}

/** Estimate readout shown next to the separability pickers after a derive. */
export function renderSeparabilityReadout(result: DeriveResult): string {
  const max = escapeHtml(String(result["max_int"] ?? ""));
  const avg = escapeHtml(String(result["avg_int"] ?? ""));
  const method = escapeHtml(String(result["method"] ?? ""));
  return `
    <dl class="separability-readout">
      <dt>method</dt><dd>${method}</dd>
      <dt>worst pairwise interference</dt><dd>${max}</dd>
      <dt>average interference</dt><dd>${avg}</dd>
    </dl>`;
}

/** Knowledge-base prefill: the stored ratings row for one channel kind. */
export function renderKopPrefill(row: KopRow): string {
  const cells = KOPS.map((kop) => {
    const rating = row.ratings[kop] ?? "";
    return `<td data-kop="${kop}">${escapeHtml(rating)}</td>`;
  }).join("");
  return `
    <table class="kop-prefill" data-channel="${escapeHtml(row.channel_kind)}">
      <thead><tr>${KOPS.map((k) => `<th>${k}</th>`).join("")}</tr></thead>
      <tbody><tr>${cells}</tr></tbody>
    </table>`;
}

/** Fetch prefills for a variable's channel walk; one row per channel kind. */
export async function kopPrefills(client: ServiceClient, kinds: string[]): Promise<KopRow[]> {
  const rows: KopRow[] = [];
  for (const kind of kinds) rows.push(await client.kopRow(kind));
  return rows;
}

export function renderForm(
  criterion: string,
  values: Record<string, unknown>,
  options: { error?: string; level?: string; extra?: string } = {},
): string {
  const spec = FORM_SPECS[criterion];
  if (!spec) throw new Error(`unknown criterion ${criterion}`);
  const fields = spec.fields.map((f) => renderField(criterion, f, values)).join("\n");
  const badge = options.level !== undefined
    ? `<span class="level-badge" data-level="${escapeHtml(options.level)}">${escapeHtml(options.level)}</span>`
    : "";
  const error = options.error
    ? `<p class="form-error">${escapeHtml(options.error)}</p>`
    : "";
  return `
  <form class="criterion-form" data-criterion="${criterion}">
    <h3>${escapeHtml(criterionLabel(criterion))} ${badge}</h3>
    ${fields}
    ${options.extra ?? ""}
    ${error}
    <button type="submit">Derive level</button>
    <button type="button" data-action="not-applicable">Not applicable</button>
  </form>`;
}
