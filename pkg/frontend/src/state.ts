/**
 * Workbench session state: one active design, one assessor, twelve
 * criterion slots. A slot stores exactly what the assessor entered (raw
 * derivation inputs, per-variable scores, or a direct level) plus the
 * level the service handed back. The displayed weighted average and total
 * weight always come from the last /aggregate response - this module has
 * no arithmetic of its own.
 */

import type {
  Assessment,
  ReportDocument,
  SheetDocument,
  VariableEntry,
} from "./api.js";
import { CRITERIA } from "./criteria.js";

export interface CriterionSlot {
  criterion: string;
  mode: "A" | "D" | "null";
  weight: string;
  directScore?: string;
  variableEntries?: VariableEntry[];
  inputs?: Record<string, unknown>;
  /** Validation message from the service, shown inline under the form. */
  error?: string;
}

function emptySlot(criterion: string, weight: string): CriterionSlot {
  return { criterion, mode: "null", weight };
}

export class WorkbenchState {
  designId: string;
  assessor: string;
  timestamp: string;
  slots: Map<string, CriterionSlot>;
  /** Revision of the sheet as last read or written; guards PUTs. */
  sheetRevision?: string;
  /** Last /aggregate response; the only source of the header numbers. */
  report: ReportDocument | null = null;
  /** Conflict banner text; set when a save hits a 409. */
  conflict: string | null = null;
  /** Unsaved edits exist; a save must land before the next aggregate. */
  dirty = false;
  comparisonSelection: string[] = [];

  constructor(designId: string, assessor: string, timestamp: string) {
    this.designId = designId;
    this.assessor = assessor;
    this.timestamp = timestamp;
    this.slots = new Map(CRITERIA.map((c) => [c.id, emptySlot(c.id, c.weight)]));
  }

  slot(criterion: string): CriterionSlot {
    const slot = this.slots.get(criterion);
    if (!slot) throw new Error(`unknown criterion ${criterion}`);
    return slot;
  }

  /** Store a whole-glyph level, optionally with the inputs that led to it. */
  setDirect(criterion: string, score: string, inputs?: Record<string, unknown>): void {
    const slot = this.slot(criterion);
    slot.mode = "D";
    slot.directScore = score;
    slot.variableEntries = undefined;
    slot.inputs = inputs;
    slot.error = undefined;
    this.dirty = true;
  }

  /** Store per-variable scores (aggregated criterion). */
  setVariables(criterion: string, entries: VariableEntry[]): void {
    const slot = this.slot(criterion);
    slot.mode = "A";
    slot.variableEntries = entries.map((e) => ({ ...e }));
    slot.directScore = undefined;
    slot.inputs = undefined;
    slot.error = undefined;
    this.dirty = true;
  }

  /** Mark the criterion not applicable; its weight drops out of the total. */
  setNotApplicable(criterion: string): void {
    const slot = this.slot(criterion);
    slot.mode = "null";
    slot.directScore = undefined;
    slot.variableEntries = undefined;
    slot.inputs = undefined;
    slot.error = undefined;
    this.dirty = true;
  }

  /**
   * Record a derivation the service performed: raw inputs and the level it
   * returned, side by side. A null level marks the criterion not applicable
   * while still keeping the inputs for audit.
   */
  setDerived(criterion: string, inputs: Record<string, unknown>, level: number | null): void {
    const slot = this.slot(criterion);
    if (level === null) {
      slot.mode = "null";
      slot.directScore = undefined;
    } else {
      slot.mode = "D";
      slot.directScore = String(level);
    }
    slot.variableEntries = undefined;
    slot.inputs = inputs;
    slot.error = undefined;
    this.dirty = true;
  }

  setError(criterion: string, message: string): void {
    this.slot(criterion).error = message;
  }

  /** Replace all slots from a stored sheet (reload after a conflict). */
  loadSheet(doc: SheetDocument, revision: string): void {
    this.designId = doc.design;
    this.assessor = doc.assessor;
    this.timestamp = doc.timestamp;
    for (const assessment of doc.assessments) {
      const slot = this.slot(assessment.criterion);
      slot.mode = assessment.mode;
      slot.weight = assessment.weight;
      slot.directScore = assessment.direct_score;
      slot.variableEntries = assessment.variable_entries?.map((e) => ({ ...e }));
      slot.inputs = assessment.inputs;
      slot.error = undefined;
    }
    this.sheetRevision = revision;
    this.conflict = null;
    this.dirty = false;
  }

  /** Sheet document with all twelve criteria in canonical order. */
  buildSheet(): SheetDocument {
    const assessments: Assessment[] = [];
    for (const info of CRITERIA) {
      const slot = this.slot(info.id);
      const assessment: Assessment = {
        criterion: slot.criterion,
        mode: slot.mode,
        weight: slot.weight,
      };
      if (slot.directScore !== undefined) assessment.direct_score = slot.directScore;
      if (slot.variableEntries !== undefined) {
        assessment.variable_entries = slot.variableEntries.map((e) => {
          const entry: VariableEntry = { variable: e.variable, score: e.score };
          if (e.rationale) entry.rationale = e.rationale;
          return entry;
        });
      }
      if (slot.inputs !== undefined) assessment.inputs = slot.inputs;
      assessments.push(assessment);
    }
    return {
      schema_version: "1",
      design: this.designId,
      assessor: this.assessor,
      timestamp: this.timestamp,
      assessments,
    };
  }
}
