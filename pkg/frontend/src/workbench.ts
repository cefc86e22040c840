/**
 * Workbench controller: the traffic rules between the forms and the service.
 *
 * Two invariants hold everywhere:
 *  - the header average and total weight are copied verbatim from the last
 *    POST /aggregate response, never computed here;
 *  - unsaved edits are PUT to the sheet store before any aggregate runs,
 *    so the service only ever averages scores it has stored.
 *
 * A PUT that loses a race surfaces as a conflict banner with a reload
 * action; nothing is retried silently.
 */

import { ApiError, ConflictError } from "./api.js";
import type { ReportDocument, ServiceClient } from "./api.js";
import { escapeHtml } from "./forms.js";
import type { WorkbenchState } from "./state.js";

export class WorkbenchController {
  readonly client: ServiceClient;
  readonly state: WorkbenchState;

  constructor(client: ServiceClient, state: WorkbenchState) {
    this.client = client;
    this.state = state;
  }

  /**
   * Post one criterion's inputs to /derive and store inputs plus level in
   * the slot. Service validation problems land in the slot's inline error
   * and leave the previous entry untouched.
   */
  async deriveCriterion(
    criterion: string,
    inputs: Record<string, unknown>,
  ): Promise<number | null | undefined> {
    try {
      const result = await this.client.derive(criterion, inputs);
      this.state.setDerived(criterion, inputs, result.level);
      return result.level;
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.state.setError(criterion, err.message);
        return undefined;
      }
      throw err;
    }
  }

  /** PUT the sheet under its current revision. False means a 409 banner. */
  async save(): Promise<boolean> {
    const doc = this.state.buildSheet();
    try {
      const stored = await this.client.putSheet(doc, this.state.sheetRevision);
      this.state.sheetRevision = stored.revision;
      this.state.dirty = false;
      this.state.conflict = null;
      return true;
    } catch (err) {
      if (err instanceof ConflictError) {
        this.state.conflict = err.message;
        return false;
      }
      throw err;
    }
  }

  /**
   * Refresh the header from POST /aggregate. Dirty state is saved first;
   * if that save conflicts, the stale header stays and the banner shows.
   */
  async refreshAggregate(): Promise<ReportDocument | null> {
    if (this.state.dirty) {
      const saved = await this.save();
      if (!saved) return null;
    }
    const report = await this.client.aggregate(this.state.designId, {
      assessor: this.state.assessor,
    });
    this.state.report = report;
    return report;
  }

  /** Replace local state with the stored sheet; clears any conflict banner. */
  async reloadSheet(): Promise<void> {
    const stored = await this.client.getSheet(this.state.designId, this.state.assessor);
    this.state.loadSheet(stored.doc, stored.revision);
  }

  /**
   * Polling tick: pick up sheets other sessions stored. With local edits
   * pending we leave everything alone - the next save will 409 and the
   * banner takes it from there.
   */
  async pollTick(): Promise<void> {
    if (this.state.dirty) return;
    try {
      const stored = await this.client.getSheet(this.state.designId, this.state.assessor);
      if (this.state.sheetRevision !== undefined && stored.revision !== this.state.sheetRevision) {
        this.state.loadSheet(stored.doc, stored.revision);
        await this.refreshAggregate();
      }
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) return; // nothing stored yet
      throw err;
    }
  }
}

// --- rendering ---------------------------------------------------------------

/** Header line; every number is the service's own text, unmodified. */
export function renderHeader(state: WorkbenchState): string {
  const report = state.report;
  const average = report ? report.weighted_average_display : "-";
  const weight = report ? report.total_weight : "-";
  const assessors = report ? report.assessors.join(", ") : state.assessor;
  return `
  <header class="workbench-header">
    <h1>${escapeHtml(state.designId)}</h1>
    <span class="weighted-average">${escapeHtml(average)}</span>
    <span class="total-weight">total weight ${escapeHtml(weight)}</span>
    <span class="assessors">assessed by ${escapeHtml(assessors)}</span>
  </header>`;
}

export function renderConflictBanner(state: WorkbenchState): string {
  if (!state.conflict) return "";
  return `
  <div class="conflict-banner" role="alert">
    <strong>Sheet changed elsewhere.</strong>
    <span>${escapeHtml(state.conflict)}</span>
    <button type="button" data-action="reload">Reload stored sheet</button>
  </div>`;
}

/** Per-criterion summary rows under the header (level badges plus weights). */
export function renderScoreRows(state: WorkbenchState): string {
  const rows = [...state.slots.values()]
    .map((slot) => {
      const level =
        slot.mode === "null"
          ? "n/a"
          : slot.mode === "D"
            ? slot.directScore ?? ""
            : `${slot.variableEntries?.length ?? 0} variables`;
      return `
      <tr data-criterion="${slot.criterion}">
        <td>${slot.criterion}</td>
        <td class="weight">${escapeHtml(slot.weight)}</td>
        <td class="level">${escapeHtml(level)}</td>
      </tr>`;
    })
    .join("");
  return `<table class="score-rows"><tbody>${rows}</tbody></table>`;
}
