/**
 * Static entry point: wires the workbench into #app on the same origin as
 * the scoring service. One design and one assessor are active per tab.
 */

import { ServiceClient } from "./api.js";
import { FORM_SPECS, renderForm, toggleInputs } from "./forms.js";
import { Poller } from "./poll.js";
import { WorkbenchState } from "./state.js";
import {
  WorkbenchController,
  renderConflictBanner,
  renderHeader,
  renderScoreRows,
} from "./workbench.js";

function nowTimestamp(): string {
  return new Date().toISOString().replace(/\.\d{3}Z$/, "Z");
}

function formValues(form: HTMLFormElement): Record<string, unknown> {
  const spec = FORM_SPECS[form.dataset.criterion ?? ""];
  const values: Record<string, unknown> = {};
  if (!spec) return values;
  for (const field of spec.fields) {
    if (field.kind === "toggles") {
      const judged: Record<string, boolean> = {};
      form
        .querySelectorAll<HTMLInputElement>(`input[name="${field.name}"]`)
        .forEach((box) => (judged[box.value] = box.checked));
      values[field.name] = toggleInputs(field.keys, judged).invariant_at;
      continue;
    }
    const input = form.querySelector<HTMLInputElement | HTMLSelectElement>(
      `[name="${field.name}"]`,
    );
    if (!input || input.value === "") continue;
    values[field.name] = field.kind === "int" ? Number(input.value) : input.value;
  }
  return values;
}

function redraw(root: HTMLElement, state: WorkbenchState): void {
  const header = root.querySelector<HTMLElement>(".pane-header");
  const banner = root.querySelector<HTMLElement>(".pane-banner");
  const rows = root.querySelector<HTMLElement>(".pane-rows");
  if (header) header.innerHTML = renderHeader(state);
  if (banner) banner.innerHTML = renderConflictBanner(state);
  if (rows) rows.innerHTML = renderScoreRows(state);
}

async function boot(root: HTMLElement): Promise<void> {
  const client = new ServiceClient("");
  const designs = await client.listDesigns();
  const designId = designs[0];
  if (!designId) {
    root.textContent = "no designs stored yet";
    return;
  }
  const assessor =
    new URLSearchParams(window.location.search).get("assessor") ?? "workbench";
  const state = new WorkbenchState(designId, assessor, nowTimestamp());
  const controller = new WorkbenchController(client, state);

  const assessors = await client.listAssessors(designId);
  if (assessors.includes(assessor)) {
    await controller.reloadSheet();
    await controller.refreshAggregate();
  }

  const forms = Object.keys(FORM_SPECS)
    .map((criterion) => {
      const slot = state.slot(criterion);
      return renderForm(criterion, (slot.inputs ?? {}) as Record<string, unknown>, {
        level: slot.mode === "D" ? slot.directScore : undefined,
      });
    })
    .join("\n");
  root.innerHTML = `
    <div class="pane-header"></div>
    <div class="pane-banner"></div>
    <div class="pane-rows"></div>
    <div class="pane-forms">${forms}</div>
    <button type="button" data-action="save-aggregate">Save and refresh average</button>`;
  redraw(root, state);

  root.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    if (!form.classList.contains("criterion-form")) return;
    event.preventDefault();
    const criterion = form.dataset.criterion ?? "";
    state.timestamp = nowTimestamp();
    void controller
      .deriveCriterion(criterion, formValues(form))
      .then(() => controller.refreshAggregate())
      .then(() => redraw(root, state));
  });

  root.addEventListener("click", (event) => {
    const button = event.target as HTMLElement;
    const action = button.dataset.action;
    if (action === "not-applicable") {
      const form = button.closest<HTMLFormElement>(".criterion-form");
      if (!form) return;
      state.timestamp = nowTimestamp();
      state.setNotApplicable(form.dataset.criterion ?? "");
      void controller.refreshAggregate().then(() => redraw(root, state));
    } else if (action === "save-aggregate") {
      state.timestamp = nowTimestamp();
      void controller.refreshAggregate().then(() => redraw(root, state));
    } else if (action === "reload") {
      void controller
        .reloadSheet()
        .then(() => controller.refreshAggregate())
        .then(() => redraw(root, state));
    }
  });

  const poller = new Poller(() => controller.pollTick().then(() => redraw(root, state)));
  poller.start();
}

document.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (root) void boot(root);
});
