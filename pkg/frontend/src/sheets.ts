/**
 * Degradation sheet viewers.
 *
 * The service renders the composites and manifests; these viewers display
 * them and re-emit the manifest in its canonical byte form. Cell overlays
 * can be toggled between "invariant" and "variant" as the assessor judges
 * each step - those judgements feed the invariance criterion forms, the
 * manifest itself is never edited.
 */

import type {
  ColorimetryManifest,
  DegradationResponse,
  GeometryManifest,
} from "./api.js";
import { canonicalText } from "./canonical.js";
import { escapeHtml } from "./forms.js";

/** Exact canonical bytes of a manifest as the lab would store them. */
export function manifestText(manifest: GeometryManifest | ColorimetryManifest): string {
  return canonicalText(manifest);
}

export function pngDataUrl(response: DegradationResponse<unknown>): string {
  return `data:image/png;base64,${response.png_base64}`;
}

function toggleButton(key: string, judged: Record<string, boolean>): string {
  const invariant = Boolean(judged[key]);
  const label = invariant ? "invariant" : "variant";
  return `<button type="button" class="cell-toggle ${label}" data-key="${escapeHtml(key)}">${label}</button>`;
}

/**
 * Geometry sheet: one cell per scale step plus the calibration square.
 * `judged` maps scale factors to the assessor's invariant/variant call.
 */
export function renderGeometrySheet(
  response: DegradationResponse<GeometryManifest>,
  judged: Record<string, boolean> = {},
): string {
  const manifest = response.manifest;
  const cells = manifest.cells
    .map(
      (cell) => `
      <tr data-scale="${escapeHtml(cell.scale)}">
        <td>${escapeHtml(cell.scale)}</td>
        <td>${escapeHtml(cell.size_cm)} cm</td>
        <td>${cell.width_px}x${cell.height_px} px at (${cell.x}, ${cell.y})</td>
        <td>${cell.scale === "5/5" ? "base size" : toggleButton(cell.scale, judged)}</td>
      </tr>`,
    )
    .join("");
  return `
  <figure class="degradation-sheet geometry">
    <img src="${pngDataUrl(response)}" alt="glyph at ${manifest.cells.length} scales">
    <figcaption>
      ${escapeHtml(manifest.shape)} field ${escapeHtml(manifest.vf_deg)}&deg; at
      ${escapeHtml(manifest.vd_cm)} cm, base ${escapeHtml(manifest.base_cm)} cm
    </figcaption>
    <table class="cells">
      <thead><tr><th>scale</th><th>size</th><th>placement</th><th>judgement</th></tr></thead>
      <tbody>${cells}</tbody>
    </table>
    <details>
      <summary>manifest</summary>
      <pre class="manifest">${escapeHtml(manifestText(manifest))}</pre>
    </details>
  </figure>`;
}

/**
 * Colorimetry sheet: contrast/brightness grid. Toggles are offered per
 * shift magnitude, matching the judgement ladder the criterion form wants.
 */
export function renderColorimetrySheet(
  response: DegradationResponse<ColorimetryManifest>,
  magnitudes: string[],
  judged: Record<string, boolean> = {},
): string {
  const manifest = response.manifest;
  const cells = manifest.cells
    .map(
      (cell) => `
      <tr data-index="${cell.index}">
        <td>${cell.row},${cell.col}</td>
        <td>&kappa;<sub>ctr</sub> ${escapeHtml(cell.kappa_ctr)}</td>
        <td>&kappa;<sub>brt</sub> ${escapeHtml(cell.kappa_brt)}</td>
        <td>${cell.width_px}x${cell.height_px} px at (${cell.x}, ${cell.y})</td>
      </tr>`,
    )
    .join("");
  const toggles = magnitudes
    .map((m) => `<label class="magnitude">&plusmn;${escapeHtml(m)} ${toggleButton(m, judged)}</label>`)
    .join("");
  return `
  <figure class="degradation-sheet colorimetry">
    <img src="${pngDataUrl(response)}" alt="glyph under ${manifest.cells.length} colorimetry shifts">
    <div class="magnitude-toggles">${toggles}</div>
    <table class="cells">
      <thead><tr><th>cell</th><th>contrast</th><th>brightness</th><th>placement</th></tr></thead>
      <tbody>${cells}</tbody>
    </table>
    <details>
      <summary>manifest</summary>
      <pre class="manifest">${escapeHtml(manifestText(manifest))}</pre>
    </details>
  </figure>`;
}
