/**
 * Comparison view: ranking and per-criterion spread table for a set of
 * designs, rendered from a GET /compare response. Equal weighted averages
 * share a rank and get a tie note; the criterion rows with the widest
 * spread are highlighted so the deciding differences stand out.
 */

import type { ComparisonDocument, ServiceClient, SpreadRow } from "./api.js";
import { escapeHtml } from "./forms.js";

export async function loadComparison(
  client: ServiceClient,
  designIds: string[],
  assessor?: string,
): Promise<ComparisonDocument> {
  return client.compare(designIds, assessor);
}

function tiedRanks(doc: ComparisonDocument): Set<number> {
  const counts = new Map<number, number>();
  for (const row of doc.ranking) counts.set(row.rank, (counts.get(row.rank) ?? 0) + 1);
  return new Set([...counts.entries()].filter(([, n]) => n > 1).map(([rank]) => rank));
}

/** Numeric value of an exact score string ("29/7" or "4"); for highlighting only. */
function asNumber(text: string | null): number {
  if (text === null) return 0;
  const slash = text.indexOf("/");
  if (slash === -1) return Number(text);
  return Number(text.slice(0, slash)) / Number(text.slice(slash + 1));
}

function widestSpreads(rows: SpreadRow[]): Set<string> {
  let widest = 0;
  for (const row of rows) widest = Math.max(widest, asNumber(row.spread));
  if (widest === 0) return new Set();
  return new Set(rows.filter((r) => asNumber(r.spread) === widest).map((r) => r.criterion));
}

export function renderComparison(doc: ComparisonDocument): string {
  const ties = tiedRanks(doc);
  const ranking = doc.ranking
    .map((row) => {
      const note = ties.has(row.rank) ? ` <span class="tie-note">(tied)</span>` : "";
      return `
      <tr data-design="${escapeHtml(row.design)}">
        <td class="rank">${row.rank}${note}</td>
        <td class="design">${escapeHtml(row.design)}</td>
        <td class="average">${escapeHtml(row.display)}</td>
        <td class="weight">${escapeHtml(row.total_weight)}</td>
      </tr>`;
    })
    .join("");

  const designs = doc.ranking.map((r) => r.design);
  const widest = widestSpreads(doc.criteria);
  const criteria = doc.criteria
    .map((row) => {
      const classes = ["criterion-row"];
      if (row.spread !== null && asNumber(row.spread) > 0) classes.push("delta");
      if (widest.has(row.criterion)) classes.push("delta-widest");
      const cells = designs
        .map((d) => `<td>${row.scores[d] === null ? "n/a" : escapeHtml(row.scores[d] ?? "")}</td>`)
        .join("");
      const spread = row.spread === null ? "n/a" : escapeHtml(row.spread);
      return `
      <tr class="${classes.join(" ")}" data-criterion="${row.criterion}">
        <td>${row.criterion}</td>
        ${cells}
        <td class="spread">${spread}</td>
      </tr>`;
    })
    .join("");

  const heads = designs.map((d) => `<th>${escapeHtml(d)}</th>`).join("");
  return `
  <section class="comparison">
    <table class="ranking">
      <thead><tr><th>rank</th><th>design</th><th>average</th><th>weight</th></tr></thead>
      <tbody>${ranking}</tbody>
    </table>
    <table class="spreads">
      <thead><tr><th>criterion</th>${heads}<th>spread</th></tr></thead>
      <tbody>${criteria}</tbody>
    </table>
  </section>`;
}
