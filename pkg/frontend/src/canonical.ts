/**
 * Canonical document text: two-space indent, LF line ends, one trailing
 * newline. This is byte-identical to the form the service stores and
 * returns, so a document parsed from a response can be re-rendered exactly.
 * The manifest viewers rely on this to show the same bytes the lab wrote.
 *
 * One caveat: JSON.parse moves integer-like object keys ("51", "102")
 * ahead of the rest, so documents using such keys (colorimetry judgement
 * maps inside sheets) do not round-trip byte-exactly. Nothing renders
 * sheet bytes, and saves go through the service's own canonicalizer, so
 * this never shows; manifests and reports have no such keys.
 */

export function canonicalText(doc: unknown): string {
  return JSON.stringify(doc, null, 2) + "\n";
}

/** Key-sorted single-line form; used only for matching, never for display. */
export function stableKey(doc: unknown): string {
  return JSON.stringify(sortValue(doc));
}

function sortValue(value: unknown): unknown {
  if (Array.isArray(value)) return value.map(sortValue);
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value as Record<string, unknown>).sort()) {
      out[key] = sortValue((value as Record<string, unknown>)[key]);
    }
    return out;
  }
  return value;
}
