/**
 * Criterion catalog shared by forms, state, and renderers.
 *
 * Order and default weights mirror the service's canonical criterion order;
 * the workbench emits sheet documents with all twelve rows in this order.
 * Nothing here knows how to score anything - levels only ever come back
 * from POST /derive and averages from POST /aggregate.
 */

export interface CriterionInfo {
  id: string;
  label: string;
  weight: string;
}

export const CRITERIA: CriterionInfo[] = [
  { id: "typedness", label: "Typedness", weight: "1" },
  { id: "discernability", label: "Discernability", weight: "1" },
  { id: "intuitiveness", label: "Intuitiveness", weight: "1" },
  { id: "invariance_geometry", label: "Geometry invariance", weight: "0.5" },
  { id: "invariance_colorimetry", label: "Colorimetry invariance", weight: "0.5" },
  { id: "composition_separability", label: "Separability", weight: "0.5" },
  { id: "composition_comparability", label: "Comparability", weight: "0.5" },
  { id: "attention_importance", label: "Importance alignment", weight: "0.5" },
  { id: "attention_balance", label: "Attention balance", weight: "0.5" },
  { id: "searchability", label: "Searchability", weight: "0.5" },
  { id: "learnability", label: "Learnability", weight: "0.5" },
  { id: "memorability", label: "Memorability", weight: "0.5" },
];

export const CRITERION_IDS = CRITERIA.map((c) => c.id);

export function criterionInfo(id: string): CriterionInfo {
  const info = CRITERIA.find((c) => c.id === id);
  if (!info) throw new Error(`unknown criterion ${id}`);
  return info;
}

export function criterionLabel(id: string): string {
  return criterionInfo(id).label;
}

// Vocabulary the guided forms offer. Values are the exact tokens the
// service accepts; labels are what the assessor reads.

export const DOMAIN_CONVENTIONS = [
  { value: "noDC", label: "no domain convention" },
  { value: "cnDC", label: "consistent with convention" },
  { value: "inDC", label: "inconsistent with convention" },
];

export const METAPHOR_QUALITIES = [
  { value: "noAM", label: "no metaphor" },
  { value: "apAM", label: "appropriate metaphor" },
  { value: "okAM", label: "adequate metaphor" },
  { value: "inAM", label: "inappropriate metaphor" },
];

export const LEARNING_MODES = [
  { value: "self_learning", label: "self learning" },
  { value: "self_learning_qa", label: "self learning with Q&A" },
  { value: "tutorial", label: "tutorial needed" },
];

export const REPEATED_EFFORTS = [
  { value: "effortless", label: "effortless" },
  { value: "minor", label: "minor" },
  { value: "noticeable", label: "noticeable" },
  { value: "serious", label: "serious" },
];

export const SEVERITIES = [
  { value: "major", label: "major" },
  { value: "medium", label: "medium" },
  { value: "minor", label: "minor" },
  { value: "none", label: "none" },
];

export const DATA_TYPES = ["nominal", "ordinal", "interval", "ratio", "directional"];

export const KOPS = ["associative", "selective", "ordered", "quantitative"];

/** Scale ladder the geometry invariance judgement walks (base size omitted). */
export const GEOMETRY_SCALES = ["1/5", "2/5", "3/5", "4/5"];

/** Contrast/brightness magnitude ladder for the colorimetry judgement. */
export const COLORIMETRY_MAGNITUDES = ["25.5", "51", "76.5", "102"];
