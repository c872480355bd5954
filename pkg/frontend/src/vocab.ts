import { VocabEntry } from "./types.js";

export const ATTRIBUTE_ORDER = ["size", "color", "shape", "material", "position"];

/** Group the 33 value tokens by attribute for the palette, keeping wire order. */
export function groupByAttribute(vocabulary: VocabEntry[]): Map<string, string[]> {
  const groups = new Map<string, string[]>();
  for (const attr of ATTRIBUTE_ORDER) {
    groups.set(attr, []);
  }
  for (const entry of vocabulary) {
    const bucket = groups.get(entry.attribute);
    if (bucket) {
      bucket.push(entry.token);
    } else {
      groups.set(entry.attribute, [entry.token]);
    }
  }
  for (const attr of [...groups.keys()]) {
    if (groups.get(attr)!.length === 0) groups.delete(attr);
  }
  return groups;
}

/** move_NE_2 -> "NE ×2"; intrinsic tokens render as themselves. */
export function tokenLabel(token: string): string {
  if (token.startsWith("move_")) {
    const [, dir, step] = token.split("_");
    return `${dir} ×${step}`;
  }
  return token;
}
