export interface BlobBox {
  id: number;
  x: number;
  y: number;
  w: number;
  h: number;
  label: string | null;
}

export interface Manifest {
  image_path: string;
  image_w: number;
  image_h: number;
  blobs: BlobBox[];
}

export const ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/** Validate a manifest against the server's wire schema and page bounds.
 *  Returns null when valid, otherwise a field-level error message. */
export function validateManifest(m: Manifest): string | null {
  if (!Number.isInteger(m.image_w) || !Number.isInteger(m.image_h)) {
    return "image_w/image_h must be integers";
  }
  if (typeof m.image_path !== "string") return "image_path must be a string";
  const seen = new Set<number>();
  for (const b of m.blobs) {
    for (const [name, v] of [["id", b.id], ["x", b.x], ["y", b.y], ["w", b.w], ["h", b.h]] as const) {
      if (!Number.isInteger(v)) return `blob ${b.id}: ${name} must be an integer`;
    }
    if (seen.has(b.id)) return `duplicate blob id ${b.id}`;
    seen.add(b.id);
    if (b.w < 1 || b.h < 1) return `blob ${b.id}: degenerate box ${b.w}x${b.h}`;
    if (b.x < 0 || b.y < 0 || b.x + b.w > m.image_w || b.y + b.h > m.image_h) {
      return `blob ${b.id}: box outside ${m.image_w}x${m.image_h} page`;
    }
    if (b.label !== null && !(typeof b.label === "string" && b.label.length === 1)) {
      return `blob ${b.id}: label must be one character or null`;
    }
  }
  return null;
}
