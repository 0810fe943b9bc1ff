import { ALPHABET, BlobBox, Manifest } from "./types.js";

/** Client-side review state. Selection, dirty, and the one-level undo
 *  snapshot are client-only and never serialized. */
export interface UiState {
  manifest: Manifest;
  base: Manifest; // last server snapshot
  selected: number | null;
  dirty: boolean;
  undo: Manifest | null;
}

function cloneManifest(m: Manifest): Manifest {
  return { ...m, blobs: m.blobs.map((b) => ({ ...b })) };
}

export function initState(manifest: Manifest): UiState {
  return {
    manifest: cloneManifest(manifest),
    base: cloneManifest(manifest),
    selected: null,
    dirty: false,
    undo: null,
  };
}

function clamp(v: number, lo: number, hi: number): number {
  return Math.max(lo, Math.min(hi, v));
}

function withEdit(state: UiState, edit: (m: Manifest) => void): UiState {
  const undo = cloneManifest(state.manifest);
  const manifest = cloneManifest(state.manifest);
  edit(manifest);
  return { ...state, manifest, dirty: true, undo };
}

function blobOf(m: Manifest, id: number): BlobBox | undefined {
  return m.blobs.find((b) => b.id === id);
}

/** Move a blob by (dx, dy) image pixels, clamped to the page. */
export function moveBlob(state: UiState, id: number, dx: number, dy: number): UiState {
  if (!blobOf(state.manifest, id)) return state;
  return withEdit(state, (m) => {
    const b = blobOf(m, id)!;
    b.x = clamp(b.x + Math.round(dx), 0, m.image_w - b.w);
    b.y = clamp(b.y + Math.round(dy), 0, m.image_h - b.h);
  });
}

/** Resize a blob; width and height clamp to [1, page edge]. */
export function resizeBlob(state: UiState, id: number, w: number, h: number): UiState {
  if (!blobOf(state.manifest, id)) return state;
  return withEdit(state, (m) => {
    const b = blobOf(m, id)!;
    b.w = clamp(Math.round(w), 1, m.image_w - b.x);
    b.h = clamp(Math.round(h), 1, m.image_h - b.y);
  });
}

/** Label with a letter of the configured alphabet, or null to clear.
 *  Anything else is a no-op. */
export function setLabel(state: UiState, id: number, label: string | null): UiState {
  if (!blobOf(state.manifest, id)) return state;
  if (label !== null && !ALPHABET.includes(label)) return state;
  return withEdit(state, (m) => {
    blobOf(m, id)!.label = label;
  });
}

export function deleteBlob(state: UiState, id: number): UiState {
  if (!blobOf(state.manifest, id)) return state;
  const next = withEdit(state, (m) => {
    m.blobs = m.blobs.filter((b) => b.id !== id);
  });
  return { ...next, selected: next.selected === id ? null : next.selected };
}

/** Create a blob clamped inside the page; smallest unused id, selected. */
export function createBlob(state: UiState, x: number, y: number, w: number, h: number): UiState {
  let id = 0;
  const used = new Set(state.manifest.blobs.map((b) => b.id));
  while (used.has(id)) id++;
  const m = state.manifest;
  const bw = clamp(Math.round(w), 1, m.image_w);
  const bh = clamp(Math.round(h), 1, m.image_h);
  const bx = clamp(Math.round(x), 0, m.image_w - bw);
  const by = clamp(Math.round(y), 0, m.image_h - bh);
  const next = withEdit(state, (mm) => {
    mm.blobs.push({ id, x: bx, y: by, w: bw, h: bh, label: null });
  });
  return { ...next, selected: id };
}

/** Single-level undo: restores the manifest before the last edit. */
export function undoLast(state: UiState): UiState {
  if (!state.undo) return state;
  return { ...state, manifest: state.undo, undo: null, dirty: true };
}

export function selectBlob(state: UiState, id: number | null): UiState {
  return { ...state, selected: id };
}

/** After a successful PUT: the manifest becomes the new base snapshot. */
export function markSaved(state: UiState): UiState {
  return { ...state, base: cloneManifest(state.manifest), dirty: false, undo: null };
}

export interface ViewTransform {
  zoom: number;
  panX: number;
  panY: number;
}

/** screen = image * zoom + pan; the inverse is exact. */
export function imageToScreen(t: ViewTransform, x: number, y: number): [number, number] {
  return [x * t.zoom + t.panX, y * t.zoom + t.panY];
}

export function screenToImage(t: ViewTransform, sx: number, sy: number): [number, number] {
  return [(sx - t.panX) / t.zoom, (sy - t.panY) / t.zoom];
}
