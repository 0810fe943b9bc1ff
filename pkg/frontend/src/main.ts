import { ReviewApi, ApiError, PageInfo } from "./api.js";
import {
  UiState,
  ViewTransform,
  createBlob,
  deleteBlob,
  imageToScreen,
  initState,
  markSaved,
  moveBlob,
  resizeBlob,
  screenToImage,
  selectBlob,
  setLabel,
  undoLast,
} from "./state.js";
import { ALPHABET } from "./types.js";

const api = new ReviewApi();

const canvas = document.getElementById("page") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const pageSelect = document.getElementById("page-select") as HTMLSelectElement;
const saveButton = document.getElementById("save") as HTMLButtonElement;
const deleteButton = document.getElementById("delete") as HTMLButtonElement;
const createButton = document.getElementById("create") as HTMLButtonElement;
const undoButton = document.getElementById("undo") as HTMLButtonElement;
const banner = document.getElementById("banner") as HTMLDivElement;
const status = document.getElementById("status") as HTMLDivElement;

let state: UiState | null = null;
let currentPage: string | null = null;
let image: HTMLImageElement | null = null;
let view: ViewTransform = { zoom: 1, panX: 0, panY: 0 };

type DragMode = "move" | "resize";
let drag: { mode: DragMode; id: number; lastX: number; lastY: number } | null = null;

function showError(message: string) {
  banner.textContent = message;
  banner.hidden = false;
}

function clearError() {
  banner.hidden = true;
}

function updateStatus() {
  if (!state) {
    status.textContent = "";
    return;
  }
  const sel = state.selected === null ? "none" : `#${state.selected}`;
  status.textContent =
    `${state.manifest.blobs.length} blobs | selected: ${sel} | ` +
    (state.dirty ? "unsaved changes" : "saved");
  saveButton.disabled = !state.dirty;
}

function draw() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!image || !state) return;
  ctx.save();
  ctx.translate(view.panX, view.panY);
  ctx.scale(view.zoom, view.zoom);
  ctx.drawImage(image, 0, 0);
  ctx.restore();
  for (const b of state.manifest.blobs) {
    const [sx, sy] = imageToScreen(view, b.x, b.y);
    const w = b.w * view.zoom;
    const h = b.h * view.zoom;
    ctx.strokeStyle = b.id === state.selected ? "#e03030" : "#2060e0";
    ctx.lineWidth = b.id === state.selected ? 2 : 1;
    ctx.strokeRect(sx, sy, w, h);
    if (b.label !== null) {
      ctx.fillStyle = ctx.strokeStyle;
      ctx.font = "12px sans-serif";
      ctx.fillText(b.label, sx + 2, sy - 2);
    }
  }
  updateStatus();
}

function blobAt(ix: number, iy: number): number | null {
  if (!state) return null;
  // topmost (last drawn) first
  for (let i = state.manifest.blobs.length - 1; i >= 0; i--) {
    const b = state.manifest.blobs[i];
    if (ix >= b.x && ix <= b.x + b.w && iy >= b.y && iy <= b.y + b.h) return b.id;
  }
  return null;
}

function nearResizeCorner(ix: number, iy: number, id: number): boolean {
  const b = state!.manifest.blobs.find((bb) => bb.id === id);
  if (!b) return false;
  const tol = 6 / view.zoom;
  return Math.abs(ix - (b.x + b.w)) <= tol && Math.abs(iy - (b.y + b.h)) <= tol;
}

async function loadPage(pageId: string) {
  clearError();
  try {
    const manifest = await api.getManifest(pageId);
    const img = new Image();
    img.src = api.imageUrl(pageId);
    await img.decode();
    image = img;
    state = initState(manifest);
    currentPage = pageId;
    view = { zoom: 1, panX: 0, panY: 0 };
    canvas.width = Math.max(img.width, 800);
    canvas.height = Math.max(img.height, 600);
    draw();
  } catch (err) {
    image = null;
    state = null;
    showError(err instanceof Error ? err.message : String(err));
    draw();
  }
}

async function save() {
  if (!state || !currentPage || !state.dirty) return;
  clearError();
  try {
    await api.putManifest(currentPage, state.manifest);
    state = markSaved(state);
    draw();
  } catch (err) {
    if (err instanceof ApiError) {
      showError(err.status === 0 ? err.message : `save rejected: ${err.message}`);
    } else {
      showError(`network failure, changes kept locally: ${err}`);
    }
  }
}

canvas.addEventListener("mousedown", (ev) => {
  if (!state) return;
  const [ix, iy] = screenToImage(view, ev.offsetX, ev.offsetY);
  const hit = blobAt(ix, iy);
  state = selectBlob(state, hit);
  if (hit !== null) {
    const mode: DragMode = nearResizeCorner(ix, iy, hit) ? "resize" : "move";
    drag = { mode, id: hit, lastX: ix, lastY: iy };
  }
  draw();
});

canvas.addEventListener("mousemove", (ev) => {
  if (!state || !drag) return;
  const [ix, iy] = screenToImage(view, ev.offsetX, ev.offsetY);
  const dx = ix - drag.lastX;
  const dy = iy - drag.lastY;
  if (Math.abs(dx) < 1 && Math.abs(dy) < 1) return;
  const b = state.manifest.blobs.find((bb) => bb.id === drag!.id);
  if (!b) return;
  if (drag.mode === "move") {
    state = moveBlob(state, drag.id, dx, dy);
  } else {
    state = resizeBlob(state, drag.id, b.w + dx, b.h + dy);
  }
  drag.lastX = ix;
  drag.lastY = iy;
  draw();
});

window.addEventListener("mouseup", () => {
  drag = null;
});

canvas.addEventListener("wheel", (ev) => {
  ev.preventDefault();
  const factor = ev.deltaY < 0 ? 1.25 : 0.8;
  const [ix, iy] = screenToImage(view, ev.offsetX, ev.offsetY);
  view.zoom *= factor;
  // keep the cursor anchored on the same image point
  view.panX = ev.offsetX - ix * view.zoom;
  view.panY = ev.offsetY - iy * view.zoom;
  draw();
});

window.addEventListener("keydown", (ev) => {
  if (!state) return;
  const key = ev.key.toUpperCase();
  if (state.selected !== null && ALPHABET.includes(key) && key.length === 1) {
    state = setLabel(state, state.selected, key);
    draw();
  } else if (ev.key === "Backspace" && state.selected !== null) {
    state = setLabel(state, state.selected, null);
    draw();
  } else if (ev.key === "Delete" && state.selected !== null) {
    state = deleteBlob(state, state.selected);
    draw();
  } else if (ev.key === "z" && (ev.ctrlKey || ev.metaKey)) {
    state = undoLast(state);
    draw();
  }
});

saveButton.addEventListener("click", save);
undoButton.addEventListener("click", () => {
  if (state) {
    state = undoLast(state);
    draw();
  }
});
deleteButton.addEventListener("click", () => {
  if (state && state.selected !== null) {
    state = deleteBlob(state, state.selected);
    draw();
  }
});
createButton.addEventListener("click", () => {
  if (!state) return;
  const [ix, iy] = screenToImage(view, canvas.width / 2, canvas.height / 2);
  state = createBlob(state, ix, iy, 20, 20);
  draw();
});

async function boot() {
  let pages: PageInfo[];
  try {
    pages = await api.listPages();
  } catch (err) {
    showError(`cannot reach review service: ${err}`);
    return;
  }
  pageSelect.innerHTML = "";
  for (const p of pages) {
    const opt = document.createElement("option");
    opt.value = p.id;
    opt.textContent = `${p.id} (${p.image_w}x${p.image_h})`;
    pageSelect.appendChild(opt);
  }
  pageSelect.addEventListener("change", () => loadPage(pageSelect.value));
  if (pages.length > 0) await loadPage(pages[0].id);
}

boot();
