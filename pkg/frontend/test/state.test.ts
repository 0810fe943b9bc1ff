import { describe, expect, it } from "vitest";
import {
  createBlob,
  deleteBlob,
  imageToScreen,
  initState,
  markSaved,
  moveBlob,
  resizeBlob,
  screenToImage,
  setLabel,
  undoLast,
} from "../src/state.js";
import { Manifest } from "../src/types.js";

function manifest(): Manifest {
  return {
    image_path: "page.png",
    image_w: 100,
    image_h: 80,
    blobs: [
      { id: 0, x: 10, y: 10, w: 20, h: 20, label: "A" },
      { id: 5, x: 50, y: 40, w: 10, h: 10, label: null },
    ],
  };
}

describe("move and resize", () => {
  it("moves only the target blob", () => {
    const s = moveBlob(initState(manifest()), 5, 2, 0);
    expect(s.manifest.blobs.find((b) => b.id === 5)).toMatchObject({ x: 52, y: 40 });
    expect(s.manifest.blobs.find((b) => b.id === 0)).toMatchObject({ x: 10, y: 10 });
    expect(s.dirty).toBe(true);
  });

  it("clamps moves at the page edge", () => {
    const s = moveBlob(initState(manifest()), 5, 1000, -1000);
    expect(s.manifest.blobs.find((b) => b.id === 5)).toMatchObject({ x: 90, y: 0 });
  });

  it("clamps resize below 1x1 up to 1x1", () => {
    const s = resizeBlob(initState(manifest()), 0, 0, -5);
    expect(s.manifest.blobs.find((b) => b.id === 0)).toMatchObject({ w: 1, h: 1 });
  });

  it("clamps resize to the page edge", () => {
    const s = resizeBlob(initState(manifest()), 5, 500, 500);
    expect(s.manifest.blobs.find((b) => b.id === 5)).toMatchObject({ w: 50, h: 40 });
  });

  it("ignores unknown ids", () => {
    const base = initState(manifest());
    expect(moveBlob(base, 99, 1, 1)).toBe(base);
  });
});

describe("labels", () => {
  it("accepts alphabet letters and null", () => {
    let s = setLabel(initState(manifest()), 5, "Q");
    expect(s.manifest.blobs.find((b) => b.id === 5)!.label).toBe("Q");
    s = setLabel(s, 5, null);
    expect(s.manifest.blobs.find((b) => b.id === 5)!.label).toBeNull();
  });

  it("rejects out-of-alphabet labels as a no-op", () => {
    const base = initState(manifest());
    expect(setLabel(base, 5, "7")).toBe(base);
    expect(setLabel(base, 5, "é")).toBe(base);
  });
});

describe("create and delete", () => {
  it("create assigns the smallest unused id", () => {
    const s = createBlob(initState(manifest()), 1, 1, 5, 5);
    expect(s.manifest.blobs.map((b) => b.id).sort()).toEqual([0, 1, 5]);
    expect(s.selected).toBe(1);
  });

  it("delete clears selection of the deleted blob", () => {
    let s = initState(manifest());
    s = { ...s, selected: 0 };
    s = deleteBlob(s, 0);
    expect(s.selected).toBeNull();
    expect(s.manifest.blobs.map((b) => b.id)).toEqual([5]);
  });
});

describe("undo and save bookkeeping", () => {
  it("single-level undo restores the previous manifest", () => {
    const base = initState(manifest());
    let s = deleteBlob(base, 0);
    s = undoLast(s);
    expect(s.manifest.blobs.map((b) => b.id)).toEqual([0, 5]);
    // a second undo is a no-op (single level)
    expect(undoLast(s).manifest).toBe(s.manifest);
  });

  it("markSaved clears dirty and rebases", () => {
    let s = moveBlob(initState(manifest()), 0, 1, 1);
    s = markSaved(s);
    expect(s.dirty).toBe(false);
    expect(s.base.blobs.find((b) => b.id === 0)).toMatchObject({ x: 11, y: 11 });
  });

  it("no edits means nothing dirty to save", () => {
    expect(initState(manifest()).dirty).toBe(false);
  });
});

describe("coordinate transform", () => {
  it("screen/image mapping is an exact bijection at any zoom", () => {
    for (const zoom of [0.25, 1, 2, 3.5]) {
      const t = { zoom, panX: 17, panY: -4 };
      for (const [x, y] of [[0, 0], [10, 20], [99, 79]]) {
        const [sx, sy] = imageToScreen(t, x, y);
        const [bx, by] = screenToImage(t, sx, sy);
        expect(bx).toBeCloseTo(x, 10);
        expect(by).toBeCloseTo(y, 10);
      }
    }
  });
});
