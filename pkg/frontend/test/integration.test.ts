// End-to-end round trip against the real review service.
// Spawns the Python backend on a scratch workspace; skipped when python3
// or the docpipe package is unavailable.
import { ChildProcess, execSync, spawn } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ReviewApi } from "../src/api.js";
import { initState, markSaved, moveBlob, setLabel } from "../src/state.js";

const PORT = 7979;
const BASE = `http://127.0.0.1:${PORT}`;

function pythonAvailable(): boolean {
  try {
    execSync("python3 -c 'import docpipe, uvicorn'", { stdio: "ignore" });
    return true;
  } catch {
    return false;
  }
}

const available = pythonAvailable();
let server: ChildProcess | null = null;
let workspace = "";

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const r = await fetch(`${BASE}/api/pages`);
      if (r.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("review service did not come up");
}

beforeAll(async () => {
  if (!available) return;
  workspace = mkdtempSync(join(tmpdir(), "blob-review-"));
  // fixture: one 100x80 page with a single labeled blob
  execSync(
    `python3 -c "
import numpy as np
from PIL import Image
from docpipe.segmentation import Blob, BlobManifest, save_manifest
Image.fromarray(np.full((80, 100, 3), 255, dtype=np.uint8)).save('${workspace}/page1.png')
m = BlobManifest(image_path='page1.png', image_w=100, image_h=80,
                 blobs=(Blob(id=0, x=10, y=10, w=20, h=20, label='A'),
                        Blob(id=1, x=40, y=10, w=20, h=20, label=None)))
save_manifest(m, '${workspace}/page1.manifest.json')
"`,
  );
  server = spawn(
    "python3",
    ["-c", `
import uvicorn
from docpipe.service import create_app
uvicorn.run(create_app('${workspace}', static_dir=False), host='127.0.0.1', port=${PORT}, log_level='error')
`],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 30000);

afterAll(() => {
  server?.kill();
});

describe.skipIf(!available)("live service round trip", () => {
  const api = new ReviewApi(BASE);

  it("lists the fixture page", async () => {
    expect(await api.listPages()).toEqual([{ id: "page1", image_w: 100, image_h: 80 }]);
  });

  it("load -> move +2px -> relabel -> save -> reload reproduces exactly those edits", async () => {
    let state = initState(await api.getManifest("page1"));
    const before = state.base;
    state = moveBlob(state, 1, 2, 0);
    state = setLabel(state, 1, "Q");
    await api.putManifest("page1", state.manifest);
    state = markSaved(state);

    const onDisk = JSON.parse(readFileSync(join(workspace, "page1.manifest.json"), "utf-8"));
    // exactly two fields changed: blob 1's x and label
    expect(onDisk.blobs[1]).toEqual({ id: 1, x: 42, y: 10, w: 20, h: 20, label: "Q" });
    expect(onDisk.blobs[0]).toEqual(before.blobs[0]);
    expect(onDisk.image_path).toBe(before.image_path);
    expect(onDisk.image_w).toBe(before.image_w);
    expect(onDisk.image_h).toBe(before.image_h);

    const reloaded = await api.getManifest("page1");
    expect(reloaded).toEqual(state.manifest);
  });

  it("client refuses a blob forged outside bounds; raw PUT gets 400 and the file is unchanged", async () => {
    const fileBefore = readFileSync(join(workspace, "page1.manifest.json"), "utf-8");
    const manifest = await api.getManifest("page1");
    // bypass clamping: forge an out-of-bounds box directly in the state
    manifest.blobs[0].x = 95;
    await expect(api.putManifest("page1", manifest)).rejects.toThrowError(/outside/);

    // even sending it anyway, the server rejects with 400
    const r = await fetch(`${BASE}/api/pages/page1/manifest`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(manifest),
    });
    expect(r.status).toBe(400);
    const body = await r.json();
    expect(body.detail).toContain("blob 0");
    expect(readFileSync(join(workspace, "page1.manifest.json"), "utf-8")).toBe(fileBefore);
  });

  it("unknown page id yields a 404 the UI can surface", async () => {
    await expect(api.getManifest("nope")).rejects.toThrowError(/unknown page/);
  });
});
