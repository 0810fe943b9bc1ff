import { afterEach, describe, expect, it, vi } from "vitest";
import { ApiError, ReviewApi } from "../src/api.js";
import { Manifest } from "../src/types.js";

const validManifest: Manifest = {
  image_path: "p.png",
  image_w: 100,
  image_h: 80,
  blobs: [{ id: 0, x: 1, y: 2, w: 3, h: 4, label: "A" }],
};

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ReviewApi", () => {
  it("lists pages", async () => {
    const fetchMock = vi.fn(async () => new Response(JSON.stringify([{ id: "p", image_w: 1, image_h: 1 }])));
    vi.stubGlobal("fetch", fetchMock);
    const pages = await new ReviewApi().listPages();
    expect(pages).toEqual([{ id: "p", image_w: 1, image_h: 1 }]);
    expect(fetchMock).toHaveBeenCalledWith("/api/pages");
  });

  it("surfaces server detail messages", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => new Response(JSON.stringify({ detail: "unknown page 'x'" }), { status: 404 })),
    );
    await expect(new ReviewApi().getManifest("x")).rejects.toThrowError(/unknown page/);
  });

  it("PUTs a valid manifest and resolves on 204", async () => {
    const fetchMock = vi.fn(async () => new Response(null, { status: 204 }));
    vi.stubGlobal("fetch", fetchMock);
    await new ReviewApi().putManifest("p", validManifest);
    const [url, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe("/api/pages/p/manifest");
    expect(init.method).toBe("PUT");
    expect(JSON.parse(init.body as string)).toEqual(validManifest);
  });

  it("refuses to PUT an out-of-bounds manifest without any request", async () => {
    const fetchMock = vi.fn();
    vi.stubGlobal("fetch", fetchMock);
    const bad: Manifest = {
      ...validManifest,
      blobs: [{ id: 0, x: 95, y: 0, w: 20, h: 20, label: null }],
    };
    await expect(new ReviewApi().putManifest("p", bad)).rejects.toThrowError(/outside/);
    expect(fetchMock).not.toHaveBeenCalled();
  });

  it("maps a server 400 to an ApiError with the field message", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => new Response(JSON.stringify({ detail: "blob 0: box outside 100x80 page" }), { status: 400 })),
    );
    try {
      await new ReviewApi().putManifest("p", validManifest);
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(400);
      expect((err as ApiError).message).toContain("blob 0");
    }
  });
});
