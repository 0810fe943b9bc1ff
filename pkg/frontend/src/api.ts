import { Manifest, validateManifest } from "./types.js";

export interface PageInfo {
  id: string;
  image_w: number;
  image_h: number;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function raiseFor(response: Response): Promise<never> {
  let detail = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    /* non-JSON error body */
  }
  throw new ApiError(response.status, detail);
}

export class ReviewApi {
  constructor(private baseUrl: string = "") {}

  async listPages(): Promise<PageInfo[]> {
    const r = await fetch(`${this.baseUrl}/api/pages`);
    if (!r.ok) await raiseFor(r);
    return r.json();
  }

  imageUrl(pageId: string): string {
    return `${this.baseUrl}/api/pages/${encodeURIComponent(pageId)}/image`;
  }

  async getManifest(pageId: string): Promise<Manifest> {
    const r = await fetch(`${this.baseUrl}/api/pages/${encodeURIComponent(pageId)}/manifest`);
    if (!r.ok) await raiseFor(r);
    return r.json();
  }

  /** PUT a manifest. Refuses locally (without any request) when the body
   *  would violate the wire schema. */
  async putManifest(pageId: string, manifest: Manifest): Promise<void> {
    const problem = validateManifest(manifest);
    if (problem !== null) {
      throw new ApiError(0, `refusing to save invalid manifest: ${problem}`);
    }
    const r = await fetch(`${this.baseUrl}/api/pages/${encodeURIComponent(pageId)}/manifest`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(manifest),
    });
    if (r.status !== 204) await raiseFor(r);
  }
}
