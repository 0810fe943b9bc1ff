"""Local review service: exposes page images and blob manifests over HTTP
for the browser-based review UI.

  GET  /api/pages                -> [{"id", "image_w", "image_h"}]
  GET  /api/pages/{id}/image     -> image bytes
  GET  /api/pages/{id}/manifest  -> manifest JSON
  PUT  /api/pages/{id}/manifest  -> 204; 400 on schema/bounds violation

Loopback-only by default; manifests are replaced atomically (temp + rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import FileResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .errors import OutOfBounds, SchemaError
from .segmentation import manifest_from_dict, manifest_to_dict

IMAGE_SUFFIXES = {".png": "image/png", ".jpg": "image/jpeg", ".jpeg": "image/jpeg"}


class PageInfo(BaseModel):
    id: str
    image_w: int
    image_h: int


class BlobIn(BaseModel):
    id: int
    x: int
    y: int
    w: int
    h: int
    label: str | None = None


class ManifestIn(BaseModel):
    image_path: str
    image_w: int
    image_h: int
    blobs: list[BlobIn]


def _image_size(path: Path) -> tuple[int, int]:
    from PIL import Image

    with Image.open(path) as im:
        return im.size  # (w, h)


def create_app(workspace_dir, static_dir=None) -> FastAPI:
    workspace = Path(workspace_dir)
    app = FastAPI(title="docpipe review service")

    def image_path_for(page_id: str) -> Path:
        for suffix in IMAGE_SUFFIXES:
            p = workspace / f"{page_id}{suffix}"
            if p.exists():
                return p
        raise HTTPException(status_code=404, detail=f"unknown page {page_id!r}")

    def manifest_path_for(page_id: str) -> Path:
        return workspace / f"{page_id}.manifest.json"

    @app.get("/api/pages", response_model=list[PageInfo])
    def list_pages():
        pages = []
        for p in sorted(workspace.iterdir()):
            if p.suffix.lower() in IMAGE_SUFFIXES:
                w, h = _image_size(p)
                pages.append(PageInfo(id=p.stem, image_w=w, image_h=h))
        return pages

    @app.get("/api/pages/{page_id}/image")
    def get_image(page_id: str):
        p = image_path_for(page_id)
        return FileResponse(p, media_type=IMAGE_SUFFIXES[p.suffix.lower()])

    @app.get("/api/pages/{page_id}/manifest")
    def get_manifest(page_id: str):
        image_path_for(page_id)
        mpath = manifest_path_for(page_id)
        if not mpath.exists():
            raise HTTPException(status_code=404, detail=f"no manifest for {page_id!r}")
        try:
            manifest = manifest_from_dict(json.load(open(mpath, encoding="utf-8")))
        except SchemaError as exc:
            raise HTTPException(status_code=500, detail=str(exc))
        return JSONResponse(manifest_to_dict(manifest))

    @app.put("/api/pages/{page_id}/manifest", status_code=204)
    async def put_manifest(page_id: str, request: Request):
        img = image_path_for(page_id)
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(status_code=400, detail="body is not valid JSON")
        try:
            manifest = manifest_from_dict(body)
        except (SchemaError, OutOfBounds) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        w, h = _image_size(img)
        if manifest.image_w != w or manifest.image_h != h:
            raise HTTPException(
                status_code=400,
                detail=f"image_w/image_h: manifest says {manifest.image_w}x{manifest.image_h}, page is {w}x{h}",
            )
        # atomic replace so readers never see a partial manifest
        mpath = manifest_path_for(page_id)
        fd, tmp = tempfile.mkstemp(dir=workspace, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump(manifest_to_dict(manifest), f, indent=2)
                f.write("\n")
            os.replace(tmp, mpath)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return Response(status_code=204)

    if static_dir is None:
        candidate = Path(__file__).resolve().parents[3] / "frontend" / "dist"
        static_dir = candidate if candidate.is_dir() else None
    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
