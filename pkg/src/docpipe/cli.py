"""Command-line entry point: one subcommand per pipeline stage plus `serve`.

Config is a JSON file given with --config; individual flags override the
file's values. All diagnostics go to stderr; exit codes 2-9 identify the
failure class (see EXIT_CODES).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import errors, fonts, imaging, ocr, pipeline, segmentation, textclass, textdiff
from .features import read_training_file, write_training_file
from .ocr import Hyperparams
from .segmentation import GridConfig

EXIT_CODES = {
    FileNotFoundError: 2,
    errors.UnlabeledBlob: 3,
    errors.UnsupportedFormat: 4,
    errors.CorruptImage: 4,
    errors.SchemaError: 5,
    errors.FormatError: 5,
    errors.GridMismatch: 6,
    errors.EmptyClass: 7,
    errors.DimensionMismatch: 7,
    errors.SingleClass: 7,
    errors.EmptyCorpus: 7,
    errors.EmptyTestSet: 7,
    errors.UnknownBlobId: 8,
    errors.OutOfBounds: 8,
    errors.EmptyOriginal: 9,
}


def _exit_for(exc) -> int:
    for etype, code in EXIT_CODES.items():
        if isinstance(exc, etype):
            return code
    return 9


def run_guarded(fn):
    try:
        fn()
    except Exception as exc:  # noqa: BLE001 - single funnel to exit codes
        click.echo(f"error: {exc}", err=True)
        sys.exit(_exit_for(exc))


def load_config(path) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def cfg_value(cfg: dict, key: str, flag_value, default):
    if flag_value is not None:
        return flag_value
    return cfg.get(key, default)


def hyperparams_from(cfg: dict, lr, iters, lam) -> Hyperparams:
    return Hyperparams(
        learning_rate=cfg_value(cfg, "learning_rate", lr, 0.5),
        iterations=cfg_value(cfg, "iterations", iters, 400),
        l2_lambda=cfg_value(cfg, "l2_lambda", lam, 0.1),
    )


@click.group()
def main():
    """Document digitization pipeline: OCR training, recognition, diff scoring,
    and Naive Bayes text classification."""


@main.command()
@click.argument("image", type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--min-area", type=int, default=None)
@click.option("--grid", is_flag=True, help="Label blobs from the 26x12 grid layout.")
@click.option("--orientation", type=click.Choice(["letters-along-columns", "letters-along-rows"]), default=None)
@click.option("--out", type=click.Path(), default=None, help="Manifest path (default: next to the image).")
def segment(image, config_path, min_area, grid, orientation, out):
    """Detect character blobs on a page image and write a manifest."""

    def go():
        cfg = load_config(config_path)
        raster = imaging.load_image(image)
        grid_cfg = None
        if grid:
            grid_cfg = GridConfig(
                orientation=cfg_value(cfg, "orientation", orientation, "letters-along-columns")
            )
        manifest = pipeline.segment_page(
            raster,
            image_path=str(image),
            min_area=cfg_value(cfg, "min_area", min_area, 15),
            grid=grid_cfg,
        )
        dest = out or str(Path(image).with_suffix(".manifest.json"))
        segmentation.save_manifest(manifest, dest)
        if not manifest.blobs:
            click.echo("warning: no blobs found", err=True)
        click.echo(f"{len(manifest.blobs)} blobs -> {dest}")

    run_guarded(go)


@main.command("export-features")
@click.argument("manifest", type=click.Path())
@click.argument("image", type=click.Path())
@click.argument("out", type=click.Path())
def export_features(manifest, image, out):
    """Write the three-line-per-blob training text file for a labeled manifest."""

    def go():
        m = segmentation.load_manifest(manifest)
        raster = imaging.load_image(image)
        ts = pipeline.manifest_to_training_set(m, raster)
        write_training_file(ts, out)
        if not m.blobs:
            click.echo("warning: empty manifest, empty training file", err=True)
        click.echo(f"{len(ts)} samples ({3 * len(ts)} lines) -> {out}")

    run_guarded(go)


@main.command("train-ocr")
@click.argument("training_file", type=click.Path())
@click.argument("out", type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--kind", type=click.Choice(["logreg", "centroid"]), default="logreg")
@click.option("--learning-rate", type=float, default=None)
@click.option("--iterations", type=int, default=None)
@click.option("--l2-lambda", type=float, default=None)
def train_ocr(training_file, out, config_path, kind, learning_rate, iterations, l2_lambda):
    """Train the character classifier and write the model JSON."""

    def go():
        cfg = load_config(config_path)
        ts = read_training_file(training_file)
        if kind == "logreg":
            model = ocr.train_logreg(ts, hyperparams_from(cfg, learning_rate, iterations, l2_lambda))
        else:
            model = ocr.train_centroid(ts)
        ocr.save_model(model, out)
        acc = ocr.evaluate_ocr(model, ts)
        click.echo(f"trained {kind} on {len(ts)} samples, training accuracy {acc:.4f} -> {out}")

    run_guarded(go)


@main.command()
@click.argument("image", type=click.Path())
@click.argument("model_file", type=click.Path())
@click.argument("out", type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--min-area", type=int, default=None)
@click.option("--space-factor", type=float, default=None)
def recognize(image, model_file, out, config_path, min_area, space_factor):
    """Read a page image with a trained model and write the recognized text."""

    def go():
        cfg = load_config(config_path)
        raster = imaging.load_image(image)
        model = ocr.load_model(model_file)
        text = pipeline.recognize_page(
            raster,
            model,
            min_area=cfg_value(cfg, "min_area", min_area, 15),
            space_factor=cfg_value(cfg, "space_factor", space_factor, 0.5),
        )
        Path(out).write_text(text + "\n", encoding="utf-8")
        click.echo(f"{len(text)} characters -> {out}")

    run_guarded(go)


@main.command()
@click.argument("original", type=click.Path())
@click.argument("ocr_file", type=click.Path())
@click.option("--out", type=click.Path(), default=None, help="Report JSON path (default: stdout).")
def compare(original, ocr_file, out):
    """Diff OCR output against ground truth and report match statistics."""

    def go():
        a = Path(original).read_text(encoding="utf-8").rstrip("\n")
        b = Path(ocr_file).read_text(encoding="utf-8").rstrip("\n")
        report = textdiff.compare_texts(a, b).to_dict()
        payload = json.dumps(report, indent=2)
        if out:
            Path(out).write_text(payload + "\n", encoding="utf-8")
        else:
            click.echo(payload)
        click.echo(
            f"chars {report['char_match_display']}% words {report['word_match_display']}%",
            err=True,
        )

    run_guarded(go)


@main.command("ingest-corpus")
@click.argument("smart_file", type=click.Path())
@click.argument("label")
@click.argument("out", type=click.Path())
def ingest_corpus(smart_file, label, out):
    """Parse a SMART dot-format file into labeled documents JSON."""

    def go():
        docs = textclass.parse_smart(smart_file)
        payload = [{"doc_id": d.doc_id, "text": d.text, "label": label} for d in docs]
        Path(out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        click.echo(f"{len(docs)} documents labeled {label!r} -> {out}")

    run_guarded(go)


def _load_docs(paths) -> list:
    docs = []
    for p in paths:
        for d in json.loads(Path(p).read_text(encoding="utf-8")):
            docs.append(textclass.Document(doc_id=d["doc_id"], text=d["text"], label=d.get("label")))
    return docs


def _feature_mode(name: str, k: int) -> textclass.FeatureMode:
    return textclass.FeatureMode(kind=name, k=k)


@main.command("train-nb")
@click.argument("doc_files", nargs=-1, required=True, type=click.Path())
@click.option("--out", required=True, type=click.Path())
@click.option("--feature-mode", type=click.Choice(["full_bag", "significant_k"]), default="full_bag")
@click.option("-k", "top_k", type=int, default=5)
@click.option("--stopwords", is_flag=True)
def train_nb(doc_files, out, feature_mode, top_k, stopwords):
    """Train the Naive Bayes classifier from ingested document JSON files."""

    def go():
        docs = _load_docs(doc_files)
        model = textclass.train_nb(docs, _feature_mode(feature_mode, top_k), stopwords)
        textclass.save_nb_model(model, out)
        click.echo(f"trained on {len(docs)} docs, classes {model.classes}, vocab {len(model.vocab)} -> {out}")

    run_guarded(go)


@main.command()
@click.argument("model_file", type=click.Path())
@click.argument("text_file", type=click.Path())
@click.option("--feature-mode", type=click.Choice(["full_bag", "significant_k"]), default="full_bag")
@click.option("-k", "top_k", type=int, default=5)
@click.option("--stopwords", is_flag=True)
def classify(model_file, text_file, feature_mode, top_k, stopwords):
    """Classify one text file, printing the label and posteriors as JSON."""

    def go():
        model = textclass.load_nb_model(model_file)
        doc = textclass.Document(doc_id=text_file, text=Path(text_file).read_text(encoding="utf-8"))
        tokens = textclass.doc_tokens(doc, _feature_mode(feature_mode, top_k), stopwords)
        result = textclass.classify(model, tokens)
        click.echo(json.dumps({
            "label": result.label,
            "posteriors": dict(zip(model.classes, result.posteriors.tolist())),
        }, indent=2))

    run_guarded(go)


@main.command("eval-nb")
@click.argument("model_file", type=click.Path())
@click.argument("doc_files", nargs=-1, required=True, type=click.Path())
@click.option("--out", type=click.Path(), default=None)
@click.option("--feature-mode", type=click.Choice(["full_bag", "significant_k"]), default="full_bag")
@click.option("-k", "top_k", type=int, default=5)
@click.option("--stopwords", is_flag=True)
def eval_nb(model_file, doc_files, out, feature_mode, top_k, stopwords):
    """Evaluate the classifier on labeled document JSON files."""

    def go():
        model = textclass.load_nb_model(model_file)
        docs = _load_docs(doc_files)
        report = textclass.evaluate_nb(model, docs, _feature_mode(feature_mode, top_k), stopwords)
        payload = json.dumps(report, indent=2)
        if out:
            Path(out).write_text(payload + "\n", encoding="utf-8")
        click.echo(f"accuracy {report['accuracy']:.4f} on {report['n_test']} docs")
        if not out:
            click.echo(payload)

    run_guarded(go)


@main.command("pipeline")
@click.option("--workdir", type=click.Path(), default=".", help="Where intermediate files are written.")
@click.option("--noise", type=float, default=0.0, help="Salt-and-pepper probability for the test page.")
@click.option("--jitter", type=int, default=0, help="Per-glyph position jitter in pixels.")
@click.option("--iterations", type=int, default=400)
def pipeline_cmd(workdir, noise, jitter, iterations):
    """One-shot synthetic replication: render, segment, export, train,
    recognize, compare; writes all intermediate artifacts to --workdir."""

    def go():
        wd = Path(workdir)
        wd.mkdir(parents=True, exist_ok=True)
        result = pipeline.run_synthetic_pipeline(
            noise_p=noise, jitter=jitter, hp=Hyperparams(iterations=iterations)
        )
        (wd / "original.txt").write_text(pipeline.SYNTHETIC_TEST_TEXT + "\n", encoding="utf-8")
        (wd / "recognized.txt").write_text(result["ocr_text"] + "\n", encoding="utf-8")
        ocr.save_model(result["model"], wd / "ocr-model.json")
        report = result["report"].to_dict()
        (wd / "report.json").write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
        click.echo(
            f"noise={noise} jitter={jitter}: chars {report['char_match_display']}% "
            f"words {report['word_match_display']}% ({result['n_training_blobs']} training blobs)"
        )

    run_guarded(go)


@main.command("render-fixtures")
@click.option("--workdir", type=click.Path(), default=".", help="Output directory.")
def render_fixtures(workdir):
    """Write the synthetic training sheet and test page as PNG files."""

    def go():
        from PIL import Image

        wd = Path(workdir)
        wd.mkdir(parents=True, exist_ok=True)
        sheet = fonts.render_training_sheet()
        page = fonts.render_text_page(pipeline.SYNTHETIC_TEST_TEXT)
        Image.fromarray(np.repeat(sheet[:, :, None], 3, axis=2)).save(wd / "training-sheet.png")
        Image.fromarray(np.repeat(page[:, :, None], 3, axis=2)).save(wd / "test-page.png")
        (wd / "original.txt").write_text(pipeline.SYNTHETIC_TEST_TEXT + "\n", encoding="utf-8")
        click.echo(f"fixtures -> {wd}")

    run_guarded(go)


@main.command()
@click.option("--workspace", type=click.Path(exists=True), required=True)
@click.option("--port", type=int, default=7878)
@click.option("--host", default="127.0.0.1")
def serve(workspace, port, host):
    """Run the blob-review HTTP service (loopback only by default)."""

    def go():
        import uvicorn

        from .service import create_app

        if not 1024 <= port <= 65535:
            raise ValueError("port must be in [1024, 65535]")
        uvicorn.run(create_app(workspace), host=host, port=port, log_level="warning")

    run_guarded(go)


if __name__ == "__main__":
    main()
