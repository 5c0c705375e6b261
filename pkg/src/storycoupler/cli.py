"""Offline pipeline CLI: extract, train, couple, eval, serve.

Each stage reads and writes plain files, so stages can be re-run
independently; unchanged inputs produce byte-identical outputs.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import classifier as clf
from .coupler import couple
from .domain import encode_coupled_document, validate_coupled_document
from .gamedata import GameDataError, load_game
from .grammar import GrammarError, default_grammar, load_grammar
from .lexicon import LexiconError, load_lexicon
from .pipeline import (
    decode_extraction, encode_extraction, extract_from_text,
    extraction_report,
)
from .segmenter import segment_and_tokenize


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _load_grammar_opt(grammar_path: str | None):
    try:
        return load_grammar(grammar_path) if grammar_path else default_grammar()
    except (OSError, GrammarError) as exc:
        _fail(str(exc))


def _load_corpus(corpus_dir: str) -> list:
    root = Path(corpus_dir)
    if not root.is_dir():
        _fail(f"UNREADABLE_FILE: corpus dir {corpus_dir} not found")
    manifest_path = root / "manifest.json"
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        names = [s["file"] for s in manifest["stories"]]
    else:
        names = sorted(p.name for p in root.glob("*.txt"))
    docs = []
    for name in names:
        text = (root / name).read_text(encoding="utf-8")
        docs.append(segment_and_tokenize(Path(name).stem, Path(name).stem,
                                         str(root / name), text))
    return docs


@click.group()
def main() -> None:
    """Couple recap text to game-data visualizations."""


@main.command()
@click.option("--story", required=True, type=click.Path(), help="Recap text file.")
@click.option("--lexicon", "lexicon_path", required=True, type=click.Path())
@click.option("--grammar", "grammar_path", type=click.Path(), default=None,
              help="Rule file; defaults to the shipped basketball grammar.")
@click.option("--model", "model_path", type=click.Path(), default=None,
              help="Classifier model file; omit to skip the classifier pass.")
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--threshold", type=float, default=0.8, show_default=True)
def extract(story, lexicon_path, grammar_path, model_path, out_dir, threshold):
    """Run segmentation and 4W extraction; write mentions.json."""
    if not 0 < threshold < 1:
        _fail(f"threshold {threshold} not in (0, 1)")
    try:
        raw_text = Path(story).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(f"UNREADABLE_FILE: {exc}")
    try:
        lex = load_lexicon(lexicon_path)
    except LexiconError as exc:
        _fail(str(exc))
    g = _load_grammar_opt(grammar_path)
    model = None
    if model_path:
        try:
            model = clf.load_model(model_path)
        except (OSError, KeyError, json.JSONDecodeError) as exc:
            _fail(f"UNREADABLE_FILE: model {model_path}: {exc}")

    doc, mentions = extract_from_text(
        Path(story).stem, Path(story).stem, story, raw_text, lex, g,
        model, threshold)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "mentions.json").write_text(encode_extraction(doc, mentions),
                                       encoding="utf-8")
    report = extraction_report(mentions)
    click.echo(json.dumps(report, indent=2, sort_keys=True))


@main.command()
@click.option("--corpus", "corpus_dir", required=True, type=click.Path())
@click.option("--grammar", "grammar_path", type=click.Path(), default=None)
@click.option("--out", "model_out", required=True, type=click.Path(),
              help="Where to write the model JSON.")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--reg-lambda", type=float, default=1e-4, show_default=True)
@click.option("--epochs", type=int, default=20, show_default=True)
def train(corpus_dir, grammar_path, model_out, seed, reg_lambda, epochs):
    """Bootstrap windows from the grammar and fit the stat classifier."""
    docs = _load_corpus(corpus_dir)
    if len(docs) < 2:
        _fail(f"corpus has {len(docs)} stories; need at least 2")
    g = _load_grammar_opt(grammar_path)
    try:
        windows = clf.build_windows(docs, g, seed=seed)
        model = clf.train(windows, clf.Hyperparams(
            reg_lambda=reg_lambda, epochs=epochs, seed=seed))
    except clf.ClassifierError as exc:
        _fail(str(exc))
    Path(model_out).parent.mkdir(parents=True, exist_ok=True)
    clf.save_model(model, model_out)
    click.echo(json.dumps({"windows": len(windows),
                           **model.training_report},
                          indent=2, sort_keys=True))


@main.command("couple")
@click.option("--mentions", "mentions_path", required=True, type=click.Path(),
              help="mentions.json written by the extract stage.")
@click.option("--game", "game_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--strict/--lenient", default=True, show_default=True)
def couple_cmd(mentions_path, game_path, out_path, strict):
    """Bind mentions to game data; write the coupled document JSON."""
    try:
        doc, mentions = decode_extraction(
            Path(mentions_path).read_text(encoding="utf-8"))
    except OSError as exc:
        _fail(f"UNREADABLE_FILE: {exc}")
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        _fail(f"SCHEMA_MISMATCH: {mentions_path}: {exc}")
    try:
        game = load_game(game_path, strict=strict)
    except GameDataError as exc:
        _fail(str(exc))

    cd = couple(doc, mentions, game)
    report = validate_coupled_document(cd)
    if report and strict:
        lines = "; ".join(f"{v.code}: {v.message}" for v in report[:5])
        _fail(f"VALIDATION_FAILED: {lines}")
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    Path(out_path).write_text(encode_coupled_document(cd), encoding="utf-8")
    click.echo(f"wrote {out_path} "
               f"({len(cd.mentions)} mentions, {len(cd.viz_states)} sentences)")


@main.command("eval")
@click.option("--model", "model_path", required=True, type=click.Path())
@click.option("--corpus", "corpus_dir", required=True, type=click.Path())
@click.option("--grammar", "grammar_path", type=click.Path(), default=None)
@click.option("--seed", type=int, default=42, show_default=True)
def eval_cmd(model_path, corpus_dir, grammar_path, seed):
    """Evaluate a trained model on windows cut from a corpus."""
    docs = _load_corpus(corpus_dir)
    g = _load_grammar_opt(grammar_path)
    try:
        model = clf.load_model(model_path)
        windows = clf.build_windows(docs, g, seed=seed)
        metrics = clf.evaluate(model, windows)
    except (OSError, clf.ClassifierError) as exc:
        _fail(str(exc))
    click.echo(json.dumps(metrics, indent=2, sort_keys=True))


@main.command()
@click.option("--coupling", "coupling_path", required=True, type=click.Path(),
              help="Coupled document JSON from the couple stage.")
@click.option("--game", "game_path", required=True, type=click.Path())
@click.option("--static", "static_dir", type=click.Path(), default=None,
              help="Directory of built UI assets served at /.")
@click.option("--port", type=int, default=8700, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(coupling_path, game_path, static_dir, port, host):
    """Serve the coupled document and game data to the reading UI."""
    import uvicorn

    from .service import build_app

    try:
        app = build_app(coupling_path, game_path, static_dir=static_dir)
    except (OSError, ValueError, GameDataError) as exc:
        _fail(str(exc))
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
