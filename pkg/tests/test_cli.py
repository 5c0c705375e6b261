import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from storycoupler.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="module")
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def pipeline_dir(tmp_path_factory, runner):
    """Run train -> extract -> couple once; several tests reuse the outputs."""
    root = tmp_path_factory.mktemp("pipeline")
    model_path = root / "model.json"
    result = runner.invoke(main, [
        "train", "--corpus", str(FIXTURES / "corpus"),
        "--out", str(model_path), "--seed", "42"])
    assert result.exit_code == 0, result.output
    result = runner.invoke(main, [
        "extract", "--story", str(FIXTURES / "recap_game3.txt"),
        "--lexicon", str(FIXTURES / "lexicon_2017_finals.json"),
        "--model", str(model_path), "--out", str(root)])
    assert result.exit_code == 0, result.output
    result = runner.invoke(main, [
        "couple", "--mentions", str(root / "mentions.json"),
        "--game", str(FIXTURES / "game3_2017_finals.json"),
        "--out", str(root / "coupled.json"), "--strict"])
    assert result.exit_code == 0, result.output
    return root


def test_train_reports_metrics(pipeline_dir, runner):
    # re-run into a fresh file and check the printed report
    out = pipeline_dir / "model2.json"
    result = runner.invoke(main, [
        "train", "--corpus", str(FIXTURES / "corpus"),
        "--out", str(out), "--seed", "42"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["windows"] >= 600
    assert report["accuracy"] >= 0.95
    # determinism: same seed, same corpus -> identical bytes
    assert out.read_bytes() == (pipeline_dir / "model.json").read_bytes()


def test_extract_report_counts(pipeline_dir):
    payload = json.loads((pipeline_dir / "mentions.json").read_text())
    report = payload["report"]
    assert report["by_w_type"].get("WHO", 0) >= 1
    assert report["by_w_type"].get("WHAT", 0) >= 1
    assert report["by_w_type"].get("WHEN", 0) >= 1


def test_extract_empty_story_is_ok(runner, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    result = runner.invoke(main, [
        "extract", "--story", str(empty),
        "--lexicon", str(FIXTURES / "lexicon_2017_finals.json"),
        "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    payload = json.loads((tmp_path / "mentions.json").read_text())
    assert payload["mentions"] == []


def test_extract_missing_lexicon_exits_1(runner, tmp_path):
    result = runner.invoke(main, [
        "extract", "--story", str(FIXTURES / "recap_game3.txt"),
        "--lexicon", str(tmp_path / "missing.json"),
        "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "UNREADABLE_FILE" in result.output


def test_train_single_story_exits_1(runner, tmp_path):
    story = tmp_path / "only.txt"
    story.write_text("Durant scored 31 points. The game mattered little.")
    result = runner.invoke(main, ["train", "--corpus", str(tmp_path),
                                  "--out", str(tmp_path / "m.json")])
    assert result.exit_code == 1


def test_couple_corrupted_mentions_exits_1(runner, tmp_path):
    bad = tmp_path / "mentions.json"
    bad.write_text('{"not": "a mentions file"}')
    result = runner.invoke(main, [
        "couple", "--mentions", str(bad),
        "--game", str(FIXTURES / "game3_2017_finals.json"),
        "--out", str(tmp_path / "coupled.json")])
    assert result.exit_code == 1
    assert "SCHEMA_MISMATCH" in result.output


def test_coupled_output_round_trips(pipeline_dir):
    from storycoupler.domain import (
        decode_coupled_document, validate_coupled_document)
    cd = decode_coupled_document((pipeline_dir / "coupled.json").read_text())
    assert validate_coupled_document(cd) == []
    assert "durant" in cd.inverse_index.by_entity


def test_pipeline_is_rerunnable_with_identical_bytes(pipeline_dir, runner,
                                                     tmp_path):
    result = runner.invoke(main, [
        "extract", "--story", str(FIXTURES / "recap_game3.txt"),
        "--lexicon", str(FIXTURES / "lexicon_2017_finals.json"),
        "--model", str(pipeline_dir / "model.json"), "--out", str(tmp_path)])
    assert result.exit_code == 0
    assert (tmp_path / "mentions.json").read_bytes() == \
        (pipeline_dir / "mentions.json").read_bytes()


def test_eval_command(pipeline_dir, runner):
    result = runner.invoke(main, [
        "eval", "--model", str(pipeline_dir / "model.json"),
        "--corpus", str(FIXTURES / "corpus")])
    assert result.exit_code == 0, result.output
    metrics = json.loads(result.output)
    assert metrics["accuracy"] >= 0.95


def test_threshold_validation(runner, tmp_path):
    result = runner.invoke(main, [
        "extract", "--story", str(FIXTURES / "recap_game3.txt"),
        "--lexicon", str(FIXTURES / "lexicon_2017_finals.json"),
        "--out", str(tmp_path), "--threshold", "1.5"])
    assert result.exit_code == 1
