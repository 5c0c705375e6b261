import json
from pathlib import Path

import pytest

from storycoupler.classifier import Hyperparams, build_windows, train
from storycoupler.gamedata import load_game
from storycoupler.grammar import default_grammar
from storycoupler.lexicon import load_lexicon
from storycoupler.segmenter import segment_and_tokenize

FIXTURES = Path(__file__).parent / "fixtures"

FIG3_SENTENCE = (
    "The Warriors trailed by six with three minutes left before Durant, "
    "criticized for leaving Oklahoma City last summer to chase a "
    "championship, brought them back, scoring 14 in the fourth."
)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(str(FIXTURES / "lexicon_2017_finals.json"))


@pytest.fixture(scope="session")
def grammar():
    return default_grammar()


@pytest.fixture(scope="session")
def game():
    return load_game(str(FIXTURES / "game3_2017_finals.json"), strict=True)


@pytest.fixture(scope="session")
def recap_text():
    return (FIXTURES / "recap_game3.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def recap_doc(recap_text):
    return segment_and_tokenize("recap-g3", "Warriors 118, Cavaliers 113",
                                "fixture", recap_text)


@pytest.fixture(scope="session")
def corpus_docs():
    docs = []
    manifest = json.loads(
        (FIXTURES / "corpus" / "manifest.json").read_text(encoding="utf-8"))
    for story in manifest["stories"]:
        path = FIXTURES / "corpus" / story["file"]
        docs.append(segment_and_tokenize(
            Path(story["file"]).stem, story["title"], str(path),
            path.read_text(encoding="utf-8")))
    return docs


@pytest.fixture(scope="session")
def corpus_windows(corpus_docs, grammar):
    return build_windows(corpus_docs, grammar, seed=42)


@pytest.fixture(scope="session")
def trained_model(corpus_windows):
    return train(corpus_windows, Hyperparams(reg_lambda=1e-4, epochs=20, seed=42))
