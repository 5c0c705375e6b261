import time

import pytest

from storycoupler.domain import Provenance, WhoKind, WType, byte_substring
from storycoupler.lexicon import (
    Entity, LexiconError, build_lexicon, load_lexicon, match_who,
)
from storycoupler.segmenter import segment_and_tokenize


def test_fixture_lexicon_counts(lexicon):
    kinds = {}
    for e in lexicon.entries:
        kinds.setdefault(e.kind, []).append(e)
    assert len(kinds[WhoKind.TEAM]) == 2
    assert len(kinds[WhoKind.PLAYER]) >= 24
    assert len(kinds[WhoKind.COACH]) == 2


def test_empty_lexicon_matches_nothing():
    lex = build_lexicon([])
    doc = segment_and_tokenize("d", "t", "s", "Durant scored 31 points.")
    assert match_who(doc.sentences[0], lex) == []


def test_duplicate_alias_is_a_load_error():
    with pytest.raises(LexiconError) as err:
        build_lexicon([
            Entity("curry", "Stephen Curry", WhoKind.PLAYER, ("Curry",), "gsw"),
            Entity("s_curry", "Seth Curry", WhoKind.PLAYER, ("Curry",), "dal"),
        ])
    assert err.value.code == "DUPLICATE_ALIAS"


def test_player_without_team_is_rejected():
    with pytest.raises(LexiconError) as err:
        build_lexicon([Entity("x", "X", WhoKind.PLAYER, ("X",), None)])
    assert err.value.code == "MISSING_FIELD"


def test_unreadable_file():
    with pytest.raises(LexiconError) as err:
        load_lexicon("/nonexistent/lexicon.json")
    assert err.value.code == "UNREADABLE_FILE"


def test_fig3_sentence_who_mentions(lexicon):
    from conftest import FIG3_SENTENCE
    doc = segment_and_tokenize("d", "t", "s", FIG3_SENTENCE)
    mentions = match_who(doc.sentences[0], lexicon, FIG3_SENTENCE)
    by_entity = {m.value.entity_id: m for m in mentions}
    # the closed two-team lexicon must not match "Oklahoma City"
    assert set(by_entity) == {"warriors", "durant"}
    assert by_entity["durant"].value.kind is WhoKind.PLAYER
    assert by_entity["warriors"].value.kind is WhoKind.TEAM
    for m in mentions:
        assert m.provenance is Provenance.LEXICON
        assert m.confidence == 1.0


def test_no_roster_words_yields_empty(lexicon):
    doc = segment_and_tokenize("d", "t", "s", "The crowd roared all night.")
    assert match_who(doc.sentences[0], lexicon) == []


def test_longest_match_wins(lexicon):
    text = "Kevin Durant and James Jones traded baskets with LeBron James."
    doc = segment_and_tokenize("d", "t", "s", text)
    mentions = match_who(doc.sentences[0], lexicon, text)
    assert [(m.surface, m.value.entity_id) for m in mentions] == [
        ("Kevin Durant", "durant"),
        ("James Jones", "james_jones"),
        ("LeBron James", "james"),
    ]


def test_multi_token_alias_with_initials(lexicon):
    text = "J.R. Smith hit a corner three."
    doc = segment_and_tokenize("d", "t", "s", text)
    mentions = match_who(doc.sentences[0], lexicon, text)
    assert len(mentions) == 1
    assert mentions[0].value.entity_id == "jr_smith"
    assert mentions[0].surface == "J.R. Smith"


def test_case_insensitive(lexicon):
    text = "DURANT and curry combined for 57."
    doc = segment_and_tokenize("d", "t", "s", text)
    got = {m.value.entity_id for m in match_who(doc.sentences[0], lexicon, text)}
    assert got == {"durant", "curry"}


def test_mentions_never_overlap_and_surfaces_match(lexicon, recap_doc, recap_text):
    for sentence in recap_doc.sentences:
        mentions = match_who(sentence, lexicon, recap_text)
        for a, b in zip(mentions, mentions[1:]):
            assert a.span[1] <= b.span[0]
        for m in mentions:
            surface = byte_substring(recap_text, m.span)
            entity = lexicon.entity(m.value.entity_id)
            assert surface.lower().replace("’", "'") in {
                a.lower() for a in entity.aliases}


def test_matching_speed_on_synthetic_doc(lexicon):
    filler = ("The game stayed close late into the night as both teams "
              "kept trading long possessions and hard fouls. Durant answered. ")
    text = filler * 500  # ~11k tokens
    doc = segment_and_tokenize("d", "t", "s", text)
    n_tokens = sum(len(s.tokens) for s in doc.sentences)
    assert n_tokens >= 10_000
    start = time.perf_counter()
    for sentence in doc.sentences:
        match_who(sentence, lexicon, text)
    elapsed = time.perf_counter() - start
    assert elapsed < 0.1, f"matching took {elapsed:.3f}s on {n_tokens} tokens"
