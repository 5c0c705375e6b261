from fractions import Fraction

import pytest

from storycoupler.domain import (
    CoupledDocument, InverseIndex, NarrativeDocument, Provenance, Region,
    Sentence, StatKey, Token, TokenKind, VizState, WhatValue, WhenValue,
    WhereValue, WhoKind, WhoValue, WMention, WType, byte_substring,
    coupled_document_from_dict, coupled_document_to_dict,
    decode_coupled_document, dumps_canonical, encode_coupled_document,
    mention_from_dict, mention_to_dict, validate_coupled_document,
    wvalue_from_dict, wvalue_to_dict,
)


def _tiny_doc():
    text = "Durant scored 14 points. The crowd roared."
    t0 = [Token("Durant", (0, 6), "durant", TokenKind.WORD),
          Token("scored", (7, 13), "scored", TokenKind.WORD),
          Token("14", (14, 16), "14", TokenKind.NUMBER),
          Token("points", (17, 23), "points", TokenKind.WORD),
          Token(".", (23, 24), ".", TokenKind.PUNCT)]
    s0 = Sentence(0, (0, 24), tuple(t0))
    s1 = Sentence(1, (25, 42), ())
    return NarrativeDocument("d1", "t", "src", text, (s0, s1))


def _tiny_coupled():
    doc = _tiny_doc()
    mentions = (
        WMention(0, WType.WHO, (0, 6), "Durant",
                 WhoValue("durant", WhoKind.PLAYER), Provenance.LEXICON, 1.0),
        WMention(0, WType.WHAT, (7, 16), "scored 14",
                 WhatValue(StatKey.POINTS, Fraction(14)),
                 Provenance.GRAMMAR, 1.0),
    )
    viz = {0: VizState(players=frozenset(["durant"]),
                       stat_keys=frozenset([StatKey.POINTS])),
           1: VizState()}
    index = InverseIndex(by_entity={"durant": (0,)},
                         by_stat={StatKey.POINTS: (0,)})
    return CoupledDocument(doc, mentions, viz, index)


def test_valid_document_has_empty_report():
    assert validate_coupled_document(_tiny_coupled()) == []


def test_out_of_range_sentence_index_is_flagged():
    cd = _tiny_coupled()
    bad = cd.mentions + (WMention(
        999, WType.WHO, (0, 6), "Durant",
        WhoValue("durant", WhoKind.PLAYER), Provenance.LEXICON, 1.0),)
    report = validate_coupled_document(
        CoupledDocument(cd.document, bad, cd.viz_states, cd.inverse_index))
    assert [v.code for v in report] == ["SENTENCE_RANGE"]


def test_missing_index_entry_is_a_round_trip_violation():
    cd = _tiny_coupled()
    stripped = InverseIndex(by_entity={},
                            by_stat=dict(cd.inverse_index.by_stat))
    report = validate_coupled_document(
        CoupledDocument(cd.document, cd.mentions, cd.viz_states, stripped))
    assert [v.code for v in report] == ["ROUND_TRIP"]


def test_provenance_constraints_are_checked():
    cd = _tiny_coupled()
    bad = (WMention(0, WType.WHEN, (0, 6), "Durant",
                    WhenValue(quarter=4), Provenance.LEXICON, 1.0),)
    report = validate_coupled_document(
        CoupledDocument(cd.document, bad, cd.viz_states, cd.inverse_index))
    codes = {v.code for v in report}
    assert "PROVENANCE_WTYPE" in codes


def test_byte_substring_uses_utf8_offsets():
    text = "José hit a three."
    assert byte_substring(text, (0, 5)) == "José"
    assert byte_substring(text, (6, 9)) == "hit"


@pytest.mark.parametrize("value", [
    WhoValue("durant", WhoKind.PLAYER),
    WhatValue(StatKey.POINTS, Fraction(14)),
    WhatValue(StatKey.UNKNOWN_STAT, None),
    WhatValue(StatKey.MINUTES, Fraction(47, 2)),
    WhenValue(quarter=4),
    WhenValue(quarter=None, seconds_remaining_in_quarter=180.0),
    WhenValue(quarter=4, seconds_remaining_in_quarter=180.0,
              is_interval=True, interval_end_seconds=0.0),
    WhereValue(Region.PAINT),
])
def test_wvalue_round_trip(value):
    assert wvalue_from_dict(wvalue_to_dict(value)) == value


def test_mention_round_trip():
    m = _tiny_coupled().mentions[1]
    assert mention_from_dict(mention_to_dict(m)) == m


def test_coupled_document_round_trip_is_byte_identical():
    cd = _tiny_coupled()
    encoded = encode_coupled_document(cd)
    decoded = decode_coupled_document(encoded)
    assert decoded == cd
    assert encode_coupled_document(decoded) == encoded


def test_schema_version_is_enforced():
    payload = coupled_document_to_dict(_tiny_coupled())
    payload["schema_version"] = "99.0"
    with pytest.raises(ValueError):
        coupled_document_from_dict(payload)


def test_canonical_dumps_sorts_keys():
    assert dumps_canonical({"b": 1, "a": 2}) == '{"a":2,"b":1}'
