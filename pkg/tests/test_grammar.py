from fractions import Fraction

import pytest

from storycoupler.domain import (
    Provenance, Region, StatKey, TokenKind, WhatValue, WhenValue, WhereValue,
    WType,
)
from storycoupler.grammar import (
    Capture, Class, EmitSpec, GrammarError, Literal, default_grammar,
    label_sentences, match_grammar, normalize_number, normalize_when,
    normalize_where, parse_grammar,
)
from storycoupler.segmenter import segment_and_tokenize, tokenize

from conftest import FIG3_SENTENCE


def extract(text, grammar):
    doc = segment_and_tokenize("d", "t", "s", text)
    out = []
    for s in doc.sentences:
        out.extend(match_grammar(s, grammar, text))
    return out


def values(mentions, w_type=None):
    return [m.value for m in mentions
            if w_type is None or m.w_type is w_type]


# --- DSL parsing -------------------------------------------------------------

def test_single_rule_parses():
    g = parse_grammar(
        'what points: <Capture n: #NUMBER | #NUMBER_WORD> '
        '("points" | "pts") => POINTS qty=n')
    assert len(g.rules) == 1
    rule = g.rules[0]
    assert rule.w_type is WType.WHAT
    assert rule.emit.stat_key is StatKey.POINTS
    assert rule.emit.qty_capture == "n"
    assert isinstance(rule.pattern[0], Capture)


def test_shipped_grammar_has_full_coverage():
    g = default_grammar()
    assert len(g.rules) >= 20
    what_keys = {r.emit.stat_key for r in g.rules if r.w_type is WType.WHAT}
    assert {StatKey.POINTS, StatKey.REBOUNDS, StatKey.ASSISTS, StatKey.TPM,
            StatKey.STEALS, StatKey.BLOCKS, StatKey.TURNOVERS,
            StatKey.FOULS}.issubset(what_keys)
    assert any(r.w_type is WType.WHEN for r in g.rules)
    assert any(r.w_type is WType.WHERE for r in g.rules)


def test_unknown_capture_reference_is_rejected():
    with pytest.raises(GrammarError) as err:
        parse_grammar('what p: <Capture n: #NUMBER> "points" => POINTS qty=m')
    assert err.value.code == "UNKNOWN_CAPTURE"


def test_unknown_class():
    with pytest.raises(GrammarError) as err:
        parse_grammar('what p: #DIGITS "points" => POINTS')
    assert err.value.code == "UNKNOWN_CLASS"


def test_unknown_stat_key():
    with pytest.raises(GrammarError) as err:
        parse_grammar('what p: #NUMBER "dunks" => DUNKS')
    assert err.value.code == "UNKNOWN_STAT_KEY"


def test_duplicate_rule_name():
    src = ('what p: #NUMBER "points" => POINTS\n'
           'what p: #NUMBER "boards" => REBOUNDS\n')
    with pytest.raises(GrammarError) as err:
        parse_grammar(src)
    assert err.value.code == "DUPLICATE_RULE_NAME"


def test_syntax_error_carries_location():
    with pytest.raises(GrammarError) as err:
        parse_grammar("what broken: @@nope => POINTS")
    assert err.value.code == "SYNTAX_ERROR"
    assert err.value.line == 1
    assert err.value.col is not None


def test_comments_and_blank_lines_are_skipped():
    src = ("# a comment\n\n"
           'what p: #NUMBER "points" => POINTS qty=p\n'
           "   # indented comment\n")
    with pytest.raises(GrammarError):
        # capture p is not defined by the pattern: the error proves the
        # rule line (not the comments) was parsed
        parse_grammar(src)


# --- matching ----------------------------------------------------------------

def test_fig3_sentence(grammar):
    mentions = extract(FIG3_SENTENCE, grammar)
    whats = values(mentions, WType.WHAT)
    whens = values(mentions, WType.WHEN)
    wheres = values(mentions, WType.WHERE)
    assert whats == [WhatValue(StatKey.POINTS, Fraction(14))]
    assert WhenValue(quarter=4) in whens
    assert WhenValue(seconds_remaining_in_quarter=180.0) in whens
    assert wheres == []
    for m in mentions:
        assert m.provenance is Provenance.GRAMMAR


def test_verb_context_bare_number(grammar):
    mentions = extract("Durant added 15.", grammar)
    assert values(mentions) == [WhatValue(StatKey.POINTS, Fraction(15))]


def test_bare_number_without_verb_is_ignored(grammar):
    assert extract("Cleveland trailed by 15 early.", grammar) == []


def test_minutes_left(grammar):
    mentions = extract("They led with three minutes left.", grammar)
    assert values(mentions) == [WhenValue(seconds_remaining_in_quarter=180.0)]


def test_paint(grammar):
    mentions = extract("He scored most of his points in the paint.", grammar)
    assert WhereValue(Region.PAINT) in values(mentions)


def test_noun_beats_verb_rule_on_shared_prefix(grammar):
    mentions = extract("He added 11 rebounds and added 12.", grammar)
    assert values(mentions) == [WhatValue(StatKey.REBOUNDS, Fraction(11)),
                                WhatValue(StatKey.POINTS, Fraction(12))]


def test_mentions_do_not_share_tokens(grammar, recap_doc, recap_text):
    for sentence in recap_doc.sentences:
        mentions = match_grammar(sentence, grammar, recap_text)
        for a, b in zip(mentions, mentions[1:]):
            assert a.span[1] <= b.span[0]


def test_match_is_deterministic(grammar, recap_doc, recap_text):
    for sentence in recap_doc.sentences[:5]:
        first = match_grammar(sentence, grammar, recap_text)
        again = match_grammar(sentence, grammar, recap_text)
        assert first == again


# --- normalization -----------------------------------------------------------

def _toks(text):
    return tokenize(text, 0)


def test_normalize_number_literal():
    assert normalize_number(_toks("14")) == Fraction(14)


def test_normalize_number_word():
    assert normalize_number(_toks("five")) == Fraction(5)


def test_normalize_number_compound():
    assert normalize_number(_toks("twenty five")) == Fraction(25)


def test_normalize_number_decimal():
    assert normalize_number(_toks("23.5")) == Fraction(47, 2)


def test_normalize_number_rejects_words():
    with pytest.raises(GrammarError) as err:
        normalize_number(_toks("dozen"))
    assert err.value.code == "NOT_A_NUMBER"
    with pytest.raises(GrammarError):
        normalize_number(_toks("five twenty"))


def test_normalize_when_quarter():
    emit = EmitSpec(w_type=WType.WHEN, quarter_capture="q")
    got = normalize_when({"q": _toks("fourth")}, emit)
    assert got == WhenValue(quarter=4)


def test_normalize_when_minutes():
    emit = EmitSpec(w_type=WType.WHEN, minutes_capture="m")
    got = normalize_when({"m": _toks("three")}, emit)
    assert got.seconds_remaining_in_quarter == 180.0


def test_normalize_when_clock():
    emit = EmitSpec(w_type=WType.WHEN, clock_capture="c")
    got = normalize_when({"c": _toks("3:09")}, emit)
    assert got.seconds_remaining_in_quarter == 189.0


def test_normalize_when_out_of_range():
    emit = EmitSpec(w_type=WType.WHEN, minutes_capture="m")
    with pytest.raises(GrammarError) as err:
        normalize_when({"m": _toks("fifteen")}, emit)
    assert err.value.code == "OUT_OF_RANGE"


def test_normalize_where():
    assert normalize_where(Region.PAINT) == WhereValue(Region.PAINT)


# --- sentence labeling ---------------------------------------------------------

def test_label_sentences(grammar):
    text = (FIG3_SENTENCE + " The game was played in Cleveland. "
            "Love grabbed 13 rebounds.")
    doc = segment_and_tokenize("d", "t", "s", text)
    labels = label_sentences(doc, grammar)
    assert [l["label"] for l in labels] == ["STAT", "NO_STAT", "STAT"]


def test_label_sentences_empty_doc(grammar):
    doc = segment_and_tokenize("d", "t", "s", "")
    assert label_sentences(doc, grammar) == []
