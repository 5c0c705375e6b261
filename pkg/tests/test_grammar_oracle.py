"""Grammar-engine vs regex-oracle equivalence on the 50-sentence corpus."""

from fractions import Fraction

from storycoupler.domain import (
    Region, StatKey, WhatValue, WhenValue, WhereValue, WType, byte_substring,
)
from storycoupler.grammar import match_grammar
from storycoupler.segmenter import segment_and_tokenize

from regex_oracle import compile_oracle, oracle_mentions


def _mini_doc(fixtures_dir):
    text = (fixtures_dir / "minicorpus.txt").read_text(encoding="utf-8")
    return text, segment_and_tokenize("mini", "mini", "fixture", text)


def test_minicorpus_has_50_sentences(fixtures_dir):
    _, doc = _mini_doc(fixtures_dir)
    assert len(doc.sentences) == 50


def test_engine_agrees_with_oracle_on_every_sentence(fixtures_dir, grammar):
    text, doc = _mini_doc(fixtures_dir)
    compiled = compile_oracle(grammar)
    disagreements = []
    for sentence in doc.sentences:
        engine = [(m.w_type, m.span, m.value)
                  for m in match_grammar(sentence, grammar, text)]
        sentence_text = byte_substring(text, sentence.span)
        oracle = oracle_mentions(sentence_text, sentence.span[0], compiled)
        if engine != oracle:
            disagreements.append((sentence.index, sentence_text, engine, oracle))
    assert not disagreements, disagreements[:3]


# Hand-derived expectations for a labeled subset (rule table applied by hand);
# both routes must reproduce them exactly.
HAND_LABELS = {
    0: [(WType.WHAT, WhatValue(StatKey.POINTS, Fraction(25))),
        (WType.WHEN, WhenValue(quarter=1))],
    1: [(WType.WHAT, WhatValue(StatKey.POINTS, Fraction(15)))],
    2: [(WType.WHAT, WhatValue(StatKey.TPM, Fraction(5))),
        (WType.WHEN, WhenValue(quarter=2))],
    4: [(WType.WHAT, WhatValue(StatKey.REBOUNDS, Fraction(13))),
        (WType.WHAT, WhatValue(StatKey.ASSISTS, Fraction(4)))],
    5: [(WType.WHAT, WhatValue(StatKey.REBOUNDS, Fraction(12))),
        (WType.WHAT, WhatValue(StatKey.ASSISTS, Fraction(11)))],
    12: [(WType.WHAT, WhatValue(StatKey.FTM, Fraction(4))),
         (WType.WHEN, WhenValue(seconds_remaining_in_quarter=60.0,
                                is_interval=True, interval_end_seconds=0.0))],
    16: [(WType.WHAT, WhatValue(StatKey.POINTS, Fraction(25))),
         (WType.WHEN, WhenValue(quarter=2, seconds_remaining_in_quarter=0.0))],
    20: [(WType.WHEN, WhenValue(seconds_remaining_in_quarter=522.0))],
    24: [(WType.WHERE, WhereValue(Region.PAINT))],
    38: [(WType.WHEN, WhenValue(seconds_remaining_in_quarter=240.0))],
    43: [(WType.WHEN, WhenValue(quarter=4))],
    49: [],
}


def test_hand_labeled_subset(fixtures_dir, grammar):
    text, doc = _mini_doc(fixtures_dir)
    for index, expected in HAND_LABELS.items():
        got = [(m.w_type, m.value)
               for m in match_grammar(doc.sentences[index], grammar, text)]
        assert got == expected, (index,
                                 byte_substring(text, doc.sentences[index].span),
                                 got)


def test_rule_injection_monotonicity(fixtures_dir, grammar):
    """Appending a lowest-priority rule only ever adds mentions or replaces
    overlapping ones it wins by length; it never silently drops others."""
    from storycoupler.grammar import parse_grammar

    text, doc = _mini_doc(fixtures_dir)
    source = (fixtures_dir.parent.parent / "src" / "storycoupler" / "data"
              / "basketball.grammar").read_text(encoding="utf-8")
    extended = parse_grammar(
        source + '\nwhat dunks: <Capture n: #NUMBER | #NUMBER_WORD> '
        '("dunks" | "dunk") => FGM qty=n\n')
    for sentence in doc.sentences:
        before = match_grammar(sentence, grammar, text)
        after = match_grammar(sentence, extended, text)
        lost = [m for m in before if m not in after]
        for m in lost:
            # each lost mention must be explained by a new overlapping winner
            assert any(n not in before
                       and not (n.span[1] <= m.span[0] or n.span[0] >= m.span[1])
                       for n in after), (m, before, after)
