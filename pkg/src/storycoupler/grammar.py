"""Production-rule grammar over token streams for WHAT/WHEN/WHERE extraction.

Rules live in a line-oriented DSL file, one rule per line:

    <wtype> <name>: <pattern> => <emit>

Pattern atoms: quoted literals ("points", matched against token norms;
a quoted string with spaces expands to consecutive literals), token
classes (#NUMBER, #NUMBER_WORD, #CLOCK, #ORDINAL), alternation
(a|b), optional groups [ ... ], and captures <Capture name: ...>.

Emit clauses: WHAT rules name a stat key plus an optional quantity
capture (POINTS qty=n); WHEN rules combine quarter/minutes/seconds/clock
captures and constants (quarter=q, minutes=m, clock=c, quarter:4,
seconds:0, interval_to:0); WHERE rules name a region constant (PAINT).

Matching scans left to right, trying every rule at each token position;
the longest match wins, ties break to the earliest rule in the file, and
matched tokens are consumed so mentions never share a token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union

from .domain import (
    Provenance, Region, Sentence, StatKey, Token, TokenKind, WhatValue,
    WhenValue, WhereValue, WMention, WType, WValue, byte_substring,
)
from .segmenter import NUMBER_WORD_VALUES, ORDINAL_WORD_VALUES

QUARTER_SECONDS = 720.0

_MATCHABLE_CLASSES = {
    "NUMBER": TokenKind.NUMBER,
    "NUMBER_WORD": TokenKind.NUMBER_WORD,
    "CLOCK": TokenKind.CLOCK,
    "ORDINAL": TokenKind.ORDINAL,
}


class GrammarError(Exception):
    def __init__(self, code: str, message: str,
                 line: Optional[int] = None, col: Optional[int] = None):
        loc = f" (line {line}, col {col})" if line is not None else ""
        super().__init__(f"{code}: {message}{loc}")
        self.code = code
        self.line = line
        self.col = col


# --- pattern atoms -----------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    norm: str


@dataclass(frozen=True)
class Class:
    kind: TokenKind


@dataclass(frozen=True)
class Alt:
    branches: tuple[tuple["PatternAtom", ...], ...]


@dataclass(frozen=True)
class Opt:
    atoms: tuple["PatternAtom", ...]


@dataclass(frozen=True)
class Capture:
    name: str
    atoms: tuple["PatternAtom", ...]


PatternAtom = Union[Literal, Class, Alt, Opt, Capture]


@dataclass(frozen=True)
class EmitSpec:
    w_type: WType
    stat_key: Optional[StatKey] = None
    qty_capture: Optional[str] = None
    quarter_capture: Optional[str] = None
    quarter_const: Optional[int] = None
    minutes_capture: Optional[str] = None
    seconds_capture: Optional[str] = None
    clock_capture: Optional[str] = None
    seconds_const: Optional[float] = None
    interval_end_const: Optional[float] = None
    region: Optional[Region] = None

    def capture_names(self) -> list[str]:
        return [c for c in (self.qty_capture, self.quarter_capture,
                            self.minutes_capture, self.seconds_capture,
                            self.clock_capture) if c is not None]


@dataclass(frozen=True)
class GrammarRule:
    name: str
    w_type: WType
    pattern: tuple[PatternAtom, ...]
    emit: EmitSpec
    priority: int


@dataclass(frozen=True)
class Grammar:
    rules: tuple[GrammarRule, ...]
    number_word_table: dict[str, int] = field(
        default_factory=lambda: dict(NUMBER_WORD_VALUES))


# --- DSL lexer / parser ------------------------------------------------------

_DSL_TOKEN_RE = re.compile(r"""
    (?P<STRING>"[^"]*")
  | (?P<CLASS>\#[A-Z_]+)
  | (?P<ARROW>=>)
  | (?P<NUMBER>\d+(?:\.\d+)?)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<PUNCT>[()\[\]<>|:=])
  | (?P<WS>\s+)
""", re.VERBOSE)


def _lex_line(text: str, line_no: int) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _DSL_TOKEN_RE.match(text, pos)
        if m is None:
            raise GrammarError("SYNTAX_ERROR",
                               f"unexpected character {text[pos]!r}",
                               line_no, pos + 1)
        kind = m.lastgroup
        if kind != "WS":
            out.append((kind, m.group(), pos + 1))
        pos = m.end()
    return out


class _RuleParser:
    def __init__(self, tokens: list[tuple[str, str, int]], line_no: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no

    def error(self, message: str, code: str = "SYNTAX_ERROR") -> GrammarError:
        col = self.tokens[self.pos][2] if self.pos < len(self.tokens) else \
            (self.tokens[-1][2] if self.tokens else 1)
        return GrammarError(code, message, self.line_no, col)

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: Optional[str] = None,
             value: Optional[str] = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of rule")
        if kind is not None and tok[0] != kind:
            raise self.error(f"expected {kind}, found {tok[1]!r}")
        if value is not None and tok[1] != value:
            raise self.error(f"expected {value!r}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def at_punct(self, ch: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "PUNCT" and tok[1] == ch

    # pattern := atom+ (until => or a closing delimiter)
    def parse_seq(self, stop: set[str], in_capture: bool) -> tuple[PatternAtom, ...]:
        atoms: list[PatternAtom] = []
        while True:
            tok = self.peek()
            if tok is None or tok[0] == "ARROW":
                break
            if tok[0] == "PUNCT" and tok[1] in stop:
                break
            atoms.extend(self.parse_atoms(in_capture))
        if not atoms:
            raise self.error("empty pattern sequence")
        return tuple(atoms)

    def parse_alternation(self, stop: set[str],
                          in_capture: bool) -> tuple[PatternAtom, ...]:
        branches = [self.parse_seq(stop | {"|"}, in_capture)]
        while self.at_punct("|"):
            self.take()
            branches.append(self.parse_seq(stop | {"|"}, in_capture))
        if len(branches) == 1:
            return branches[0]
        return (Alt(tuple(branches)),)

    def parse_atoms(self, in_capture: bool) -> list[PatternAtom]:
        """One syntactic atom; multi-word literals expand to several."""
        tok = self.peek()
        assert tok is not None
        kind, value, col = tok
        if kind == "STRING":
            self.take()
            words = value[1:-1].split()
            if not words:
                raise self.error("empty literal")
            return [Literal(w.lower()) for w in words]
        if kind == "CLASS":
            self.take()
            name = value[1:]
            if name not in _MATCHABLE_CLASSES:
                raise GrammarError("UNKNOWN_CLASS",
                                   f"no such token class {value!r}",
                                   self.line_no, col)
            return [Class(_MATCHABLE_CLASSES[name])]
        if kind == "PUNCT" and value == "(":
            self.take()
            inner = self.parse_alternation({")"}, in_capture)
            self.take("PUNCT", ")")
            return list(inner)
        if kind == "PUNCT" and value == "[":
            self.take()
            inner = self.parse_alternation({"]"}, in_capture)
            self.take("PUNCT", "]")
            return [Opt(inner)]
        if kind == "PUNCT" and value == "<":
            if in_capture:
                raise self.error("captures cannot nest")
            self.take()
            self.take("IDENT", "Capture")
            name = self.take("IDENT")[1]
            self.take("PUNCT", ":")
            inner = self.parse_alternation({">"}, True)
            self.take("PUNCT", ">")
            return [Capture(name, inner)]
        raise self.error(f"unexpected {value!r} in pattern")


def _collect_capture_names(atoms: tuple[PatternAtom, ...],
                           into: list[str]) -> None:
    for a in atoms:
        if isinstance(a, Capture):
            into.append(a.name)
            _collect_capture_names(a.atoms, into)
        elif isinstance(a, Alt):
            for b in a.branches:
                _collect_capture_names(b, into)
        elif isinstance(a, Opt):
            _collect_capture_names(a.atoms, into)


def _parse_emit(p: _RuleParser, w_type: WType) -> EmitSpec:
    if w_type is WType.WHAT:
        key_tok = p.take("IDENT")
        try:
            stat_key = StatKey(key_tok[1])
        except ValueError:
            raise GrammarError("UNKNOWN_STAT_KEY",
                               f"no such stat key {key_tok[1]!r}",
                               p.line_no, key_tok[2])
        qty = None
        if p.peek() is not None:
            p.take("IDENT", "qty")
            p.take("PUNCT", "=")
            qty = p.take("IDENT")[1]
        return EmitSpec(w_type=w_type, stat_key=stat_key, qty_capture=qty)

    if w_type is WType.WHERE:
        key_tok = p.take("IDENT")
        try:
            region = Region(key_tok[1])
        except ValueError:
            raise GrammarError("UNKNOWN_REGION",
                               f"no such region {key_tok[1]!r}",
                               p.line_no, key_tok[2])
        return EmitSpec(w_type=w_type, region=region)

    # WHEN: space-separated key=capture / key:constant terms
    fields: dict = {}
    while p.peek() is not None:
        key = p.take("IDENT")[1]
        sep = p.take("PUNCT")
        if sep[1] == "=":
            cap = p.take("IDENT")[1]
            mapping = {"quarter": "quarter_capture", "minutes": "minutes_capture",
                       "seconds": "seconds_capture", "clock": "clock_capture"}
            if key not in mapping:
                raise p.error(f"unknown when-capture key {key!r}")
            fields[mapping[key]] = cap
        elif sep[1] == ":":
            num = p.take("NUMBER")[1]
            if key == "quarter":
                fields["quarter_const"] = int(num)
            elif key == "seconds":
                fields["seconds_const"] = float(num)
            elif key == "interval_to":
                fields["interval_end_const"] = float(num)
            else:
                raise p.error(f"unknown when-constant key {key!r}")
        else:
            raise p.error(f"expected '=' or ':' after {key!r}")
    if not fields:
        raise p.error("when rule emits nothing")
    return EmitSpec(w_type=w_type, **fields)


def parse_grammar(source_text: str) -> Grammar:
    """Compile DSL source into a Grammar; diagnostics carry line/col."""
    rules: list[GrammarRule] = []
    names: set[str] = set()
    for line_no, raw_line in enumerate(source_text.splitlines(), start=1):
        line = raw_line.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        tokens = _lex_line(line, line_no)
        p = _RuleParser(tokens, line_no)
        wt_tok = p.take("IDENT")
        try:
            w_type = WType(wt_tok[1].upper())
        except ValueError:
            raise GrammarError("SYNTAX_ERROR",
                               f"expected rule type what/when/where, "
                               f"found {wt_tok[1]!r}", line_no, wt_tok[2])
        if w_type is WType.WHO:
            raise GrammarError("SYNTAX_ERROR", "who rules are lexicon-driven",
                               line_no, wt_tok[2])
        name = p.take("IDENT")[1]
        if name in names:
            raise GrammarError("DUPLICATE_RULE_NAME",
                               f"rule {name!r} defined twice", line_no)
        names.add(name)
        p.take("PUNCT", ":")
        pattern = p.parse_seq(set(), False)
        p.take("ARROW")
        emit = _parse_emit(p, w_type)

        declared: list[str] = []
        _collect_capture_names(pattern, declared)
        for ref in emit.capture_names():
            if ref not in declared:
                raise GrammarError("UNKNOWN_CAPTURE",
                                   f"rule {name!r} emit references capture "
                                   f"{ref!r} which the pattern never defines",
                                   line_no)
        rules.append(GrammarRule(name=name, w_type=w_type, pattern=pattern,
                                 emit=emit, priority=len(rules)))
    return Grammar(rules=tuple(rules))


def load_grammar(path: str) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


def default_grammar() -> Grammar:
    """The shipped basketball grammar."""
    import importlib.resources
    ref = importlib.resources.files("storycoupler").joinpath(
        "data/basketball.grammar")
    return parse_grammar(ref.read_text(encoding="utf-8"))


# --- normalization -----------------------------------------------------------

def normalize_number(tokens: list[Token]) -> Fraction:
    """Numeric value of NUMBER / NUMBER_WORD tokens; compounds sum tens+units."""
    if not tokens:
        raise GrammarError("NOT_A_NUMBER", "no tokens to normalize")
    if len(tokens) == 1:
        t = tokens[0]
        if t.kind is TokenKind.NUMBER:
            return Fraction(t.norm)
        if t.kind is TokenKind.NUMBER_WORD:
            return Fraction(NUMBER_WORD_VALUES[t.norm])
        raise GrammarError("NOT_A_NUMBER", f"{t.text!r} is not numeric")
    if len(tokens) == 2 and all(t.kind is TokenKind.NUMBER_WORD for t in tokens):
        tens = NUMBER_WORD_VALUES[tokens[0].norm]
        units = NUMBER_WORD_VALUES[tokens[1].norm]
        if tens % 10 == 0 and tens >= 20 and 1 <= units <= 9:
            return Fraction(tens + units)
        raise GrammarError("NOT_A_NUMBER",
                           f"{tokens[0].text} {tokens[1].text} is not a "
                           f"tens+units compound")
    raise GrammarError("NOT_A_NUMBER",
                       " ".join(t.text for t in tokens) + " is not numeric")


def _ordinal_value(token: Token) -> int:
    if token.norm in ORDINAL_WORD_VALUES:
        return ORDINAL_WORD_VALUES[token.norm]
    m = re.match(r"^(\d+)(st|nd|rd|th)$", token.norm)
    if m:
        return int(m.group(1))
    raise GrammarError("NOT_A_NUMBER", f"{token.text!r} is not an ordinal")


def _clock_seconds(token: Token) -> float:
    minutes, seconds = token.norm.split(":")
    return 60.0 * int(minutes) + int(seconds)


def normalize_when(captures: dict[str, list[Token]],
                   emit: EmitSpec) -> WhenValue:
    """Combine a rule's quarter/clock/minutes captures into one WhenValue."""
    quarter = emit.quarter_const
    if emit.quarter_capture is not None:
        toks = captures[emit.quarter_capture]
        quarter = _ordinal_value(toks[0]) if toks[0].kind is TokenKind.ORDINAL \
            else int(normalize_number(toks))

    seconds = emit.seconds_const
    if emit.minutes_capture is not None:
        seconds = 60.0 * float(normalize_number(captures[emit.minutes_capture]))
    if emit.seconds_capture is not None:
        seconds = float(normalize_number(captures[emit.seconds_capture]))
    if emit.clock_capture is not None:
        seconds = _clock_seconds(captures[emit.clock_capture][0])

    if quarter is None and seconds is None:
        raise GrammarError("OUT_OF_RANGE", "when rule resolved no time at all")
    if seconds is not None and not 0 <= seconds <= QUARTER_SECONDS:
        raise GrammarError("OUT_OF_RANGE",
                           f"{seconds} seconds is outside a quarter")
    if quarter is not None and quarter < 1:
        raise GrammarError("OUT_OF_RANGE", f"quarter {quarter} out of range")

    is_interval = emit.interval_end_const is not None
    if is_interval and seconds is not None and emit.interval_end_const > seconds:
        raise GrammarError("OUT_OF_RANGE", "interval end after interval start")
    return WhenValue(quarter=quarter, seconds_remaining_in_quarter=seconds,
                     is_interval=is_interval,
                     interval_end_seconds=emit.interval_end_const)


def normalize_where(region: Region) -> WhereValue:
    return WhereValue(region=region)


# --- matching ----------------------------------------------------------------

_Caps = dict[str, tuple[int, int]]


def _seq_matches(atoms: tuple[PatternAtom, ...], ai: int,
                 tokens: tuple[Token, ...], ti: int,
                 caps: _Caps) -> Iterator[tuple[int, _Caps]]:
    if ai == len(atoms):
        yield ti, caps
        return
    atom = atoms[ai]
    if isinstance(atom, Literal):
        if ti < len(tokens) and tokens[ti].norm == atom.norm:
            yield from _seq_matches(atoms, ai + 1, tokens, ti + 1, caps)
    elif isinstance(atom, Class):
        if ti < len(tokens) and tokens[ti].kind is atom.kind:
            yield from _seq_matches(atoms, ai + 1, tokens, ti + 1, caps)
    elif isinstance(atom, Alt):
        for branch in atom.branches:
            for t2, c2 in _seq_matches(branch, 0, tokens, ti, caps):
                yield from _seq_matches(atoms, ai + 1, tokens, t2, c2)
    elif isinstance(atom, Opt):
        for t2, c2 in _seq_matches(atom.atoms, 0, tokens, ti, caps):
            yield from _seq_matches(atoms, ai + 1, tokens, t2, c2)
        yield from _seq_matches(atoms, ai + 1, tokens, ti, caps)
    elif isinstance(atom, Capture):
        for t2, c2 in _seq_matches(atom.atoms, 0, tokens, ti, caps):
            merged = dict(c2)
            merged[atom.name] = (ti, t2)
            yield from _seq_matches(atoms, ai + 1, tokens, t2, merged)


def _best_rule_match(rule: GrammarRule, tokens: tuple[Token, ...],
                     ti: int) -> Optional[tuple[int, _Caps]]:
    best: Optional[tuple[int, _Caps]] = None
    for end, caps in _seq_matches(rule.pattern, 0, tokens, ti, {}):
        if best is None or end > best[0]:
            best = (end, caps)
    return best


def _emit_value(rule: GrammarRule, tokens: tuple[Token, ...],
                caps: _Caps, table: dict[str, int]) -> WValue:
    captured = {name: list(tokens[a:b]) for name, (a, b) in caps.items()}
    emit = rule.emit
    if rule.w_type is WType.WHAT:
        qty = None
        if emit.qty_capture is not None:
            qty = normalize_number(captured[emit.qty_capture])
            if qty < 0:
                raise GrammarError("OUT_OF_RANGE", "negative quantity")
        return WhatValue(stat_key=emit.stat_key, quantity=qty)
    if rule.w_type is WType.WHEN:
        return normalize_when(captured, emit)
    return normalize_where(emit.region)


def match_grammar(sentence: Sentence, g: Grammar,
                  raw_text: Optional[str] = None) -> list[WMention]:
    """Extract WHAT/WHEN/WHERE mentions from one tokenized sentence."""
    tokens = sentence.tokens
    mentions: list[WMention] = []
    i = 0
    while i < len(tokens):
        candidates: list[tuple[int, int, _Caps, GrammarRule]] = []
        for rule in g.rules:
            hit = _best_rule_match(rule, tokens, i)
            if hit is not None and hit[0] > i:
                candidates.append((hit[0], rule.priority, hit[1], rule))
        # longest match first, then file order
        candidates.sort(key=lambda c: (-c[0], c[1]))
        emitted = False
        for end, _, caps, rule in candidates:
            try:
                value = _emit_value(rule, tokens, caps, g.number_word_table)
            except GrammarError:
                continue
            span = (tokens[i].span[0], tokens[end - 1].span[1])
            if raw_text is not None:
                surface = byte_substring(raw_text, span)
            else:
                surface = " ".join(t.text for t in tokens[i:end])
            mentions.append(WMention(
                sentence_index=sentence.index, w_type=rule.w_type, span=span,
                surface=surface, value=value, provenance=Provenance.GRAMMAR,
                confidence=1.0))
            i = end
            emitted = True
            break
        if not emitted:
            i += 1
    return mentions


def label_sentences(doc, g: Grammar) -> list[dict]:
    """Label each sentence STAT / NO_STAT by whether a WHAT rule fires."""
    labels = []
    for sentence in doc.sentences:
        mentions = match_grammar(sentence, g, doc.raw_text)
        has_stat = any(m.w_type is WType.WHAT for m in mentions)
        labels.append({"sentence_index": sentence.index,
                       "label": "STAT" if has_stat else "NO_STAT"})
    return labels
