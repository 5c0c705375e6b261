"""Bind extracted 4W mentions to game data.

Produces the per-sentence visualization states, the inverse index from
W values back to sentence ids, and selector queries over both. This is
the artifact the HTTP service and the reading UI consume.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .domain import (
    CoupledDocument, InverseIndex, NarrativeDocument, Region, StatKey,
    VizState, WhenValue, WhoKind, WhoValue, WhatValue, WhereValue, WMention,
    WType,
)
from .gamedata import GameData, period_bounds, to_elapsed

log = logging.getLogger(__name__)


class CouplerError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Selector:
    """Conjunctive query over the coupled document.

    players / teams are entity-id sets (the split mirrors how views are
    parameterized; both look up the same entity index). At least one
    field must be populated.
    """

    players: Optional[frozenset[str]] = None
    teams: Optional[frozenset[str]] = None
    stat_keys: Optional[frozenset[StatKey]] = None
    quarter: Optional[int] = None
    time_range: Optional[tuple[float, float]] = None
    regions: Optional[frozenset[Region]] = None

    def is_empty(self) -> bool:
        return all(f is None for f in (
            self.players, self.teams, self.stat_keys, self.quarter,
            self.time_range, self.regions))


def couple(doc: NarrativeDocument, mentions: list[WMention],
           game: GameData) -> CoupledDocument:
    """Aggregate each sentence's mentions into a VizState and build the
    inverse index over all mentions.

    WHO mentions naming players or teams absent from the game are kept
    for text highlighting (and stay queryable) but are excluded from the
    visualization parameters, with an ENTITY_NOT_IN_GAME warning.
    """
    known_players = game.player_ids()
    known_teams = game.team_ids()
    ordered = sorted(mentions, key=lambda m: (m.sentence_index, m.span,
                                              m.w_type.value,
                                              m.provenance.value))

    players: dict[int, set[str]] = {}
    teams: dict[int, set[str]] = {}
    stat_keys: dict[int, set[StatKey]] = {}
    time_marks: dict[int, list[WhenValue]] = {}
    regions: dict[int, set[Region]] = {}

    by_entity: dict[str, list[int]] = {}
    by_stat: dict[StatKey, list[int]] = {}
    by_quarter: dict[int, list[int]] = {}
    by_region: dict[Region, list[int]] = {}

    def index(mapping: dict, key, si: int) -> None:
        seen = mapping.setdefault(key, [])
        if not seen or seen[-1] != si:
            seen.append(si)

    for m in ordered:
        si = m.sentence_index
        if isinstance(m.value, WhoValue):
            index(by_entity, m.value.entity_id, si)
            if m.value.kind is WhoKind.PLAYER:
                if m.value.entity_id in known_players:
                    players.setdefault(si, set()).add(m.value.entity_id)
                else:
                    log.warning("ENTITY_NOT_IN_GAME: player %s (sentence %d) "
                                "not in game %s", m.value.entity_id, si,
                                game.meta.game_id)
            elif m.value.kind is WhoKind.TEAM:
                if m.value.entity_id in known_teams:
                    teams.setdefault(si, set()).add(m.value.entity_id)
                else:
                    log.warning("ENTITY_NOT_IN_GAME: team %s (sentence %d) "
                                "not in game %s", m.value.entity_id, si,
                                game.meta.game_id)
        elif isinstance(m.value, WhatValue):
            index(by_stat, m.value.stat_key, si)
            stat_keys.setdefault(si, set()).add(m.value.stat_key)
        elif isinstance(m.value, WhenValue):
            if m.value.quarter is not None:
                index(by_quarter, m.value.quarter, si)
            time_marks.setdefault(si, []).append(m.value)
        elif isinstance(m.value, WhereValue):
            index(by_region, m.value.region, si)
            regions.setdefault(si, set()).add(m.value.region)

    viz_states = {
        s.index: VizState(
            players=frozenset(players.get(s.index, ())),
            teams=frozenset(teams.get(s.index, ())),
            stat_keys=frozenset(stat_keys.get(s.index, ())),
            time_marks=tuple(time_marks.get(s.index, ())),
            regions=frozenset(regions.get(s.index, ())))
        for s in doc.sentences
    }
    inverse = InverseIndex(
        by_entity={k: tuple(v) for k, v in sorted(by_entity.items())},
        by_stat={k: tuple(v) for k, v in sorted(by_stat.items())},
        by_quarter={k: tuple(v) for k, v in sorted(by_quarter.items())},
        by_region={k: tuple(v) for k, v in sorted(by_region.items())})
    return CoupledDocument(document=doc, mentions=tuple(ordered),
                           viz_states=viz_states, inverse_index=inverse)


def _when_intervals(v: WhenValue, n_periods: int) -> list[tuple[float, float]]:
    """Elapsed intervals a WHEN value can refer to.

    Quarter + clock pin a point; quarter alone spans the whole period;
    clock alone matches that reading in every period (the permissive
    choice). Interval values stretch from their start clock to their
    end clock.
    """
    def clock_pair(quarter: int) -> Optional[tuple[float, float]]:
        period_len = 720.0 if quarter <= 4 else 300.0
        start_clock = v.seconds_remaining_in_quarter
        if start_clock is None or start_clock > period_len:
            return None
        end_clock = v.interval_end_seconds if v.is_interval else start_clock
        return (to_elapsed(quarter, start_clock), to_elapsed(quarter, end_clock))

    if v.quarter is not None and v.seconds_remaining_in_quarter is not None:
        pair = clock_pair(v.quarter)
        return [pair] if pair else []
    if v.quarter is not None:
        return [period_bounds(v.quarter)]
    intervals = []
    for q in range(1, n_periods + 1):
        pair = clock_pair(q)
        if pair:
            intervals.append(pair)
    return intervals


def _sentence_mentions(cd: CoupledDocument) -> dict[int, list[WMention]]:
    grouped: dict[int, list[WMention]] = {}
    for m in cd.mentions:
        grouped.setdefault(m.sentence_index, []).append(m)
    return grouped


def query_sentences(cd: CoupledDocument, sel: Selector,
                    n_periods: int = 4) -> list[int]:
    """Sentence indexes whose mentions satisfy every populated selector
    field (disjunctive within a field). Sorted ascending."""
    if sel.is_empty():
        raise CouplerError("EMPTY_SELECTOR", "selector has no constraints")

    ix = cd.inverse_index
    candidate_sets: list[set[int]] = []
    if sel.players is not None:
        candidate_sets.append(
            set().union(*(set(ix.by_entity.get(p, ())) for p in sel.players))
            if sel.players else set())
    if sel.teams is not None:
        candidate_sets.append(
            set().union(*(set(ix.by_entity.get(t, ())) for t in sel.teams))
            if sel.teams else set())
    if sel.stat_keys is not None:
        candidate_sets.append(
            set().union(*(set(ix.by_stat.get(k, ())) for k in sel.stat_keys))
            if sel.stat_keys else set())
    if sel.quarter is not None:
        candidate_sets.append(set(ix.by_quarter.get(sel.quarter, ())))
    if sel.regions is not None:
        candidate_sets.append(
            set().union(*(set(ix.by_region.get(r, ())) for r in sel.regions))
            if sel.regions else set())
    if sel.time_range is not None:
        t0, t1 = sel.time_range
        if t0 > t1:
            raise CouplerError("EMPTY_SELECTOR", "time_range start after end")
        hits = set()
        for si, group in _sentence_mentions(cd).items():
            for m in group:
                if not isinstance(m.value, WhenValue):
                    continue
                for (a, b) in _when_intervals(m.value, n_periods):
                    lo, hi = min(a, b), max(a, b)
                    if lo <= t1 and hi >= t0:
                        hits.add(si)
                        break
        candidate_sets.append(hits)

    result = set.intersection(*candidate_sets) if candidate_sets else set()
    return sorted(result)


def viz_state_for(cd: CoupledDocument, sentence_index: int) -> VizState:
    if sentence_index not in cd.viz_states:
        raise CouplerError("SENTENCE_RANGE",
                           f"no sentence {sentence_index}")
    return cd.viz_states[sentence_index]


def selector_for_value(value) -> Selector:
    """The selector that should recover a mention of this value."""
    if isinstance(value, WhoValue):
        if value.kind is WhoKind.TEAM:
            return Selector(teams=frozenset([value.entity_id]))
        return Selector(players=frozenset([value.entity_id]))
    if isinstance(value, WhatValue):
        return Selector(stat_keys=frozenset([value.stat_key]))
    if isinstance(value, WhenValue):
        if value.quarter is not None:
            return Selector(quarter=value.quarter)
        point = to_elapsed(1, value.seconds_remaining_in_quarter)
        return Selector(time_range=(point, point))
    if isinstance(value, WhereValue):
        return Selector(regions=frozenset([value.region]))
    raise TypeError(f"not a W value: {value!r}")
