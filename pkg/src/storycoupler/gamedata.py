"""Structured game data: box score, shot events, score timeline, geometry.

Court coordinates put the basket at the origin, x lateral and y toward
midcourt, in feet. Region boundaries use NBA dimensions; the same
constants back both grammar WHERE semantics and shot filtering.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .domain import Region

# NBA geometry (feet) and clock (seconds)
ARC_RADIUS = 23.75
CORNER_THREE_X = 22.0
CORNER_THREE_MAX_Y = 14.0
PAINT_HALF_WIDTH = 8.0
PAINT_DEPTH = 19.0
RESTRICTED_RADIUS = 4.0
HALF_COURT_X = 25.0
HALF_COURT_Y = 47.0
QUARTER_SECONDS = 720.0
OVERTIME_SECONDS = 300.0
REGULATION_SECONDS = 4 * QUARTER_SECONDS


class GameDataError(Exception):
    def __init__(self, code: str, message: str, report=None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.report = report or []


@dataclass(frozen=True)
class GameMeta:
    game_id: str
    home_team_id: str
    away_team_id: str
    date: str
    final_home: int
    final_away: int
    n_periods: int = 4


@dataclass(frozen=True)
class BoxScoreRow:
    player_id: str
    team_id: str
    minutes: float
    points: int
    rebounds: int
    assists: int
    steals: int
    blocks: int
    turnovers: int
    fouls: int
    fgm: int
    fga: int
    tpm: int
    tpa: int
    ftm: int
    fta: int


@dataclass(frozen=True)
class ShotEvent:
    player_id: str
    team_id: str
    quarter: int
    clock_seconds_remaining: float
    x_ft: float
    y_ft: float
    made: bool
    value: int


@dataclass(frozen=True)
class ScoreSample:
    elapsed_seconds: float
    home_score: int
    away_score: int


@dataclass(frozen=True)
class GameData:
    meta: GameMeta
    box_score: tuple[BoxScoreRow, ...]
    shots: tuple[ShotEvent, ...]
    timeline: tuple[ScoreSample, ...]

    def player_ids(self) -> frozenset[str]:
        return frozenset(r.player_id for r in self.box_score)

    def team_ids(self) -> frozenset[str]:
        return frozenset((self.meta.home_team_id, self.meta.away_team_id))


def classify_region(x_ft: float, y_ft: float) -> Region:
    """Region of a half-court point; raises OUT_OF_BOUNDS outside it."""
    if abs(x_ft) > HALF_COURT_X or not 0 <= y_ft <= HALF_COURT_Y:
        raise GameDataError("OUT_OF_BOUNDS", f"({x_ft}, {y_ft}) off the half court")
    r = math.hypot(x_ft, y_ft)
    if r <= RESTRICTED_RADIUS:
        return Region.RESTRICTED_AREA
    if abs(x_ft) <= PAINT_HALF_WIDTH and y_ft <= PAINT_DEPTH:
        return Region.PAINT
    if (y_ft <= CORNER_THREE_MAX_Y and abs(x_ft) >= CORNER_THREE_X) \
            or r >= ARC_RADIUS:
        return Region.THREE_POINT
    return Region.MIDRANGE


def to_elapsed(quarter: int, clock_seconds_remaining: float) -> float:
    """Absolute game seconds for a (quarter, clock-remaining) pair.

    Quarters 1-4 are 720 s; overtime periods are 300 s each past 2880.
    """
    if quarter < 1:
        raise GameDataError("OUT_OF_RANGE", f"quarter {quarter}")
    period_len = QUARTER_SECONDS if quarter <= 4 else OVERTIME_SECONDS
    if not 0 <= clock_seconds_remaining <= period_len:
        raise GameDataError(
            "OUT_OF_RANGE",
            f"clock {clock_seconds_remaining} in a {period_len}-second period")
    if quarter <= 4:
        return QUARTER_SECONDS * (quarter - 1) \
            + (QUARTER_SECONDS - clock_seconds_remaining)
    return REGULATION_SECONDS + OVERTIME_SECONDS * (quarter - 5) \
        + (OVERTIME_SECONDS - clock_seconds_remaining)


def period_bounds(quarter: int, n_periods: int = 4) -> tuple[float, float]:
    """Elapsed [start, end] of one period."""
    if quarter <= 4:
        return (QUARTER_SECONDS * (quarter - 1), QUARTER_SECONDS * quarter)
    start = REGULATION_SECONDS + OVERTIME_SECONDS * (quarter - 5)
    return (start, start + OVERTIME_SECONDS)


def filter_shots(shots: Iterable[ShotEvent],
                 players: Optional[set[str]] = None,
                 teams: Optional[set[str]] = None,
                 quarter: Optional[int] = None,
                 time_range: Optional[tuple[float, float]] = None,
                 regions: Optional[set[Region]] = None,
                 made: Optional[bool] = None) -> list[ShotEvent]:
    """Conjunction of the given constraints; absent means unconstrained.
    Original ordering is preserved."""
    out = []
    for s in shots:
        if players is not None and s.player_id not in players:
            continue
        if teams is not None and s.team_id not in teams:
            continue
        if quarter is not None and s.quarter != quarter:
            continue
        if time_range is not None:
            elapsed = to_elapsed(s.quarter, s.clock_seconds_remaining)
            if not time_range[0] <= elapsed <= time_range[1]:
                continue
        if regions is not None:
            if classify_region(s.x_ft, s.y_ft) not in regions:
                continue
        if made is not None and s.made != made:
            continue
        out.append(s)
    return out


# --- loading and validation --------------------------------------------------

def _validate(meta: GameMeta, box: list[BoxScoreRow], shots: list[ShotEvent],
              timeline: list[ScoreSample]) -> list[tuple[str, str]]:
    problems: list[tuple[str, str]] = []
    if meta.home_team_id == meta.away_team_id:
        problems.append(("TEAMS_NOT_DISTINCT", "home and away teams match"))
    if meta.n_periods < 4:
        problems.append(("BAD_PERIOD_COUNT", f"n_periods {meta.n_periods} < 4"))

    team_points = {meta.home_team_id: 0, meta.away_team_id: 0}
    for row in box:
        rid = row.player_id
        counts = (row.points, row.rebounds, row.assists, row.steals,
                  row.blocks, row.turnovers, row.fouls, row.fgm, row.fga,
                  row.tpm, row.tpa, row.ftm, row.fta)
        if row.minutes < 0 or any(c < 0 for c in counts):
            problems.append(("NEGATIVE_STAT", f"{rid}: negative stat value"))
        if row.fgm > row.fga:
            problems.append(("FGM_GT_FGA", f"{rid}: fgm {row.fgm} > fga {row.fga}"))
        if row.tpm > row.tpa:
            problems.append(("TPM_GT_TPA", f"{rid}: tpm {row.tpm} > tpa {row.tpa}"))
        if row.ftm > row.fta:
            problems.append(("FTM_GT_FTA", f"{rid}: ftm {row.ftm} > fta {row.fta}"))
        if row.tpm > row.fgm:
            problems.append(("TPM_GT_FGM", f"{rid}: tpm {row.tpm} > fgm {row.fgm}"))
        expected = 2 * (row.fgm - row.tpm) + 3 * row.tpm + row.ftm
        if row.points != expected:
            problems.append(("POINTS_IDENTITY",
                             f"{rid}: points {row.points} != {expected} from shooting line"))
        if row.team_id not in team_points:
            problems.append(("UNKNOWN_TEAM", f"{rid}: team {row.team_id}"))
        else:
            team_points[row.team_id] += row.points

    if box:
        if team_points[meta.home_team_id] != meta.final_home:
            problems.append(("TEAM_SUM_MISMATCH",
                             f"home rows sum to {team_points[meta.home_team_id]}, "
                             f"final is {meta.final_home}"))
        if team_points[meta.away_team_id] != meta.final_away:
            problems.append(("TEAM_SUM_MISMATCH",
                             f"away rows sum to {team_points[meta.away_team_id]}, "
                             f"final is {meta.final_away}"))

    for i, s in enumerate(shots):
        if s.quarter < 1 or s.quarter > meta.n_periods:
            problems.append(("SHOT_PERIOD", f"shot {i}: quarter {s.quarter}"))
            continue
        period_len = QUARTER_SECONDS if s.quarter <= 4 else OVERTIME_SECONDS
        if not 0 <= s.clock_seconds_remaining <= period_len:
            problems.append(("SHOT_CLOCK_RANGE",
                             f"shot {i}: clock {s.clock_seconds_remaining}"))
        try:
            region = classify_region(s.x_ft, s.y_ft)
        except GameDataError:
            problems.append(("SHOT_OUT_OF_BOUNDS",
                             f"shot {i}: ({s.x_ft}, {s.y_ft})"))
            continue
        if (s.value == 3) != (region is Region.THREE_POINT):
            problems.append(("SHOT_VALUE_REGION",
                             f"shot {i}: value {s.value} from {region.value}"))
        if s.value not in (2, 3):
            problems.append(("SHOT_VALUE", f"shot {i}: value {s.value}"))

    last_elapsed = -1.0
    last_home = last_away = 0
    for i, sample in enumerate(timeline):
        if sample.elapsed_seconds <= last_elapsed:
            problems.append(("TIMELINE_NOT_MONOTONE",
                             f"sample {i}: elapsed {sample.elapsed_seconds}"))
        if sample.home_score < last_home or sample.away_score < last_away:
            problems.append(("SCORE_DECREASED", f"sample {i}"))
        last_elapsed = sample.elapsed_seconds
        last_home, last_away = sample.home_score, sample.away_score
    if timeline and (last_home != meta.final_home or last_away != meta.final_away):
        problems.append(("FINAL_MISMATCH",
                         f"timeline ends {last_home}-{last_away}, "
                         f"final is {meta.final_home}-{meta.final_away}"))
    return problems


def load_game(path: str, strict: bool = True) -> GameData:
    """Load and validate the documented game JSON file.

    Strict mode raises VALIDATION_FAILED on any invariant violation;
    lenient mode returns the data as parsed (violations available via
    ``validate_game``).
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise GameDataError("UNREADABLE_FILE", f"{path}: {exc}") from exc
    try:
        meta = GameMeta(
            game_id=raw["meta"]["game_id"],
            home_team_id=raw["meta"]["home_team"],
            away_team_id=raw["meta"]["away_team"],
            date=raw["meta"]["date"],
            final_home=raw["meta"]["final_home"],
            final_away=raw["meta"]["final_away"],
            n_periods=raw["meta"].get("periods", 4))
        box = [BoxScoreRow(
            player_id=r["player"], team_id=r["team"], minutes=r["minutes"],
            points=r["points"], rebounds=r["rebounds"], assists=r["assists"],
            steals=r["steals"], blocks=r["blocks"], turnovers=r["turnovers"],
            fouls=r["fouls"], fgm=r["fgm"], fga=r["fga"], tpm=r["tpm"],
            tpa=r["tpa"], ftm=r["ftm"], fta=r["fta"]) for r in raw["box_score"]]
        shots = [ShotEvent(
            player_id=s["player"], team_id=s["team"], quarter=s["quarter"],
            clock_seconds_remaining=s["clock"], x_ft=s["x"], y_ft=s["y"],
            made=s["made"], value=s["value"]) for s in raw["shots"]]
        timeline = [ScoreSample(
            elapsed_seconds=t["elapsed"], home_score=t["home"],
            away_score=t["away"]) for t in raw["timeline"]]
    except (KeyError, TypeError) as exc:
        raise GameDataError("SCHEMA_MISMATCH", f"{path}: {exc}") from exc

    problems = _validate(meta, box, shots, timeline)
    if problems and strict:
        summary = "; ".join(f"{code}: {msg}" for code, msg in problems[:5])
        raise GameDataError("VALIDATION_FAILED", summary, report=problems)
    return GameData(meta=meta, box_score=tuple(box), shots=tuple(shots),
                    timeline=tuple(timeline))


def validate_game(game: GameData) -> list[tuple[str, str]]:
    return _validate(game.meta, list(game.box_score), list(game.shots),
                     list(game.timeline))
