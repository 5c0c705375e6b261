"""Read-only HTTP API over a coupled document and its game data.

All state is loaded once at startup and never mutated, so request
handling needs no locks and identical GETs return identical bytes
(responses carry a strong ETag over the canonical JSON).
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.staticfiles import StaticFiles

from .coupler import CouplerError, Selector, query_sentences, viz_state_for
from .domain import (
    Region, StatKey, coupled_document_to_dict, decode_coupled_document,
    document_to_dict, dumps_canonical, viz_state_to_dict,
)
from .gamedata import GameData, load_game

_FALLBACK_INDEX = """<!doctype html>
<html><head><title>storycoupler</title></head>
<body><h1>storycoupler service</h1>
<p>No UI build found. API endpoints:</p>
<ul>
<li>GET /api/document</li>
<li>GET /api/game</li>
<li>GET /api/coupling</li>
<li>GET /api/vizstate/{sentence_index}</li>
<li>GET /api/sentences?player=&amp;team=&amp;stat=&amp;quarter=&amp;t0=&amp;t1=&amp;region=</li>
</ul></body></html>"""


def _canonical_json_response(payload, status_code: int = 200) -> Response:
    body = dumps_canonical(payload).encode("utf-8")
    etag = '"' + hashlib.sha256(body).hexdigest() + '"'
    return Response(content=body, status_code=status_code,
                    media_type="application/json",
                    headers={"ETag": etag, "Cache-Control": "max-age=0"})


def _error(status_code: int, code: str, message: str) -> Response:
    return _canonical_json_response(
        {"error": code, "message": message}, status_code)


def game_to_dict(game: GameData) -> dict:
    return {
        "meta": {"game_id": game.meta.game_id,
                 "home_team": game.meta.home_team_id,
                 "away_team": game.meta.away_team_id,
                 "date": game.meta.date,
                 "final_home": game.meta.final_home,
                 "final_away": game.meta.final_away,
                 "periods": game.meta.n_periods},
        "box_score": [{"player": r.player_id, "team": r.team_id,
                       "minutes": r.minutes, "points": r.points,
                       "rebounds": r.rebounds, "assists": r.assists,
                       "steals": r.steals, "blocks": r.blocks,
                       "turnovers": r.turnovers, "fouls": r.fouls,
                       "fgm": r.fgm, "fga": r.fga, "tpm": r.tpm,
                       "tpa": r.tpa, "ftm": r.ftm, "fta": r.fta}
                      for r in game.box_score],
        "shots": [{"player": s.player_id, "team": s.team_id,
                   "quarter": s.quarter, "clock": s.clock_seconds_remaining,
                   "x": s.x_ft, "y": s.y_ft, "made": s.made,
                   "value": s.value} for s in game.shots],
        "timeline": [{"elapsed": t.elapsed_seconds, "home": t.home_score,
                      "away": t.away_score} for t in game.timeline],
    }


def _parse_selector(params) -> Selector:
    players = params.getlist("player")
    teams = params.getlist("team")
    stats = params.getlist("stat")
    regions = params.getlist("region")
    quarter = params.get("quarter")
    t0, t1 = params.get("t0"), params.get("t1")

    stat_keys = None
    if stats:
        try:
            stat_keys = frozenset(StatKey(s) for s in stats)
        except ValueError:
            raise ValueError(f"unknown stat in {stats}")
    region_set = None
    if regions:
        try:
            region_set = frozenset(Region(r) for r in regions)
        except ValueError:
            raise ValueError(f"unknown region in {regions}")
    quarter_val = None
    if quarter is not None:
        try:
            quarter_val = int(quarter)
        except ValueError:
            raise ValueError(f"quarter {quarter!r} is not an integer")
    time_range = None
    if t0 is not None or t1 is not None:
        if t0 is None or t1 is None:
            raise ValueError("t0 and t1 must be given together")
        try:
            time_range = (float(t0), float(t1))
        except ValueError:
            raise ValueError(f"t0/t1 {t0!r}/{t1!r} are not numbers")
        if time_range[0] > time_range[1]:
            raise ValueError("t0 after t1")
    return Selector(
        players=frozenset(players) if players else None,
        teams=frozenset(teams) if teams else None,
        stat_keys=stat_keys, quarter=quarter_val,
        time_range=time_range, regions=region_set)


def build_app(coupling_path: str, game_path: str,
              static_dir: Optional[str] = None) -> FastAPI:
    coupled = decode_coupled_document(
        Path(coupling_path).read_text(encoding="utf-8"))
    game = load_game(game_path, strict=False)

    app = FastAPI(title="storycoupler", openapi_url=None)

    @app.get("/api/document")
    def get_document():
        return _canonical_json_response(document_to_dict(coupled.document))

    @app.get("/api/game")
    def get_game():
        return _canonical_json_response(game_to_dict(game))

    @app.get("/api/coupling")
    def get_coupling():
        return _canonical_json_response(coupled_document_to_dict(coupled))

    @app.get("/api/vizstate/{sentence_index}")
    def get_vizstate(sentence_index: int):
        try:
            state = viz_state_for(coupled, sentence_index)
        except CouplerError as exc:
            return _error(404, exc.code, str(exc))
        return _canonical_json_response(viz_state_to_dict(state))

    @app.get("/api/sentences")
    def get_sentences(request: Request):
        try:
            selector = _parse_selector(request.query_params)
        except ValueError as exc:
            return _error(400, "BAD_SELECTOR", str(exc))
        try:
            indexes = query_sentences(coupled, selector,
                                      n_periods=game.meta.n_periods)
        except CouplerError as exc:
            return _error(400, exc.code, str(exc))
        return _canonical_json_response({"sentences": indexes})

    candidates = [static_dir] if static_dir else ["frontend/dist"]
    mounted = False
    for candidate in candidates:
        if candidate and Path(candidate).is_dir():
            app.mount("/", StaticFiles(directory=candidate, html=True),
                      name="ui")
            mounted = True
            break
    if not mounted:
        @app.get("/")
        def index():
            return Response(content=_FALLBACK_INDEX, media_type="text/html")

    return app
