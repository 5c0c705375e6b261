import { GameDto, Selector, VizStateDto } from "../types";

const COLUMNS: Array<[string, string]> = [
  ["minutes", "MINUTES"],
  ["points", "POINTS"],
  ["rebounds", "REBOUNDS"],
  ["assists", "ASSISTS"],
  ["steals", "STEALS"],
  ["blocks", "BLOCKS"],
  ["turnovers", "TURNOVERS"],
  ["fouls", "FOULS"],
  ["fgm", "FGM"],
  ["fga", "FGA"],
  ["tpm", "TPM"],
  ["tpa", "TPA"],
  ["ftm", "FTM"],
  ["fta", "FTA"],
];

const HEADERS = ["MIN", "PTS", "REB", "AST", "STL", "BLK", "TO", "PF",
                 "FGM", "FGA", "3PM", "3PA", "FTM", "FTA"];

export class BoxScore {
  private headerCells = new Map<string, HTMLTableCellElement>();

  constructor(
    private root: HTMLElement,
    private game: GameDto,
    private onSelect: (sel: Selector) => void,
  ) {
    this.root.classList.add("box-score");
    for (const team of [game.meta.away_team, game.meta.home_team]) {
      this.root.appendChild(this.buildTeamTable(team));
    }
  }

  private buildTeamTable(team: string): HTMLElement {
    const wrap = document.createElement("div");
    const caption = document.createElement("h3");
    caption.textContent = team;
    wrap.appendChild(caption);

    const table = document.createElement("table");
    const head = table.createTHead().insertRow();
    const nameHeader = document.createElement("th");
    nameHeader.textContent = "player";
    head.appendChild(nameHeader);
    COLUMNS.forEach(([, statKey], i) => {
      const th = document.createElement("th");
      th.textContent = HEADERS[i];
      th.dataset.stat = statKey;
      this.headerCells.set(`${team}:${statKey}`, th);
      head.appendChild(th);
    });

    const body = table.createTBody();
    for (const row of this.game.box_score.filter((r) => r.team === team)) {
      const tr = body.insertRow();
      tr.dataset.player = row.player;
      const name = tr.insertCell();
      name.textContent = row.player;
      name.className = "player-name";
      name.addEventListener("click", () =>
        this.onSelect({ players: [row.player] }),
      );
      for (const [field, statKey] of COLUMNS) {
        const td = tr.insertCell();
        td.textContent = String(row[field as keyof typeof row]);
        // row+column selection: a specific stat for a specific player
        td.addEventListener("click", () =>
          this.onSelect({ players: [row.player], stats: [statKey] }),
        );
      }
    }
    wrap.appendChild(table);
    return wrap;
  }

  update(viz: VizStateDto): void {
    const players = new Set(viz.players);
    const teams = new Set(viz.teams);
    for (const tr of this.root.querySelectorAll<HTMLTableRowElement>("tr[data-player]")) {
      const row = this.game.box_score.find(
        (r) => r.player === tr.dataset.player,
      );
      const hit =
        players.has(tr.dataset.player ?? "") ||
        (row !== undefined && teams.has(row.team));
      tr.classList.toggle("highlighted", hit);
    }
    const stats = new Set(viz.stat_keys);
    for (const [key, th] of this.headerCells) {
      const statKey = key.split(":")[1];
      th.classList.toggle("highlighted", stats.has(statKey));
    }
  }
}
