import { GameDto } from "../types";

/** Details-on-demand panel for one player's full box-score line. */
export class ProfilePanel {
  constructor(private root: HTMLElement, private game: GameDto) {
    this.root.classList.add("profile-panel");
    this.update(null);
  }

  update(playerId: string | null): void {
    this.root.replaceChildren();
    const heading = document.createElement("h3");
    heading.textContent = "Player profile";
    this.root.appendChild(heading);

    if (playerId === null) {
      const hint = document.createElement("p");
      hint.className = "hint";
      hint.textContent = "Hover a sentence or select a player.";
      this.root.appendChild(hint);
      return;
    }
    const row = this.game.box_score.find((r) => r.player === playerId);
    if (!row) return;

    const name = document.createElement("p");
    name.className = "profile-name";
    name.dataset.player = row.player;
    name.textContent = `${row.player} (${row.team})`;
    this.root.appendChild(name);

    const dl = document.createElement("dl");
    const fields: Array<[string, number | string]> = [
      ["PTS", row.points],
      ["REB", row.rebounds],
      ["AST", row.assists],
      ["STL", row.steals],
      ["BLK", row.blocks],
      ["TO", row.turnovers],
      ["MIN", row.minutes],
      ["FG", `${row.fgm}-${row.fga}`],
      ["3P", `${row.tpm}-${row.tpa}`],
      ["FT", `${row.ftm}-${row.fta}`],
    ];
    for (const [label, value] of fields) {
      const dt = document.createElement("dt");
      dt.textContent = label;
      const dd = document.createElement("dd");
      dd.textContent = String(value);
      dl.appendChild(dt);
      dl.appendChild(dd);
    }
    this.root.appendChild(dl);
  }
}
