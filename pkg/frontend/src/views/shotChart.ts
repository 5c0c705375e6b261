import { GameDto, Selector, ShotDto, VizStateDto, WhenValueDto } from "../types";

// Court geometry in feet, matching the pipeline's region table.
const RESTRICTED_R = 4;
const PAINT_HALF_W = 8;
const PAINT_DEPTH = 19;
const ARC_R = 23.75;
const CORNER_X = 22;
const CORNER_MAX_Y = 14;
const COURT_HALF_W = 25;
const COURT_DEPTH = 47;

const SCALE = 9; // px per foot
const PAD = 12;

export function classifyRegion(x: number, y: number): string {
  const r = Math.hypot(x, y);
  if (r <= RESTRICTED_R) return "RESTRICTED_AREA";
  if (Math.abs(x) <= PAINT_HALF_W && y <= PAINT_DEPTH) return "PAINT";
  if ((y <= CORNER_MAX_Y && Math.abs(x) >= CORNER_X) || r >= ARC_R) {
    return "THREE_POINT";
  }
  return "MIDRANGE";
}

export function elapsedOf(quarter: number, clock: number): number {
  if (quarter <= 4) return 720 * (quarter - 1) + (720 - clock);
  return 2880 + 300 * (quarter - 5) + (300 - clock);
}

function sx(xFt: number): number {
  return PAD + (xFt + COURT_HALF_W) * SCALE;
}

function sy(yFt: number): number {
  return PAD + yFt * SCALE; // basket at the top edge
}

/** Half-court shot chart. Shots filter by the current players / teams /
 *  quarter / regions / time marks; clicking a court zone selects that
 *  region in every view. */
export class ShotChart {
  private svg: SVGSVGElement;
  private dots: SVGGElement;
  private caption: HTMLElement;

  constructor(
    private root: HTMLElement,
    private game: GameDto,
    onSelect: (sel: Selector) => void,
  ) {
    this.root.classList.add("shot-chart");
    const width = 2 * PAD + 2 * COURT_HALF_W * SCALE;
    const height = 2 * PAD + COURT_DEPTH * SCALE;
    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    this.svg.appendChild(this.courtOutline());

    for (const [region, shape] of this.regionZones()) {
      shape.classList.add("region-zone");
      shape.dataset.region = region;
      shape.addEventListener("click", () => onSelect({ regions: [region] }));
      this.svg.appendChild(shape);
    }

    this.dots = document.createElementNS("http://www.w3.org/2000/svg", "g");
    this.svg.appendChild(this.dots);
    this.root.appendChild(this.svg);
    this.caption = document.createElement("div");
    this.caption.className = "chart-caption";
    this.root.appendChild(this.caption);
  }

  private courtOutline(): SVGGElement {
    const g = document.createElementNS("http://www.w3.org/2000/svg", "g");
    g.setAttribute("class", "court");
    const lines = [
      rect(sx(-COURT_HALF_W), sy(0), 2 * COURT_HALF_W * SCALE, COURT_DEPTH * SCALE),
      rect(sx(-PAINT_HALF_W), sy(0), 2 * PAINT_HALF_W * SCALE, PAINT_DEPTH * SCALE),
      circle(sx(0), sy(0), RESTRICTED_R * SCALE),
      arcPath(),
    ];
    for (const el of lines) g.appendChild(el);
    return g;
  }

  private regionZones(): Array<[string, SVGElement]> {
    // generous hit targets; exact shot classification stays numeric
    const paint = rect(
      sx(-PAINT_HALF_W), sy(0), 2 * PAINT_HALF_W * SCALE, PAINT_DEPTH * SCALE);
    const restricted = circle(sx(0), sy(0), RESTRICTED_R * SCALE);
    const midLeft = rect(
      sx(-CORNER_X), sy(CORNER_MAX_Y),
      (CORNER_X - PAINT_HALF_W) * SCALE, (PAINT_DEPTH - CORNER_MAX_Y) * SCALE);
    const three = rect(
      sx(-COURT_HALF_W), sy(ARC_R + 1),
      2 * COURT_HALF_W * SCALE, (COURT_DEPTH - ARC_R - 1) * SCALE);
    return [
      ["PAINT", paint],
      ["RESTRICTED_AREA", restricted],
      ["MIDRANGE", midLeft],
      ["THREE_POINT", three],
    ];
  }

  update(viz: VizStateDto): void {
    const players = new Set(viz.players);
    const teams = new Set(viz.teams);
    const regions = new Set(viz.regions);
    const quarters = new Set(
      viz.time_marks.map((t) => t.quarter).filter((q) => q !== null),
    );
    const visible = this.game.shots.filter((s) =>
      this.shotVisible(s, players, teams, regions, quarters, viz.time_marks));

    this.dots.replaceChildren();
    for (const shot of visible) {
      const dot = circle(sx(shot.x), sy(shot.y), 4.5);
      dot.classList.add("shot", shot.made ? "made" : "missed");
      dot.dataset.player = shot.player;
      dot.dataset.quarter = String(shot.quarter);
      const title = document.createElementNS(
        "http://www.w3.org/2000/svg", "title");
      title.textContent =
        `${shot.player} Q${shot.quarter} ` +
        `${shot.made ? "made" : "missed"} ${shot.value}`;
      dot.appendChild(title);
      this.dots.appendChild(dot);
    }
    this.caption.textContent = `${visible.length} shots`;
  }

  private shotVisible(
    s: ShotDto,
    players: Set<string>,
    teams: Set<string>,
    regions: Set<string>,
    quarters: Set<number | null>,
    marks: WhenValueDto[],
  ): boolean {
    if (players.size && !players.has(s.player)) return false;
    if (teams.size && !players.size && !teams.has(s.team)) return false;
    if (regions.size && !regions.has(classifyRegion(s.x, s.y))) return false;
    if (quarters.size && !quarters.has(s.quarter)) return false;
    const intervals = marks.filter(
      (t) => t.is_interval && t.seconds_remaining_in_quarter !== null);
    if (intervals.length) {
      const hit = intervals.some((t) => {
        const q = t.quarter ?? s.quarter;
        if (q !== s.quarter) return false;
        return (
          s.clock <= t.seconds_remaining_in_quarter! &&
          s.clock >= (t.interval_end_seconds ?? 0)
        );
      });
      if (!hit) return false;
    }
    return true;
  }
}

function rect(x: number, y: number, w: number, h: number): SVGRectElement {
  const el = document.createElementNS("http://www.w3.org/2000/svg", "rect");
  el.setAttribute("x", String(x));
  el.setAttribute("y", String(y));
  el.setAttribute("width", String(w));
  el.setAttribute("height", String(h));
  return el;
}

function circle(cx: number, cy: number, r: number): SVGCircleElement {
  const el = document.createElementNS("http://www.w3.org/2000/svg", "circle");
  el.setAttribute("cx", String(cx));
  el.setAttribute("cy", String(cy));
  el.setAttribute("r", String(r));
  return el;
}

function arcPath(): SVGPathElement {
  const el = document.createElementNS("http://www.w3.org/2000/svg", "path");
  const y0 = Math.sqrt(ARC_R * ARC_R - CORNER_X * CORNER_X); // arc meets corner line
  const start = `M ${sx(-CORNER_X)} ${sy(0)} L ${sx(-CORNER_X)} ${sy(y0)}`;
  const arc = `A ${ARC_R * SCALE} ${ARC_R * SCALE} 0 0 0 ${sx(CORNER_X)} ${sy(y0)}`;
  const end = `L ${sx(CORNER_X)} ${sy(0)}`;
  el.setAttribute("d", `${start} ${arc} ${end}`);
  el.setAttribute("fill", "none");
  return el;
}
