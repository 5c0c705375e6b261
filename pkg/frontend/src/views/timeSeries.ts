import { GameDto, Selector, VizStateDto } from "../types";
import { elapsedOf } from "./shotChart";

const WIDTH = 920;
const HEIGHT = 170;
const PAD_X = 34;
const PAD_Y = 14;

/** Score timeline with quarter bands, mention marks, and a drag brush.
 *  Clicking a quarter band selects that quarter; dragging selects an
 *  elapsed-time range. */
export class TimeSeries {
  private svg: SVGSVGElement;
  private marks: SVGGElement;
  private bands = new Map<number, SVGRectElement>();
  private brushRect: SVGRectElement;
  private totalSeconds: number;
  private maxScore: number;

  constructor(
    private root: HTMLElement,
    private game: GameDto,
    private onSelect: (sel: Selector) => void,
  ) {
    this.root.classList.add("time-series");
    this.totalSeconds = Math.max(
      2880, ...game.timeline.map((t) => t.elapsed));
    this.maxScore = Math.max(
      10, ...game.timeline.map((t) => Math.max(t.home, t.away)));

    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);

    const periods = Math.max(4, game.meta.periods);
    for (let q = 1; q <= periods; q++) {
      const x0 = this.x(q <= 4 ? 720 * (q - 1) : 2880 + 300 * (q - 5));
      const x1 = this.x(q <= 4 ? 720 * q : 2880 + 300 * (q - 4));
      const band = rect(x0, PAD_Y, x1 - x0, HEIGHT - 2 * PAD_Y);
      band.classList.add("quarter-band");
      band.dataset.quarter = String(q);
      band.addEventListener("click", () => this.onSelect({ quarter: q }));
      this.bands.set(q, band);
      this.svg.appendChild(band);
    }

    this.svg.appendChild(this.scoreLine("home"));
    this.svg.appendChild(this.scoreLine("away"));

    this.marks = document.createElementNS("http://www.w3.org/2000/svg", "g");
    this.svg.appendChild(this.marks);

    this.brushRect = rect(0, PAD_Y, 0, HEIGHT - 2 * PAD_Y);
    this.brushRect.classList.add("brush");
    this.svg.appendChild(this.brushRect);
    this.wireBrush();

    this.root.appendChild(this.svg);
  }

  private x(elapsed: number): number {
    return PAD_X + (elapsed / this.totalSeconds) * (WIDTH - 2 * PAD_X);
  }

  private elapsedAt(screenX: number): number {
    const frac = (screenX - PAD_X) / (WIDTH - 2 * PAD_X);
    return Math.max(0, Math.min(1, frac)) * this.totalSeconds;
  }

  private y(score: number): number {
    return HEIGHT - PAD_Y - (score / this.maxScore) * (HEIGHT - 2 * PAD_Y);
  }

  private scoreLine(side: "home" | "away"): SVGPolylineElement {
    const el = document.createElementNS(
      "http://www.w3.org/2000/svg", "polyline");
    const points = this.game.timeline
      .map((t) => `${this.x(t.elapsed)},${this.y(side === "home" ? t.home : t.away)}`)
      .join(" ");
    el.setAttribute("points", points);
    el.setAttribute("class", `score-line ${side}`);
    el.setAttribute("fill", "none");
    return el;
  }

  private wireBrush(): void {
    let dragStart: number | null = null;
    const toLocal = (ev: MouseEvent): number => {
      const box = this.svg.getBoundingClientRect();
      const scale = box.width > 0 ? WIDTH / box.width : 1;
      return (ev.clientX - box.left) * scale;
    };
    this.svg.addEventListener("mousedown", (ev) => {
      dragStart = toLocal(ev);
    });
    this.svg.addEventListener("mousemove", (ev) => {
      if (dragStart === null) return;
      const now = toLocal(ev);
      const x0 = Math.min(dragStart, now);
      this.brushRect.setAttribute("x", String(x0));
      this.brushRect.setAttribute("width", String(Math.abs(now - dragStart)));
    });
    this.svg.addEventListener("mouseup", (ev) => {
      if (dragStart === null) return;
      const end = toLocal(ev);
      const span: [number, number] = [
        this.elapsedAt(Math.min(dragStart, end)),
        this.elapsedAt(Math.max(dragStart, end)),
      ];
      dragStart = null;
      this.brushRect.setAttribute("width", "0");
      // a plain click (no drag) falls through to the quarter band handler
      if (Math.abs(span[1] - span[0]) >= 5) {
        this.onSelect({
          timeRange: [Math.round(span[0]), Math.round(span[1])],
        });
      }
    });
  }

  update(viz: VizStateDto): void {
    const selected = new Set(
      viz.time_marks.map((t) => t.quarter).filter((q) => q !== null));
    for (const [q, band] of this.bands) {
      band.classList.toggle("selected", selected.has(q));
    }

    this.marks.replaceChildren();
    for (const mark of viz.time_marks) {
      if (mark.seconds_remaining_in_quarter === null) continue;
      const quarters =
        mark.quarter !== null
          ? [mark.quarter]
          : Array.from(this.bands.keys()); // clock-only: every period
      for (const q of quarters) {
        const periodLen = q <= 4 ? 720 : 300;
        if (mark.seconds_remaining_in_quarter > periodLen) continue;
        const at = elapsedOf(q, mark.seconds_remaining_in_quarter);
        const tick = document.createElementNS(
          "http://www.w3.org/2000/svg", "line");
        tick.setAttribute("x1", String(this.x(at)));
        tick.setAttribute("x2", String(this.x(at)));
        tick.setAttribute("y1", String(PAD_Y));
        tick.setAttribute("y2", String(HEIGHT - PAD_Y));
        tick.setAttribute("class",
          "time-mark" + (mark.quarter === null ? " every-period" : ""));
        tick.dataset.elapsed = String(at);
        this.marks.appendChild(tick);
        if (mark.is_interval && mark.interval_end_seconds !== null) {
          const to = elapsedOf(q, mark.interval_end_seconds);
          const shade = rect(
            this.x(at), PAD_Y, this.x(to) - this.x(at), HEIGHT - 2 * PAD_Y);
          shade.classList.add("interval-shade");
          this.marks.appendChild(shade);
        }
      }
    }
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
