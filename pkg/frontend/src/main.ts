import { ApiClient, SequencedSentences } from "./api";
import {
  INITIAL_STATE,
  UiState,
  onSentenceClick,
  onSentenceHover,
  onVizSelect,
} from "./state";
import { CoupledDocumentDto, GameDto, Selector } from "./types";
import { BoxScore } from "./views/boxScore";
import { ProfilePanel } from "./views/profile";
import { ShotChart } from "./views/shotChart";
import { TextPanel } from "./views/textPanel";
import { TimeSeries } from "./views/timeSeries";

export class App {
  state: UiState = INITIAL_STATE;

  private text: TextPanel;
  private box: BoxScore;
  private shots: ShotChart;
  private timeline: TimeSeries;
  private profile: ProfilePanel;
  private sequenced: SequencedSentences;
  private toastHost: HTMLElement;

  constructor(
    root: HTMLElement,
    private coupled: CoupledDocumentDto,
    game: GameDto,
    api: ApiClient,
  ) {
    this.sequenced = new SequencedSentences(api);
    root.classList.add("poster");
    const area = (name: string): HTMLElement => {
      const el = document.createElement("section");
      el.className = `area area-${name}`;
      root.appendChild(el);
      return el;
    };

    this.text = new TextPanel(area("text"), coupled, {
      onHover: (i) => this.hoverSentence(i),
      onClick: (i) => this.clickSentence(i),
    });
    this.shots = new ShotChart(area("shots"), game, (sel) => this.select(sel));
    this.box = new BoxScore(area("box"), game, (sel) => this.select(sel));
    this.profile = new ProfilePanel(area("profile"), game);
    this.timeline = new TimeSeries(area("timeline"), game,
      (sel) => this.select(sel));
    this.toastHost = area("toast");
    this.render();
  }

  hoverSentence(index: number): void {
    this.apply(onSentenceHover(this.state, this.coupled, index));
  }

  clickSentence(index: number): void {
    this.apply(onSentenceClick(this.state, this.coupled, index));
  }

  /** Direct interaction with a visualization: ask the server which
   *  sentences mention the selection, then freeze on the selector. A
   *  failed request leaves the state untouched and only shows a toast. */
  async select(selector: Selector): Promise<void> {
    try {
      const sentences = await this.sequenced.fetch(selector);
      if (sentences === null) {
        return; // superseded by a newer selection
      }
      this.apply(onVizSelect(this.state, selector, sentences));
    } catch (err) {
      this.toast(`selection failed: ${String(err)}`);
    }
  }

  private apply(next: UiState): void {
    if (next === this.state) return;
    this.state = next;
    this.render();
  }

  private render(): void {
    this.text.update(this.state.highlighted, this.state.activeSentence);
    this.box.update(this.state.viz);
    this.shots.update(this.state.viz);
    this.timeline.update(this.state.viz);
    this.profile.update(this.profilePlayer());
  }

  /** The profile panel follows the first mentioned player of the focused
   *  sentence, or the first selected player in selector mode. */
  private profilePlayer(): string | null {
    if (this.state.activeSelector) {
      return this.state.activeSelector.players?.[0] ?? null;
    }
    const focus =
      this.state.activeSentence ??
      (this.state.highlighted.length === 1 ? this.state.highlighted[0] : null);
    if (focus === null) return null;
    const players = new Set(this.state.viz.players);
    for (const m of this.coupled.mentions) {
      if (
        m.sentence_index === focus &&
        m.value.w === "who" &&
        m.value.kind === "PLAYER" &&
        players.has(m.value.entity_id)
      ) {
        return m.value.entity_id;
      }
    }
    return null;
  }

  private toast(message: string): void {
    const el = document.createElement("div");
    el.className = "toast";
    el.textContent = message;
    this.toastHost.appendChild(el);
    setTimeout(() => el.remove(), 4000);
  }
}

export async function boot(root: HTMLElement, base = ""): Promise<App> {
  const api = new ApiClient(base);
  const [coupled, game] = await Promise.all([api.coupling(), api.game()]);
  return new App(root, coupled, game, api);
}

const mount = document.getElementById("app");
if (mount !== null) {
  boot(mount).catch((err) => {
    mount.textContent = `failed to load: ${String(err)}`;
  });
}
