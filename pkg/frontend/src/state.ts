// Reading-mode state machine. The views are pure functions of
// (coupled document, game data, UiState); these transitions are the only
// way UiState changes, and none of them touches the server.

import {
  CoupledDocumentDto,
  EMPTY_VIZ_STATE,
  Selector,
  VizStateDto,
  selectorIsEmpty,
} from "./types";

export type Mode = "BROWSING" | "FROZEN";

export interface UiState {
  mode: Mode;
  activeSentence: number | null;
  activeSelector: Selector | null;
  // current parameterization of the linked views
  viz: VizStateDto;
  // sentence indexes highlighted in the text panel
  highlighted: number[];
}

export const INITIAL_STATE: UiState = {
  mode: "BROWSING",
  activeSentence: null,
  activeSelector: null,
  viz: EMPTY_VIZ_STATE,
  highlighted: [],
};

function vizStateFor(coupled: CoupledDocumentDto, index: number): VizStateDto {
  return coupled.viz_states[String(index)] ?? EMPTY_VIZ_STATE;
}

function hasSentence(coupled: CoupledDocumentDto, index: number): boolean {
  return index >= 0 && index < coupled.document.sentences.length;
}

/** Hovering browses: it re-parameterizes the views but freezes nothing.
 *  Ignored while FROZEN and for out-of-range indexes. A sentence without
 *  mentions resets the views (its stored state is empty). */
export function onSentenceHover(
  state: UiState,
  coupled: CoupledDocumentDto,
  index: number,
): UiState {
  if (state.mode === "FROZEN" || !hasSentence(coupled, index)) {
    return state;
  }
  return { ...state, viz: vizStateFor(coupled, index), highlighted: [index] };
}

/** Clicking pins the sentence's state; clicking the pinned sentence again
 *  unfreezes back to browsing. */
export function onSentenceClick(
  state: UiState,
  coupled: CoupledDocumentDto,
  index: number,
): UiState {
  if (!hasSentence(coupled, index)) {
    return state;
  }
  if (state.mode === "FROZEN" && state.activeSentence === index) {
    return {
      ...state,
      mode: "BROWSING",
      activeSentence: null,
      activeSelector: null,
    };
  }
  return {
    mode: "FROZEN",
    activeSentence: index,
    activeSelector: null,
    viz: vizStateFor(coupled, index),
    highlighted: [index],
  };
}

/** A selection in any visualization re-parameterizes every view and
 *  highlights the sentences the server reports for the selector. Always
 *  lands in FROZEN selector mode, from either mode. */
export function onVizSelect(
  state: UiState,
  selector: Selector,
  sentences: number[],
): UiState {
  if (selectorIsEmpty(selector)) {
    return state;
  }
  return {
    mode: "FROZEN",
    activeSentence: null,
    activeSelector: selector,
    viz: selectorViz(selector),
    highlighted: sentences,
  };
}

/** Views are parameterized the same way whether the source is a sentence
 *  or a direct selection. */
export function selectorViz(selector: Selector): VizStateDto {
  return {
    players: selector.players ?? [],
    teams: selector.teams ?? [],
    stat_keys: selector.stats ?? [],
    time_marks:
      selector.quarter !== undefined
        ? [
            {
              w: "when",
              quarter: selector.quarter,
              seconds_remaining_in_quarter: null,
              is_interval: false,
              interval_end_seconds: null,
            },
          ]
        : [],
    regions: selector.regions ?? [],
  };
}

/** FROZEN must carry exactly one anchor; BROWSING carries none. */
export function invariantHolds(state: UiState): boolean {
  const anchors =
    Number(state.activeSentence !== null) + Number(state.activeSelector !== null);
  return state.mode === "FROZEN" ? anchors === 1 : anchors === 0;
}
