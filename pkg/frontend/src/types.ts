// Wire-format DTOs for the read-only pipeline API.
// Spans are UTF-8 *byte* offsets into the document's raw text.

export type Span = [number, number];

export type WTypeName = "WHO" | "WHAT" | "WHEN" | "WHERE";
export type ProvenanceName = "LEXICON" | "GRAMMAR" | "CLASSIFIER";

export interface WhoValueDto {
  w: "who";
  entity_id: string;
  kind: "PLAYER" | "TEAM" | "COACH" | "REFEREE";
}

export interface WhatValueDto {
  w: "what";
  stat_key: string;
  quantity: string | null;
}

export interface WhenValueDto {
  w: "when";
  quarter: number | null;
  seconds_remaining_in_quarter: number | null;
  is_interval: boolean;
  interval_end_seconds: number | null;
}

export interface WhereValueDto {
  w: "where";
  region: string;
}

export type WValueDto = WhoValueDto | WhatValueDto | WhenValueDto | WhereValueDto;

export interface MentionDto {
  sentence_index: number;
  w_type: WTypeName;
  span: Span;
  surface: string;
  value: WValueDto;
  provenance: ProvenanceName;
  confidence: number;
}

export interface SentenceDto {
  index: number;
  span: Span;
}

export interface DocumentDto {
  doc_id: string;
  title: string;
  source: string;
  raw_text: string;
  sentences: SentenceDto[];
}

export interface VizStateDto {
  players: string[];
  teams: string[];
  stat_keys: string[];
  time_marks: WhenValueDto[];
  regions: string[];
}

export interface CoupledDocumentDto {
  schema_version: string;
  document: DocumentDto;
  mentions: MentionDto[];
  viz_states: Record<string, VizStateDto>;
  inverse_index: {
    by_entity: Record<string, number[]>;
    by_stat: Record<string, number[]>;
    by_quarter: Record<string, number[]>;
    by_region: Record<string, number[]>;
  };
}

export interface BoxScoreRowDto {
  player: string;
  team: string;
  minutes: number;
  points: number;
  rebounds: number;
  assists: number;
  steals: number;
  blocks: number;
  turnovers: number;
  fouls: number;
  fgm: number;
  fga: number;
  tpm: number;
  tpa: number;
  ftm: number;
  fta: number;
}

export interface ShotDto {
  player: string;
  team: string;
  quarter: number;
  clock: number;
  x: number;
  y: number;
  made: boolean;
  value: number;
}

export interface ScoreSampleDto {
  elapsed: number;
  home: number;
  away: number;
}

export interface GameDto {
  meta: {
    game_id: string;
    home_team: string;
    away_team: string;
    date: string;
    final_home: number;
    final_away: number;
    periods: number;
  };
  box_score: BoxScoreRowDto[];
  shots: ShotDto[];
  timeline: ScoreSampleDto[];
}

// Conjunctive query over the coupled document, mirroring /api/sentences.
export interface Selector {
  players?: string[];
  teams?: string[];
  stats?: string[];
  quarter?: number;
  timeRange?: [number, number];
  regions?: string[];
}

export function selectorIsEmpty(sel: Selector): boolean {
  return (
    !sel.players?.length &&
    !sel.teams?.length &&
    !sel.stats?.length &&
    sel.quarter === undefined &&
    sel.timeRange === undefined &&
    !sel.regions?.length
  );
}

export const EMPTY_VIZ_STATE: VizStateDto = {
  players: [],
  teams: [],
  stat_keys: [],
  time_marks: [],
  regions: [],
};
