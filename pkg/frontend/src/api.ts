import { CoupledDocumentDto, GameDto, Selector } from "./types";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url);
  if (!resp.ok) {
    throw new ApiError(resp.status, `${url} -> ${resp.status}`);
  }
  return (await resp.json()) as T;
}

export function selectorQuery(sel: Selector): string {
  const params = new URLSearchParams();
  for (const p of sel.players ?? []) params.append("player", p);
  for (const t of sel.teams ?? []) params.append("team", t);
  for (const s of sel.stats ?? []) params.append("stat", s);
  if (sel.quarter !== undefined) params.set("quarter", String(sel.quarter));
  if (sel.timeRange) {
    params.set("t0", String(sel.timeRange[0]));
    params.set("t1", String(sel.timeRange[1]));
  }
  for (const r of sel.regions ?? []) params.append("region", r);
  return params.toString();
}

export class ApiClient {
  constructor(private base: string = "") {}

  coupling(): Promise<CoupledDocumentDto> {
    return getJson(`${this.base}/api/coupling`);
  }

  game(): Promise<GameDto> {
    return getJson(`${this.base}/api/game`);
  }

  async sentences(sel: Selector): Promise<number[]> {
    const body = await getJson<{ sentences: number[] }>(
      `${this.base}/api/sentences?${selectorQuery(sel)}`,
    );
    return body.sentences;
  }
}

/** Wraps ApiClient.sentences with a sequence number so that out-of-order
 *  responses never clobber a newer selection (last write wins). */
export class SequencedSentences {
  private seq = 0;

  constructor(private api: ApiClient) {}

  async fetch(sel: Selector): Promise<number[] | null> {
    const ticket = ++this.seq;
    const sentences = await this.api.sentences(sel);
    return ticket === this.seq ? sentences : null;
  }
}
