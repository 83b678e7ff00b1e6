/** Thin fetch client for the advisor service. The UI does no probability
 * math of its own; every number on screen comes from these calls. */

import { Advice, LevelTable, OptimalLevels } from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

function normalizeBaseUrl(baseUrl: string): string {
  return baseUrl.replace(/\/$/, "");
}

type FetchLike = (input: string) => Promise<Response>;

export class AdvisorClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl: FetchLike = (u) => fetch(u)) {
    this.base = normalizeBaseUrl(baseUrl);
    this.fetchImpl = fetchImpl;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { error?: string };
        if (body.error) detail = body.error;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchImpl(`${this.base}/health`);
      return response.ok;
    } catch {
      return false;
    }
  }

  advice(lid: number, mover: number, opponent: number): Promise<Advice> {
    const query = `lid=${lid}&mover=${mover}&opponent=${opponent}`;
    return this.getJson<Advice>(`/api/v1/advice?${query}`);
  }

  table(total: number): Promise<LevelTable> {
    return this.getJson<LevelTable>(`/api/v1/table/${total}`);
  }

  optimal(total: number): Promise<OptimalLevels> {
    return this.getJson<OptimalLevels>(`/api/v1/optimal/${total}`);
  }
}
