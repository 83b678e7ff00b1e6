/** API client: URL building and error mapping, fetch stubbed. */

import { describe, expect, it } from "vitest";

import { AdvisorClient, ApiError } from "../src/api";

function stubFetch(routes: Record<string, { status: number; body: unknown }>) {
  const seen: string[] = [];
  const impl = async (url: string): Promise<Response> => {
    seen.push(url);
    const match = routes[url];
    if (!match) throw new Error(`unexpected fetch: ${url}`);
    return new Response(JSON.stringify(match.body), {
      status: match.status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { impl, seen };
}

describe("AdvisorClient", () => {
  it("builds advice urls and strips trailing slashes", async () => {
    const { impl, seen } = stubFetch({
      "http://x:1/api/v1/advice?lid=4&mover=1&opponent=1": {
        status: 200,
        body: { action: "continue" },
      },
    });
    const client = new AdvisorClient("http://x:1/", impl);
    const advice = await client.advice(4, 1, 1);
    expect(advice.action).toBe("continue");
    expect(seen).toHaveLength(1);
  });

  it("maps error payloads onto ApiError", async () => {
    const { impl } = stubFetch({
      "http://x:1/api/v1/table/99": {
        status: 404,
        body: { error: "total 99 outside 2..15" },
      },
    });
    const client = new AdvisorClient("http://x:1", impl);
    await expect(client.table(99)).rejects.toThrowError(ApiError);
    await expect(client.table(99)).rejects.toMatchObject({
      status: 404,
      message: "total 99 outside 2..15",
    });
  });

  it("health swallows connection failures", async () => {
    const client = new AdvisorClient("http://x:1", async () => {
      throw new Error("refused");
    });
    expect(await client.health()).toBe(false);
  });
});
