import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { installFetchRouter, jsonResponse } from "./helpers.js";

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("api client", () => {
  it("unwraps history points", async () => {
    installFetchRouter({
      "/v1/history": () =>
        jsonResponse({ points: [{ date: "2026-08-01", probability: 0.4, level: "MEDIUM" }] }),
    });
    const client = new ApiClient("http://testhost");
    const points = await client.history(30);
    expect(points).toHaveLength(1);
    expect(points[0].level).toBe("MEDIUM");
  });

  it("raises ApiError with the envelope fields on 422", async () => {
    installFetchRouter({
      "/v1/estimate": () =>
        jsonResponse(
          { code: "out_of_bounds", message: "bmi out of range", field_path: "bmi" },
          422,
        ),
    });
    const client = new ApiClient("http://testhost");
    const failure = await client.estimate({ bmi: 500 }).catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(422);
    expect(failure.code).toBe("out_of_bounds");
    expect(failure.fieldPath).toBe("bmi");
  });

  it("sends the user header and JSON content type", async () => {
    const log = installFetchRouter({
      "/v1/estimate": () => jsonResponse({ margin: 0, probability: 0.5, level: "MEDIUM" }),
    });
    const client = new ApiClient("http://testhost", "alice");
    await client.estimate({ bmi: 22 });
    expect(log.calls[0].method).toBe("POST");
    const fetchMock = globalThis.fetch as ReturnType<typeof vi.fn>;
    const headers = fetchMock.mock.calls[0][1].headers as Record<string, string>;
    expect(headers["X-User"]).toBe("alice");
    expect(headers["Content-Type"]).toBe("application/json");
  });

  it("health resolves false on network failure and true on 200", async () => {
    installFetchRouter({
      "/v1/health": () => {
        throw new TypeError("down");
      },
    });
    const client = new ApiClient("http://testhost");
    expect(await client.health()).toBe(false);

    installFetchRouter({
      "/v1/health": () => jsonResponse({ status: "ok" }),
    });
    expect(await client.health()).toBe(true);
  });
});
