import { describe, expect, it } from "vitest";

import { ApiError, fetchIdentify, validateEmail } from "../src/api.js";

function fakeResponse(status: number, body: unknown): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => body,
  } as Response;
}

describe("validateEmail", () => {
  it("accepts a plain address", () => {
    expect(validateEmail("user@example.com")).toBeNull();
  });

  it.each(["", "   ", "no-at-sign", "two@@example.com", "a@b", "has space@x.co"])(
    "rejects %j",
    (bad) => {
      expect(validateEmail(bad)).not.toBeNull();
    },
  );
});

describe("fetchIdentify", () => {
  it("builds the query string and parses the body", async () => {
    const seen: string[] = [];
    const body = { email: "a@b.co", cached: false };
    const result = await fetchIdentify("a@b.co", {
      eps: 3,
      fetchFn: async (input) => {
        seen.push(input);
        return fakeResponse(200, body);
      },
    });
    expect(result.email).toBe("a@b.co");
    expect(seen[0]).toBe("/api/v1/identify?email=a%40b.co&eps=3");
  });

  it("maps error bodies onto ApiError codes", async () => {
    await expect(
      fetchIdentify("a@b.co", {
        fetchFn: async () => fakeResponse(400, { error: "invalid_email" }),
      }),
    ).rejects.toMatchObject({ code: "invalid_email", status: 400 });

    await expect(
      fetchIdentify("a@b.co", {
        fetchFn: async () => fakeResponse(503, { error: "all_providers_failed" }),
      }),
    ).rejects.toMatchObject({ code: "all_providers_failed" });
  });

  it("wraps network failures", async () => {
    await expect(
      fetchIdentify("a@b.co", {
        fetchFn: async () => {
          throw new TypeError("connection refused");
        },
      }),
    ).rejects.toBeInstanceOf(ApiError);
  });
});
