import { describe, expect, it } from "vitest";

import { ApiError, Client, Unreachable } from "../src/api";
import { FakeService } from "./fakeservice";

describe("Client", () => {
  it("lists reports and activities from the service shapes", async () => {
    const svc = new FakeService();
    const client = new Client("", "tok", svc.fetch);
    const reports = await client.reports("w01");
    expect(reports.length).toBe(3);
    expect(reports[0]!.transcript).toMatch(/walk/);
    const acts = await client.activities({ device_id: "w01" });
    expect(acts.map((a) => a.activity_id)).toContain("w01-r0001:0");
  });

  it("sends the bearer token only where the service wants it", async () => {
    const svc = new FakeService();
    const client = new Client("", "tok", svc.fetch);
    await client.putCorrection("w01-r0001:0", "activity_type", "tv", "cardio", "me");
    expect(svc.putLog).toEqual([
      { activityId: "w01-r0001:0", field: "activity_type", newValue: "tv" },
    ]);
  });

  it("maps HTTP errors to ApiError with the service detail", async () => {
    const svc = new FakeService();
    const client = new Client("", "wrong-token", svc.fetch);
    const err = await client
      .putCorrection("w01-r0001:0", "activity_type", "tv", null, "me")
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(401);
    expect(err.detail).toMatch(/bearer token/);
  });

  it("maps connection failures to Unreachable", async () => {
    const svc = new FakeService();
    svc.offline = true;
    const client = new Client("", "tok", svc.fetch);
    const err = await client.reports().catch((e) => e);
    expect(err).toBeInstanceOf(Unreachable);
  });

  it("escapes device ids in query strings", async () => {
    const seen: string[] = [];
    const client = new Client("", "", async (url) => {
      seen.push(url);
      return new Response('{"reports": [], "count": 0}', { status: 200 });
    });
    await client.reports("w 1&x=2");
    expect(seen[0]).toBe("/v1/reports?device_id=w%201%26x%3D2");
  });
});
