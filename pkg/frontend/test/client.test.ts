import { describe, expect, it } from "vitest";

import { SessionClient } from "../src/client.js";
import { HelloMsg, RequestMsg, ResponseMsg, SESSION_VERSION } from "../src/protocol.js";
import { Transport } from "../src/transport.js";

/**
 * A deterministic in-memory stand-in for the server: every request maps to
 * a fixed response line, which is exactly the real server's contract.
 */
class FakeTransport implements Transport {
  constructor(
    private readonly table: Map<string, string>,
    private readonly mutateOnReplay = false
  ) {}

  private served = new Set<string>();

  async hello(): Promise<HelloMsg> {
    return { type: "hello", version: SESSION_VERSION, robogram: "gathering" };
  }

  async request(msg: RequestMsg): Promise<{ response: ResponseMsg; raw: string }> {
    const key = JSON.stringify(msg);
    let raw = this.table.get(key);
    if (raw === undefined) throw new Error(`fake has no response for ${key}`);
    if (this.mutateOnReplay && this.served.has(key)) {
      raw = raw.replace('"round":', '"round": ');
    }
    this.served.add(key);
    return { response: JSON.parse(raw) as ResponseMsg, raw };
  }

  close(): void {}
}

function stateLine(round: number, towers: [string, number][], moving: number[]): string {
  return JSON.stringify({
    type: "state",
    round,
    positions: [],
    config: towers,
    measure: [3, 2],
    phase: "center",
    forbidden: false,
    gathered: null,
    target: null,
    moving,
  });
}

const INIT: RequestMsg = { type: "init", config: "0:1,1:1" };
const STEP_A: RequestMsg = { type: "step", activated: [0], frames: [] };
const STEP_B: RequestMsg = { type: "step", activated: [1], frames: [] };
const RESET: RequestMsg = { type: "reset" };

function table(): Map<string, string> {
  return new Map([
    [JSON.stringify(INIT), stateLine(0, [["0", 1], ["1", 1]], [])],
    [JSON.stringify(RESET), stateLine(0, [["0", 1], ["1", 1]], [])],
    [JSON.stringify(STEP_A), stateLine(1, [["1", 2]], [0])],
    [JSON.stringify(STEP_B), stateLine(2, [["1", 2]], [])],
  ]);
}

describe("SessionClient", () => {
  it("verifies the protocol version", async () => {
    const client = new SessionClient(new FakeTransport(table()));
    const hello = await client.connect();
    expect(hello.version).toBe(SESSION_VERSION);
  });

  it("keeps history and exposes the demon's action log", async () => {
    const client = new SessionClient(new FakeTransport(table()));
    await client.init("0:1,1:1");
    await client.step([0]);
    await client.step([1]);
    expect(client.history).toHaveLength(3);
    expect(client.actionHistory()).toEqual([{ activated: [0] }, { activated: [1] }]);
  });

  it("undo replays the prefix and lands one step back", async () => {
    // The fake maps STEP_A to the same line every time, so replays are
    // byte-identical, as the deterministic server guarantees.
    const client = new SessionClient(new FakeTransport(table()));
    await client.init("0:1,1:1");
    await client.step([0]);
    await client.step([1]);
    const state = await client.undo();
    expect(state.round).toBe(1);
    expect(client.history).toHaveLength(2);
    expect(client.actionHistory()).toEqual([{ activated: [0] }]);
  });

  it("undo fails loudly if a replayed state diverges", async () => {
    const client = new SessionClient(new FakeTransport(table(), true));
    await client.init("0:1,1:1");
    await client.step([0]);
    await client.step([1]);
    await expect(client.undo()).rejects.toThrow(/diverged/);
  });

  it("undo on the initial state is a no-op", async () => {
    const client = new SessionClient(new FakeTransport(table()));
    await client.init("0:1,1:1");
    const state = await client.undo();
    expect(state.round).toBe(0);
  });
});
