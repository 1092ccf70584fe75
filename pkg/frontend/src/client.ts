// Session client: drives one server-side configuration state machine and
// keeps the full history so any prior step can be reconstructed through
// the reset + scripted-replay path (that's what undo is).

import { FrameSpec, HelloMsg, RequestMsg, SESSION_VERSION, StateMsg, expectState } from "./protocol.js";
import { Transport } from "./transport.js";

export interface HistoryEntry {
  // the step action that produced this state; null for the init state
  action: { activated: number[]; frames: FrameSpec[] } | null;
  state: StateMsg;
  raw: string;
}

export class SessionClient {
  history: HistoryEntry[] = [];

  constructor(private readonly transport: Transport) {}

  async connect(): Promise<HelloMsg> {
    const hello = await this.transport.hello();
    if (hello.version !== SESSION_VERSION) {
      throw new Error(`protocol mismatch: server speaks ${hello.version}, client ${SESSION_VERSION}`);
    }
    return hello;
  }

  get current(): StateMsg | null {
    return this.history.length ? this.history[this.history.length - 1]!.state : null;
  }

  actionHistory(): { activated: number[] }[] {
    return this.history
      .filter((entry) => entry.action !== null)
      .map((entry) => ({ activated: entry.action!.activated }));
  }

  async init(config: string): Promise<StateMsg> {
    const { response, raw } = await this.transport.request({ type: "init", config });
    const state = expectState(response);
    this.history = [{ action: null, state, raw }];
    return state;
  }

  async step(activated: number[], frames: FrameSpec[] = []): Promise<StateMsg> {
    const request: RequestMsg = { type: "step", activated, frames };
    const { response, raw } = await this.transport.request(request);
    const state = expectState(response);
    this.history.push({ action: { activated, frames }, state, raw });
    return state;
  }

  async query(): Promise<StateMsg> {
    const { response } = await this.transport.request({ type: "query" });
    return expectState(response);
  }

  async reset(): Promise<StateMsg> {
    const { response, raw } = await this.transport.request({ type: "reset" });
    const state = expectState(response);
    this.history = this.history.slice(0, 1);
    if (this.history.length) {
      this.history[0] = { action: null, state, raw };
    } else {
      this.history = [{ action: null, state, raw }];
    }
    return state;
  }

  /**
   * Drop the last step by resetting and replaying the rest of the script.
   * Every replayed state must come back byte-identical to the recorded one;
   * anything else means the server is not the deterministic machine the
   * protocol promises, and we fail loudly.
   */
  async undo(): Promise<StateMsg> {
    if (this.history.length <= 1) {
      const state = this.current;
      if (!state) throw new Error("nothing to undo (no session state yet)");
      return state;
    }
    const replayed = this.history.slice(1, -1);
    const kept = this.history[0]!;
    const { response, raw } = await this.transport.request({ type: "reset" });
    const resetState = expectState(response);
    this.history = [{ action: null, state: resetState, raw }];
    if (raw !== kept.raw) {
      throw new Error("undo replay diverged at the initial state");
    }
    for (const entry of replayed) {
      const { activated, frames } = entry.action!;
      const { response: stepResponse, raw: stepRaw } = await this.transport.request({
        type: "step",
        activated,
        frames,
      });
      const state = expectState(stepResponse);
      if (stepRaw !== entry.raw) {
        throw new Error(`undo replay diverged at round ${state.round}`);
      }
      this.history.push({ action: entry.action, state, raw: stepRaw });
    }
    return this.current!;
  }

  close(): void {
    this.transport.close();
  }
}
