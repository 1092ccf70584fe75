// gatherline-session/1 message shapes. One request line in, one response
// line out; the UI never computes round semantics locally, every state it
// shows came from the server.

export const SESSION_VERSION = "gatherline-session/1";

export interface HelloMsg {
  type: "hello";
  version: string;
  robogram: string;
  session?: string; // HTTP binding only
}

export interface StateMsg {
  type: "state";
  round: number;
  positions: string[]; // location per robot id
  config: [string, number][]; // towers: sorted (location, multiplicity)
  measure: [number, number];
  phase: string;
  forbidden: boolean;
  gathered: string | null;
  target: string | null;
  moving: number[];
}

export interface ErrorMsg {
  type: "error";
  code: string;
  detail: string;
}

export type ResponseMsg = HelloMsg | StateMsg | ErrorMsg;

export interface FrameSpec {
  id: number;
  zoom: string;
  reflect: boolean;
}

export type RequestMsg =
  | { type: "init"; config: string }
  | { type: "step"; activated: number[]; frames: FrameSpec[] }
  | { type: "reset" }
  | { type: "query" };

export function encodeRequest(msg: RequestMsg): string {
  return JSON.stringify(msg);
}

export function decodeResponse(line: string): ResponseMsg {
  let parsed: unknown;
  try {
    parsed = JSON.parse(line);
  } catch {
    throw new Error(`server sent a non-JSON line: ${line}`);
  }
  if (typeof parsed !== "object" || parsed === null) {
    throw new Error(`server sent a non-object message: ${line}`);
  }
  const msg = parsed as { type?: string };
  if (msg.type === "hello" || msg.type === "state" || msg.type === "error") {
    return parsed as ResponseMsg;
  }
  throw new Error(`unknown server message type: ${String(msg.type)}`);
}

export function expectState(response: ResponseMsg): StateMsg {
  if (response.type === "error") {
    throw new Error(`${response.code}: ${response.detail}`);
  }
  if (response.type !== "state") {
    throw new Error(`expected a state message, got ${response.type}`);
  }
  return response;
}
