// Transports carry protocol lines; the session engine lives server-side.
// The browser uses the WebSocket binding, scripts and tests the HTTP one.

import { HelloMsg, ResponseMsg, RequestMsg, decodeResponse, encodeRequest } from "./protocol.js";

export interface Transport {
  hello(): Promise<HelloMsg>;
  request(msg: RequestMsg): Promise<{ response: ResponseMsg; raw: string }>;
  close(): void;
}

export class HttpTransport implements Transport {
  private session: string | null = null;

  constructor(private readonly base: string) {}

  async hello(): Promise<HelloMsg> {
    const response = await fetch(`${this.base}/sessions`, { method: "POST" });
    if (!response.ok) throw new Error(`session create failed: HTTP ${response.status}`);
    const hello = decodeResponse(await response.text());
    if (hello.type !== "hello") throw new Error("expected a hello message");
    this.session = hello.session ?? null;
    if (!this.session) throw new Error("HTTP hello carried no session id");
    return hello;
  }

  async request(msg: RequestMsg): Promise<{ response: ResponseMsg; raw: string }> {
    if (!this.session) throw new Error("transport not connected (call hello first)");
    const response = await fetch(`${this.base}/sessions/${this.session}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: encodeRequest(msg),
    });
    if (!response.ok) throw new Error(`session request failed: HTTP ${response.status}`);
    const raw = await response.text();
    return { response: decodeResponse(raw), raw };
  }

  close(): void {
    if (this.session) {
      void fetch(`${this.base}/sessions/${this.session}`, { method: "DELETE" }).catch(() => {});
      this.session = null;
    }
  }
}

export class WebSocketTransport implements Transport {
  private socket: WebSocket | null = null;
  private readonly pending: Array<{
    resolve: (line: string) => void;
    reject: (err: Error) => void;
  }> = [];

  constructor(private readonly url: string) {}

  private nextLine(): Promise<string> {
    return new Promise((resolve, reject) => this.pending.push({ resolve, reject }));
  }

  async hello(): Promise<HelloMsg> {
    const socket = new WebSocket(this.url);
    this.socket = socket;
    socket.onmessage = (event) => {
      const waiter = this.pending.shift();
      if (waiter) waiter.resolve(String(event.data));
    };
    socket.onclose = () => {
      for (const waiter of this.pending.splice(0)) {
        waiter.reject(new Error("socket closed"));
      }
    };
    const line = this.nextLine();
    await new Promise<void>((resolve, reject) => {
      socket.onopen = () => resolve();
      socket.onerror = () => reject(new Error(`cannot connect to ${this.url}`));
    });
    const hello = decodeResponse(await line);
    if (hello.type !== "hello") throw new Error("expected a hello message");
    return hello;
  }

  async request(msg: RequestMsg): Promise<{ response: ResponseMsg; raw: string }> {
    if (!this.socket || this.socket.readyState !== WebSocket.OPEN) {
      throw new Error("socket is not open");
    }
    // The protocol is strict request/response, so the next line answers us.
    const line = this.nextLine();
    this.socket.send(encodeRequest(msg));
    const raw = await line;
    return { response: decodeResponse(raw), raw };
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
  }
}
