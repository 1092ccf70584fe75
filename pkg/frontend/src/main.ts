// Browser entry point: the human is the demon. Pick who wakes up each
// round (and, from the advanced panel, each robot's private zoom and
// orientation), then try to stall gathering or force a bivalent split.
// Spoiler: the algorithm wins.

import { SessionClient } from "./client.js";
import { idleCounts, starvingRobots } from "./fairness.js";
import { FrameSpec, StateMsg } from "./protocol.js";
import { renderStateSvg } from "./render.js";
import { WebSocketTransport } from "./transport.js";
import { PHASE_DESCRIPTIONS, viewFromState } from "./view.js";

const PRESETS: Record<string, string> = {
  "worked example": "0:3,1:1,5/2:1,3:3",
  "four even towers": "-1:2,0:2,1:2,2:2",
  "bivalent (forbidden)": "0:2,1:2",
  "lonely crowd": "0:7,10:1",
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function measureText(measure: [number, number]): string {
  return `(${measure[0]}, ${measure[1]})`;
}

class Playground {
  private client: SessionClient;
  private selected = new Set<number>();
  private frames = new Map<number, { zoom: string; reflect: boolean }>();
  private previousMeasure: [number, number] | null = null;

  constructor() {
    const scheme = location.protocol === "https:" ? "wss" : "ws";
    this.client = new SessionClient(
      new WebSocketTransport(`${scheme}://${location.host}/session`)
    );
  }

  async start(): Promise<void> {
    await this.client.connect();
    el<HTMLButtonElement>("init-button").addEventListener("click", () => {
      void this.init(el<HTMLInputElement>("init-input").value);
    });
    el<HTMLButtonElement>("step-button").addEventListener("click", () => void this.step());
    el<HTMLButtonElement>("undo-button").addEventListener("click", () => void this.undo());
    el<HTMLButtonElement>("reset-button").addEventListener("click", () => void this.reset());
    el<HTMLButtonElement>("select-all").addEventListener("click", () => this.selectAll(true));
    el<HTMLButtonElement>("select-none").addEventListener("click", () => this.selectAll(false));
    const presets = el<HTMLSpanElement>("presets");
    for (const [label, config] of Object.entries(PRESETS)) {
      const button = document.createElement("button");
      button.textContent = label;
      button.addEventListener("click", () => {
        el<HTMLInputElement>("init-input").value = config;
        void this.init(config);
      });
      presets.appendChild(button);
    }
    await this.init(el<HTMLInputElement>("init-input").value);
  }

  private async init(config: string): Promise<void> {
    try {
      this.previousMeasure = null;
      const state = await this.client.init(config);
      this.selected = new Set(state.positions.map((_, id) => id));
      this.frames.clear();
      this.refresh(state, "initialized");
    } catch (err) {
      this.note(String(err), true);
    }
  }

  private async step(): Promise<void> {
    const state = this.client.current;
    if (!state) return;
    const activated = [...this.selected].sort((a, b) => a - b);
    const frames: FrameSpec[] = activated
      .map((id) => ({ id, ...(this.frames.get(id) ?? { zoom: "1", reflect: false }) }))
      .filter((frame) => frame.zoom !== "1" || frame.reflect);
    this.previousMeasure = state.measure;
    try {
      const next = await this.client.step(activated, frames);
      const note =
        next.moving.length === 0
          ? activated.length === 0
            ? "no robots activated"
            : "activated robots were already settled"
          : `moved ${next.moving.length} robot(s) to ${next.target ?? "their goal"}`;
      this.refresh(next, note);
    } catch (err) {
      this.note(String(err), true);
    }
  }

  private async undo(): Promise<void> {
    try {
      this.previousMeasure = null;
      this.refresh(await this.client.undo(), "undid last step (reset + replay)");
    } catch (err) {
      this.note(String(err), true);
    }
  }

  private async reset(): Promise<void> {
    try {
      this.previousMeasure = null;
      this.refresh(await this.client.reset(), "back to the initial configuration");
    } catch (err) {
      this.note(String(err), true);
    }
  }

  private selectAll(on: boolean): void {
    const state = this.client.current;
    if (!state) return;
    this.selected = on ? new Set(state.positions.map((_, id) => id)) : new Set();
    this.refresh(state, null);
  }

  private note(text: string, isError = false): void {
    const banner = el<HTMLDivElement>("note");
    banner.textContent = text;
    banner.className = isError ? "note error" : "note";
  }

  private refresh(state: StateMsg, note: string | null): void {
    const view = viewFromState(state);
    el<HTMLDivElement>("board").innerHTML = renderStateSvg(view);

    el<HTMLSpanElement>("round").textContent = String(state.round);
    const measureSpan = el<HTMLSpanElement>("measure");
    let delta = "";
    if (this.previousMeasure) {
      const [pp, pc] = this.previousMeasure;
      const [np, nc] = state.measure;
      delta = np < pp || (np === pp && nc < pc) ? " ↓ decreased" : " = unchanged";
    }
    measureSpan.textContent = measureText(state.measure) + delta;
    el<HTMLSpanElement>("phase").textContent =
      `${state.phase} — ${PHASE_DESCRIPTIONS[state.phase] ?? ""}`;
    const flags: string[] = [];
    if (state.forbidden) flags.push("forbidden");
    if (state.gathered !== null) flags.push(`gathered at ${state.gathered}`);
    el<HTMLSpanElement>("flags").textContent = flags.join(", ") || "—";

    this.renderRobots(state);
    this.renderFairness(state);
    if (note) this.note(note);
  }

  private renderRobots(state: StateMsg): void {
    const table = el<HTMLTableSectionElement>("robots");
    table.innerHTML = "";
    state.positions.forEach((loc, id) => {
      const row = document.createElement("tr");
      if (state.moving.includes(id)) row.className = "moved";

      const pick = document.createElement("input");
      pick.type = "checkbox";
      pick.checked = this.selected.has(id);
      pick.addEventListener("change", () => {
        if (pick.checked) this.selected.add(id);
        else this.selected.delete(id);
      });

      const zoom = document.createElement("input");
      zoom.type = "text";
      zoom.size = 4;
      zoom.value = this.frames.get(id)?.zoom ?? "1";
      zoom.addEventListener("change", () => {
        this.frames.set(id, {
          zoom: zoom.value.trim() || "1",
          reflect: this.frames.get(id)?.reflect ?? false,
        });
      });

      const reflect = document.createElement("input");
      reflect.type = "checkbox";
      reflect.checked = this.frames.get(id)?.reflect ?? false;
      reflect.addEventListener("change", () => {
        this.frames.set(id, {
          zoom: this.frames.get(id)?.zoom ?? "1",
          reflect: reflect.checked,
        });
      });

      const cells = [
        String(id),
        null, // checkbox
        loc,
        null, // zoom
        null, // reflect
      ];
      cells.forEach((text, column) => {
        const cell = document.createElement("td");
        if (text !== null) cell.textContent = text;
        else if (column === 1) cell.appendChild(pick);
        else if (column === 3) cell.appendChild(zoom);
        else cell.appendChild(reflect);
        row.appendChild(cell);
      });
      table.appendChild(row);
    });
  }

  private renderFairness(state: StateMsg): void {
    const n = state.positions.length;
    const counts = idleCounts(this.client.actionHistory(), n);
    const k = Number(el<HTMLInputElement>("fairness-k").value) || 3;
    const starving = new Set(starvingRobots(counts, k));
    const meter = el<HTMLTableSectionElement>("fairness");
    meter.innerHTML = "";
    counts.forEach((idle, id) => {
      const row = document.createElement("tr");
      if (starving.has(id)) row.className = "starving";
      const name = document.createElement("td");
      name.textContent = `robot ${id}`;
      const value = document.createElement("td");
      value.textContent = `${idle} round(s) idle`;
      row.append(name, value);
      meter.appendChild(row);
    });
  }
}

void new Playground().start().catch((err) => {
  document.body.insertAdjacentHTML(
    "beforeend",
    `<p class="note error">cannot reach the gatherline server: ${String(err)}</p>`
  );
});
