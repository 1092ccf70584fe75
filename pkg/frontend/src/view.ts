// The view model mirrors the last server state exactly; towers get a
// numeric coordinate only for layout.

import { parseFrac, toNumber } from "./fraction.js";
import { StateMsg } from "./protocol.js";

export interface Tower {
  location: string;
  multiplicity: number;
  value: number;
  robots: number[]; // ids currently at this location
}

export interface SessionView {
  round: number;
  positions: string[];
  towers: Tower[];
  measure: [number, number];
  phaseLabel: string;
  forbidden: boolean;
  gathered: string | null;
  target: string | null;
  moving: number[];
}

export function viewFromState(state: StateMsg): SessionView {
  const towers: Tower[] = state.config.map(([location, multiplicity]) => ({
    location,
    multiplicity,
    value: toNumber(parseFrac(location)),
    robots: [],
  }));
  const byLocation = new Map(towers.map((t) => [t.location, t]));
  state.positions.forEach((loc, id) => {
    byLocation.get(loc)?.robots.push(id);
  });
  return {
    round: state.round,
    positions: state.positions,
    towers,
    measure: state.measure,
    phaseLabel: state.phase,
    forbidden: state.forbidden,
    gathered: state.gathered,
    target: state.target,
    moving: state.moving,
  };
}

export const PHASE_DESCRIPTIONS: Record<string, string> = {
  "unique-max": "everyone heads for the unique highest tower",
  "three-towers": "outer towers head for the one in between",
  center: "interior robots head for the center of the extremes",
  stay: "nobody can move",
  gathered: "all robots share one point",
  "no-robot": "no robots",
};
