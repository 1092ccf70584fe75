// Demon-side bookkeeping: how long has each robot been idle? The meter
// shows how unfair the human scheduler is being (a fair demon activates
// every robot infinitely often; k-fairness bounds the wait by k rounds).

export interface ActionRecord {
  activated: number[];
}

export function idleCounts(history: ActionRecord[], n: number): number[] {
  const counts = new Array<number>(n).fill(0);
  for (const action of history) {
    const activated = new Set(action.activated);
    for (let id = 0; id < n; id++) {
      counts[id] = activated.has(id) ? 0 : counts[id]! + 1;
    }
  }
  return counts;
}

export function starvingRobots(counts: number[], k: number): number[] {
  return counts.flatMap((idle, id) => (idle >= k ? [id] : []));
}
