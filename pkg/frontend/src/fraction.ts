// Exact rationals for positioning and labels. The server only ever sends
// "num/den" strings in lowest terms; the UI never does arithmetic that
// could leave the rationals (it positions, sorts and labels).

export interface Frac {
  readonly num: bigint;
  readonly den: bigint; // always > 0
}

const RATIONAL = /^-?\d+(\/\d+)?$/;

function gcd(a: bigint, b: bigint): bigint {
  while (b !== 0n) {
    [a, b] = [b, a % b];
  }
  return a < 0n ? -a : a;
}

export function frac(num: bigint, den: bigint = 1n): Frac {
  if (den === 0n) throw new Error("zero denominator");
  if (den < 0n) {
    num = -num;
    den = -den;
  }
  const g = gcd(num < 0n ? -num : num, den) || 1n;
  return { num: num / g, den: den / g };
}

export function parseFrac(text: string): Frac {
  const cleaned = text.trim().replace(/−/g, "-");
  if (!RATIONAL.test(cleaned)) throw new Error(`bad rational literal: ${text}`);
  const [numPart, denPart] = cleaned.split("/");
  return frac(BigInt(numPart!), denPart === undefined ? 1n : BigInt(denPart));
}

export function formatFrac(f: Frac): string {
  return f.den === 1n ? `${f.num}` : `${f.num}/${f.den}`;
}

export function toNumber(f: Frac): number {
  return Number(f.num) / Number(f.den);
}

export function cmpFrac(a: Frac, b: Frac): number {
  const left = a.num * b.den;
  const right = b.num * a.den;
  return left < right ? -1 : left > right ? 1 : 0;
}

export function eqFrac(a: Frac, b: Frac): boolean {
  return cmpFrac(a, b) === 0;
}
