// Event-count mapping for the chart's right axis: required events to detect
// a hazard ratio h at a one-sided level alpha with the given power. Matches
// the service's convention (classic Hastings rational quantile) so axis
// labels line up with the reported event counts.

export function normalUpperQuantile(p: number): number {
  if (!(p > 0 && p < 1)) throw new RangeError(`tail probability out of (0,1): ${p}`);
  if (p > 0.5) return -normalUpperQuantile(1 - p);
  const t = Math.sqrt(-2 * Math.log(p));
  const num = 2.515517 + t * (0.802853 + t * 0.010328);
  const den = 1 + t * (1.432788 + t * (0.189269 + t * 0.001308));
  return t - num / den;
}

export function eventsRequired(h: number, alpha: number, power: number): number {
  if (!(h > 0 && h < 1)) throw new RangeError(`effect size out of (0,1): ${h}`);
  const z = normalUpperQuantile(alpha) + normalUpperQuantile(1 - power);
  return Math.ceil((4 * z * z) / Math.log(h) ** 2);
}
