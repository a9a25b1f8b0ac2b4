// Display formatting. The declared display precision is 3 decimals; every
// rendered number must be fmt3() of the exact API payload value.

export function fmt3(v: number): string {
  return v.toFixed(3);
}

export function fmt1(v: number): string {
  return v.toFixed(1);
}

export function pct(v: number): string {
  return (v * 100).toFixed(1) + '%';
}

export function labTooltip(lab: [number, number, number], hex: string): string {
  return `L ${fmt1(lab[0])}, a ${fmt1(lab[1])}, b ${fmt1(lab[2])} — ${hex}`;
}
