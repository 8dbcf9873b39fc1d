/** Display formatting: one-decimal percentages, compact values. */

export function formatPercent(percent: number): string {
  return (Math.round(percent * 10) / 10).toFixed(1) + "%";
}

export function formatProbability(probability: number): string {
  return formatPercent(probability * 100);
}

export function formatSignedProbability(delta: number): string {
  const text = formatPercent(Math.abs(delta) * 100);
  if (delta > 0) return "+" + text;
  if (delta < 0) return "−" + text;
  return "±" + text;
}

export function formatValue(value: number, unit: string): string {
  const rounded = Math.round(value * 100) / 100;
  const text = String(rounded);
  return unit ? `${text} ${unit}` : text;
}
