/**
 * Plain least-squares slope with a fixed sequential summation order.
 *
 * The harness computes its reported slopes the same way, term by term,
 * so fitting the points lifted from a rendered figure reproduces the
 * run.json value bit for bit.
 */
export function leastSquaresSlope(x: number[], y: number[]): number {
  if (x.length !== y.length || x.length < 2) {
    throw new Error('need two sequences of equal length >= 2');
  }
  const n = x.length;
  let xMean = 0.0;
  let yMean = 0.0;
  for (let i = 0; i < n; i++) {
    xMean += x[i];
    yMean += y[i];
  }
  xMean /= n;
  yMean /= n;
  let num = 0.0;
  let den = 0.0;
  for (let i = 0; i < n; i++) {
    num += (x[i] - xMean) * (y[i] - yMean);
    den += (x[i] - xMean) ** 2;
  }
  if (den === 0.0) {
    throw new Error('slope is undefined for constant x');
  }
  return num / den;
}
