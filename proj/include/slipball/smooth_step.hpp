#pragma once

#include <cmath>

namespace slipball {

/// Value and first two derivatives of a one-dimensional function.
struct Jet1 {
  double value{0};
  double d1{0};
  double d2{0};
};

/// The C-infinity transition s(t) = sigma(t) / (sigma(t) + sigma(1 - t)),
/// sigma(t) = exp(-1/t) for t > 0 and 0 otherwise. s = 0 for t <= 0 and
/// s = 1 for t >= 1, with all derivatives vanishing outside (0, 1).
inline Jet1 smooth_step(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0};

  // sigma and its derivatives; zero once exp underflows so that 0/t^k never
  // produces NaN.
  auto sigma = [](double x) -> Jet1 {
    const double e = std::exp(-1.0 / x);
    if (e == 0.0) return {0.0, 0.0, 0.0};
    const double x2 = x * x;
    return {e, e / x2, e * (1.0 / (x2 * x2) - 2.0 / (x2 * x))};
  };
  const Jet1 a = sigma(t);
  const Jet1 s1 = sigma(1.0 - t);
  // b(t) = sigma(1 - t): b' = -sigma'(1 - t), b'' = sigma''(1 - t)
  const double b = s1.value, db = -s1.d1, d2b = s1.d2;

  const double sum = a.value + b;
  const double num = a.d1 * b - a.value * db;
  const double dnum = a.d2 * b - a.value * d2b;
  return {a.value / sum, num / (sum * sum),
          dnum / (sum * sum) - 2.0 * num * (a.d1 + db) / (sum * sum * sum)};
}

/// Smooth step rising from 0 at `lo` to 1 at `hi`.
inline Jet1 smooth_ramp(double x, double lo, double hi) {
  const double w = hi - lo;
  const Jet1 s = smooth_step((x - lo) / w);
  return {s.value, s.d1 / w, s.d2 / (w * w)};
}

/// Plateau bump: 0 outside [outer_lo, outer_hi], 1 on [inner_lo, inner_hi].
inline Jet1 smooth_bump(double x, double outer_lo, double inner_lo,
                        double inner_hi, double outer_hi) {
  const Jet1 up = smooth_ramp(x, outer_lo, inner_lo);
  // falling edge as a ramp in the mirrored variable
  const double w = outer_hi - inner_hi;
  const Jet1 s = smooth_step((outer_hi - x) / w);
  const Jet1 down{s.value, -s.d1 / w, s.d2 / (w * w)};
  return {up.value * down.value, up.d1 * down.value + up.value * down.d1,
          up.d2 * down.value + 2.0 * up.d1 * down.d1 + up.value * down.d2};
}

}  // namespace slipball
