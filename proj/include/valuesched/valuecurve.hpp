#pragma once

namespace valuesched {

struct ProcessingOption;

// Time-to-value mapping of an order. The customer pays the full option
// price while the order completes at or before d_s, a linearly shrinking
// fraction between d_s and z_s, and nothing from z_s on. A positive
// penalty_rate turns the tail into a linear penalty instead of zero.
struct ValueCurve {
  double d_s = 0;            // plateau end, absolute seconds
  double z_s = 0;            // zero point, absolute seconds (d_s < z_s)
  double penalty_rate = 0;   // per-second slope applied after z_s, >= 0

  bool operator==(const ValueCurve&) const = default;
};

// Dimensionless value factor at completion time t_s. Non-increasing in t_s:
// 1 on the plateau, (z - t) / (z - d) on the ramp, then 0 or the negative
// penalty tail.
double curve_factor(double t_s, const ValueCurve& curve);

// max_profit of the chosen option scaled by the curve factor at the
// completion time et_s.
double element_profit(const ProcessingOption& option, double et_s, const ValueCurve& curve);

}  // namespace valuesched
