#include "valuesched/valuecurve.hpp"

#include "valuesched/model.hpp"

namespace valuesched {

double curve_factor(double t_s, const ValueCurve& curve) {
  if (t_s <= curve.d_s) return 1.0;
  if (t_s < curve.z_s) return (curve.z_s - t_s) / (curve.z_s - curve.d_s);
  if (curve.penalty_rate == 0.0) return 0.0;
  return -curve.penalty_rate * (t_s - curve.z_s);
}

double element_profit(const ProcessingOption& option, double et_s, const ValueCurve& curve) {
  return option.max_profit * curve_factor(et_s, curve);
}

}  // namespace valuesched
