#include "fractal/horizon.hpp"

#include <algorithm>
#include <cmath>

namespace fractal {

namespace {

double max_abs_error(const SampledCurve& a, const SampledCurve& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

ScaleRange default_scales(int d, int n) {
  ScaleRange r;
  if (d == 1 && n >= 10) {
    r.m_min = 4;
    r.m_max = n - 2;
  } else {
    r.m_min = std::min(2, n);
    r.m_max = std::max(r.m_min, n - 1);
  }
  return r;
}

SampledCurve horizon(const SampledSurface& f, Execution ex) {
  std::vector<double> v(f.side());
  detail::parallel_for(f.side(), ex, [&](std::size_t i) {
    const auto col = f.column(i);
    v[i] = *std::max_element(col.begin(), col.end());
  });
  return SampledCurve(f.n(), std::move(v));
}

HorizonGapReport horizon_gap(const SampledSurface& f, const ScaleRange& scales, double tolerance) {
  HorizonGapReport r;
  r.tolerance = tolerance;
  r.surface = estimate_dims(f, scales.m_min, scales.m_max, scales.window);
  r.horizon = estimate_dims(horizon(f), scales.m_min, scales.m_max, scales.window);
  r.gap = r.surface.ols_slope - r.horizon.ols_slope;
  r.gap_conservative = r.surface.lower_est - r.horizon.upper_est;
  r.gap_liberal = r.surface.upper_est - r.horizon.lower_est;
  const double alpha = r.surface.ols_slope;
  r.within_bounds = r.horizon.lower_est >= alpha - 1.0 - tolerance &&
                    r.horizon.upper_est <= 2.0 + tolerance;
  r.horizon_property = std::abs(r.gap - 1.0) <= tolerance;
  return r;
}

HorizonAlgebraReport horizon_algebra_check(const SampledSurface& f, const SampledCurve& g,
                                           double c) {
  HorizonAlgebraReport r;
  const SampledCurve base = horizon(f);
  const SampledCurve shifted = horizon(f + extrude(g));
  const SampledCurve expected = base + g;
  r.translation_holds = shifted == expected;
  r.max_translation_error = max_abs_error(shifted, expected);

  const SampledCurve lifted = horizon(add_constant(f, c));
  const SampledCurve expected_c = add_constant(base, c);
  r.constant_holds = lifted == expected_c;
  r.max_constant_error = max_abs_error(lifted, expected_c);
  return r;
}

}  // namespace fractal
