#pragma once

#include <vector>

#include "fractal/sampling.hpp"

namespace fractal {

double sup_norm(const SampledCurve& f);
double sup_norm(const SampledSurface& f);

/// ||f||_{alpha,d} evaluated over dyadic deltas 2^-m, m = 0..m_max.
struct NormReport {
  double alpha = 0.0;
  double sup_norm = 0.0;
  /// max over m of R(m) * 2^{m(1-alpha)}, i.e. R(m) / delta^{1-alpha}.
  double v_alpha_sup = 0.0;
  int achieved_m = 0;
  std::vector<double> scale_terms;  // indexed by m

  double norm() const { return sup_norm + v_alpha_sup; }
};

/// Requires alpha >= d and 0 <= m_max <= n.
NormReport v_alpha_norm(const SampledCurve& f, double alpha, int m_max);
NormReport v_alpha_norm(const SampledSurface& f, double alpha, int m_max);

/// Partial sum of d_{alpha,d}(f, g) = sum_k min(2^-k, ||f - g||_{alpha + 1/k}).
struct MetricValue {
  double value = 0.0;
  double tail_bound = 0.0;  // 2^-K: the omitted terms sum to at most this
  std::vector<double> terms;
};

MetricValue d_alpha_metric(const SampledCurve& f, const SampledCurve& g, double alpha, int terms,
                           int m_max);
MetricValue d_alpha_metric(const SampledSurface& f, const SampledSurface& g, double alpha,
                           int terms, int m_max);

/// Hoelder quotient sup |f(p) - f(q)| / |p - q|^{3 - alpha} over grid pairs.
///
/// At n <= all_pairs_max_n every pair of grid points is visited. Above it
/// only offsets along the dyadic ladder (a 2^k, b 2^k), a, b in {-1, 0, 1},
/// are visited; `ladder_factor` = 2^{3-alpha} records how far the ladder
/// value may sit below the all-pairs supremum.
struct LipschitzReport {
  double alpha = 0.0;
  double value = 0.0;
  bool all_pairs = true;
  double ladder_factor = 1.0;
};

inline constexpr int all_pairs_max_n = 8;

/// Requires 2 <= alpha < 3.
LipschitzReport lip_alpha(const SampledSurface& f, double alpha);

/// The distance power |p - q|^e for a grid offset (di, dj) at exponent n.
/// Shared by the surface quotient and the horizon bound so both sides use
/// identical rounding.
double offset_distance_power(long di, long dj, int n, double exponent);

/// max over pairs |h(x1) - h(x2)| / |x1 - x2|^exponent for a curve, all pairs.
double curve_holder_quotient(const SampledCurve& h, double exponent);

struct MonotonicityReport {
  double alpha = 0.0;
  std::vector<double> norms;  // norms[k-1] = ||f||_{alpha + 1/k}
  bool per_scale_holds = true;
  bool holds = true;
};

/// Checks ||f||_{alpha + 1/(k+1)} >= ||f||_{alpha + 1/k} for k = 1..k_max,
/// both on the norms and scale by scale.
MonotonicityReport norm_monotonicity_check(const SampledCurve& f, double alpha, int k_max,
                                           int m_max);
MonotonicityReport norm_monotonicity_check(const SampledSurface& f, double alpha, int k_max,
                                           int m_max);

}  // namespace fractal
