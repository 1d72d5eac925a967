#include "fractal/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fractal/boxdim.hpp"

namespace fractal {

namespace {

template <class Sample>
std::vector<double> range_sums_up_to(const Sample& f, int m_max) {
  if (m_max < 0 || m_max > f.n()) {
    throw std::invalid_argument("m_max must lie in [0, n], got " + std::to_string(m_max));
  }
  std::vector<double> sums(static_cast<std::size_t>(m_max) + 1);
  CellExtrema cells = cell_extrema(f, m_max);
  for (;;) {
    sums[static_cast<std::size_t>(cells.m)] = range_sum(cells);
    if (cells.m == 0) break;
    cells = coarsen(cells);
  }
  return sums;
}

double scale_weight(int m, double alpha) { return std::exp2(m * (1.0 - alpha)); }

NormReport norm_from_sums(const std::vector<double>& sums, double sup, double alpha) {
  NormReport r;
  r.alpha = alpha;
  r.sup_norm = sup;
  r.scale_terms.resize(sums.size());
  for (std::size_t m = 0; m < sums.size(); ++m) {
    r.scale_terms[m] = sums[m] * scale_weight(static_cast<int>(m), alpha);
    if (m == 0 || r.scale_terms[m] > r.v_alpha_sup) {
      r.v_alpha_sup = r.scale_terms[m];
      r.achieved_m = static_cast<int>(m);
    }
  }
  return r;
}

template <class Sample>
NormReport v_alpha_impl(const Sample& f, double alpha, int m_max, int d) {
  if (alpha < d) {
    throw std::invalid_argument("alpha must be >= " + std::to_string(d) + ", got " +
                                std::to_string(alpha));
  }
  return norm_from_sums(range_sums_up_to(f, m_max), sup_norm(f), alpha);
}

template <class Sample>
MetricValue metric_impl(const Sample& f, const Sample& g, double alpha, int terms, int m_max,
                        int d) {
  if (terms < 1) throw std::invalid_argument("metric needs at least one term");
  if (alpha < d) throw std::invalid_argument("alpha must be >= d");
  const Sample diff = f - g;
  const auto sums = range_sums_up_to(diff, m_max);
  const double sup = sup_norm(diff);
  MetricValue out;
  out.tail_bound = std::ldexp(1.0, -terms);
  for (int k = 1; k <= terms; ++k) {
    const double norm = norm_from_sums(sums, sup, alpha + 1.0 / k).norm();
    out.terms.push_back(std::min(std::ldexp(1.0, -k), norm));
    out.value += out.terms.back();
  }
  return out;
}

template <class Sample>
MonotonicityReport monotonicity_impl(const Sample& f, double alpha, int k_max, int m_max, int d) {
  if (alpha < d) throw std::invalid_argument("alpha must be >= d");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const auto sums = range_sums_up_to(f, m_max);
  const double sup = sup_norm(f);
  MonotonicityReport rep;
  rep.alpha = alpha;
  std::vector<NormReport> norms;
  for (int k = 1; k <= k_max + 1; ++k) norms.push_back(norm_from_sums(sums, sup, alpha + 1.0 / k));
  for (int k = 1; k <= k_max + 1; ++k) rep.norms.push_back(norms[k - 1].norm());
  for (int k = 1; k <= k_max; ++k) {
    if (!(rep.norms[k] >= rep.norms[k - 1])) rep.holds = false;
    for (std::size_t m = 0; m < sums.size(); ++m) {
      if (!(norms[k].scale_terms[m] >= norms[k - 1].scale_terms[m])) rep.per_scale_holds = false;
    }
  }
  rep.holds = rep.holds && rep.per_scale_holds;
  return rep;
}

struct Offset {
  long di;
  long dj;
  double power;
};

double max_abs_difference(const SampledSurface& f, long di, long dj) {
  const long side = static_cast<long>(f.side());
  const long j_begin = std::max(0L, -dj);
  const long j_end = std::min(side, side - dj);
  double best = 0.0;
  for (long i = 0; i + di < side; ++i) {
    const auto p = f.column(static_cast<std::size_t>(i));
    const auto q = f.column(static_cast<std::size_t>(i + di));
    for (long j = j_begin; j < j_end; ++j) {
      best = std::max(best, std::abs(q[static_cast<std::size_t>(j + dj)] -
                                     p[static_cast<std::size_t>(j)]));
    }
  }
  return best;
}

// Block extrema used to discard offsets whose quotient cannot beat the
// current maximum without visiting every pair.
struct Blocks {
  long size = 16;
  long count = 0;
  std::vector<double> lo, hi;

  explicit Blocks(const SampledSurface& f) {
    const long side = static_cast<long>(f.side());
    count = (side + size - 1) / size;
    lo.assign(static_cast<std::size_t>(count * count), INFINITY);
    hi.assign(static_cast<std::size_t>(count * count), -INFINITY);
    for (long i = 0; i < side; ++i) {
      for (long j = 0; j < side; ++j) {
        const auto k = static_cast<std::size_t>((i / size) * count + j / size);
        const double v = f.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        lo[k] = std::min(lo[k], v);
        hi[k] = std::max(hi[k], v);
      }
    }
  }

  double bound(long di, long dj, long side) const {
    double best = 0.0;
    for (long ai = 0; ai < count; ++ai) {
      const long qi_lo = std::max(0L, ai * size + di);
      const long qi_hi = std::min(side - 1, ai * size + size - 1 + di);
      if (qi_lo > qi_hi) continue;
      for (long aj = 0; aj < count; ++aj) {
        const long qj_lo = std::max(0L, aj * size + dj);
        const long qj_hi = std::min(side - 1, aj * size + size - 1 + dj);
        if (qj_lo > qj_hi) continue;
        const auto a = static_cast<std::size_t>(ai * count + aj);
        for (long bi = qi_lo / size; bi <= qi_hi / size; ++bi) {
          for (long bj = qj_lo / size; bj <= qj_hi / size; ++bj) {
            const auto b = static_cast<std::size_t>(bi * count + bj);
            best = std::max({best, hi[b] - lo[a], hi[a] - lo[b]});
          }
        }
      }
    }
    return best;
  }
};

}  // namespace

double sup_norm(const SampledCurve& f) {
  double best = 0.0;
  for (double v : f.values()) best = std::max(best, std::abs(v));
  return best;
}

double sup_norm(const SampledSurface& f) {
  double best = 0.0;
  for (double v : f.values()) best = std::max(best, std::abs(v));
  return best;
}

NormReport v_alpha_norm(const SampledCurve& f, double alpha, int m_max) {
  return v_alpha_impl(f, alpha, m_max, 1);
}

NormReport v_alpha_norm(const SampledSurface& f, double alpha, int m_max) {
  return v_alpha_impl(f, alpha, m_max, 2);
}

MetricValue d_alpha_metric(const SampledCurve& f, const SampledCurve& g, double alpha, int terms,
                           int m_max) {
  return metric_impl(f, g, alpha, terms, m_max, 1);
}

MetricValue d_alpha_metric(const SampledSurface& f, const SampledSurface& g, double alpha,
                           int terms, int m_max) {
  return metric_impl(f, g, alpha, terms, m_max, 2);
}

double offset_distance_power(long di, long dj, int n, double exponent) {
  const double r = std::ldexp(std::sqrt(static_cast<double>(di * di + dj * dj)), -n);
  return std::pow(r, exponent);
}

LipschitzReport lip_alpha(const SampledSurface& f, double alpha) {
  if (!(alpha >= 2.0 && alpha < 3.0)) {
    throw std::invalid_argument("lip_alpha needs alpha in [2, 3), got " + std::to_string(alpha));
  }
  const double e = 3.0 - alpha;
  const int n = f.n();
  const long side = static_cast<long>(f.side());
  LipschitzReport rep;
  rep.alpha = alpha;

  std::vector<Offset> offsets;
  if (n <= all_pairs_max_n) {
    for (long di = 0; di < side; ++di) {
      for (long dj = -(side - 1); dj < side; ++dj) {
        if (di == 0 && dj <= 0) continue;
        offsets.push_back({di, dj, offset_distance_power(di, dj, n, e)});
      }
    }
    std::sort(offsets.begin(), offsets.end(), [](const Offset& a, const Offset& b) {
      return a.di * a.di + a.dj * a.dj < b.di * b.di + b.dj * b.dj;
    });
  } else {
    rep.all_pairs = false;
    rep.ladder_factor = std::exp2(e);
    for (long step = 1; step < side; step *= 2) {
      for (auto [a, b] : {std::pair{1L, 0L}, {0L, 1L}, {1L, 1L}, {1L, -1L}}) {
        offsets.push_back({a * step, b * step, offset_distance_power(a * step, b * step, n, e)});
      }
    }
  }

  const Blocks blocks(f);
  double best = 0.0;
  for (const auto& o : offsets) {
    if (best > 0.0 && blocks.bound(o.di, o.dj, side) / o.power <= best) continue;
    best = std::max(best, max_abs_difference(f, o.di, o.dj) / o.power);
  }
  rep.value = best;
  return rep;
}

double curve_holder_quotient(const SampledCurve& h, double exponent) {
  const auto v = h.values();
  double best = 0.0;
  for (std::size_t d = 1; d < v.size(); ++d) {
    double diff = 0.0;
    for (std::size_t i = 0; i + d < v.size(); ++i) diff = std::max(diff, std::abs(v[i + d] - v[i]));
    best = std::max(best, diff / offset_distance_power(static_cast<long>(d), 0, h.n(), exponent));
  }
  return best;
}

MonotonicityReport norm_monotonicity_check(const SampledCurve& f, double alpha, int k_max,
                                           int m_max) {
  return monotonicity_impl(f, alpha, k_max, m_max, 1);
}

MonotonicityReport norm_monotonicity_check(const SampledSurface& f, double alpha, int k_max,
                                           int m_max) {
  return monotonicity_impl(f, alpha, k_max, m_max, 2);
}

}  // namespace fractal
