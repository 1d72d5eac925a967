#include "fractal/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fractal/spaces.hpp"

namespace fractal {

namespace {

// a - b rounded toward +infinity, via the exact error of the nearest sum.
double difference_rounded_up(double a, double b) {
  const double s = a - b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (-b - bb);
  return err > 0.0 ? std::nextafter(s, std::numeric_limits<double>::infinity()) : s;
}

double lattice_floor(double v, double quantum) { return std::floor(v / quantum) * quantum; }
double lattice_ceil(double v, double quantum) { return std::ceil(v / quantum) * quantum; }

// Largest c-Lipschitz minorant on the grid: two passes of
// e_i = min(e_i, e_{i-1} + c h).
std::vector<double> lipschitz_minorant(std::span<const double> g, double step) {
  std::vector<double> e(g.begin(), g.end());
  for (std::size_t i = 1; i < e.size(); ++i) e[i] = std::min(e[i], e[i - 1] + step);
  for (std::size_t i = e.size() - 1; i-- > 0;) e[i] = std::min(e[i], e[i + 1] + step);
  return e;
}

void check_line(std::size_t y0_index, std::size_t side) {
  if (y0_index >= side) {
    throw std::out_of_range("y0 index " + std::to_string(y0_index) + " is off the grid");
  }
}

}  // namespace

ForcerParts forcer(std::span<const SampledSurface> family, std::size_t y0_index) {
  if (family.empty()) throw std::invalid_argument("forcer needs a non-empty family");
  const int n = family.front().n();
  for (const auto& f : family) {
    if (f.n() != n) throw std::invalid_argument("forcer family members must share a grid");
  }
  const std::size_t side = family.front().side();
  check_line(y0_index, side);

  ForcerParts parts;
  parts.y0_index = y0_index;
  std::vector<double> phi(side * side, -std::numeric_limits<double>::infinity());
  for (const auto& f : family) {
    for (std::size_t i = 0; i < side; ++i) {
      const double on_line = f.at(i, y0_index);
      for (std::size_t j = 0; j < side; ++j) {
        auto& slot = phi[i * side + j];
        slot = std::max(slot, difference_rounded_up(f.at(i, j), on_line));
      }
    }
  }
  parts.phi_sup = SampledSurface(n, std::move(phi));

  std::vector<double> g_star(side, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) g_star[j] = std::max(g_star[j], parts.phi_sup.at(i, j));
  }

  std::vector<double> env(side);
  env[y0_index] = g_star[y0_index];
  for (std::size_t j = y0_index + 1; j < side; ++j) env[j] = std::max(env[j - 1], g_star[j]);
  for (std::size_t j = y0_index; j-- > 0;) env[j] = std::max(env[j + 1], g_star[j]);
  parts.g_star = SampledCurve(n, std::move(g_star));

  std::vector<double> surf(side * side);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) surf[i * side + j] = -env[j];
  }
  parts.envelope = SampledCurve(n, std::move(env));
  parts.forcer = SampledSurface(n, std::move(surf));
  return parts;
}

PostconditionReport check_forcer(const ForcerParts& parts, std::span<const SampledSurface> family) {
  PostconditionReport rep;
  const std::size_t side = parts.forcer.side();
  const std::size_t j0 = parts.y0_index;
  rep.line_condition = true;
  for (std::size_t i = 0; i < side; ++i) rep.line_condition &= parts.forcer.at(i, j0) == 0.0;

  rep.worst_slack = -std::numeric_limits<double>::infinity();
  for (const auto& f : family) {
    const SampledSurface sum = f + parts.forcer;
    for (std::size_t i = 0; i < side; ++i) {
      const double on_line = sum.at(i, j0);
      for (std::size_t j = 0; j < side; ++j) {
        if (j != j0) rep.worst_slack = std::max(rep.worst_slack, sum.at(i, j) - on_line);
      }
    }
  }
  rep.dominance = rep.worst_slack <= 0.0;
  return rep;
}

double discrete_lipschitz(const SampledCurve& c) {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) best = std::max(best, std::abs(c[i + 1] - c[i]));
  return std::ldexp(best, c.n());
}

ApproximantLadder monotone_approximants(const SampledCurve& g, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const int n = g.n();
  const double norm = sup_norm(g);

  ApproximantLadder ladder;
  ladder.g = g;
  if (norm == 0.0) {
    ladder.quantum = 0.0;
    for (int k = 0; k <= k_max; ++k) {
      ladder.p.push_back(g);
      ladder.gaps.push_back(0.0);
    }
    ladder.schedule.push_back(k_max + 1);
    return ladder;
  }

  const double quantum = std::ldexp(1.0, std::ilogb(norm) + 1 - 50);
  ladder.quantum = quantum;
  std::vector<double> gq(g.size());
  for (std::size_t i = 0; i < gq.size(); ++i) gq[i] = lattice_floor(g[i], quantum);
  const double floor_value = lattice_floor(-norm, quantum);

  for (int k = 0; k <= k_max; ++k) {
    const double step = std::ldexp(1.0, k - n);  // 2^k * h
    const double eps = lattice_ceil(std::ldexp(norm, -k), quantum);
    std::vector<double> p = lipschitz_minorant(gq, step);
    double gap = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = std::max(p[i] - eps, floor_value);
      gap = std::max(gap, g[i] - p[i]);
    }
    ladder.p.emplace_back(n, std::move(p));
    ladder.gaps.push_back(gap);
  }

  double reference = ladder.gaps.front();
  int run = 0;
  for (double gap : ladder.gaps) {
    if (run > 0 && gap <= 0.5 * reference) {
      ladder.schedule.push_back(run);
      reference = gap;
      run = 0;
    }
    ++run;
  }
  ladder.schedule.push_back(run);
  return ladder;
}

LadderCheck check_ladder(const ApproximantLadder& ladder) {
  LadderCheck c;
  c.increasing = c.below_target = c.gaps_nonincreasing = c.lipschitz = true;
  const auto& g = ladder.g;
  for (std::size_t k = 0; k < ladder.p.size(); ++k) {
    const auto& p = ladder.p[k];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(p[i] <= g[i])) c.below_target = false;
      if (k + 1 < ladder.p.size() && !(p[i] <= ladder.p[k + 1][i])) c.increasing = false;
    }
    if (k + 1 < ladder.gaps.size() && ladder.gaps[k + 1] > ladder.gaps[k]) {
      c.gaps_nonincreasing = false;
    }
    if (discrete_lipschitz(p) > std::ldexp(1.0, static_cast<int>(k))) c.lipschitz = false;
  }
  return c;
}

int strip_index(double y) {
  if (!(y > 0.0 && y <= 1.0)) throw std::domain_error("strip_index needs y in (0, 1]");
  if (y == 1.0) return 1;
  int e = 0;
  std::frexp(y, &e);  // y in [2^(e-1), 2^e)
  return 1 - e;
}

double q_profile(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("q_profile needs y in [0, 1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  return std::ldexp(y, strip_index(y)) - 1.0;
}

Modifier modifier(const SampledCurve& g, std::size_t y0_index, int k_max) {
  const int n = g.n();
  if (k_max > n) {
    throw std::invalid_argument("k_max=" + std::to_string(k_max) + " exceeds grid exponent n=" +
                                std::to_string(n));
  }
  const std::size_t side = g.size();
  check_line(y0_index, side);

  Modifier mod;
  mod.y0_index = y0_index;
  mod.ladder = monotone_approximants(g, k_max);
  const auto& p = mod.ladder.p;

  const double y0 = grid_coord(y0_index, n);
  const double reach = std::max(y0, 1.0 - y0);
  std::vector<double> v(side * side);
  for (std::size_t j = 0; j < side; ++j) {
    const double t = std::min(1.0, std::abs(grid_coord(j, n) - y0) / reach);
    for (std::size_t i = 0; i < side; ++i) {
      double value;
      if (j == y0_index) {
        value = g[i];
      } else {
        const int k = strip_index(t);
        const double q = q_profile(t);
        const auto& upper = p[static_cast<std::size_t>(std::min(k, k_max))];
        const auto& lower = p[static_cast<std::size_t>(std::min(k - 1, k_max))];
        // q p_{k-1} + (1 - q) p_k, arranged so rounding never lifts it above p_k.
        value = upper[i] + q * (lower[i] - upper[i]);
      }
      v[i * side + j] = value;
    }
  }
  mod.surface = SampledSurface(n, std::move(v));
  return mod;
}

PostconditionReport check_modifier(const Modifier& m, const SampledCurve& g) {
  PostconditionReport rep;
  const auto& M = m.surface;
  const std::size_t j0 = m.y0_index;
  rep.line_condition = true;
  rep.worst_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < M.side(); ++i) {
    rep.line_condition &= M.at(i, j0) == g[i];
    for (std::size_t j = 0; j < M.side(); ++j) {
      if (j != j0) rep.worst_slack = std::max(rep.worst_slack, M.at(i, j) - M.at(i, j0));
    }
  }
  rep.dominance = rep.worst_slack <= 0.0;
  return rep;
}

double modifier_constant(const SampledCurve& g) { return 1.5 + 2.0 * sup_norm(g); }

std::vector<RangeBoundRow> modifier_range_bound(const SampledSurface& M, const SampledCurve& g) {
  const double c = modifier_constant(g);
  const double m_norm = sup_norm(M);
  std::vector<RangeBoundRow> rows;
  for (int m = 1; m <= M.n(); ++m) {
    RangeBoundRow r;
    r.m = m;
    r.range_sum = cell_range_sum(M, m);
    const double cells = std::ldexp(1.0, m);
    r.strip_term = c * m * cells;
    r.boundary_term = (cells + 1.0) * 2.0 * m_norm;
    r.holds = r.range_sum <= r.strip_term + r.boundary_term;
    r.narrow_boundary_term = 2.0 * (cells + 1.0) * 2.0 * m_norm / cells;
    r.holds_narrow = r.range_sum <= r.strip_term + r.narrow_boundary_term;
    rows.push_back(r);
  }
  return rows;
}

ModifierDimReport modifier_dim_check(const SampledSurface& M, const SampledCurve& g,
                                     const ScaleRange& scales) {
  ModifierDimReport rep;
  rep.estimate = estimate_dims(M, scales.m_min, scales.m_max, scales.window);
  rep.c = modifier_constant(g);
  const double n = M.n();
  rep.slack = std::log2(rep.c * n) / n;
  rep.dimension_bound = rep.estimate.upper_est <= 2.0 + rep.slack;
  rep.rows = modifier_range_bound(M, g);
  rep.range_bound = std::all_of(rep.rows.begin(), rep.rows.end(),
                                [](const RangeBoundRow& r) { return r.holds; });
  return rep;
}

TightScenarioReport theorem_tight_scenario(double alpha, const SampledCurve& f1,
                                           const SampledCurve& f2,
                                           std::span<const SampledSurface> family,
                                           std::size_t f0_index, const ScaleRange& scales,
                                           int k_max) {
  if (f0_index >= family.size()) throw std::out_of_range("f0 index outside the family");
  const SampledSurface& f0 = family[f0_index];
  if (f1.n() != f0.n() || f2.n() != f0.n()) {
    throw std::invalid_argument("scenario curves and surfaces must share a grid");
  }
  TightScenarioReport rep;
  rep.alpha = alpha;
  rep.f0_index = f0_index;

  const ForcerParts parts = forcer(family, 0);
  rep.forcer_check = check_forcer(parts, family);
  const SampledSurface base = f0 + parts.forcer;
  const SampledCurve f0_star = slice(f0, 0);

  const SampledSurface h1 = base + modifier(f1, 0, k_max).surface;
  const SampledSurface h2 = base + modifier(f2, 0, k_max).surface;
  const SampledCurve hz1 = horizon(h1);
  const SampledCurve hz2 = horizon(h2);
  rep.identity_first = hz1 == f0_star + f1;
  rep.identity_second = hz2 == f0_star + f2;

  auto curve_est = [&](const SampledCurve& c) {
    return estimate_dims(c, scales.m_min, scales.m_max, scales.window);
  };
  rep.f0_star = curve_est(f0_star);
  rep.first_curve = curve_est(f1);
  rep.second_curve = curve_est(f2);
  rep.horizon_first = curve_est(hz1);
  rep.horizon_second = curve_est(hz2);
  rep.surface_first = estimate_dims(h1, scales.m_min, scales.m_max, scales.window);
  rep.surface_second = estimate_dims(h2, scales.m_min, scales.m_max, scales.window);
  return rep;
}

}  // namespace fractal
