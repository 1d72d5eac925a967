#pragma once

#include <span>
#include <vector>

#include "fractal/boxdim.hpp"
#include "fractal/horizon.hpp"
#include "fractal/sampling.hpp"

namespace fractal {

// Forcers ------------------------------------------------------------------

/// Pipeline of the forcer construction for a finite family K and the line
/// y = y_{j0}.
struct ForcerParts {
  std::size_t y0_index = 0;
  SampledSurface phi_sup;  // max_{f in K} (f(x,y) - f(x,y0)), rounded up
  SampledCurve g_star;     // y -> max_x phi_sup(x, y)
  SampledCurve envelope;   // F: running max of g_star outward from y0
  SampledSurface forcer;   // (x, y) -> -F(y)
};

/// Throws on an empty family, mismatched grids or y0_index off the grid.
ForcerParts forcer(std::span<const SampledSurface> family, std::size_t y0_index);

struct PostconditionReport {
  bool dominance = false;         // maximum of each column sits on the line y0
  bool line_condition = false;    // forcer: vanishes on y0; modifier: equals g on y0
  double worst_slack = 0.0;       // max over points of value - value on line (<= 0 passes)
  bool holds() const { return dominance && line_condition; }
};

/// For every f in K and every grid point:
///   f(x, y0) + F_K(x, y0) >= f(x, y) + F_K(x, y)  and  F_K(x, y0) = 0.
PostconditionReport check_forcer(const ForcerParts& parts, std::span<const SampledSurface> family);

// Modifiers ----------------------------------------------------------------

/// Piecewise-linear lower approximants p_0 <= p_1 <= ... <= p_kmax <= g with
/// discrete Lipschitz constant of p_k at most 2^k.
///
/// p_k = max(L_{2^k}(g) - eps_k, -||g||) where L_c(g)(x) = min_t g(t) + c|x-t|
/// is the largest c-Lipschitz minorant and eps_k = ||g|| 2^-k. All values
/// are rounded down onto a dyadic lattice of spacing `quantum` so that the
/// envelope arithmetic and every invariant check is exact.
struct ApproximantLadder {
  SampledCurve g;
  std::vector<SampledCurve> p;  // p[0..k_max]
  std::vector<double> gaps;     // ||g - p_k||_inf
  /// Run lengths of consecutive indices over which the gap has not yet
  /// halved relative to the start of the run.
  std::vector<int> schedule;
  double quantum = 0.0;

  int k_max() const { return static_cast<int>(p.size()) - 1; }
};

ApproximantLadder monotone_approximants(const SampledCurve& g, int k_max);

struct LadderCheck {
  bool increasing = false;        // p_k <= p_{k+1}
  bool below_target = false;      // p_k <= g
  bool gaps_nonincreasing = false;
  bool lipschitz = false;         // max |diff| / h <= 2^k
  bool holds() const { return increasing && below_target && gaps_nonincreasing && lipschitz; }
};

LadderCheck check_ladder(const ApproximantLadder& ladder);

/// Largest discrete slope max |v[i+1] - v[i]| / h.
double discrete_lipschitz(const SampledCurve& c);

/// q(0) = 0, q(1) = 1, q(y) = 2^k y - 1 on [2^-k, 2^-k+1).
double q_profile(double y);
/// The k with y in [2^-k, 2^-k+1) for y in (0, 1); 1 for y = 1.
int strip_index(double y);

struct Modifier {
  std::size_t y0_index = 0;
  ApproximantLadder ladder;
  SampledSurface surface;
};

/// M(x, y0) = g(x); elsewhere M = q p_{k-1} + (1 - q) p_k evaluated at the
/// reflected coordinate t = |y - y0| / max(y0, 1 - y0), with k the strip of
/// t and q = q_profile(t). Strips beyond k_max reuse p_{k_max}. Requires
/// k_max <= n.
Modifier modifier(const SampledCurve& g, std::size_t y0_index, int k_max);

/// M(x, y0) == g(x) and M(x, y) <= M(x, y0) at every grid point.
PostconditionReport check_modifier(const Modifier& m, const SampledCurve& g);

/// Per-scale range bound R_M(m) <= c m 2^m + (2^m + 1) 2 ||M||_inf with
/// c = 3/2 + 2 ||g||_inf.
struct RangeBoundRow {
  int m = 0;
  double range_sum = 0.0;
  double strip_term = 0.0;     // c m 2^m
  double boundary_term = 0.0;  // (2^m + 1) 2 ||M||
  bool holds = false;
  /// The smaller boundary term 2 (2^m + 1) 2 ||M|| / 2^m, reported only.
  double narrow_boundary_term = 0.0;
  bool holds_narrow = false;
};

double modifier_constant(const SampledCurve& g);
std::vector<RangeBoundRow> modifier_range_bound(const SampledSurface& M, const SampledCurve& g);

struct ModifierDimReport {
  DimensionEstimate estimate;
  double c = 0.0;
  double slack = 0.0;  // log2(c n) / n
  bool dimension_bound = false;  // upper_est <= 2 + slack
  std::vector<RangeBoundRow> rows;
  bool range_bound = false;
  bool holds() const { return dimension_bound && range_bound; }
};

ModifierDimReport modifier_dim_check(const SampledSurface& M, const SampledCurve& g,
                                     const ScaleRange& scales);

// Composite scenario ---------------------------------------------------------

/// Builds f0 + (F_{K,0} + M_{f_i,0}) for two curves and compares the
/// horizons with f0(., 0) + f_i.
struct TightScenarioReport {
  double alpha = 0.0;
  std::size_t f0_index = 0;
  PostconditionReport forcer_check;
  bool identity_first = false;   // H(f0 + F + M_{f1}) == f0* + f1
  bool identity_second = false;  // H(f0 + F + M_{f2}) == f0* + f2
  DimensionEstimate f0_star;
  DimensionEstimate first_curve;
  DimensionEstimate second_curve;
  DimensionEstimate horizon_first;
  DimensionEstimate horizon_second;
  DimensionEstimate surface_first;
  DimensionEstimate surface_second;
};

TightScenarioReport theorem_tight_scenario(double alpha, const SampledCurve& f1,
                                           const SampledCurve& f2,
                                           std::span<const SampledSurface> family,
                                           std::size_t f0_index, const ScaleRange& scales,
                                           int k_max);

}  // namespace fractal
