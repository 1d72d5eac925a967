#pragma once

#include <cstdint>
#include <string>

#include "fractal/io.hpp"
#include "fractal/sampling.hpp"

namespace fractal {

enum class Family { weierstrass, midpoint, takagi, monotone, closed_form };
enum class Domain { curve, surface };

/// Seeded recipe that, together with a grid exponent, fully determines a
/// sample. Which fields matter depends on the family:
///   weierstrass  target_dim in (1,2], seed, base >= 2, max_terms (0 = auto)
///   midpoint     target_dim ([1,2] curves, [2,3] surfaces), seed, domain
///   takagi       nothing else
///   monotone     seed, variant in {staircase, sorted, constant}
///   closed_form  variant names the formula (see closed_form_ids()), param
struct GeneratorSpec {
  Family family = Family::closed_form;
  Domain domain = Domain::curve;
  double target_dim = 1.0;
  std::uint64_t seed = 0;
  int base = 2;
  int max_terms = 0;
  std::string variant;
  double param = 0.0;

  /// key=value lines, one per field, in a fixed order.
  std::string to_text() const;
  static GeneratorSpec from_text(const std::string& text);

  bool operator==(const GeneratorSpec&) const = default;
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// Rejects specs whose target dimension or parameters are out of range.
void validate(const GeneratorSpec& spec);

Sample generate(const GeneratorSpec& spec, int n);

/// Index K of the last series term: the smallest K with base^K >= 2^n.
int weierstrass_last_term(int base, int n);

/// W(x) = sum_{k=0..K} base^{(s-2)k} cos(2 pi base^k x + theta_k), with
/// theta_k = 2 pi U_k drawn in order from SplitMix64(seed). The phase
/// argument base^k x is reduced modulo 1 in integer arithmetic on the grid.
/// `terms` overrides the number of series terms (K+1) when positive.
SampledCurve weierstrass_curve(double s, int base, std::uint64_t seed, int n, int terms = 0);

/// Random midpoint displacement on [0,1]. Endpoints are U(-1,1); level l
/// (spacing 2^-l) adds 2^{-(2-s) l} U(-1,1) to the average of the two
/// neighbours, left to right.
SampledCurve midpoint_curve(double s, std::uint64_t seed, int n);

/// Random midpoint displacement on [0,1]^2 with level amplitude
/// 2^{-(3-s) l}. Draw order per level: cell centres (4-neighbour average),
/// then midpoints of x-directed edges, then of y-directed edges, each in
/// i-major order. Corners are U(-1,1) in the order (0,0),(0,N),(N,0),(N,N).
SampledSurface midpoint_surface(double s, std::uint64_t seed, int n);

/// Takagi function T(x) = sum_{k=0..n} 2^-k dist(2^k x, Z), exact on the grid.
SampledCurve takagi_curve(int n);

enum class MonotoneVariant { staircase, sorted_uniform, constant };

/// Nondecreasing fixture with values in [0, 1].
SampledCurve monotone_curve(int n, std::uint64_t seed,
                            MonotoneVariant variant = MonotoneVariant::staircase);

enum class ProbeCurve { weierstrass, midpoint };

/// An extruded surface Psi(x, y) = psi(x) where psi has target dimension
/// alpha - 1, together with psi and its recipe.
struct ProbeSurface {
  double alpha = 2.0;
  GeneratorSpec curve_spec;
  SampledCurve curve;
  SampledSurface surface;
};

/// At alpha = 2 the weierstrass choice falls back to the closed-form
/// cos(2 pi x).
ProbeSurface probe_surface(double alpha, int n, ProbeCurve choice = ProbeCurve::weierstrass,
                           std::uint64_t seed = 0, int base = 2);

}  // namespace fractal
