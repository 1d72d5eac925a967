#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fractal/boxdim.hpp"
#include "fractal/generators.hpp"
#include "fractal/horizon.hpp"

namespace fractal {

inline constexpr double lambda_dead_zone = 1e-6;

/// `count` distinct values uniform in [-range, range] with |lambda| >=
/// lambda_dead_zone, redrawing rejects.
std::vector<double> sample_lambdas(double range, int count, std::uint64_t seed);

struct SweepConfig {
  double lambda_range = 2.0;
  int count = 16;
  std::uint64_t seed = 0;
  ScaleRange scales;
  /// When non-empty these are used instead of sampling (count is ignored).
  std::vector<double> lambdas;
  // sum sweep: |upper - reference upper| and lower shortfall allowed.
  double tolerance = 0.1;
  // probe sweep
  double surface_tolerance = 0.2;
  double horizon_lower_tolerance = 0.2;
  double horizon_upper_tolerance = 0.1;
};

struct LambdaRecord {
  double lambda = 0.0;
  DimensionEstimate sum;                     // f + lambda g
  std::optional<DimensionEstimate> horizon;  // H(f + lambda g), surfaces only
  bool conforms = false;
};

struct LambdaSweep {
  std::string kind;  // "sum" or "probe"
  double alpha = 0.0;
  /// Sum sweep: estimates of f and g. Probe sweep: f and Psi.
  DimensionEstimate first;
  DimensionEstimate second;
  std::vector<LambdaRecord> records;
  /// Indices of records that do not conform.
  std::vector<std::size_t> exceptional;
  int conforming = 0;
  double fraction() const {
    return records.empty() ? 0.0 : static_cast<double>(conforming) / records.size();
  }
};

/// For each lambda, estimates of f + lambda g. A record conforms when its
/// upper_est is within tolerance of max(upper f, upper g) and its lower_est
/// is at least max(lower f, lower g) - tolerance.
LambdaSweep sum_experiment(const SampledCurve& f, const SampledCurve& g, const SweepConfig& cfg);
LambdaSweep sum_experiment(const SampledSurface& f, const SampledSurface& g,
                           const SweepConfig& cfg);

/// Estimates of f + lambda Psi_alpha and of its horizon. A record conforms
/// when the surface ols_slope is within surface_tolerance of alpha, the
/// horizon lower_est is at least alpha - 1 - horizon_lower_tolerance and the
/// horizon upper_est is at most 2 + horizon_upper_tolerance.
LambdaSweep probe_experiment(const SampledSurface& f, double alpha, const SweepConfig& cfg,
                             ProbeCurve choice = ProbeCurve::weierstrass);

void write_sweep_csv(std::ostream& out, const LambdaSweep& sweep, const std::string& header = {});

// Census ---------------------------------------------------------------------

struct CensusFixture {
  std::string name;
  std::string recipe;  // free-text description for the CSV
  SampledSurface surface;
};

/// 0.5 (2y - 1)^2 + 0.25 sin(pi x) + 0.3 w(y) R(x, y) / ||R||, where R is a
/// rough midpoint surface and w is 1 on |y - 1/2| <= 1/8, falling linearly
/// to 0 at |y - 1/2| = 1/4. The rough part stays below 0.425, under the
/// column maxima 0.5 + 0.25 sin(pi x) at y = 0 and y = 1, so the horizon is
/// smooth.
SampledSurface depression_surface(int n, double roughness, std::uint64_t seed);

/// Probes at alpha 2.2, 2.5, 2.8, midpoint surfaces, a modifier composite,
/// the depression surface and the plane x + y.
std::vector<CensusFixture> census_zoo(int n, std::uint64_t seed);

struct CensusRow {
  std::string name;
  std::string recipe;
  HorizonGapReport report;
  std::string verdict;
};

std::vector<CensusRow> horizon_property_census(const std::vector<CensusFixture>& fixtures,
                                               const ScaleRange& scales, double tolerance = 0.15);

void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows,
                      const std::string& header = {});

}  // namespace fractal
