#pragma once

#include "fractal/boxdim.hpp"
#include "fractal/sampling.hpp"

namespace fractal {

/// H(f)(x_i) = max_j f(x_i, y_j).
SampledCurve horizon(const SampledSurface& f, Execution ex = Execution::parallel);

struct ScaleRange {
  int m_min = 2;
  int m_max = 8;
  int window = 4;
};

/// Scales used when none are given: curves m = 4..n-2 (2..n-1 below n = 10),
/// surfaces m = 2..n-1.
ScaleRange default_scales(int d, int n);

struct HorizonGapReport {
  DimensionEstimate surface;
  DimensionEstimate horizon;
  double gap = 0.0;               // surface ols - horizon ols
  double gap_conservative = 0.0;  // surface lower - horizon upper
  double gap_liberal = 0.0;       // surface upper - horizon lower
  double tolerance = 0.0;
  /// alpha - 1 <= horizon lower_est and horizon upper_est <= 2 (within
  /// tolerance), with alpha the surface ols estimate.
  bool within_bounds = false;
  /// |gap - 1| <= tolerance.
  bool horizon_property = false;
};

HorizonGapReport horizon_gap(const SampledSurface& f, const ScaleRange& scales,
                             double tolerance = 0.15);

struct HorizonAlgebraReport {
  bool translation_holds = false;  // H(f + extrude(g)) == H(f) + g
  bool constant_holds = false;     // H(f + c) == H(f) + c
  double max_translation_error = 0.0;
  double max_constant_error = 0.0;
  bool holds() const { return translation_holds && constant_holds; }
};

HorizonAlgebraReport horizon_algebra_check(const SampledSurface& f, const SampledCurve& g, double c);

}  // namespace fractal
