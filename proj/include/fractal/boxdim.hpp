#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractal/detail/parallel.hpp"
#include "fractal/io.hpp"
#include "fractal/sampling.hpp"

namespace fractal {

/// Sample minima and maxima over every closed dyadic cell of side 2^-m.
/// Cell (i, j) is stored at i * 2^m + j; curves use j = 0 only.
struct CellExtrema {
  int d = 1;
  int m = 0;
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t cells_per_axis() const { return std::size_t{1} << m; }
};

CellExtrema cell_extrema(const SampledCurve& f, int m);
CellExtrema cell_extrema(const SampledSurface& f, int m, Execution ex = Execution::parallel);
/// Merges 2^d children into each parent cell (scale m -> m-1).
CellExtrema coarsen(const CellExtrema& fine, Execution ex = Execution::parallel);

/// Sum of max - min over the closed cells; Kahan-accumulated cell by cell
/// (curves) or per x-row then across rows (surfaces).
double range_sum(const CellExtrema& cells);
/// Sum over cells of floor(max/delta) - floor(min/delta) + 1: the mesh boxes
/// [i delta, (i+1) delta) x [k delta, (k+1) delta) meeting the interpolant.
std::uint64_t box_count(const CellExtrema& cells);

/// Scale m is allowed in [0, n]; m = 0 is the single cell [0,1]^d.
double cell_range_sum(const SampledCurve& f, int m);
double cell_range_sum(const SampledSurface& f, int m, Execution ex = Execution::parallel);
std::uint64_t box_count_graph(const SampledCurve& f, int m);
std::uint64_t box_count_graph(const SampledSurface& f, int m, Execution ex = Execution::parallel);

struct ScaleRow {
  int m = 0;
  double delta = 1.0;
  double range_sum = 0.0;
  std::uint64_t box_count = 0;
  double lower_bound_rhs = 0.0;  // delta^-1 * range_sum
  double upper_bound_rhs = 0.0;  // 2 (delta^-1 + 1)^d + delta^-1 * range_sum
};

struct ScaleTable {
  int d = 1;
  int n = 0;
  std::vector<ScaleRow> rows;
  std::string source;
  /// max over rows of max(N / L, L / N) with L = delta^-1 * range_sum;
  /// 0 when every range sum vanishes.
  double empirical_constant = 0.0;
};

class SandwichViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Rows for every m in [m_min, m_max]; throws SandwichViolation if any row
/// breaks delta^-1 R <= N <= 2 (delta^-1 + 1)^d + delta^-1 R.
ScaleTable scale_table(const SampledCurve& f, int m_min, int m_max, std::string source = {});
ScaleTable scale_table(const SampledSurface& f, int m_min, int m_max, std::string source = {},
                       Execution ex = Execution::parallel);
ScaleTable scale_table(const Sample& f, int m_min, int m_max, std::string source = {});

struct SandwichReport {
  int m = 0;
  double lower = 0.0;
  std::uint64_t box_count = 0;
  double upper = 0.0;
  bool holds = false;
};

SandwichReport sandwich_check(const SampledCurve& f, int m);
SandwichReport sandwich_check(const SampledSurface& f, int m);

/// Box-dimension estimates from a scale table.
///
/// ols_slope fits log2 N against m over all rows. lower_est and upper_est
/// are the smallest and largest slopes of `window`-row fits over the finer
/// half of the rows (the last `window` rows if the half is shorter); they
/// stand in for the liminf and limsup. All three are clamped to [d, d+1],
/// with the unclamped values kept in the raw_* fields.
struct DimensionEstimate {
  int d = 1;
  int window = 0;
  double ols_slope = 1.0;
  double lower_est = 1.0;
  double upper_est = 1.0;
  double raw_ols_slope = 1.0;
  double raw_lower_est = 1.0;
  double raw_upper_est = 1.0;
  bool degenerate = false;
};

DimensionEstimate estimate_dims(const ScaleTable& table, int window = 4);

/// Least-squares slope of ys against xs.
double ols_slope(std::span<const double> xs, std::span<const double> ys);

/// Columns m,delta,range_sum,box_count,lower_bound_rhs,upper_bound_rhs
/// preceded by the table source as "# " comment lines.
void write_scale_table_csv(std::ostream& out, const ScaleTable& table);

/// Convenience: table over [m_min, m_max] followed by estimate_dims.
DimensionEstimate estimate_dims(const SampledCurve& f, int m_min, int m_max, int window = 4);
DimensionEstimate estimate_dims(const SampledSurface& f, int m_min, int m_max, int window = 4);

}  // namespace fractal
