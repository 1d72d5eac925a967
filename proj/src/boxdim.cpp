#include "fractal/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace fractal {

namespace {

void check_scale(int m, int n) {
  if (m < 0) throw std::invalid_argument("scale exponent must be >= 0, got " + std::to_string(m));
  if (m > n) {
    throw std::invalid_argument("scale m=" + std::to_string(m) +
                                " is finer than the grid n=" + std::to_string(n));
  }
}

std::uint64_t slab_count(double lo, double hi, int m) {
  const double a = std::floor(std::ldexp(lo, m));
  const double b = std::floor(std::ldexp(hi, m));
  return static_cast<std::uint64_t>(b - a) + 1;
}

ScaleRow make_row(const CellExtrema& cells) {
  ScaleRow row;
  row.m = cells.m;
  row.delta = std::ldexp(1.0, -cells.m);
  row.range_sum = range_sum(cells);
  row.box_count = box_count(cells);
  const double inv = std::ldexp(1.0, cells.m);
  row.lower_bound_rhs = std::ldexp(row.range_sum, cells.m);
  row.upper_bound_rhs = 2.0 * std::pow(inv + 1.0, cells.d) + row.lower_bound_rhs;
  return row;
}

bool sandwich_holds(const ScaleRow& row) {
  const auto count = static_cast<double>(row.box_count);
  return row.lower_bound_rhs <= count && count <= row.upper_bound_rhs;
}

ScaleTable finish_table(ScaleTable table) {
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ScaleRow& a, const ScaleRow& b) { return a.m < b.m; });
  for (const auto& row : table.rows) {
    if (!sandwich_holds(row)) {
      std::ostringstream msg;
      msg << "sandwich violated at m=" << row.m << ": " << format_double(row.lower_bound_rhs)
          << " <= " << row.box_count << " <= " << format_double(row.upper_bound_rhs);
      throw SandwichViolation(msg.str());
    }
    if (row.range_sum > 0.0) {
      const double ratio = static_cast<double>(row.box_count) / row.lower_bound_rhs;
      table.empirical_constant = std::max({table.empirical_constant, ratio, 1.0 / ratio});
    }
  }
  return table;
}

void check_range(int m_min, int m_max, int n) {
  if (m_min < 0 || m_min >= m_max) {
    throw std::invalid_argument("scale range needs 0 <= m_min < m_max, got " +
                                std::to_string(m_min) + ".." + std::to_string(m_max));
  }
  check_scale(m_max, n);
}

}  // namespace

CellExtrema cell_extrema(const SampledCurve& f, int m) {
  check_scale(m, f.n());
  CellExtrema cells;
  cells.d = 1;
  cells.m = m;
  const std::size_t count = std::size_t{1} << m;
  const std::size_t step = std::size_t{1} << (f.n() - m);
  cells.lo.resize(count);
  cells.hi.resize(count);
  const auto v = f.values();
  for (std::size_t i = 0; i < count; ++i) {
    const auto first = v.begin() + static_cast<std::ptrdiff_t>(i * step);
    const auto [lo, hi] = std::minmax_element(first, first + static_cast<std::ptrdiff_t>(step + 1));
    cells.lo[i] = *lo;
    cells.hi[i] = *hi;
  }
  return cells;
}

CellExtrema cell_extrema(const SampledSurface& f, int m, Execution ex) {
  check_scale(m, f.n());
  const int n = f.n();
  CellExtrema cells;
  cells.d = 2;
  cells.m = n;
  const std::size_t count = std::size_t{1} << n;
  cells.lo.resize(count * count);
  cells.hi.resize(count * count);
  detail::parallel_for(count, ex, [&](std::size_t i) {
    for (std::size_t j = 0; j < count; ++j) {
      const double a = f.at(i, j), b = f.at(i + 1, j), c = f.at(i, j + 1), e = f.at(i + 1, j + 1);
      cells.lo[i * count + j] = std::min({a, b, c, e});
      cells.hi[i * count + j] = std::max({a, b, c, e});
    }
  });
  while (cells.m > m) cells = coarsen(cells, ex);
  return cells;
}

CellExtrema coarsen(const CellExtrema& fine, Execution ex) {
  if (fine.m < 1) throw std::invalid_argument("cannot coarsen below scale 0");
  CellExtrema coarse;
  coarse.d = fine.d;
  coarse.m = fine.m - 1;
  const std::size_t count = coarse.cells_per_axis();
  if (fine.d == 1) {
    coarse.lo.resize(count);
    coarse.hi.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      coarse.lo[i] = std::min(fine.lo[2 * i], fine.lo[2 * i + 1]);
      coarse.hi[i] = std::max(fine.hi[2 * i], fine.hi[2 * i + 1]);
    }
    return coarse;
  }
  const std::size_t fc = fine.cells_per_axis();
  coarse.lo.resize(count * count);
  coarse.hi.resize(count * count);
  detail::parallel_for(count, ex, [&](std::size_t i) {
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t a = (2 * i) * fc + 2 * j;
      const std::size_t b = (2 * i + 1) * fc + 2 * j;
      coarse.lo[i * count + j] =
          std::min({fine.lo[a], fine.lo[a + 1], fine.lo[b], fine.lo[b + 1]});
      coarse.hi[i * count + j] =
          std::max({fine.hi[a], fine.hi[a + 1], fine.hi[b], fine.hi[b + 1]});
    }
  });
  return coarse;
}

double range_sum(const CellExtrema& cells) {
  const std::size_t count = cells.cells_per_axis();
  if (cells.d == 1) {
    detail::KahanSum sum;
    for (std::size_t i = 0; i < count; ++i) sum.add(cells.hi[i] - cells.lo[i]);
    return sum.value();
  }
  detail::KahanSum total;
  for (std::size_t i = 0; i < count; ++i) {
    detail::KahanSum row;
    for (std::size_t j = 0; j < count; ++j) {
      row.add(cells.hi[i * count + j] - cells.lo[i * count + j]);
    }
    total.add(row.value());
  }
  return total.value();
}

std::uint64_t box_count(const CellExtrema& cells) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < cells.lo.size(); ++k) {
    total += slab_count(cells.lo[k], cells.hi[k], cells.m);
  }
  return total;
}

double cell_range_sum(const SampledCurve& f, int m) { return range_sum(cell_extrema(f, m)); }

double cell_range_sum(const SampledSurface& f, int m, Execution ex) {
  return range_sum(cell_extrema(f, m, ex));
}

std::uint64_t box_count_graph(const SampledCurve& f, int m) { return box_count(cell_extrema(f, m)); }

std::uint64_t box_count_graph(const SampledSurface& f, int m, Execution ex) {
  return box_count(cell_extrema(f, m, ex));
}

ScaleTable scale_table(const SampledCurve& f, int m_min, int m_max, std::string source) {
  check_range(m_min, m_max, f.n());
  ScaleTable table;
  table.d = 1;
  table.n = f.n();
  table.source = std::move(source);
  CellExtrema cells = cell_extrema(f, m_max);
  for (;;) {
    table.rows.push_back(make_row(cells));
    if (cells.m == m_min) break;
    cells = coarsen(cells);
  }
  return finish_table(std::move(table));
}

ScaleTable scale_table(const SampledSurface& f, int m_min, int m_max, std::string source,
                       Execution ex) {
  check_range(m_min, m_max, f.n());
  ScaleTable table;
  table.d = 2;
  table.n = f.n();
  table.source = std::move(source);
  CellExtrema cells = cell_extrema(f, m_max, ex);
  for (;;) {
    table.rows.push_back(make_row(cells));
    if (cells.m == m_min) break;
    cells = coarsen(cells, ex);
  }
  return finish_table(std::move(table));
}

ScaleTable scale_table(const Sample& f, int m_min, int m_max, std::string source) {
  return std::visit(
      [&](const auto& s) { return scale_table(s, m_min, m_max, std::move(source)); }, f);
}

SandwichReport sandwich_check(const SampledCurve& f, int m) {
  const ScaleRow row = make_row(cell_extrema(f, m));
  return {m, row.lower_bound_rhs, row.box_count, row.upper_bound_rhs, sandwich_holds(row)};
}

SandwichReport sandwich_check(const SampledSurface& f, int m) {
  const ScaleRow row = make_row(cell_extrema(f, m));
  return {m, row.lower_bound_rhs, row.box_count, row.upper_bound_rhs, sandwich_holds(row)};
}

double ols_slope(std::span<const double> xs, std::span<const double> ys) {
  const double count = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / count;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  return sxy / sxx;
}

DimensionEstimate estimate_dims(const ScaleTable& table, int window) {
  if (window < 2) throw std::invalid_argument("window must be >= 2");
  const std::size_t rows = table.rows.size();
  if (rows < static_cast<std::size_t>(window) + 1) {
    throw std::invalid_argument("estimate needs at least window+1 = " + std::to_string(window + 1) +
                                " scale rows, got " + std::to_string(rows));
  }
  DimensionEstimate est;
  est.d = table.d;
  est.window = window;
  const double d = table.d;

  const bool flat = std::all_of(table.rows.begin(), table.rows.end(),
                                [](const ScaleRow& r) { return r.range_sum == 0.0; });
  if (flat) {
    est.degenerate = true;
    est.ols_slope = est.lower_est = est.upper_est = d;
    est.raw_ols_slope = est.raw_lower_est = est.raw_upper_est = d;
    return est;
  }

  std::vector<double> xs(rows), ys(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    xs[k] = table.rows[k].m;
    ys[k] = std::log2(static_cast<double>(table.rows[k].box_count));
  }
  est.raw_ols_slope = ols_slope(xs, ys);

  const std::size_t w = static_cast<std::size_t>(window);
  std::size_t start = rows / 2;
  if (rows - start < w) start = rows - w;
  est.raw_lower_est = INFINITY;
  est.raw_upper_est = -INFINITY;
  for (std::size_t first = start; first + w <= rows; ++first) {
    const double slope =
        ols_slope(std::span(xs).subspan(first, w), std::span(ys).subspan(first, w));
    est.raw_lower_est = std::min(est.raw_lower_est, slope);
    est.raw_upper_est = std::max(est.raw_upper_est, slope);
  }

  est.ols_slope = std::clamp(est.raw_ols_slope, d, d + 1.0);
  est.lower_est = std::clamp(est.raw_lower_est, d, d + 1.0);
  est.upper_est = std::clamp(est.raw_upper_est, d, d + 1.0);
  return est;
}

DimensionEstimate estimate_dims(const SampledCurve& f, int m_min, int m_max, int window) {
  return estimate_dims(scale_table(f, m_min, m_max), window);
}

DimensionEstimate estimate_dims(const SampledSurface& f, int m_min, int m_max, int window) {
  return estimate_dims(scale_table(f, m_min, m_max), window);
}

void write_scale_table_csv(std::ostream& out, const ScaleTable& table) {
  std::istringstream src(table.source);
  std::string line;
  while (std::getline(src, line)) out << "# " << line << '\n';
  out << "m,delta,range_sum,box_count,lower_bound_rhs,upper_bound_rhs\n";
  for (const auto& r : table.rows) {
    out << r.m << ',' << format_double(r.delta) << ',' << format_double(r.range_sum) << ','
        << r.box_count << ',' << format_double(r.lower_bound_rhs) << ','
        << format_double(r.upper_bound_rhs) << '\n';
  }
}

}  // namespace fractal
