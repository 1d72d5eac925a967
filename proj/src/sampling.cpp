#include "fractal/sampling.hpp"

#include <cmath>
#include <string>

namespace fractal {

namespace {

void check_exponent(int n) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("grid exponent must lie in [1, 30], got " + std::to_string(n));
  }
}

void check_finite(std::span<const double> v, std::size_t side, bool surface) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      if (surface) throw NonFiniteSampleError(k / side, k % side, true);
      throw NonFiniteSampleError(k, 0, false);
    }
  }
}

template <class Sample>
void check_same_grid(const Sample& f, const Sample& g) {
  if (f.n() != g.n()) {
    throw std::invalid_argument("grid mismatch: n=" + std::to_string(f.n()) + " vs n=" +
                                std::to_string(g.n()));
  }
}

}  // namespace

double grid_coord(std::size_t i, int n) { return std::ldexp(static_cast<double>(i), -n); }

NonFiniteSampleError::NonFiniteSampleError(std::size_t i, std::size_t j, bool surface)
    : std::domain_error(surface ? "non-finite sample at grid index (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")"
                                : "non-finite sample at grid index " + std::to_string(i)),
      i_(i),
      j_(j) {}

SampledCurve::SampledCurve(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  check_exponent(n);
  if (values_.size() != grid_points(n)) {
    throw std::invalid_argument("curve at n=" + std::to_string(n) + " needs " +
                                std::to_string(grid_points(n)) + " samples, got " +
                                std::to_string(values_.size()));
  }
  check_finite(values_, 1, false);
}

SampledSurface::SampledSurface(int n, std::vector<double> values)
    : n_(n), side_(grid_points(n)), values_(std::move(values)) {
  check_exponent(n);
  if (values_.size() != side_ * side_) {
    throw std::invalid_argument("surface at n=" + std::to_string(n) + " needs " +
                                std::to_string(side_ * side_) + " samples, got " +
                                std::to_string(values_.size()));
  }
  check_finite(values_, side_, true);
}

SampledCurve sample_curve(const CurveFunction& f, int n) {
  check_exponent(n);
  std::vector<double> v(grid_points(n));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid_coord(i, n));
  return SampledCurve(n, std::move(v));
}

SampledSurface sample_surface(const SurfaceFunction& f, int n) {
  check_exponent(n);
  const std::size_t side = grid_points(n);
  std::vector<double> v(side * side);
  for (std::size_t i = 0; i < side; ++i) {
    const double x = grid_coord(i, n);
    for (std::size_t j = 0; j < side; ++j) v[i * side + j] = f(x, grid_coord(j, n));
  }
  return SampledSurface(n, std::move(v));
}

SampledSurface extrude(const SampledCurve& psi) {
  const std::size_t side = psi.size();
  std::vector<double> v(side * side);
  for (std::size_t i = 0; i < side; ++i) {
    std::fill_n(v.begin() + static_cast<std::ptrdiff_t>(i * side), side, psi[i]);
  }
  return SampledSurface(psi.n(), std::move(v));
}

SampledCurve slice(const SampledSurface& f, std::size_t j) {
  if (j >= f.side()) {
    throw std::out_of_range("slice index " + std::to_string(j) + " outside [0, " +
                            std::to_string(f.side() - 1) + "]");
  }
  std::vector<double> v(f.side());
  for (std::size_t i = 0; i < f.side(); ++i) v[i] = f.at(i, j);
  return SampledCurve(f.n(), std::move(v));
}

SampledCurve lin_comb(double a, const SampledCurve& f, double b, const SampledCurve& g) {
  check_same_grid(f, g);
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * f[i] + b * g[i];
  return SampledCurve(f.n(), std::move(v));
}

SampledSurface lin_comb(double a, const SampledSurface& f, double b, const SampledSurface& g) {
  check_same_grid(f, g);
  const auto fv = f.values();
  const auto gv = g.values();
  std::vector<double> v(fv.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a * fv[k] + b * gv[k];
  return SampledSurface(f.n(), std::move(v));
}

SampledCurve operator+(const SampledCurve& f, const SampledCurve& g) { return lin_comb(1.0, f, 1.0, g); }
SampledCurve operator-(const SampledCurve& f, const SampledCurve& g) { return lin_comb(1.0, f, -1.0, g); }
SampledSurface operator+(const SampledSurface& f, const SampledSurface& g) {
  return lin_comb(1.0, f, 1.0, g);
}
SampledSurface operator-(const SampledSurface& f, const SampledSurface& g) {
  return lin_comb(1.0, f, -1.0, g);
}

SampledCurve add_constant(const SampledCurve& f, double c) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (auto& x : v) x += c;
  return SampledCurve(f.n(), std::move(v));
}

SampledSurface add_constant(const SampledSurface& f, double c) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (auto& x : v) x += c;
  return SampledSurface(f.n(), std::move(v));
}

}  // namespace fractal
