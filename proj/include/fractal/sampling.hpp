#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fractal {

/// Number of samples along one axis of a dyadic grid with exponent n.
inline std::size_t grid_points(int n) { return (std::size_t{1} << n) + 1; }

/// Grid coordinate of sample index i at exponent n (exact: i * 2^-n).
double grid_coord(std::size_t i, int n);

/// Raised when a recipe evaluates to NaN or infinity on the grid.
class NonFiniteSampleError : public std::domain_error {
 public:
  NonFiniteSampleError(std::size_t i, std::size_t j, bool surface);
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

/// Values of f on the uniform dyadic grid {i * 2^-n : 0 <= i <= 2^n}.
class SampledCurve {
 public:
  SampledCurve() = default;
  SampledCurve(int n, std::vector<double> values);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const SampledCurve&) const = default;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// Values of f on the (2^n+1)^2 dyadic grid of the unit square.
///
/// Index convention used throughout the library: at(i, j) = f(x_i, y_j),
/// with i along x (first coordinate) and j along y. Storage is row-major in
/// i, so the samples of one x-column f(x_i, .) are contiguous.
class SampledSurface {
 public:
  SampledSurface() = default;
  SampledSurface(int n, std::vector<double> values);

  int n() const { return n_; }
  std::size_t side() const { return side_; }
  std::span<const double> values() const { return values_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * side_ + j]; }
  /// Samples f(x_i, y_0..y_N).
  std::span<const double> column(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * side_, side_);
  }

  bool operator==(const SampledSurface&) const = default;

 private:
  int n_ = 0;
  std::size_t side_ = 0;
  std::vector<double> values_;
};

/// A closed dyadic cell of side 2^-m, indexed by its lower-left corner.
struct GridCell {
  int m = 0;
  std::size_t i = 0;
  std::size_t j = 0;  // unused for curves

  /// Range of sample indices covered along one axis at grid exponent n.
  std::size_t first_index(std::size_t k, int n) const { return k << (n - m); }
  std::size_t last_index(std::size_t k, int n) const { return (k + 1) << (n - m); }
};

using CurveFunction = std::function<double(double)>;
using SurfaceFunction = std::function<double(double, double)>;

SampledCurve sample_curve(const CurveFunction& f, int n);
SampledSurface sample_surface(const SurfaceFunction& f, int n);

/// Y-independent surface: result(i, j) = psi[i].
SampledSurface extrude(const SampledCurve& psi);

/// The curve x -> f(x, y_j).
SampledCurve slice(const SampledSurface& f, std::size_t j);

SampledCurve lin_comb(double a, const SampledCurve& f, double b, const SampledCurve& g);
SampledSurface lin_comb(double a, const SampledSurface& f, double b, const SampledSurface& g);

/// Pointwise f + g (same rounding as lin_comb(1, f, 1, g)).
SampledCurve operator+(const SampledCurve& f, const SampledCurve& g);
SampledSurface operator+(const SampledSurface& f, const SampledSurface& g);
SampledSurface operator-(const SampledSurface& f, const SampledSurface& g);
SampledCurve operator-(const SampledCurve& f, const SampledCurve& g);
SampledCurve add_constant(const SampledCurve& f, double c);
SampledSurface add_constant(const SampledSurface& f, double c);

}  // namespace fractal
