#pragma once

// Reference computations written directly from the definitions. They share
// no code with the library beyond the sample containers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

#include "fractal/generators.hpp"
#include "fractal/rng.hpp"
#include "fractal/sampling.hpp"

namespace ref {

struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

/// Sum over the 2^m closed cells of max - min, scanning every sample.
inline double range_sum(const fractal::SampledCurve& f, int m) {
  const std::size_t span = std::size_t{1} << (f.n() - m);
  Kahan total;
  for (std::size_t k = 0; k < (std::size_t{1} << m); ++k) {
    double lo = f[k * span], hi = f[k * span];
    for (std::size_t i = k * span; i <= (k + 1) * span; ++i) {
      lo = std::min(lo, f[i]);
      hi = std::max(hi, f[i]);
    }
    total.add(hi - lo);
  }
  return total.sum;
}

/// Same for surfaces: every cell scanned in full, rows summed over j first.
inline double range_sum(const fractal::SampledSurface& f, int m) {
  const std::size_t span = std::size_t{1} << (f.n() - m);
  const std::size_t cells = std::size_t{1} << m;
  Kahan total;
  for (std::size_t a = 0; a < cells; ++a) {
    Kahan row;
    for (std::size_t b = 0; b < cells; ++b) {
      double lo = f.at(a * span, b * span), hi = lo;
      for (std::size_t i = a * span; i <= (a + 1) * span; ++i) {
        for (std::size_t j = b * span; j <= (b + 1) * span; ++j) {
          lo = std::min(lo, f.at(i, j));
          hi = std::max(hi, f.at(i, j));
        }
      }
      row.add(hi - lo);
    }
    total.add(row.sum);
  }
  return total.sum;
}

/// Mesh boxes [k d, (k+1) d) x [s d, (s+1) d) met by the piecewise-linear
/// interpolant, found segment by segment and deduplicated by key.
inline std::size_t box_count(const fractal::SampledCurve& f, int m) {
  const double scale = std::ldexp(1.0, m);
  const std::size_t span = std::size_t{1} << (f.n() - m);
  std::set<std::pair<std::int64_t, std::int64_t>> boxes;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const auto column = static_cast<std::int64_t>(i / span);
    const double a = f[i] * scale, b = f[i + 1] * scale;
    const auto lo = static_cast<std::int64_t>(std::floor(std::min(a, b)));
    const auto hi = static_cast<std::int64_t>(std::floor(std::max(a, b)));
    for (auto s = lo; s <= hi; ++s) boxes.insert({column, s});
  }
  return boxes.size();
}

/// Surface version over the grid squares of the multilinear interpolant,
/// whose extrema on a square sit at its corners.
inline std::size_t box_count(const fractal::SampledSurface& f, int m) {
  const double scale = std::ldexp(1.0, m);
  const std::size_t span = std::size_t{1} << (f.n() - m);
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> boxes;
  for (std::size_t i = 0; i + 1 < f.side(); ++i) {
    for (std::size_t j = 0; j + 1 < f.side(); ++j) {
      const double c[] = {f.at(i, j), f.at(i + 1, j), f.at(i, j + 1), f.at(i + 1, j + 1)};
      const auto lo = static_cast<std::int64_t>(std::floor(*std::min_element(c, c + 4) * scale));
      const auto hi = static_cast<std::int64_t>(std::floor(*std::max_element(c, c + 4) * scale));
      for (auto s = lo; s <= hi; ++s) {
        boxes.insert({static_cast<std::int64_t>(i / span), static_cast<std::int64_t>(j / span), s});
      }
    }
  }
  return boxes.size();
}

/// T(x) = sum_{k=0..n} 2^-k dist(2^k x, Z), evaluated term by term.
inline double takagi(double x, int n) {
  double t = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double y = std::ldexp(x, k);
    t += std::ldexp(std::abs(y - std::round(y)), -k);
  }
  return t;
}

/// Random surface whose values lie on the lattice 2^-24 Z, so sums and
/// differences of a few of them are exact.
inline fractal::SampledSurface dyadic_surface(int n, std::uint64_t seed, double amplitude = 1.0) {
  const fractal::SampledSurface base = fractal::midpoint_surface(2.2 + 0.6 * ((seed % 7) / 6.0),
                                                                 seed, n);
  std::vector<double> v(base.values().begin(), base.values().end());
  for (double& x : v) x = std::round(std::ldexp(x * amplitude, 24)) * 0x1.0p-24;
  return fractal::SampledSurface(n, std::move(v));
}

inline fractal::SampledCurve dyadic_curve(int n, std::uint64_t seed, double amplitude = 1.0) {
  const fractal::SampledCurve base = fractal::midpoint_curve(1.1 + 0.8 * ((seed % 5) / 4.0), seed, n);
  std::vector<double> v(base.values().begin(), base.values().end());
  for (double& x : v) x = std::round(std::ldexp(x * amplitude, 24)) * 0x1.0p-24;
  return fractal::SampledCurve(n, std::move(v));
}

/// Dyadic scalar k / 256 with k in [-512, 512] \ {0}.
inline double dyadic_scalar(fractal::SplitMix64& rng) {
  for (;;) {
    const auto k = static_cast<std::int64_t>(rng.next() % 1025) - 512;
    if (k != 0) return static_cast<double>(k) / 256.0;
  }
}

}  // namespace ref
