#include "fractal/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fractal/io.hpp"
#include "fractal/rng.hpp"

namespace fractal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string to_string(Domain d) { return d == Domain::curve ? "curve" : "surface"; }

Domain domain_from_string(const std::string& s) {
  if (s == "curve") return Domain::curve;
  if (s == "surface") return Domain::surface;
  throw std::invalid_argument("unknown domain '" + s + "'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

SampledCurve closed_form_curve(const std::string& id, double c, int n) {
  if (id == "zero") return sample_curve([](double) { return 0.0; }, n);
  if (id == "constant") return sample_curve([c](double) { return c; }, n);
  if (id == "identity") return sample_curve([](double x) { return x; }, n);
  if (id == "cosine") return sample_curve([](double x) { return std::cos(kTwoPi * x); }, n);
  throw std::invalid_argument("unknown closed-form curve '" + id + "'");
}

SampledSurface closed_form_surface(const std::string& id, double c, int n) {
  if (id == "zero") return sample_surface([](double, double) { return 0.0; }, n);
  if (id == "constant") return sample_surface([c](double, double) { return c; }, n);
  if (id == "plane") return sample_surface([](double x, double y) { return x + y; }, n);
  if (id == "x") return sample_surface([](double x, double) { return x; }, n);
  if (id == "y") return sample_surface([](double, double y) { return y; }, n);
  if (id == "xy") return sample_surface([](double x, double y) { return x * y; }, n);
  if (id == "bowl") {
    return sample_surface(
        [](double x, double y) { return std::sin(std::numbers::pi * x) * std::cos(kTwoPi * y); }, n);
  }
  throw std::invalid_argument("unknown closed-form surface '" + id + "'");
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::weierstrass: return "weierstrass";
    case Family::midpoint: return "midpoint";
    case Family::takagi: return "takagi";
    case Family::monotone: return "monotone";
    case Family::closed_form: return "closed-form";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  for (auto f : {Family::weierstrass, Family::midpoint, Family::takagi, Family::monotone,
                 Family::closed_form}) {
    if (to_string(f) == s) return f;
  }
  if (s == "monotone-envelope") return Family::monotone;
  throw std::invalid_argument("unknown generator family '" + s + "'");
}

std::string GeneratorSpec::to_text() const {
  std::ostringstream out;
  out << "family=" << to_string(family) << '\n'
      << "domain=" << to_string(domain) << '\n'
      << "target_dim=" << format_double(target_dim) << '\n'
      << "seed=" << seed << '\n'
      << "base=" << base << '\n'
      << "max_terms=" << max_terms << '\n'
      << "variant=" << variant << '\n'
      << "param=" << format_double(param) << '\n';
  return out.str();
}

GeneratorSpec GeneratorSpec::from_text(const std::string& text) {
  GeneratorSpec spec;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed spec line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "family") spec.family = family_from_string(value);
    else if (key == "domain") spec.domain = domain_from_string(value);
    else if (key == "target_dim") spec.target_dim = std::stod(value);
    else if (key == "seed") spec.seed = std::stoull(value);
    else if (key == "base") spec.base = std::stoi(value);
    else if (key == "max_terms") spec.max_terms = std::stoi(value);
    else if (key == "variant") spec.variant = value;
    else if (key == "param") spec.param = std::stod(value);
    else throw std::invalid_argument("unknown spec key '" + key + "'");
  }
  return spec;
}

void validate(const GeneratorSpec& spec) {
  const double s = spec.target_dim;
  switch (spec.family) {
    case Family::weierstrass:
      require(spec.domain == Domain::curve, "weierstrass family produces curves only");
      require(s > 1.0 && s <= 2.0, "weierstrass target dimension must lie in (1, 2]");
      require(spec.base >= 2, "weierstrass base must be >= 2");
      require(spec.max_terms >= 0, "max_terms must be >= 0");
      break;
    case Family::midpoint:
      if (spec.domain == Domain::curve) {
        require(s >= 1.0 && s <= 2.0, "midpoint curve target dimension must lie in [1, 2]");
      } else {
        require(s >= 2.0 && s <= 3.0, "midpoint surface target dimension must lie in [2, 3]");
      }
      break;
    case Family::takagi:
    case Family::monotone:
      require(spec.domain == Domain::curve, to_string(spec.family) + " family produces curves only");
      break;
    case Family::closed_form:
      break;
  }
}

Sample generate(const GeneratorSpec& spec, int n) {
  validate(spec);
  switch (spec.family) {
    case Family::weierstrass:
      return weierstrass_curve(spec.target_dim, spec.base, spec.seed, n, spec.max_terms);
    case Family::midpoint:
      if (spec.domain == Domain::curve) return midpoint_curve(spec.target_dim, spec.seed, n);
      return midpoint_surface(spec.target_dim, spec.seed, n);
    case Family::takagi:
      return takagi_curve(n);
    case Family::monotone: {
      auto v = MonotoneVariant::staircase;
      if (spec.variant == "sorted") v = MonotoneVariant::sorted_uniform;
      else if (spec.variant == "constant") v = MonotoneVariant::constant;
      else if (!spec.variant.empty() && spec.variant != "staircase") {
        throw std::invalid_argument("unknown monotone variant '" + spec.variant + "'");
      }
      return monotone_curve(n, spec.seed, v);
    }
    case Family::closed_form:
      if (spec.domain == Domain::curve) return closed_form_curve(spec.variant, spec.param, n);
      return closed_form_surface(spec.variant, spec.param, n);
  }
  throw std::logic_error("unhandled generator family");
}

int weierstrass_last_term(int base, int n) {
  require(base >= 2, "weierstrass base must be >= 2");
  int k = 0;
  double p = 1.0;
  while (p < std::ldexp(1.0, n)) {
    p *= base;
    ++k;
  }
  return k;
}

SampledCurve weierstrass_curve(double s, int base, std::uint64_t seed, int n, int terms) {
  require(s > 1.0 && s <= 2.0, "weierstrass target dimension must lie in (1, 2]");
  require(n >= 1 && n <= 30, "grid exponent must lie in [1, 30]");
  const int count = terms > 0 ? terms : weierstrass_last_term(base, n) + 1;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;

  SplitMix64 rng(seed);
  std::vector<double> v(grid_points(n), 0.0);
  std::uint64_t freq = 1;  // base^k mod 2^n
  for (int k = 0; k < count; ++k) {
    const double amp = std::pow(static_cast<double>(base), (s - 2.0) * k);
    const double theta = kTwoPi * rng.uniform();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::uint64_t r = (freq * i) & mask;
      v[i] += amp * std::cos(kTwoPi * std::ldexp(static_cast<double>(r), -n) + theta);
    }
    freq = (freq * static_cast<std::uint64_t>(base)) & mask;
  }
  return SampledCurve(n, std::move(v));
}

SampledCurve midpoint_curve(double s, std::uint64_t seed, int n) {
  require(s >= 1.0 && s <= 2.0, "midpoint curve target dimension must lie in [1, 2]");
  require(n >= 1 && n <= 30, "grid exponent must lie in [1, 30]");
  SplitMix64 rng(seed);
  const std::size_t last = std::size_t{1} << n;
  std::vector<double> v(last + 1);
  v[0] = rng.uniform(-1.0, 1.0);
  v[last] = rng.uniform(-1.0, 1.0);
  for (int level = 1; level <= n; ++level) {
    const std::size_t h = last >> level;
    const double amp = std::exp2(-(2.0 - s) * level);
    for (std::size_t i = h; i < last; i += 2 * h) {
      v[i] = 0.5 * (v[i - h] + v[i + h]) + amp * rng.uniform(-1.0, 1.0);
    }
  }
  return SampledCurve(n, std::move(v));
}

SampledSurface midpoint_surface(double s, std::uint64_t seed, int n) {
  require(s >= 2.0 && s <= 3.0, "midpoint surface target dimension must lie in [2, 3]");
  require(n >= 1 && n <= 14, "surface grid exponent must lie in [1, 14]");
  SplitMix64 rng(seed);
  const std::size_t last = std::size_t{1} << n;
  const std::size_t side = last + 1;
  std::vector<double> v(side * side);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return v[i * side + j]; };

  at(0, 0) = rng.uniform(-1.0, 1.0);
  at(0, last) = rng.uniform(-1.0, 1.0);
  at(last, 0) = rng.uniform(-1.0, 1.0);
  at(last, last) = rng.uniform(-1.0, 1.0);
  for (int level = 1; level <= n; ++level) {
    const std::size_t h = last >> level;
    const double amp = std::exp2(-(3.0 - s) * level);
    for (std::size_t i = h; i < last; i += 2 * h) {
      for (std::size_t j = h; j < last; j += 2 * h) {
        const double mean =
            0.25 * (at(i - h, j - h) + at(i - h, j + h) + at(i + h, j - h) + at(i + h, j + h));
        at(i, j) = mean + amp * rng.uniform(-1.0, 1.0);
      }
    }
    for (std::size_t i = h; i < last; i += 2 * h) {
      for (std::size_t j = 0; j <= last; j += 2 * h) {
        at(i, j) = 0.5 * (at(i - h, j) + at(i + h, j)) + amp * rng.uniform(-1.0, 1.0);
      }
    }
    for (std::size_t i = 0; i <= last; i += 2 * h) {
      for (std::size_t j = h; j < last; j += 2 * h) {
        at(i, j) = 0.5 * (at(i, j - h) + at(i, j + h)) + amp * rng.uniform(-1.0, 1.0);
      }
    }
  }
  return SampledSurface(n, std::move(v));
}

SampledCurve takagi_curve(int n) {
  require(n >= 1 && n <= 30, "grid exponent must lie in [1, 30]");
  const std::uint64_t full = std::uint64_t{1} << n;
  std::vector<double> v(full + 1, 0.0);
  for (std::size_t i = 0; i <= full; ++i) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
      // 2^k x mod 1 = ((i << k) mod 2^n) / 2^n
      const std::uint64_t r = (static_cast<std::uint64_t>(i) << k) & (full - 1);
      const std::uint64_t dist = std::min(r, full - r);
      sum += std::ldexp(static_cast<double>(dist), -n - k);
    }
    v[i] = sum;
  }
  return SampledCurve(n, std::move(v));
}

SampledCurve monotone_curve(int n, std::uint64_t seed, MonotoneVariant variant) {
  require(n >= 1 && n <= 30, "grid exponent must lie in [1, 30]");
  const std::size_t count = grid_points(n);
  std::vector<double> v(count, 0.0);
  SplitMix64 rng(seed);
  switch (variant) {
    case MonotoneVariant::constant:
      std::fill(v.begin(), v.end(), 0.5);
      break;
    case MonotoneVariant::sorted_uniform:
      for (auto& x : v) x = rng.uniform();
      std::sort(v.begin(), v.end());
      break;
    case MonotoneVariant::staircase: {
      // Jumps at roughly one grid point in sixteen, normalised to end at 1.
      double level = 0.0;
      for (std::size_t i = 1; i < count; ++i) {
        if ((rng.next() & 15U) == 0) level += rng.uniform();
        v[i] = level;
      }
      if (level > 0.0) {
        for (auto& x : v) x = std::min(1.0, x / level);
      }
      break;
    }
  }
  return SampledCurve(n, std::move(v));
}

ProbeSurface probe_surface(double alpha, int n, ProbeCurve choice, std::uint64_t seed, int base) {
  require(alpha >= 2.0 && alpha <= 3.0, "probe alpha must lie in [2, 3]");
  ProbeSurface p;
  p.alpha = alpha;
  GeneratorSpec& spec = p.curve_spec;
  spec.domain = Domain::curve;
  spec.target_dim = alpha - 1.0;
  spec.seed = seed;
  if (choice == ProbeCurve::midpoint) {
    spec.family = Family::midpoint;
  } else if (alpha == 2.0) {
    // No weierstrass curve has dimension 1; use a smooth cosine instead.
    spec.family = Family::closed_form;
    spec.variant = "cosine";
  } else {
    spec.family = Family::weierstrass;
    spec.base = base;
  }
  p.curve = std::get<SampledCurve>(generate(spec, n));
  p.surface = extrude(p.curve);
  return p;
}

}  // namespace fractal
