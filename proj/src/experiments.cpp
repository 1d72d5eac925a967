#include "fractal/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "fractal/constructions.hpp"
#include "fractal/rng.hpp"

namespace fractal {

namespace {

std::vector<double> lambdas_for(const SweepConfig& cfg) {
  if (cfg.lambdas.empty()) return sample_lambdas(cfg.lambda_range, cfg.count, cfg.seed);
  std::set<double> seen;
  for (double l : cfg.lambdas) {
    if (!std::isfinite(l) || std::abs(l) < lambda_dead_zone) {
      throw std::invalid_argument("lambda " + format_double(l) + " lies in the dead zone");
    }
    if (!seen.insert(l).second) {
      throw std::invalid_argument("duplicate lambda " + format_double(l));
    }
  }
  return cfg.lambdas;
}

template <class Sample>
LambdaSweep sum_impl(const Sample& f, const Sample& g, const SweepConfig& cfg) {
  if (f.n() != g.n()) throw std::invalid_argument("sum_experiment needs samples on one grid");
  const auto& sc = cfg.scales;
  LambdaSweep sweep;
  sweep.kind = "sum";
  sweep.first = estimate_dims(f, sc.m_min, sc.m_max, sc.window);
  sweep.second = estimate_dims(g, sc.m_min, sc.m_max, sc.window);
  const double upper_ref = std::max(sweep.first.upper_est, sweep.second.upper_est);
  const double lower_ref = std::max(sweep.first.lower_est, sweep.second.lower_est);

  for (double lambda : lambdas_for(cfg)) {
    LambdaRecord rec;
    rec.lambda = lambda;
    rec.sum = estimate_dims(lin_comb(1.0, f, lambda, g), sc.m_min, sc.m_max, sc.window);
    rec.conforms = std::abs(rec.sum.upper_est - upper_ref) <= cfg.tolerance &&
                   rec.sum.lower_est >= lower_ref - cfg.tolerance;
    sweep.records.push_back(rec);
  }
  for (std::size_t i = 0; i < sweep.records.size(); ++i) {
    if (sweep.records[i].conforms) {
      ++sweep.conforming;
    } else {
      sweep.exceptional.push_back(i);
    }
  }
  return sweep;
}

std::string fmt_est(const DimensionEstimate& e) {
  return fmt::format("{},{},{}", format_double(e.ols_slope), format_double(e.lower_est),
                     format_double(e.upper_est));
}

void write_header(std::ostream& out, const std::string& header) {
  std::size_t start = 0;
  while (start < header.size()) {
    std::size_t end = header.find('\n', start);
    if (end == std::string::npos) end = header.size();
    out << "# " << header.substr(start, end - start) << '\n';
    start = end + 1;
  }
}

}  // namespace

std::vector<double> sample_lambdas(double range, int count, std::uint64_t seed) {
  if (!(range > lambda_dead_zone)) {
    throw std::invalid_argument("lambda range must exceed the dead zone");
  }
  if (count < 1) throw std::invalid_argument("lambda count must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> out;
  std::set<double> seen;
  while (static_cast<int>(out.size()) < count) {
    const double l = rng.uniform(-range, range);
    if (std::abs(l) < lambda_dead_zone || !seen.insert(l).second) continue;
    out.push_back(l);
  }
  return out;
}

LambdaSweep sum_experiment(const SampledCurve& f, const SampledCurve& g, const SweepConfig& cfg) {
  return sum_impl(f, g, cfg);
}

LambdaSweep sum_experiment(const SampledSurface& f, const SampledSurface& g,
                           const SweepConfig& cfg) {
  return sum_impl(f, g, cfg);
}

LambdaSweep probe_experiment(const SampledSurface& f, double alpha, const SweepConfig& cfg,
                             ProbeCurve choice) {
  if (!(alpha >= 2.0 && alpha <= 3.0)) {
    throw std::invalid_argument("probe_experiment needs alpha in [2, 3]");
  }
  const auto& sc = cfg.scales;
  const ProbeSurface probe = probe_surface(alpha, f.n(), choice, cfg.seed);
  LambdaSweep sweep;
  sweep.kind = "probe";
  sweep.alpha = alpha;
  sweep.first = estimate_dims(f, sc.m_min, sc.m_max, sc.window);
  sweep.second = estimate_dims(probe.surface, sc.m_min, sc.m_max, sc.window);

  for (double lambda : lambdas_for(cfg)) {
    LambdaRecord rec;
    rec.lambda = lambda;
    const SampledSurface s = lin_comb(1.0, f, lambda, probe.surface);
    rec.sum = estimate_dims(s, sc.m_min, sc.m_max, sc.window);
    const DimensionEstimate h = estimate_dims(horizon(s), sc.m_min, sc.m_max, sc.window);
    rec.horizon = h;
    rec.conforms = std::abs(rec.sum.ols_slope - alpha) <= cfg.surface_tolerance &&
                   h.lower_est >= alpha - 1.0 - cfg.horizon_lower_tolerance &&
                   h.upper_est <= 2.0 + cfg.horizon_upper_tolerance;
    sweep.records.push_back(rec);
  }
  for (std::size_t i = 0; i < sweep.records.size(); ++i) {
    if (sweep.records[i].conforms) {
      ++sweep.conforming;
    } else {
      sweep.exceptional.push_back(i);
    }
  }
  return sweep;
}

void write_sweep_csv(std::ostream& out, const LambdaSweep& sweep, const std::string& header) {
  write_header(out, header);
  out << "# kind=" << sweep.kind << '\n';
  if (sweep.kind == "probe") out << "# alpha=" << format_double(sweep.alpha) << '\n';
  out << "# first ols,lower,upper=" << fmt_est(sweep.first) << '\n';
  out << "# second ols,lower,upper=" << fmt_est(sweep.second) << '\n';
  out << fmt::format("# conforming={}/{}\n", sweep.conforming, sweep.records.size());
  out << "# exceptional=";
  for (std::size_t k = 0; k < sweep.exceptional.size(); ++k) {
    out << (k ? ";" : "") << format_double(sweep.records[sweep.exceptional[k]].lambda);
  }
  out << '\n';
  out << "index,lambda,ols,lower,upper";
  if (sweep.kind == "probe") out << ",horizon_ols,horizon_lower,horizon_upper";
  out << ",conforms\n";
  for (std::size_t i = 0; i < sweep.records.size(); ++i) {
    const auto& r = sweep.records[i];
    out << i << ',' << format_double(r.lambda) << ',' << fmt_est(r.sum);
    if (r.horizon) out << ',' << fmt_est(*r.horizon);
    out << ',' << (r.conforms ? 1 : 0) << '\n';
  }
}

SampledSurface depression_surface(int n, double roughness, std::uint64_t seed) {
  const SampledSurface rough = midpoint_surface(roughness, seed, n);
  double scale = 0.0;
  for (double v : rough.values()) scale = std::max(scale, std::abs(v));
  const double amplitude = scale > 0.0 ? 0.3 / scale : 0.0;
  const std::size_t side = rough.side();
  std::vector<double> v(side * side);
  for (std::size_t i = 0; i < side; ++i) {
    const double x = grid_coord(i, n);
    for (std::size_t j = 0; j < side; ++j) {
      const double y = grid_coord(j, n);
      const double w = std::clamp(2.0 - 8.0 * std::abs(y - 0.5), 0.0, 1.0);
      const double t = 2.0 * y - 1.0;
      v[i * side + j] = 0.5 * t * t + 0.25 * std::sin(std::numbers::pi * x) +
                        amplitude * w * rough.at(i, j);
    }
  }
  return SampledSurface(n, std::move(v));
}

std::vector<CensusFixture> census_zoo(int n, std::uint64_t seed) {
  std::vector<CensusFixture> zoo;
  for (double alpha : {2.2, 2.5, 2.8}) {
    const ProbeSurface p = probe_surface(alpha, n, ProbeCurve::weierstrass, seed);
    zoo.push_back({fmt::format("probe-{}", format_double(alpha)),
                   fmt::format("extruded weierstrass target_dim={} seed={}",
                               format_double(p.curve_spec.target_dim), seed),
                   p.surface});
  }
  for (double s : {2.3, 2.5, 2.7}) {
    zoo.push_back({fmt::format("midpoint-{}", format_double(s)),
                   fmt::format("midpoint surface target_dim={} seed={}", format_double(s), seed),
                   midpoint_surface(s, seed, n)});
  }
  {
    const SampledCurve g = weierstrass_curve(1.8, 2, seed, n);
    const SampledSurface f0 = midpoint_surface(2.3, seed + 1, n);
    const SampledSurface family[] = {f0};
    const ForcerParts parts = forcer(family, 0);
    const SampledSurface composite = (f0 + parts.forcer) + modifier(g, 0, n).surface;
    zoo.push_back({"modifier-composite",
                   fmt::format("midpoint 2.3 seed={} + forcer + modifier of weierstrass 1.8 "
                               "seed={} at y0=0",
                               seed + 1, seed),
                   composite});
  }
  zoo.push_back({"depression", fmt::format("depression with midpoint 2.7 seed={}", seed),
                 depression_surface(n, 2.7, seed)});
  zoo.push_back({"plane", "x + y", sample_surface([](double x, double y) { return x + y; }, n)});
  return zoo;
}

std::vector<CensusRow> horizon_property_census(const std::vector<CensusFixture>& fixtures,
                                               const ScaleRange& scales, double tolerance) {
  std::vector<CensusRow> rows;
  for (const auto& fx : fixtures) {
    CensusRow row;
    row.name = fx.name;
    row.recipe = fx.recipe;
    row.report = horizon_gap(fx.surface, scales, tolerance);
    row.verdict = row.report.horizon_property ? "horizon property holds" : "horizon property fails";
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows,
                      const std::string& header) {
  write_header(out, header);
  out << "name,recipe,surface_ols,surface_lower,surface_upper,horizon_ols,horizon_lower,"
         "horizon_upper,gap,gap_conservative,gap_liberal,within_bounds,verdict\n";
  for (const auto& r : rows) {
    const auto& g = r.report;
    out << r.name << ",\"" << r.recipe << "\"," << fmt_est(g.surface) << ',' << fmt_est(g.horizon)
        << ',' << format_double(g.gap) << ',' << format_double(g.gap_conservative) << ','
        << format_double(g.gap_liberal) << ',' << (g.within_bounds ? 1 : 0) << ',' << r.verdict
        << '\n';
  }
}

}  // namespace fractal
