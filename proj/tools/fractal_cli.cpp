// fractal: generate fractal curves and surfaces, estimate box dimensions,
// compute horizons, norms and constructions, and run the lambda sweeps.
//
// Inputs are either FRH1 sample files or GeneratorSpec text files
// (key=value lines); a spec is generated at --n. Every command is
// deterministic for fixed flags.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fractal/boxdim.hpp"
#include "fractal/constructions.hpp"
#include "fractal/experiments.hpp"
#include "fractal/generators.hpp"
#include "fractal/horizon.hpp"
#include "fractal/io.hpp"
#include "fractal/spaces.hpp"

using namespace fractal;

namespace {

struct Globals {
  int n = 9;
  std::string scales;  // "m_min..m_max"
  int window = 4;
  std::uint64_t seed = 0;
  std::string out;
  std::string pgm;
};

struct Input {
  std::string path;
  Sample sample;
  std::optional<GeneratorSpec> spec;
};

Input load_input(const std::string& path, int n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4] = {};
  in.read(magic, 4);
  const bool binary = in.gcount() == 4 && std::equal(magic, magic + 4, kSampleMagic);
  in.seekg(0);
  if (binary) return {path, read_sample(in), std::nullopt};
  std::stringstream text;
  text << in.rdbuf();
  const GeneratorSpec spec = GeneratorSpec::from_text(text.str());
  return {path, generate(spec, n), spec};
}

int sample_n(const Sample& s) {
  return std::visit([](const auto& v) { return v.n(); }, s);
}

int sample_d(const Sample& s) { return std::holds_alternative<SampledCurve>(s) ? 1 : 2; }

ScaleRange scales_for(const Globals& g, int d, int n) {
  ScaleRange r = default_scales(d, n);
  r.window = g.window;
  if (g.scales.empty()) return r;
  const auto dots = g.scales.find("..");
  if (dots == std::string::npos) throw CLI::ValidationError("--scales", "expected m_min..m_max");
  r.m_min = std::stoi(g.scales.substr(0, dots));
  r.m_max = std::stoi(g.scales.substr(dots + 2));
  if (r.m_min < 0 || r.m_max > n || r.m_min > r.m_max) {
    throw CLI::ValidationError("--scales", fmt::format("{} is outside [0, {}]", g.scales, n));
  }
  return r;
}

std::string header_for(const std::string& command, const Globals& g, const ScaleRange& sc,
                       const std::vector<const Input*>& inputs) {
  std::string h = fmt::format("command={}\nscales={}..{}\nwindow={}\nseed={}", command, sc.m_min,
                              sc.m_max, sc.window, g.seed);
  for (const Input* in : inputs) {
    h += "\ninput=" + in->path;
    if (in->spec) {
      std::istringstream lines(in->spec->to_text());
      for (std::string line; std::getline(lines, line);) h += "\n  " + line;
    }
  }
  return h;
}

// Text outputs go to --out when given, stdout otherwise.
template <class Fn>
void emit_text(const Globals& g, Fn&& fn) {
  if (g.out.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  fn(f);
}

void require_out(const Globals& g, const std::string& command) {
  if (g.out.empty()) throw CLI::ValidationError("--out", command + " writes a sample file");
}

void maybe_pgm(const Globals& g, const SampledSurface& s) {
  if (g.pgm.empty()) return;
  std::ofstream f(g.pgm, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.pgm);
  write_pgm(f, s);
}

std::string est_line(const DimensionEstimate& e) {
  return fmt::format("ols={} lower={} upper={}{}", format_double(e.ols_slope),
                     format_double(e.lower_est), format_double(e.upper_est),
                     e.degenerate ? " degenerate" : "");
}

std::size_t grid_index(double y0, int n) {
  const double scaled = std::ldexp(y0, n);
  if (!(y0 >= 0.0 && y0 <= 1.0) || scaled != std::floor(scaled)) {
    throw CLI::ValidationError("--y0", fmt::format("{} is not a grid coordinate at n={}", y0, n));
  }
  return static_cast<std::size_t>(scaled);
}

const char* pass(bool b) { return b ? "pass" : "fail"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box dimensions of fractal graphs and their horizons"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the global flags");

  Globals g;
  app.add_option("--n", g.n, "grid exponent for generated samples")->check(CLI::Range(1, 30));
  app.add_option("--scales", g.scales, "scale range m_min..m_max (default: curves 4..n-2, surfaces 2..n-1)");
  app.add_option("--window", g.window, "window for the lower/upper estimates")
      ->check(CLI::Range(2, 64));
  app.add_option("--seed", g.seed, "seed for generators and lambda draws");
  app.add_option("--out", g.out, "output file");
  app.add_option("--pgm", g.pgm, "also write surfaces as 8-bit PGM");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a sample from a spec");
  std::string spec_file, family = "weierstrass", domain = "curve", variant;
  double dim = 1.5, param = 0.0;
  int base = 2, terms = 0;
  std::string csv_out;
  gen->add_option("--spec", spec_file, "GeneratorSpec file (overrides the inline options)");
  gen->add_option("--family", family, "weierstrass|midpoint|takagi|monotone|closed-form");
  gen->add_option("--domain", domain, "curve|surface")->check(CLI::IsMember({"curve", "surface"}));
  gen->add_option("--dim", dim, "target dimension");
  gen->add_option("--base", base, "weierstrass base");
  gen->add_option("--terms", terms, "weierstrass series terms (0 = auto)");
  gen->add_option("--variant", variant, "monotone variant or closed-form id");
  gen->add_option("--param", param, "closed-form parameter");
  gen->add_option("--csv", csv_out, "also write a CSV dump");

  // boxdim / horizon / norm / metric
  std::string input, input2;
  auto* boxdim = app.add_subcommand("boxdim", "scale table CSV and dimension estimate");
  boxdim->add_option("input", input)->required();

  auto* hz = app.add_subcommand("horizon", "horizon curve of a surface");
  hz->add_option("input", input)->required();
  double tolerance = 0.15;
  hz->add_option("--tolerance", tolerance, "gap tolerance");

  double alpha = 2.5;
  int m_max = -1, metric_terms = 8;
  auto* norm = app.add_subcommand("norm", "V_alpha norm");
  norm->add_option("input", input)->required();
  norm->add_option("--alpha", alpha)->required();
  norm->add_option("--m-max", m_max, "largest scale (default n)");

  auto* metric = app.add_subcommand("metric", "d_alpha distance of two samples");
  metric->add_option("first", input)->required();
  metric->add_option("second", input2)->required();
  metric->add_option("--alpha", alpha)->required();
  metric->add_option("--terms", metric_terms, "series terms")->check(CLI::Range(1, 64));
  metric->add_option("--m-max", m_max, "largest scale (default n)");

  // constructions
  std::vector<std::string> family_files;
  double y0 = 0.0;
  int k_max = -1;
  auto* fc = app.add_subcommand("forcer", "forcer surface for a family of surfaces");
  fc->add_option("inputs", family_files)->required();
  fc->add_option("--y0", y0, "line y = y0 (grid coordinate)");

  auto* mod = app.add_subcommand("modifier", "modifier surface for a curve");
  mod->add_option("input", input)->required();
  mod->add_option("--y0", y0, "line y = y0 (grid coordinate)");
  mod->add_option("--k-max", k_max, "ladder length (default n)");

  // experiments
  double lambda_range = 2.0, surface_tol = 0.2, lower_tol = 0.2, upper_tol = 0.1;
  int count = 16;
  std::vector<double> lambdas;
  auto* ss = app.add_subcommand("sum-sweep", "dimensions of f + lambda g");
  ss->add_option("f", input)->required();
  ss->add_option("g", input2)->required();
  auto* ps = app.add_subcommand("probe-sweep", "dimensions of f + lambda Psi_alpha");
  ps->add_option("f", input)->required();
  ps->add_option("--alpha", alpha)->required();
  std::string probe_choice = "weierstrass";
  ps->add_option("--probe", probe_choice)->check(CLI::IsMember({"weierstrass", "midpoint"}));
  ps->add_option("--surface-tolerance", surface_tol);
  ps->add_option("--lower-tolerance", lower_tol);
  ps->add_option("--upper-tolerance", upper_tol);
  for (auto* sub : {ss, ps}) {
    sub->add_option("--lambda-range", lambda_range, "Lambda");
    sub->add_option("--count", count, "N_lambda")->check(CLI::Range(1, 1 << 20));
    sub->add_option("--lambda", lambdas, "explicit lambda values");
  }
  double sum_tolerance = 0.1;
  ss->add_option("--tolerance", sum_tolerance, "dimension tolerance");

  auto* census = app.add_subcommand("census", "horizon gaps over the fixture zoo");
  census->add_option("--tolerance", tolerance, "gap tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      require_out(g, "gen");
      GeneratorSpec spec;
      if (!spec_file.empty()) {
        std::ifstream f(spec_file);
        if (!f) throw std::runtime_error("cannot open " + spec_file);
        std::stringstream text;
        text << f.rdbuf();
        spec = GeneratorSpec::from_text(text.str());
      } else {
        spec.family = family_from_string(family);
        spec.domain = domain == "surface" ? Domain::surface : Domain::curve;
        spec.target_dim = dim;
        spec.seed = g.seed;
        spec.base = base;
        spec.max_terms = terms;
        spec.variant = variant;
        spec.param = param;
      }
      const Sample s = generate(spec, g.n);
      save_sample(g.out, s);
      if (!csv_out.empty()) {
        std::ofstream f(csv_out, std::ios::binary);
        write_csv(f, s, fmt::format("n={}\n{}", g.n, spec.to_text()));
      }
      if (const auto* surf = std::get_if<SampledSurface>(&s)) maybe_pgm(g, *surf);
      std::cout << "wrote " << g.out << '\n';
    } else if (*boxdim) {
      const Input in = load_input(input, g.n);
      const ScaleRange sc = scales_for(g, sample_d(in.sample), sample_n(in.sample));
      const ScaleTable table =
          scale_table(in.sample, sc.m_min, sc.m_max, header_for("boxdim", g, sc, {&in}));
      const DimensionEstimate e = estimate_dims(table, sc.window);
      emit_text(g, [&](std::ostream& o) {
        write_scale_table_csv(o, table);
        o << "# estimate " << est_line(e) << '\n';
      });
    } else if (*hz) {
      require_out(g, "horizon");
      const Input in = load_input(input, g.n);
      const auto* surf = std::get_if<SampledSurface>(&in.sample);
      if (!surf) throw std::invalid_argument("horizon needs a surface");
      const ScaleRange sc = scales_for(g, 2, surf->n());
      save_sample(g.out, horizon(*surf));
      const HorizonGapReport r = horizon_gap(*surf, sc, tolerance);
      std::cout << fmt::format("surface {} | horizon {} | gap={} within_bounds={} {}\n",
                               est_line(r.surface), est_line(r.horizon), format_double(r.gap),
                               r.within_bounds ? 1 : 0,
                               r.horizon_property ? "horizon property holds"
                                                  : "horizon property fails");
    } else if (*norm) {
      const Input in = load_input(input, g.n);
      const int mm = m_max < 0 ? sample_n(in.sample) : m_max;
      const NormReport r = std::visit([&](const auto& s) { return v_alpha_norm(s, alpha, mm); },
                                      in.sample);
      emit_text(g, [&](std::ostream& o) {
        o << fmt::format("alpha={} sup={} v_alpha={} achieved_m={} norm={}\n",
                         format_double(alpha), format_double(r.sup_norm),
                         format_double(r.v_alpha_sup), r.achieved_m, format_double(r.norm()));
      });
    } else if (*metric) {
      const Input a = load_input(input, g.n);
      const Input b = load_input(input2, g.n);
      if (a.sample.index() != b.sample.index()) throw std::invalid_argument("mixed sample kinds");
      const int mm = m_max < 0 ? sample_n(a.sample) : m_max;
      const MetricValue v = std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return d_alpha_metric(x, std::get<T>(b.sample), alpha, metric_terms, mm);
          },
          a.sample);
      emit_text(g, [&](std::ostream& o) {
        o << fmt::format("alpha={} terms={} value={} tail_bound={}\n", format_double(alpha),
                         metric_terms, format_double(v.value), format_double(v.tail_bound));
      });
    } else if (*fc) {
      require_out(g, "forcer");
      std::vector<SampledSurface> fam;
      for (const auto& path : family_files) {
        const Input in = load_input(path, g.n);
        const auto* surf = std::get_if<SampledSurface>(&in.sample);
        if (!surf) throw std::invalid_argument(path + " is not a surface");
        fam.push_back(*surf);
      }
      const std::size_t j0 = grid_index(y0, fam.front().n());
      const ForcerParts parts = forcer(fam, j0);
      const PostconditionReport rep = check_forcer(parts, fam);
      save_sample(g.out, parts.forcer);
      maybe_pgm(g, parts.forcer);
      std::cout << fmt::format("dominance={} vanishes_on_line={} worst_slack={}\n",
                               pass(rep.dominance), pass(rep.line_condition),
                               format_double(rep.worst_slack));
    } else if (*mod) {
      require_out(g, "modifier");
      const Input in = load_input(input, g.n);
      const auto* curve = std::get_if<SampledCurve>(&in.sample);
      if (!curve) throw std::invalid_argument("modifier needs a curve");
      const int km = k_max < 0 ? curve->n() : k_max;
      const Modifier m = modifier(*curve, grid_index(y0, curve->n()), km);
      const PostconditionReport rep = check_modifier(m, *curve);
      const ModifierDimReport dim_rep = modifier_dim_check(m.surface, *curve, scales_for(g, 2, curve->n()));
      save_sample(g.out, m.surface);
      maybe_pgm(g, m.surface);
      std::cout << fmt::format(
          "equals_g_on_line={} below_line={} worst_slack={} range_bound={} upper_est={} "
          "bound={} dimension_bound={}\n",
          pass(rep.line_condition), pass(rep.dominance), format_double(rep.worst_slack),
          pass(dim_rep.range_bound), format_double(dim_rep.estimate.upper_est),
          format_double(2.0 + dim_rep.slack), pass(dim_rep.dimension_bound));
    } else if (*ss || *ps) {
      const Input f = load_input(input, g.n);
      SweepConfig cfg;
      cfg.lambda_range = lambda_range;
      cfg.count = count;
      cfg.seed = g.seed;
      cfg.lambdas = lambdas;
      cfg.scales = scales_for(g, sample_d(f.sample), sample_n(f.sample));
      cfg.tolerance = sum_tolerance;
      cfg.surface_tolerance = surface_tol;
      cfg.horizon_lower_tolerance = lower_tol;
      cfg.horizon_upper_tolerance = upper_tol;
      LambdaSweep sweep;
      std::string header;
      if (*ss) {
        const Input gi = load_input(input2, g.n);
        if (f.sample.index() != gi.sample.index()) throw std::invalid_argument("mixed sample kinds");
        sweep = std::visit(
            [&](const auto& x) {
              using T = std::decay_t<decltype(x)>;
              return sum_experiment(x, std::get<T>(gi.sample), cfg);
            },
            f.sample);
        header = header_for("sum-sweep", g, cfg.scales, {&f, &gi});
      } else {
        const auto* surf = std::get_if<SampledSurface>(&f.sample);
        if (!surf) throw std::invalid_argument("probe-sweep needs a surface");
        sweep = probe_experiment(*surf, alpha, cfg,
                                 probe_choice == "midpoint" ? ProbeCurve::midpoint
                                                            : ProbeCurve::weierstrass);
        header = header_for("probe-sweep", g, cfg.scales, {&f}) + "\nprobe=" + probe_choice;
      }
      emit_text(g, [&](std::ostream& o) { write_sweep_csv(o, sweep, header); });
    } else if (*census) {
      const ScaleRange sc = scales_for(g, 2, g.n);
      const auto rows = horizon_property_census(census_zoo(g.n, g.seed), sc, tolerance);
      emit_text(g, [&](std::ostream& o) {
        write_census_csv(o, rows, header_for("census", g, sc, {}) + fmt::format("\nn={}", g.n));
      });
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
