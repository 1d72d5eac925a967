#include <gtest/gtest.h>

#include <cmath>

#include "fractal/constructions.hpp"
#include "fractal/generators.hpp"
#include "fractal/horizon.hpp"
#include "fractal/spaces.hpp"
#include "support.hpp"

using namespace fractal;

namespace {

std::vector<SampledSurface> three_midpoints(int n) {
  return {midpoint_surface(2.4, 1, n), midpoint_surface(2.4, 2, n), midpoint_surface(2.4, 3, n)};
}

// Exhaustive column-dominance check written from the postcondition.
bool dominated_by_line(const SampledSurface& s, std::size_t j0) {
  for (std::size_t i = 0; i < s.side(); ++i)
    for (std::size_t j = 0; j < s.side(); ++j)
      if (s.at(i, j) > s.at(i, j0)) return false;
  return true;
}

}  // namespace

TEST(Forcer, LinearFamily) {
  const SampledSurface f = sample_surface([](double, double y) { return y; }, 5);
  const ForcerParts p = forcer(std::vector{f}, 0);
  const SampledCurve y = sample_curve([](double t) { return t; }, 5);
  EXPECT_EQ(p.g_star, y);
  EXPECT_EQ(p.envelope, y);
  const SampledSurface sum = f + p.forcer;
  for (double v : sum.values()) EXPECT_EQ(v, 0.0);
}

TEST(Forcer, ExtrudedMemberNeedsNothing) {
  const SampledSurface f = extrude(weierstrass_curve(1.6, 2, 1, 6));
  const ForcerParts p = forcer(std::vector{f}, 17);
  for (double v : p.phi_sup.values()) EXPECT_EQ(v, 0.0);
  for (double v : p.envelope.values()) EXPECT_EQ(v, 0.0);
  for (double v : p.forcer.values()) EXPECT_EQ(v, 0.0);
}

TEST(Forcer, MidpointFamilyExhaustive) {
  const auto family = three_midpoints(8);
  const std::size_t j0 = 128;  // y0 = 0.5
  const ForcerParts p = forcer(family, j0);
  for (const auto& f : family) EXPECT_TRUE(dominated_by_line(f + p.forcer, j0));
  for (std::size_t i = 0; i < p.forcer.side(); ++i) EXPECT_EQ(p.forcer.at(i, j0), 0.0);
  EXPECT_TRUE(check_forcer(p, family).holds());
}

TEST(Forcer, EnvelopeShape) {
  const auto family = three_midpoints(8);
  const ForcerParts p = forcer(family, 80);
  const SampledCurve& F = p.envelope;
  EXPECT_EQ(F[80], 0.0);
  for (std::size_t j = 0; j < F.size(); ++j) EXPECT_GE(F[j], p.g_star[j]);
  for (std::size_t j = 0; j < 80; ++j) EXPECT_GE(F[j], F[j + 1]);
  for (std::size_t j = 80; j + 1 < F.size(); ++j) EXPECT_LE(F[j], F[j + 1]);
  EXPECT_NEAR(estimate_dims(F, 2, 7, 4).ols_slope, 1.0, 0.1);
}

TEST(Forcer, Errors) {
  EXPECT_THROW(forcer(std::vector<SampledSurface>{}, 0), std::invalid_argument);
  const std::vector<SampledSurface> mixed{midpoint_surface(2.5, 1, 4), midpoint_surface(2.5, 1, 5)};
  EXPECT_THROW(forcer(mixed, 0), std::invalid_argument);
  EXPECT_THROW(forcer(std::vector{midpoint_surface(2.5, 1, 4)}, 17), std::out_of_range);
}

TEST(Ladder, ConstantTarget) {
  const double c = 0.75;
  const ApproximantLadder l = monotone_approximants(sample_curve([=](double) { return c; }, 6), 8);
  ASSERT_EQ(l.p.size(), 9u);
  for (int k = 0; k <= 8; ++k) {
    const double eps = std::ldexp(c, -k);
    for (double v : l.p[k].values()) EXPECT_EQ(v, c - eps) << k;
  }
}

TEST(Ladder, IdentityAtFirstClamp) {
  const SampledCurve g = sample_curve([](double x) { return x; }, 6);
  const ApproximantLadder l = monotone_approximants(g, 3);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(l.p[1][i], g[i] - 0.5);
}

TEST(Ladder, TakagiInvariantsExhaustive) {
  const SampledCurve g = takagi_curve(10);
  const ApproximantLadder l = monotone_approximants(g, 10);
  for (std::size_t k = 0; k < l.p.size(); ++k) {
    const double clamp = std::ldexp(1.0, static_cast<int>(k));
    double gap = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_LE(l.p[k][i], g[i]);
      if (k + 1 < l.p.size()) {
        EXPECT_LE(l.p[k][i], l.p[k + 1][i]);
      }
      if (i + 1 < g.size()) {
        EXPECT_LE(std::abs(l.p[k][i + 1] - l.p[k][i]) * 1024.0, clamp);
      }
      gap = std::max(gap, g[i] - l.p[k][i]);
    }
    EXPECT_EQ(gap, l.gaps[k]);
    if (k > 0) {
      EXPECT_LE(l.gaps[k], l.gaps[k - 1]);
    }
  }
  EXPECT_LT(l.gaps.back(), 0.01);
  EXPECT_TRUE(check_ladder(l).holds());
  int runs = 0;
  for (int r : l.schedule) runs += r;
  EXPECT_EQ(runs, 11);
}

TEST(Ladder, RequiresPositiveLength) {
  EXPECT_THROW(monotone_approximants(takagi_curve(4), 0), std::invalid_argument);
}

TEST(QProfile, Examples) {
  EXPECT_EQ(q_profile(0.75), 0.5);
  EXPECT_EQ(strip_index(0.75), 1);
  for (int k = 1; k <= 20; ++k) {
    EXPECT_EQ(q_profile(std::ldexp(1.0, -k)), 0.0);
    EXPECT_EQ(strip_index(std::ldexp(1.0, -k)), k);
  }
  EXPECT_EQ(q_profile(1.0), 1.0);
  EXPECT_EQ(q_profile(0.0), 0.0);
  EXPECT_EQ(q_profile(0.3), std::ldexp(0.3, 2) - 1.0);
}

TEST(Modifier, ZeroTarget) {
  const SampledCurve zero = sample_curve([](double) { return 0.0; }, 6);
  const Modifier m = modifier(zero, 0, 6);
  for (std::size_t i = 0; i < m.surface.side(); ++i) {
    EXPECT_EQ(m.surface.at(i, 0), 0.0);
    for (std::size_t j = 0; j < m.surface.side(); ++j) EXPECT_LE(m.surface.at(i, j), 0.0);
  }
}

TEST(Modifier, TakagiPostconditions) {
  const SampledCurve g = takagi_curve(10);
  const Modifier m = modifier(g, 0, 10);
  EXPECT_EQ(slice(m.surface, 0), g);
  EXPECT_TRUE(dominated_by_line(m.surface, 0));
  EXPECT_EQ(horizon(m.surface), g);
  EXPECT_TRUE(check_modifier(m, g).holds());
}

TEST(Modifier, OffsetLineBothSides) {
  const SampledCurve g = weierstrass_curve(1.7, 2, 4, 8);
  for (std::size_t j0 : {std::size_t{64}, std::size_t{128}, std::size_t{200}, std::size_t{256}}) {
    const Modifier m = modifier(g, j0, 8);
    EXPECT_EQ(slice(m.surface, j0), g);
    EXPECT_TRUE(dominated_by_line(m.surface, j0)) << j0;
    EXPECT_EQ(horizon(m.surface), g);
  }
}

TEST(Modifier, SymmetricAboutCentre) {
  const Modifier m = modifier(takagi_curve(7), 64, 7);
  for (std::size_t d = 1; d <= 64; ++d) EXPECT_EQ(slice(m.surface, 64 - d), slice(m.surface, 64 + d));
}

TEST(Modifier, StripBoundariesAgree) {
  const SampledCurve g = weierstrass_curve(1.5, 2, 2, 9);
  const Modifier m = modifier(g, 0, 9);
  // At y = 2^-k the blend from strip k (q = 0) and the limit from strip k+1
  // (q -> 1) both give p_k.
  for (int k = 1; k <= 9; ++k) {
    EXPECT_EQ(slice(m.surface, std::size_t{1} << (9 - k)), m.ladder.p[k]) << k;
  }
  EXPECT_EQ(slice(m.surface, 512), m.ladder.p[0]);
}

TEST(Modifier, Errors) {
  EXPECT_THROW(modifier(takagi_curve(5), 0, 6), std::invalid_argument);
  EXPECT_THROW(modifier(takagi_curve(5), 40, 5), std::out_of_range);
}

TEST(Modifier, RangeBoundPerScale) {
  for (const SampledCurve& g : {takagi_curve(10), weierstrass_curve(1.9, 2, 1, 10)}) {
    const SampledSurface M = modifier(g, 0, 10).surface;
    const double c = 1.5 + 2.0 * sup_norm(g);
    const double norm = sup_norm(M);
    for (int m = 1; m <= 10; ++m) {
      const double cells = std::ldexp(1.0, m);
      EXPECT_LE(ref::range_sum(M, m), c * m * cells + (cells + 1) * 2 * norm) << m;
    }
    for (const auto& row : modifier_range_bound(M, g)) EXPECT_TRUE(row.holds) << row.m;
  }
}

TEST(ModifierDim, ConstantTarget) {
  const SampledCurve g = sample_curve([](double) { return 0.4; }, 10);
  const ModifierDimReport r = modifier_dim_check(modifier(g, 0, 10).surface, g, default_scales(2, 10));
  EXPECT_NEAR(r.estimate.ols_slope, 2.0, 0.05);
  EXPECT_TRUE(r.holds());
}

TEST(ModifierDim, TakagiBound) {
  const SampledCurve g = takagi_curve(10);
  const ModifierDimReport r = modifier_dim_check(modifier(g, 0, 10).surface, g, default_scales(2, 10));
  const double c = 1.5 + 2.0 * sup_norm(g);
  EXPECT_DOUBLE_EQ(r.slack, std::log2(c * 10) / 10);
  EXPECT_LE(r.estimate.upper_est, 2.0 + r.slack);
  EXPECT_TRUE(r.range_bound);
}

TEST(ModifierDim, RoughTargetStillMinimal) {
  const SampledCurve g = weierstrass_curve(1.9, 2, 1, 10);
  const ModifierDimReport r = modifier_dim_check(modifier(g, 0, 10).surface, g, default_scales(2, 10));
  EXPECT_LE(r.estimate.upper_est, 2.0 + r.slack);
}

TEST(TightScenario, ZeroFamily) {
  const int n = 8;
  const SampledCurve f1 = weierstrass_curve(2.0, 2, 1, n), f2 = takagi_curve(n);
  const std::vector<SampledSurface> family{sample_surface([](double, double) { return 0.0; }, n)};
  const TightScenarioReport r = theorem_tight_scenario(2.5, f1, f2, family, 0, default_scales(2, n), n);
  EXPECT_TRUE(r.identity_first);
  EXPECT_TRUE(r.identity_second);
  EXPECT_EQ(r.horizon_first.ols_slope, r.first_curve.ols_slope);
  EXPECT_EQ(r.horizon_second.ols_slope, r.second_curve.ols_slope);
}

TEST(TightScenario, MidpointMember) {
  const int n = 9;
  const SampledCurve f1 = weierstrass_curve(2.0, 2, 1, n), f2 = takagi_curve(n);
  const std::vector<SampledSurface> family{midpoint_surface(2.3, 11, n)};
  const TightScenarioReport r = theorem_tight_scenario(2.3, f1, f2, family, 0, default_scales(2, n), n);
  EXPECT_TRUE(r.forcer_check.holds());
  EXPECT_TRUE(r.identity_first);
  EXPECT_TRUE(r.identity_second);
}

TEST(TightScenario, HorizonDimensions) {
  const int n = 9;
  const SampledCurve f1 = weierstrass_curve(2.0, 2, 1, n), f2 = takagi_curve(n);
  const std::vector<SampledSurface> family{midpoint_surface(2.3, 11, n)};
  const TightScenarioReport r = theorem_tight_scenario(2.3, f1, f2, family, 0, default_scales(2, n), n);
  EXPECT_NEAR(r.horizon_first.upper_est, 2.0, 0.2);
  EXPECT_NEAR(r.horizon_second.upper_est, std::max(r.f0_star.upper_est, 1.0), 0.1);
}
