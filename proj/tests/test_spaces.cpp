#include <gtest/gtest.h>

#include <cmath>

#include "fractal/constructions.hpp"
#include "fractal/generators.hpp"
#include "fractal/horizon.hpp"
#include "fractal/spaces.hpp"
#include "support.hpp"

using namespace fractal;

namespace {

// sup over m = 0..m_max of R(m) 2^{m(1 - alpha)}, plus the sup norm.
double reference_norm(const SampledCurve& f, double alpha, int m_max) {
  double sup = 0.0, best = 0.0;
  for (double v : f.values()) sup = std::max(sup, std::abs(v));
  for (int m = 0; m <= m_max; ++m) best = std::max(best, ref::range_sum(f, m) * std::exp2(m * (1.0 - alpha)));
  return sup + best;
}

// Every ordered pair of grid points, no pruning.
double reference_lip(const SampledSurface& f, double alpha) {
  const long side = static_cast<long>(f.side());
  double best = 0.0;
  for (long a = 0; a < side * side; ++a) {
    for (long b = a + 1; b < side * side; ++b) {
      const long di = b / side - a / side, dj = b % side - a % side;
      const double dist = std::ldexp(std::sqrt(static_cast<double>(di * di + dj * dj)), -f.n());
      const double diff = std::abs(f.at(b / side, b % side) - f.at(a / side, a % side));
      best = std::max(best, diff / std::pow(dist, 3.0 - alpha));
    }
  }
  return best;
}

}  // namespace

TEST(SupNorm, Examples) {
  EXPECT_EQ(sup_norm(sample_curve([](double) { return 3.0; }, 3)), 3.0);
  EXPECT_EQ(sup_norm(sample_curve([](double x) { return x - 0.5; }, 4)), 0.5);
  EXPECT_NEAR(sup_norm(takagi_curve(12)), 2.0 / 3.0, std::ldexp(1.0, -10));
}

TEST(VAlphaNorm, Constant) {
  const NormReport r = v_alpha_norm(sample_curve([](double) { return -2.0; }, 6), 1.4, 6);
  EXPECT_EQ(r.sup_norm, 2.0);
  EXPECT_EQ(r.v_alpha_sup, 0.0);
}

TEST(VAlphaNorm, IdentityAtAlphaOne) {
  const NormReport r = v_alpha_norm(sample_curve([](double x) { return x; }, 8), 1.0, 8);
  EXPECT_EQ(r.v_alpha_sup, 1.0);
  for (double t : r.scale_terms) EXPECT_EQ(t, 1.0);
}

TEST(VAlphaNorm, WeierstrassMatchesReference) {
  const SampledCurve w = weierstrass_curve(1.5, 2, 1, 14);
  const NormReport r = v_alpha_norm(w, 1.6, 14);
  EXPECT_TRUE(std::isfinite(r.norm()));
  EXPECT_EQ(r.norm(), reference_norm(w, 1.6, 14));
  for (int m = 0; m <= 14; ++m) EXPECT_LE(r.scale_terms[m], r.v_alpha_sup);
  EXPECT_EQ(r.scale_terms[r.achieved_m], r.v_alpha_sup);
}

TEST(VAlphaNorm, RejectsSmallAlpha) {
  EXPECT_THROW(v_alpha_norm(takagi_curve(5), 0.9, 5), std::invalid_argument);
  EXPECT_THROW(v_alpha_norm(midpoint_surface(2.5, 1, 4), 1.9, 4), std::invalid_argument);
}

TEST(VAlphaNorm, HomogeneousAndSubadditive) {
  SplitMix64 rng(11);
  for (std::uint64_t k = 0; k < 8; ++k) {
    const SampledCurve f = ref::dyadic_curve(9, 3 * k + 1), g = ref::dyadic_curve(9, 3 * k + 2);
    const double lambda = std::ldexp(1.0, static_cast<int>(rng.next() % 7) - 3);
    const NormReport nf = v_alpha_norm(f, 1.5, 9);
    EXPECT_EQ(v_alpha_norm(lin_comb(-lambda, f, 0.0, f), 1.5, 9).norm(), lambda * nf.norm());
    EXPECT_LE(v_alpha_norm(f + g, 1.5, 9).norm(), nf.norm() + v_alpha_norm(g, 1.5, 9).norm());
  }
}

TEST(Metric, IdentityAndSymmetry) {
  const SampledCurve f = weierstrass_curve(1.4, 2, 2, 10), g = takagi_curve(10);
  EXPECT_EQ(d_alpha_metric(f, f, 1.0, 10, 10).value, 0.0);
  EXPECT_EQ(d_alpha_metric(f, g, 1.0, 10, 10).value, d_alpha_metric(g, f, 1.0, 10, 10).value);
}

TEST(Metric, TranslationInvariant) {
  const SampledSurface f = ref::dyadic_surface(6, 1), g = ref::dyadic_surface(6, 2),
                       h = ref::dyadic_surface(6, 3);
  EXPECT_EQ(d_alpha_metric(f + h, g + h, 2.2, 8, 6).value, d_alpha_metric(f, g, 2.2, 8, 6).value);
}

TEST(Metric, TakagiAgainstZeroMatchesReference) {
  const SampledCurve t = takagi_curve(12);
  const SampledCurve zero = sample_curve([](double) { return 0.0; }, 12);
  const MetricValue d = d_alpha_metric(t, zero, 1.0, 10, 12);
  double expect = 0.0;
  for (int k = 1; k <= 10; ++k) expect += std::min(std::ldexp(1.0, -k), reference_norm(t, 1.0 + 1.0 / k, 12));
  EXPECT_NEAR(d.value, expect, 1e-15);
  EXPECT_EQ(d.tail_bound, std::ldexp(1.0, -10));
  EXPECT_EQ(d.terms.size(), 10u);
}

TEST(Metric, BoundedBySeries) {
  const SampledCurve f = weierstrass_curve(1.9, 2, 3, 9), g = takagi_curve(9);
  const MetricValue d = d_alpha_metric(f, g, 1.0, 20, 9);
  EXPECT_LE(d.value, 1.0);
}

TEST(Lipschitz, Constant) {
  EXPECT_EQ(lip_alpha(sample_surface([](double, double) { return 4.0; }, 5), 2.3).value, 0.0);
}

TEST(Lipschitz, PlaneAtAlphaTwo) {
  EXPECT_DOUBLE_EQ(lip_alpha(sample_surface([](double x, double) { return x; }, 6), 2.0).value, 1.0);
}

TEST(Lipschitz, ModifierMatchesAllPairs) {
  const SampledSurface m = modifier(takagi_curve(6), 0, 6).surface;
  const LipschitzReport r = lip_alpha(m, 2.0);
  EXPECT_TRUE(r.all_pairs);
  EXPECT_EQ(r.value, reference_lip(m, 2.0));
}

TEST(Lipschitz, RoughSurfacesMatchAllPairs) {
  for (double alpha : {2.0, 2.4, 2.9}) {
    const SampledSurface s = midpoint_surface(2.6, 13, 5);
    EXPECT_EQ(lip_alpha(s, alpha).value, reference_lip(s, alpha)) << alpha;
  }
}

TEST(Lipschitz, LadderAboveAllPairsLimit) {
  const LipschitzReport r = lip_alpha(midpoint_surface(2.5, 1, 9), 2.5);
  EXPECT_FALSE(r.all_pairs);
  EXPECT_EQ(r.ladder_factor, std::exp2(0.5));
  EXPECT_GT(r.value, 0.0);
}

TEST(Lipschitz, RejectsAlpha) {
  EXPECT_THROW(lip_alpha(midpoint_surface(2.5, 1, 3), 3.0), std::invalid_argument);
  EXPECT_THROW(lip_alpha(midpoint_surface(2.5, 1, 3), 1.9), std::invalid_argument);
}

TEST(Lipschitz, HorizonBound) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const SampledSurface f = midpoint_surface(2.4, seed, 6);
    const double alpha = 2.4;
    const double lip = lip_alpha(f, alpha).value;
    const SampledCurve h = horizon(f);
    for (std::size_t a = 0; a < h.size(); ++a) {
      for (std::size_t b = a + 1; b < h.size(); ++b) {
        EXPECT_LE(std::abs(h[b] - h[a]),
                  lip * offset_distance_power(static_cast<long>(b - a), 0, 6, 3.0 - alpha));
      }
    }
    EXPECT_LE(curve_holder_quotient(h, 3.0 - alpha), lip);
  }
}

TEST(Monotonicity, ConstantNormsEqualSup) {
  const MonotonicityReport r =
      norm_monotonicity_check(sample_curve([](double) { return 0.75; }, 6), 1.2, 6, 6);
  EXPECT_TRUE(r.holds);
  for (double v : r.norms) EXPECT_EQ(v, 0.75);
}

TEST(Monotonicity, Takagi) {
  const MonotonicityReport r = norm_monotonicity_check(takagi_curve(12), 1.0, 6, 12);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.per_scale_holds);
  for (std::size_t k = 1; k < r.norms.size(); ++k) EXPECT_GE(r.norms[k], r.norms[k - 1]);
}

TEST(Monotonicity, MidpointSurface) {
  const MonotonicityReport r = norm_monotonicity_check(midpoint_surface(2.3, 1, 9), 2.3, 6, 9);
  EXPECT_TRUE(r.holds);
  for (std::size_t k = 1; k < r.norms.size(); ++k) EXPECT_GE(r.norms[k], r.norms[k - 1]);
}
