#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "heatmc/acceptance.hpp"
#include "heatmc/grid.hpp"
#include "heatmc/priors.hpp"
#include "support.hpp"

using namespace heatmc;

namespace {

BoundaryVector vec(const nlohmann::json& j) { return {j.get<std::vector<double>>()}; }

double loop_misfit(const std::vector<double>& a, const std::vector<double>& b, double sigma) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]) / (sigma * sigma);
  return s;
}

}  // namespace

TEST(Misfit, ExactValues) {
  const BoundaryVector d{{1.0, 2.0, 3.0}};
  EXPECT_EQ(misfit(d, d, 0.1), 0.0);
  EXPECT_EQ(misfit(BoundaryVector{{0.0}}, BoundaryVector{{0.1}}, 0.1), 1.0);
  EXPECT_THROW(misfit(d, BoundaryVector{{1.0}}, 0.1), InputError);
}

TEST(Misfit, MatchesLoopOracle) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> dist(50, 10);
  for (int rep = 0; rep < 20; ++rep) {
    BoundaryVector a, b;
    for (int k = 0; k < 76; ++k) {
      a.values.push_back(dist(gen));
      b.values.push_back(dist(gen));
    }
    const double want = loop_misfit(a.values, b.values, 0.1);
    EXPECT_NEAR(misfit(a, b, 0.1), want, 1e-12 * want);
  }
}

TEST(DiffTerms, IdenticalStatesGiveZero) {
  GridSpec g;
  g.n = g.m = 5;
  std::mt19937_64 gen(5);
  const auto k = heatmc::testing::random_field(5, 5, gen);
  const BoundaryVector d{std::vector<double>(16, 3.0)}, dc{std::vector<double>(16, 2.5)};
  EXPECT_EQ(diff_terms(d, dc, dc, k, k, {}, g), (DiffTerms{0, 0, 0}));
}

TEST(DiffTerms, PerfectCandidateHasNegativeD1) {
  GridSpec g;
  g.n = g.m = 4;
  const ConductivityField k(4, 4, 1.0);
  const BoundaryVector d{std::vector<double>(12, 3.0)}, dc{std::vector<double>(12, 2.5)};
  const auto t = diff_terms(d, d, dc, k, k, {}, g);
  EXPECT_EQ(t.d1, -0.5 * misfit(d, dc, 0.1));
  EXPECT_LT(t.d1, 0.0);
}

TEST(DiffTerms, FourByFourFixture) {
  const auto fx = heatmc::testing::read_json(heatmc::testing::fixture("prior_4x4.json"));
  GridSpec g;
  g.n = g.m = 4;
  g.lx = 3 * fx["hx"].get<double>();
  g.ly = 3 * fx["hy"].get<double>();
  Sensitivities s;
  s.sigma = fx["sigma"];
  const ConductivityField k(4, 4, fx["k"].get<std::vector<double>>());
  const ConductivityField kc(4, 4, fx["k_candidate"].get<std::vector<double>>());
  const auto t = diff_terms(vec(fx["d"]), vec(fx["d_candidate"]), vec(fx["d_current"]), kc, k, s, g);
  for (auto [got, key] : {std::pair{t.d1, "d1"}, {t.d2, "d2"}, {t.d3, "d3"}}) {
    const double want = fx[key];
    EXPECT_NEAR(got, want, 1e-11 * std::max(1.0, std::abs(want))) << key;
  }
}

TEST(AlphaBaseline, ExactValues) {
  EXPECT_EQ(alpha_baseline({0, 0, 0}), 1.0);
  EXPECT_EQ(alpha_baseline({-5, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(alpha_baseline({std::log(2.0), 0, 0}), 0.5);
  EXPECT_EQ(alpha_baseline({1e6, 0, 0}), 0.0);
  EXPECT_EQ(alpha_baseline({-1e6, 0, 0}), 1.0);
}

TEST(AlphaBaseline, StrictlyDecreasingWhenUnsaturated) {
  double prev = 1.0;
  for (double d1 = 0.01; d1 < 30; d1 += 0.37) {
    const double a = alpha_baseline({d1, 0, 0});
    EXPECT_LT(a, prev);
    prev = a;
  }
}

TEST(AlphaDual, ExactValues) {
  Sensitivities s{.lambda1 = 1, .lambda2 = 100, .lambda3 = 15, .allow_unordered = true};
  EXPECT_EQ(alpha_dual({0, 0, 0}, s), 1.0);
  EXPECT_EQ(alpha_dual({0.5, -0.1, 2}, s), 1.0);
}

TEST(AlphaDual, MatchesBruteForceBranches) {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> dist(0, 2);
  const Sensitivities s{.lambda1 = 1, .lambda2 = 0.3, .lambda3 = 0.7};
  for (int rep = 0; rep < 1000; ++rep) {
    const DiffTerms t{dist(gen), dist(gen), dist(gen)};
    const double a = std::min(1.0, std::exp(-s.lambda1 * t.d1 - s.lambda2 * t.d2));
    const double b = std::min(1.0, std::exp(-s.lambda1 * t.d1 - s.lambda3 * t.d3));
    const double got = alpha_dual(t, s);
    EXPECT_DOUBLE_EQ(got, std::max(a, b));
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);
    if (s.lambda2 * t.d2 <= 0 || s.lambda3 * t.d3 <= 0) EXPECT_GE(got, alpha_baseline(t));
  }
}

TEST(AlphaNormalized, ExactValues) {
  EXPECT_EQ(alpha_normalized({0, 0, 0}, {}, {}, 1.5).alpha, 1.0);
  // alpha_h = 0.5, running max 1.0, w0 = 0.1: z0 = 0.1/0.5 + 0.9/1.0 = 1.1.
  const Sensitivities s{.lambda1 = 1, .lambda2 = 0, .lambda3 = 0};
  const NormalizerOutput z{.z0 = 0.1 / 0.5 + 0.9 / 1.0};
  const auto r = alpha_normalized({std::log(2.0), 0, 0}, z, s, 1.5);
  EXPECT_DOUBLE_EQ(r.alpha_h, 0.5);
  EXPECT_DOUBLE_EQ(r.alpha, 0.55);
}

TEST(AlphaNormalized, CutoffAndOverflowSaturate) {
  const auto r = alpha_normalized({-1e9, 0, 0}, {}, {}, 1.5);
  EXPECT_EQ(r.alpha, 1.5);
  EXPECT_TRUE(std::isfinite(r.alpha_h));
  EXPECT_LE(alpha_normalized({1e9, 0, 0}, {}, {}, 1.5).alpha, 1e-300);
}

TEST(AlphaNormalized, SchemeNoneReducesToCombinedRule) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> dist(0, 1);
  const Sensitivities s;
  for (int rep = 0; rep < 200; ++rep) {
    const DiffTerms t{dist(gen), dist(gen), dist(gen)};
    const double combined = std::min(1.0, std::exp(-(s.lambda1 * t.d1 + s.lambda2 * t.d2 + s.lambda3 * t.d3)));
    EXPECT_DOUBLE_EQ(alpha_normalized(t, {}, s, 1.0).alpha, combined);
  }
}

TEST(AlphaNormalized, DegenerateInertiaGivesSigns) {
  // w = 1 makes z_i = 1/|D_i|, so each exponent term is lambda_i * sign(D_i).
  const Sensitivities s;
  const DiffTerms t{2.5, -0.004, 7.0};
  const NormalizerOutput z{.z0 = 1.0, .z = {1 / 2.5, 1 / 0.004, 1 / 7.0}};
  EXPECT_NEAR(alpha_normalized(t, z, s, 10).alpha_h, std::exp(-(0.5 - 0.15 + 0.45)), 1e-15);
}

TEST(Sensitivities, OrderingEnforcedUnlessOverridden) {
  EXPECT_NO_THROW(Sensitivities{}.validate());
  Sensitivities bad{.lambda1 = 1, .lambda2 = 100, .lambda3 = 15};
  EXPECT_THROW(bad.validate(), InputError);
  bad.allow_unordered = true;
  EXPECT_NO_THROW(bad.validate());
  EXPECT_THROW((Sensitivities{.sigma = 0}.validate()), InputError);
}
