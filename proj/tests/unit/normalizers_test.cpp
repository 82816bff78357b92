#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "heatmc/normalizers.hpp"
#include "support.hpp"

using namespace heatmc;

namespace {

NormalizerConfig config_for(Scheme s, const nlohmann::json& fx) {
  NormalizerConfig c;
  c.scheme = s;
  c.w0 = fx["w0"];
  c.w = fx["w"];
  c.cutoff = fx["cutoff"];
  c.eps = fx["eps"];
  return c;
}

NormalizerState seeded_with(const DiffTerms& t, double alpha_h, const NormalizerConfig& cfg) {
  return update({}, alpha_h, t, true, alpha_h, cfg);
}

void expect_close(double got, double want, const char* what, int row) {
  EXPECT_NEAR(got, want, 1e-13 * std::max(1.0, std::abs(want))) << what << " at step " << row;
}

}  // namespace

TEST(Scheme, ParseAndName) {
  for (auto s : {Scheme::none, Scheme::z1, Scheme::z2, Scheme::hybrid})
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  try {
    parse_scheme("z3");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("none, z1, z2, hybrid"), std::string::npos);
  }
}

TEST(NormalizerConfig, Validation) {
  EXPECT_NO_THROW(NormalizerConfig{}.validate());
  EXPECT_THROW((NormalizerConfig{.w0 = 1.5}.validate()), InputError);
  EXPECT_THROW((NormalizerConfig{.w = -0.1}.validate()), InputError);
  EXPECT_THROW((NormalizerConfig{.cutoff = 0}.validate()), InputError);
  EXPECT_THROW((NormalizerConfig{.zeta = -1}.validate()), InputError);
  EXPECT_THROW((NormalizerConfig{.eps = 0}.validate()), InputError);
}

TEST(NormalizerConfig, RestrictedDefaultsPerScheme) {
  EXPECT_TRUE(NormalizerConfig{.scheme = Scheme::z1}.restricted());
  EXPECT_FALSE(NormalizerConfig{.scheme = Scheme::z2}.restricted());
  EXPECT_FALSE(NormalizerConfig{.scheme = Scheme::hybrid}.restricted());
  EXPECT_TRUE((NormalizerConfig{.scheme = Scheme::z2, .restricted_interval = true}.restricted()));
}

TEST(ZTerms, UnseededOrNoneIsIdentity) {
  const DiffTerms t{1, 2, 3};
  const auto a = z_terms({}, t, {}, {.scheme = Scheme::z2});
  EXPECT_EQ(a.z0, 1.0);
  EXPECT_EQ(a.z, (std::array<double, 3>{1, 1, 1}));
  const NormalizerConfig none{.scheme = Scheme::none};
  const auto b = z_terms(seeded_with(t, 0.3, none), t, {}, none);
  EXPECT_EQ(b.z0, 1.0);
}

TEST(ZTerms, ZTwoBlendsPreviousMagnitude) {
  const NormalizerConfig cfg{.scheme = Scheme::z2, .w = 0.75};
  const auto st = seeded_with({4, 1, 1}, 0.5, cfg);
  EXPECT_EQ(z_terms(st, {2, 1, 1}, {}, cfg).z[0], 0.4375);
}

TEST(ZTerms, UnitInertiaUsesOnlyCurrentMagnitude) {
  const NormalizerConfig cfg{.scheme = Scheme::z2, .w = 1.0};
  const DiffTerms t{-3.0, 0.02, 8.0};
  const auto out = z_terms(seeded_with({5, 5, 5}, 0.5, cfg), t, {}, cfg);
  const auto d = t.as_array();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(out.z[i] * d[i], d[i] > 0 ? 1.0 : -1.0);
}

TEST(ZTerms, ZeroTermHitsFloorNotInfinity) {
  const NormalizerConfig cfg{.scheme = Scheme::z2};
  const auto out = z_terms(seeded_with({1, 1, 0}, 0.5, cfg), {1, 1, 0}, {}, cfg);
  for (double z : out.z) EXPECT_TRUE(std::isfinite(z));
  EXPECT_TRUE(std::isfinite(out.z0));
}

TEST(Update, RunningMaxOfAlphaH) {
  const NormalizerConfig cfg{.scheme = Scheme::z1};
  auto st = update({}, 0.5, {1, 1, 1}, true, 0.5, cfg);
  st = update(st, 0.8, {1, 1, 1}, true, 0.8, cfg);
  EXPECT_EQ(st.alpha_h_max, 0.8);
  EXPECT_EQ(st.alpha_h_prev, 0.8);
}

TEST(Update, HybridRejectionKeepsLastAccepted) {
  const NormalizerConfig cfg{.scheme = Scheme::hybrid};
  auto st = update({}, 0.5, {1, 2, 3}, true, 0.5, cfg);
  const auto before = st.d_last_accepted;
  st = update(st, 0.4, {7, 8, 9}, false, 0.4, cfg);
  EXPECT_EQ(st.d_last_accepted, before);
  EXPECT_EQ(st.d_prev, (std::array<double, 3>{7, 8, 9}));
}

TEST(Update, StoredMagnitudesAreFloored) {
  const NormalizerConfig cfg{.scheme = Scheme::z2, .eps = 1e-12};
  const auto st = update({}, 0.5, {0, -0.0, 0}, true, 0.5, cfg);
  for (double v : st.d_prev) EXPECT_EQ(v, 1e-12);
}

TEST(Update, PureFoldMatchesReplay) {
  // Same random sequence folded twice, once through a copy chain: identical results.
  std::mt19937_64 gen(31);
  std::normal_distribution<double> dist(0, 3);
  std::uniform_real_distribution<double> ah(0.01, 2.0);
  for (auto scheme : {Scheme::z1, Scheme::z2, Scheme::hybrid}) {
    const NormalizerConfig cfg{.scheme = scheme};
    std::vector<std::tuple<double, DiffTerms, bool>> seq;
    for (int k = 0; k < 200; ++k) seq.emplace_back(ah(gen), DiffTerms{dist(gen), dist(gen), dist(gen)}, k % 3 == 0);
    NormalizerState a, b;
    std::vector<NormalizerState> snapshots;
    for (auto& [h, t, acc] : seq) {
      a = update(a, h, t, acc, h, cfg);
      snapshots.push_back(a);
    }
    for (std::size_t k = 0; k < seq.size(); ++k) {
      auto& [h, t, acc] = seq[k];
      b = update(b, h, t, acc, h, cfg);
      ASSERT_EQ(b, snapshots[k]);
    }
    // Hand fold of the simplest fields.
    double hmax = std::get<0>(seq[0]);
    for (auto& [h, t, acc] : seq) hmax = std::max(hmax, h);
    EXPECT_EQ(a.alpha_h_max, hmax);
    EXPECT_EQ(a.alpha_h_prev, std::get<0>(seq.back()));
  }
}

TEST(ZOne, BoundIdentity) {
  const NormalizerConfig cfg{.scheme = Scheme::z1, .w0 = 0.1};
  const Sensitivities s;
  std::mt19937_64 gen(32);
  std::normal_distribution<double> dist(0, 2);
  NormalizerState st;
  for (int k = 0; k < 5000; ++k) {
    const DiffTerms t{dist(gen), dist(gen), dist(gen)};
    const auto z = z_terms(st, t, s, cfg);
    const auto r = alpha_normalized(t, z, s, 1e300);
    if (st.seeded) {
      const double v = z.z0 * r.alpha_h;
      ASSERT_GE(v, cfg.w0 - 1e-9);
      ASSERT_LE(v, 1.0 + 1e-9);
    }
    st = update(st, r.alpha_h, t, true, r.alpha, cfg);
  }
}

TEST(ScriptedTrace, MatchesArithmeticOracle) {
  const auto fx = heatmc::testing::read_json(heatmc::testing::fixture("normalizer_trace.json"));
  const auto lam = fx["lambda"].get<std::vector<double>>();
  const Sensitivities s{.lambda1 = lam[0], .lambda2 = lam[1], .lambda3 = lam[2]};
  for (auto scheme : {Scheme::z1, Scheme::z2, Scheme::hybrid}) {
    SCOPED_TRACE(to_string(scheme));
    const auto cfg = config_for(scheme, fx);
    NormalizerState st;
    int row = 0;
    for (const auto& step : fx["schemes"][to_string(scheme)]) {
      const auto d = step["d"].get<std::vector<double>>();
      const DiffTerms t{d[0], d[1], d[2]};
      const auto z = z_terms(st, t, s, cfg);
      const auto r = alpha_normalized(t, z, s, cfg.cutoff);
      const auto zw = step["z"].get<std::vector<double>>();
      for (std::size_t i = 0; i < 3; ++i) expect_close(z.z[i], zw[i], "z_i", row);
      expect_close(z.z0, step["z0"], "z0", row);
      expect_close(r.alpha_h, step["alpha_h"], "alpha_h", row);
      expect_close(r.alpha, step["alpha"], "alpha", row);
      st = update(st, r.alpha_h, t, step["accepted"], r.alpha, cfg);
      const auto& m = step["state"];
      const auto dprev = m["dprev"].get<std::vector<double>>();
      const auto dmax = m["dmax"].get<std::vector<double>>();
      const auto dacc = m["dacc"].get<std::vector<double>>();
      for (std::size_t i = 0; i < 3; ++i) {
        expect_close(st.d_prev[i], dprev[i], "d_prev", row);
        expect_close(st.d_max[i], dmax[i], "d_max", row);
        expect_close(st.d_last_accepted[i], dacc[i], "d_last_accepted", row);
      }
      expect_close(st.alpha_h_prev, m["ahprev"], "alpha_h_prev", row);
      expect_close(st.alpha_h_max, m["ahmax"], "alpha_h_max", row);
      expect_close(st.alpha_history_min, m["amin"], "alpha_min", row);
      expect_close(st.alpha_history_max, m["amax"], "alpha_max", row);
      ++row;
    }
    EXPECT_GE(row, 3);
  }
}

TEST(RestrictedBounds, Definitions) {
  const NormalizerConfig cfg{.scheme = Scheme::z1, .zeta = 0.01};
  EXPECT_EQ(restricted_bounds({}, cfg), (std::pair{0.0, 1.0}));
  auto st = update({}, 0.6, {1, 1, 1}, true, 0.6, cfg);
  st = update(st, 0.75, {1, 1, 1}, true, 0.75, cfg);
  const auto [lo, hi] = restricted_bounds(st, cfg);
  EXPECT_DOUBLE_EQ(lo, 0.59);
  EXPECT_DOUBLE_EQ(hi, 0.76);
}

TEST(RestrictedBounds, CollapsedIntervalIsWidenedByEps) {
  const NormalizerConfig cfg{.scheme = Scheme::z1, .zeta = 0.0, .eps = 1e-12};
  const double c = 0.625;
  auto st = update({}, c, {1, 1, 1}, true, c, cfg);
  st = update(st, c, {1, 1, 1}, true, c, cfg);
  const auto [lo, hi] = restricted_bounds(st, cfg);
  EXPECT_EQ(lo, c - 1e-12);
  EXPECT_EQ(hi, c + 1e-12);
  EXPECT_LT(lo, hi);
}
