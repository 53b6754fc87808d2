#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "laws.hpp"
#include "qidlab/zerofree.hpp"

using namespace qidlab;
using namespace qidlab::testing;

TEST(BadDeltaSet, FairBernoulliAtZeroIsEmpty) {
  // f1 = (1 + e^{it}) / 2 has Re f1 >= 0 wherever Im f1 = 0
  const CharFn cf(fair_bernoulli());
  EXPECT_TRUE(bad_delta_set(cf, 0.0, 4.0 * std::numbers::pi, 0.01).empty());
}

TEST(BadDeltaSet, SkewedPairHasOneBadDelta) {
  const CharFn cf(skewed_pair());
  const auto bad = bad_delta_set(cf, 0.0, 4.0 * std::numbers::pi, 0.01);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_NEAR(bad[0], 0.375, 1e-10);
}

TEST(BadDeltaSet, ValuesLieInUnitInterval) {
  const CharFn cf(mix(0.6, atoms({{0.0, 0.1}, {1.0, 0.3}, {3.0, 0.6}}), truncated_normal(256)));
  for (double d : bad_delta_set(cf, 0.0, 40.0, 0.01)) {
    EXPECT_GT(d, 0.0);
    EXPECT_LT(d, 1.0);
  }
}

TEST(BadDeltaSet, SymmetricAboutCenterIsRejected) {
  EXPECT_QIDLAB_ERROR(bad_delta_set(CharFn(fair_bernoulli()), 0.5, 4.0, 0.01), ErrorKind::precondition);
  EXPECT_QIDLAB_ERROR(select_delta(truncated_normal(256), 0.0, 0.5), ErrorKind::precondition);
}

TEST(SelectDelta, AvoidsBadSet) {
  const auto sel = select_delta(skewed_pair(), 0.0, 1.0);
  ASSERT_EQ(sel.bad_deltas.size(), 1u);
  EXPECT_GT(std::abs(sel.delta - 0.375), 1e-3);
  EXPECT_GT(sel.delta, 0.0);
  EXPECT_LT(sel.delta, 1.0);
  EXPECT_TRUE(sel.certificate.positive());
}

TEST(SelectDelta, FairBernoulli) {
  const auto sel = select_delta(fair_bernoulli(), 0.0, 0.1);
  EXPECT_GT(sel.delta, 0.0);
  EXPECT_LT(sel.delta, 0.1);
  // |delta + (1 - delta)(1 + e^{it})/2| is smallest at t = pi
  EXPECT_NEAR(sel.certificate.min_modulus, sel.delta, 1e-10);
  EXPECT_GT(*sel.certificate.lower_bound, 0.0);
}

TEST(SelectDelta, ModulusAtImaginaryRootsStaysAboveDelta) {
  const auto f0 = skewed_pair();
  const auto sel = select_delta(f0, 0.0, 1.0);
  const CharFn cf0(f0);
  const CharFn mixed(mix(sel.delta, Law::point(0.0), f0));
  for (double t : imag_zero_scan(cf0, 0.0, 10.0, 0.01)) {
    if (cf0(t).real() >= 0.0) {
      EXPECT_GE(std::abs(mixed(t)), sel.delta - 1e-12);
    }
  }
}

TEST(SelectDelta, RejectsBadTau) {
  EXPECT_QIDLAB_ERROR(select_delta(skewed_pair(), 0.0, 0.0), ErrorKind::invalid_argument);
  EXPECT_QIDLAB_ERROR(select_delta(skewed_pair(), 0.0, 1.5), ErrorKind::invalid_argument);
}

TEST(MixingIdentity, CfOfMixture) {
  const auto f0 = mix(0.5, two_atom(), uniform(256));
  const double delta = 0.0731;
  const double gamma = -0.25;
  const CharFn mixed(mix(delta, Law::point(gamma), f0));
  const CharFn cf0(f0);
  for (double t = -20.0; t <= 20.0; t += 0.113) {
    const cplx expected = delta * std::exp(cplx(0.0, t * gamma)) + (1.0 - delta) * cf0(t);
    EXPECT_NEAR(std::abs(mixed(t) - expected), 0.0, 1e-14);
  }
}

TEST(CertifyZeroFree, Discrete) {
  const auto single = certify_zero_free(Law::point(3.0));
  EXPECT_EQ(*single.lower_bound, 1.0);
  const auto two = certify_zero_free(two_atom());
  EXPECT_NEAR(two.min_modulus, 1.0 / 3.0, 1e-12);
  EXPECT_GT(*two.lower_bound, 0.3);
  EXPECT_FALSE(two.resolution_limited);
  const auto fair = certify_zero_free(fair_bernoulli());
  EXPECT_FALSE(fair.positive());
  EXPECT_STREQ(verdict(fair), "zero found");
  const auto irrational = certify_zero_free(atoms({{0.0, 0.5}, {1.0, 0.3}, {std::sqrt(2.0), 0.2}}));
  EXPECT_TRUE(irrational.resolution_limited);
}

TEST(CertifyZeroFree, PureDensityIsWindowOnly) {
  const auto c = certify_zero_free(uniform(256));
  EXPECT_TRUE(c.resolution_limited);
  EXPECT_EQ(c.window_T, default_config().scan_window);
}

TEST(CertifyZeroFree, MixtureUsesTailBound) {
  const auto f = mix(0.5, Law::point(0.0), uniform(256));
  const auto c = certify_zero_free(f);
  ASSERT_TRUE(c.tail_bound);
  EXPECT_LE(*c.tail_bound, 0.25 + 1e-12);
  EXPECT_TRUE(c.positive());
  EXPECT_LE(*c.lower_bound, c.min_modulus);
  EXPECT_FALSE(c.resolution_limited);
}

TEST(CertifyZeroFree, MixtureWithZeroInDiscretePart) {
  const auto f = mix(0.5, fair_bernoulli(), uniform(256));
  EXPECT_FALSE(certify_zero_free(f).positive());
}

TEST(BadSetWindow, LatticeAndDensity) {
  EXPECT_NEAR(bad_set_window(CharFn(skewed_pair()), 0.0, 1.0), 2.0 * std::numbers::pi, 1e-12);
  const CharFn mixed(mix(0.5, skewed_pair(), uniform(256)));
  EXPECT_GE(bad_set_window(mixed, 0.0, 0.1), decay_window(mixed, 0.0125));
}
