#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "laws.hpp"
#include "qidlab/spectral.hpp"

using namespace qidlab;
using namespace qidlab::testing;

namespace {

double lambda_at(const SpectralPair& p, long k) {
  for (const auto& [j, l] : p.signed_atoms)
    if (j == k) return l;
  return 0.0;
}

std::vector<double> grid(double T, std::size_t n) {
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g[i] = -T + 2.0 * T * static_cast<double>(i) / static_cast<double>(n);
  return g;
}

}  // namespace

TEST(SpectralPair, Degenerate) {
  const auto p = lattice_spectral_pair(Law::point(2.5), 16);
  EXPECT_EQ(p.drift_gamma, 2.5);
  EXPECT_TRUE(p.signed_atoms.empty());
  const auto rc = reconstruct_cf(p);
  EXPECT_NEAR(std::abs(rc(1.3) - std::exp(cplx(0.0, 2.5 * 1.3))), 0.0, 1e-15);
}

TEST(SpectralPair, Poisson) {
  const auto p = lattice_spectral_pair(poisson(0.7), 32);
  ASSERT_EQ(p.signed_atoms.size(), 1u);
  EXPECT_EQ(p.signed_atoms[0].first, 1);
  EXPECT_NEAR(p.signed_atoms[0].second, 0.7, 1e-9);
  EXPECT_NEAR(p.drift_gamma, 0.0, 1e-12);
  EXPECT_LT(p.residual, 1e-8);
}

TEST(SpectralPair, TwoAtomSeries) {
  const auto p = lattice_spectral_pair(two_atom(), 20);
  for (long k = 1; k <= 5; ++k)
    EXPECT_NEAR(lambda_at(p, k), (k % 2 ? 1.0 : -1.0) / (static_cast<double>(k) * std::ldexp(1.0, static_cast<int>(k))),
                1e-8);
  for (long k = -20; k <= 0; ++k) EXPECT_EQ(lambda_at(p, k), 0.0);
  EXPECT_LT(p.residual, 1e-5);
  EXPECT_EQ(p.drift_gamma, 0.0);
}

TEST(SpectralPair, TruncationControlsRoundTrip) {
  const auto f = two_atom();
  const auto g = grid(10.0, 2000);
  double previous = 1.0;
  for (int K : {2, 5, 10, 20}) {
    const auto p = lattice_spectral_pair(f, K);
    const double err = pair_roundtrip_error(f, p, g);
    EXPECT_LT(err, previous);
    EXPECT_NEAR(err, p.residual, 1e-3);
    previous = err;
  }
  EXPECT_LT(previous, std::ldexp(1.0, -20));
}

TEST(SpectralPair, ShiftedLatticeMovesDrift) {
  const auto base = lattice_spectral_pair(two_atom(), 12);
  const auto shifted = lattice_spectral_pair(atoms({{5.0, 2.0 / 3.0}, {6.0, 1.0 / 3.0}}), 12);
  EXPECT_NEAR(shifted.drift_gamma, 5.0, 1e-12);
  ASSERT_EQ(base.signed_atoms.size(), shifted.signed_atoms.size());
  for (std::size_t i = 0; i < base.signed_atoms.size(); ++i)
    EXPECT_NEAR(base.signed_atoms[i].second, shifted.signed_atoms[i].second, 1e-12);
}

TEST(SpectralPair, WindingSetsDrift) {
  // f(t) = e^{it} (2/3 + 1/3 e^{-it}): the log winds once per period
  const auto p = lattice_spectral_pair(atoms({{0.0, 1.0 / 3.0}, {1.0, 2.0 / 3.0}}), 20);
  EXPECT_NEAR(p.drift_gamma, 1.0, 1e-12);
  EXPECT_NEAR(lambda_at(p, -1), 0.5, 1e-8);
  EXPECT_LT(p.residual, 1e-5);
}

TEST(SpectralPair, AdditiveUnderConvolution) {
  const auto a = two_atom();
  const auto b = poisson(0.4, 30);
  const auto pa = lattice_spectral_pair(a, 24);
  const auto pb = lattice_spectral_pair(b, 24);
  const auto pab = lattice_spectral_pair(convolve(a, b), 24);
  EXPECT_NEAR(pab.drift_gamma, pa.drift_gamma + pb.drift_gamma, 1e-12);
  for (long k = 1; k <= 8; ++k) EXPECT_NEAR(lambda_at(pab, k), lambda_at(pa, k) + lambda_at(pb, k), 1e-8);
}

TEST(SpectralPair, CompoundPoissonIsNonNegative) {
  const auto p = lattice_spectral_pair(convolve(poisson(0.5, 30), shift_scale(poisson(0.3, 30), 0.0, 2.0)), 16);
  for (const auto& [k, l] : p.signed_atoms) EXPECT_GT(l, -1e-10) << k;
  EXPECT_NEAR(lambda_at(p, 1), 0.5, 1e-8);
  EXPECT_NEAR(lambda_at(p, 2), 0.3, 1e-8);
}

TEST(SpectralPair, ZeroOnPathIsNotExtractable) {
  EXPECT_QIDLAB_ERROR(lattice_spectral_pair(fair_bernoulli(), 16), ErrorKind::not_extractable);
  EXPECT_QIDLAB_ERROR(lattice_spectral_pair(atoms({{0.0, 0.25}, {1.0, 0.5}, {2.0, 0.25}}), 16),
                      ErrorKind::not_extractable);
}

TEST(SpectralPair, RejectsBadInput) {
  EXPECT_QIDLAB_ERROR(lattice_spectral_pair(uniform(), 16), ErrorKind::precondition);
  EXPECT_QIDLAB_ERROR(lattice_spectral_pair(two_atom(), -1), ErrorKind::invalid_argument);
  EXPECT_QIDLAB_ERROR(lattice_spectral_pair(atoms({{0.0, 0.5}, {1.0, 0.25}, {std::sqrt(2.0), 0.25}}), 8), ErrorKind::precondition);
}

TEST(SpectralPair, ReconstructAtZeroIsOne) {
  const auto p = lattice_spectral_pair(skewed_pair(), 30);
  EXPECT_NEAR(std::abs(reconstruct_cf(p)(0.0) - 1.0), 0.0, 1e-15);
}

TEST(LevyKhinchine, SinCentering) {
  const auto p = lattice_spectral_pair(poisson(0.7), 8);
  const auto lk = to_levy_khinchine(p);
  ASSERT_EQ(lk.jumps.size(), 1u);
  EXPECT_NEAR(lk.gamma, 0.7 * std::sin(1.0), 1e-9);
  EXPECT_NEAR(lk.jumps[0].first, 1.0, 1e-15);
  EXPECT_NEAR(lk.jumps[0].second, 0.35, 1e-9);
  // log f(t) = i gamma t + int (e^{itx} - 1 - it sin x) (1 + x^2)/x^2 dG(x)
  const double t = 0.9;
  cplx exponent{0.0, lk.gamma * t};
  for (const auto& [x, jump] : lk.jumps)
    exponent += (std::exp(cplx(0.0, t * x)) - 1.0 - cplx(0.0, t * std::sin(x))) * (1.0 + x * x) / (x * x) * jump;
  EXPECT_NEAR(std::abs(std::exp(exponent) - reconstruct_cf(p)(t)), 0.0, 1e-12);
}
