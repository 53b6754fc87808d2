#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "laws.hpp"
#include "qidlab/impossibility.hpp"
#include "qidlab/pipelines.hpp"

using namespace qidlab;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST(KutluPhi, Examples) {
  EXPECT_NEAR(std::abs(kutlu_phi(0.0, 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_LT(std::abs(kutlu_phi(2.0 * pi / 3.0, -2.0 * pi / 3.0)), 1e-15);
  EXPECT_NEAR(std::abs(kutlu_phi(pi, 0.0) - (-1.0 / 3.0)), 0.0, 1e-15);
}

TEST(KutluScan, FindsAlgebraicZeros) {
  const auto scan = kutlu_zero_scan(0.01);
  EXPECT_LT(scan.min_modulus, 1e-9);
  ASSERT_EQ(scan.zero_locations.size(), 2u);
  const double z = 2.0 * pi / 3.0;
  EXPECT_NEAR(scan.zero_locations[0].first, -z, 1e-6);
  EXPECT_NEAR(scan.zero_locations[0].second, z, 1e-6);
  EXPECT_NEAR(scan.zero_locations[1].first, z, 1e-6);
  EXPECT_NEAR(scan.zero_locations[1].second, -z, 1e-6);
  for (const auto& [t1, t2] : scan.zero_locations) EXPECT_LT(std::abs(kutlu_phi(t1, t2)), 1e-9);
}

TEST(KutluScan, ZeroSetSymmetries) {
  const auto scan = kutlu_zero_scan(0.02);
  auto contains = [&](double a, double b) {
    for (const auto& [t1, t2] : scan.zero_locations)
      if (std::abs(t1 - a) < 1e-6 && std::abs(t2 - b) < 1e-6) return true;
    return false;
  };
  for (const auto& [t1, t2] : scan.zero_locations) {
    EXPECT_TRUE(contains(t2, t1));
    EXPECT_TRUE(contains(-t1, -t2));
  }
}

TEST(KutluScan, RejectsBadStep) { EXPECT_QIDLAB_ERROR(kutlu_zero_scan(0.0), ErrorKind::invalid_argument); }

TEST(ThreePoint, Relations) {
  EXPECT_NEAR(std::abs(three_point_cf(std::numbers::sqrt2_v<long double>, 0.0) - 1.0), 0.0, 1e-15);
  for (double t : {0.3, 1.7, 12.0, 333.3}) {
    const double alpha = std::numbers::sqrt2;
    EXPECT_NEAR(std::abs(three_point_cf(alpha, t) - kutlu_phi(t, alpha * t)), 0.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(three_point_cf(1.0L, pi)), 1.0 / 3.0, 1e-15);
}

TEST(Alpha, Parsing) {
  EXPECT_EQ(parse_alpha("3/2").rational, (std::pair<long, long>{3, 2}));
  EXPECT_EQ(parse_alpha("6/4").rational, (std::pair<long, long>{3, 2}));
  EXPECT_EQ(parse_alpha("1.5").rational, (std::pair<long, long>{3, 2}));
  EXPECT_FALSE(parse_alpha("sqrt2").rational);
  EXPECT_NEAR(*parse_alpha("3/2").period(), 4.0 * pi, 1e-15);
  EXPECT_FALSE(parse_alpha("golden").period());
  EXPECT_QIDLAB_ERROR(parse_alpha("abc"), ErrorKind::invalid_argument);
  EXPECT_QIDLAB_ERROR(parse_alpha("-1/2"), ErrorKind::invalid_argument);
  EXPECT_QIDLAB_ERROR(parse_alpha("1/0"), ErrorKind::invalid_argument);
}

TEST(InfScan, NonIncreasing) {
  for (const char* spec : {"sqrt2", "golden", "pi", "3/2", "7/5"}) {
    const auto r = inf_scan(parse_alpha(spec), {10.0, 50.0, 100.0, 500.0}, 0.01);
    for (std::size_t i = 1; i < r.minima.size(); ++i) EXPECT_LE(r.minima[i].min_modulus, r.minima[i - 1].min_modulus);
  }
}

TEST(InfScan, SqrtTwoMatchesOracle) {
  const auto r = inf_scan(parse_alpha("sqrt2"), {1e2, 1e3}, 0.01);
  EXPECT_NEAR(r.minima[0].min_modulus, 0.00830065226082, 1e-10);
  EXPECT_NEAR(r.minima[0].argmin_t, 85.8912097431, 1e-6);
  EXPECT_NEAR(r.minima[1].min_modulus, 0.00100474662688, 1e-10);
}

TEST(InfScan, GoldenAndPiMatchOracle) {
  const auto golden = inf_scan(parse_alpha("golden"), {1e2, 1e3}, 0.01);
  EXPECT_NEAR(golden.minima[0].min_modulus, 0.0202557199757, 1e-10);
  EXPECT_NEAR(golden.minima[1].min_modulus, 0.000507188510864, 1e-10);
  const auto p = inf_scan(parse_alpha("pi"), {1e2, 1e3}, 0.01);
  EXPECT_NEAR(p.minima[0].min_modulus, 0.0232346971798, 1e-10);
  EXPECT_NEAR(p.minima[1].min_modulus, 6.55600456496e-06, 1e-10);
}

TEST(InfScan, RationalFloorAfterOnePeriod) {
  const auto alpha = parse_alpha("3/2");
  const auto r = inf_scan(alpha, {*alpha.period(), 100.0, 1000.0}, 0.01);
  for (const auto& row : r.minima) EXPECT_NEAR(row.min_modulus, 0.202448811241838, 1e-10);
}

TEST(InfScan, RejectsBadLadder) {
  EXPECT_QIDLAB_ERROR(inf_scan(parse_alpha("sqrt2"), {100.0, 10.0}, 0.01), ErrorKind::invalid_argument);
  EXPECT_QIDLAB_ERROR(inf_scan(parse_alpha("sqrt2"), {}, 0.01), ErrorKind::invalid_argument);
  EXPECT_QIDLAB_ERROR(inf_scan(parse_alpha("sqrt2"), {10.0}, 0.0), ErrorKind::invalid_argument);
}

TEST(InfScan, ContrastWithLatticeApproximant) {
  // a lattice approximant has a positive uniform floor; the three-point law does not
  const auto three = qidlab::testing::atoms({{1.0, 1.0 / 3.0}, {2.0, 1.0 / 3.0}, {3.0, 1.0 / 3.0}});
  const auto r = approximate_lattice(three, 0.05);
  EXPECT_TRUE(r.certificate.positive());
  const auto scan = inf_scan(parse_alpha("sqrt2"), {1e2, 1e3, 1e4}, 0.01);
  EXPECT_LT(scan.minima.back().min_modulus, *r.certificate.lower_bound);
}

TEST(InfScan, Csv) {
  const auto csv = inf_scan_csv(inf_scan(parse_alpha("3/2"), {20.0, 40.0}, 0.01));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "T,min_modulus,argmin_t");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}
