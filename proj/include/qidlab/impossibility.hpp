#ifndef QIDLAB_IMPOSSIBILITY_HPP
#define QIDLAB_IMPOSSIBILITY_HPP

// Kutlu's function and the three-point law {1, alpha, 1 + alpha}, whose CF
// has no positive modulus floor when alpha is irrational.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qidlab/config.hpp"
#include "qidlab/detail/numeric.hpp"
#include "qidlab/error.hpp"

namespace qidlab {

inline cplx kutlu_phi(double t1, double t2) {
  return (detail::unit(t1) + detail::unit(t2) + detail::unit(t1 + t2)) / 3.0;
}

struct KutluScan {
  double grid_step;
  double min_modulus;
  std::vector<std::pair<double, double>> zero_locations;
};

namespace detail {

/// Newton's method for phi(t1, t2) = 0 as two real equations.
inline std::optional<std::pair<double, double>> kutlu_newton(double t1, double t2) {
  for (int it = 0; it < 60; ++it) {
    const cplx f = kutlu_phi(t1, t2);
    if (std::abs(f) < 1e-15) break;
    const cplx both = unit(t1 + t2);
    const cplx d1 = cplx(0.0, 1.0) * (unit(t1) + both) / 3.0;
    const cplx d2 = cplx(0.0, 1.0) * (unit(t2) + both) / 3.0;
    const double det = d1.real() * d2.imag() - d2.real() * d1.imag();
    if (std::abs(det) < 1e-14) return std::nullopt;
    const double s1 = (-f.real() * d2.imag() + d2.real() * f.imag()) / det;
    const double s2 = (-d1.real() * f.imag() + d1.imag() * f.real()) / det;
    t1 += s1;
    t2 += s2;
  }
  if (std::abs(kutlu_phi(t1, t2)) < 1e-12) return std::pair{t1, t2};
  return std::nullopt;
}

}  // namespace detail

/// Grid scan of |phi| on [-pi, pi]^2; local minima below 0.05 are refined
/// by Newton and kept as zeros when |phi| < 1e-12.
inline KutluScan kutlu_zero_scan(double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::invalid_argument, "step must be positive");
  const double pi = std::numbers::pi;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * pi / step)) + 1;
  const double h = 2.0 * pi / static_cast<double>(n - 1);
  std::vector<double> mod(n * n);
  auto at = [&](std::size_t i) { return -pi + h * static_cast<double>(i); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mod[i * n + j] = std::abs(kutlu_phi(at(i), at(j)));
  KutluScan out{h, *std::min_element(mod.begin(), mod.end()), {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = mod[i * n + j];
      if (v >= 0.05) continue;
      bool local = true;
      for (int di = -1; di <= 1 && local; ++di)
        for (int dj = -1; dj <= 1 && local; ++dj) {
          if (di == 0 && dj == 0) continue;
          const long ii = static_cast<long>(i) + di;
          const long jj = static_cast<long>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<long>(n) || jj >= static_cast<long>(n)) continue;
          if (mod[static_cast<std::size_t>(ii) * n + static_cast<std::size_t>(jj)] < v) local = false;
        }
      if (!local) continue;
      const auto z = detail::kutlu_newton(at(i), at(j));
      if (!z) continue;
      const auto [z1, z2] = *z;
      if (std::abs(z1) > pi + h || std::abs(z2) > pi + h) continue;
      out.min_modulus = std::min(out.min_modulus, std::abs(kutlu_phi(z1, z2)));
      const bool seen = std::any_of(out.zero_locations.begin(), out.zero_locations.end(), [&](const auto& p) {
        return std::abs(p.first - z1) < 1e-6 && std::abs(p.second - z2) < 1e-6;
      });
      if (!seen) out.zero_locations.push_back({z1, z2});
    }
  }
  std::sort(out.zero_locations.begin(), out.zero_locations.end());
  return out;
}

/// alpha as an exact rational p/q or a named irrational.
struct Alpha {
  long double value;
  std::optional<std::pair<long, long>> rational;
  std::string label;

  /// Period of the three-point CF (2 pi q for alpha = p/q); none if irrational.
  std::optional<double> period() const {
    if (!rational) return std::nullopt;
    return 2.0 * std::numbers::pi * static_cast<double>(rational->second);
  }
};

inline Alpha rational_alpha(long p, long q) {
  if (q <= 0 || p <= 0) throw Error(ErrorKind::invalid_argument, "alpha must be a positive rational p/q");
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;
  return {static_cast<long double>(p) / static_cast<long double>(q), std::pair{p, q},
          std::to_string(p) + "/" + std::to_string(q)};
}

/// "p/q", "sqrt2", "golden", "pi", or a decimal literal (read as an exact
/// rational).
inline Alpha parse_alpha(const std::string& spec) {
  if (spec == "sqrt2") return {std::numbers::sqrt2_v<long double>, std::nullopt, spec};
  if (spec == "golden") return {std::numbers::phi_v<long double>, std::nullopt, spec};
  if (spec == "pi") return {std::numbers::pi_v<long double>, std::nullopt, spec};
  const auto slash = spec.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used_p = 0;
      std::size_t used_q = 0;
      const long p = std::stol(spec.substr(0, slash), &used_p);
      const long q = std::stol(spec.substr(slash + 1), &used_q);
      if (used_p != slash || used_q != spec.size() - slash - 1) throw std::invalid_argument(spec);
      return rational_alpha(p, q);
    }
    const auto dot = spec.find('.');
    const std::string digits = dot == std::string::npos ? spec : spec.substr(0, dot) + spec.substr(dot + 1);
    const std::size_t decimals = dot == std::string::npos ? 0 : spec.size() - dot - 1;
    if (digits.empty() || decimals > 15 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument(spec);
    long q = 1;
    for (std::size_t i = 0; i < decimals; ++i) q *= 10;
    return rational_alpha(std::stol(digits), q);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_argument, "unrecognized alpha '" + spec + "'");
  }
}

namespace detail {

inline cplx unit_ld(long double phase) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  return unit(static_cast<double>(std::fmod(phase, two_pi)));
}

}  // namespace detail

/// CF of (delta_1 + delta_alpha + delta_{1+alpha}) / 3; phases are reduced in
/// extended precision.
inline cplx three_point_cf(long double alpha, double t) {
  const long double lt = t;
  const long double at = alpha * lt;
  return (detail::unit_ld(lt) + detail::unit_ld(at) + detail::unit_ld(lt + at)) / 3.0;
}

inline cplx three_point_cf(const Alpha& alpha, double t) { return three_point_cf(alpha.value, t); }

struct InfScanRow {
  double T;
  double min_modulus;
  double argmin_t;
};

struct InfScanReport {
  double alpha;
  std::string alpha_label;
  std::vector<double> window_ladder;
  std::vector<InfScanRow> minima;
};

/// Running minimum of |three_point_cf| over [0, T] for each T of the ladder.
/// Grid points that could hide a smaller value (by the Lipschitz bound) are
/// refined by golden section, so minima never increase along the ladder.
inline InfScanReport inf_scan(const Alpha& alpha, const std::vector<double>& ladder, double step,
                              const Config& cfg = default_config()) {
  if (!(step > 0.0)) throw Error(ErrorKind::invalid_argument, "step must be positive");
  if (ladder.empty()) throw Error(ErrorKind::invalid_argument, "ladder must not be empty");
  for (std::size_t i = 0; i < ladder.size(); ++i)
    if (!(ladder[i] > 0.0) || (i > 0 && !(ladder[i] > ladder[i - 1])))
      throw Error(ErrorKind::invalid_argument, "ladder must be positive and increasing");
  if (!(alpha.value > 0.0L)) throw Error(ErrorKind::invalid_argument, "alpha must be positive");
  auto modulus = [&](double t) { return std::abs(three_point_cf(alpha.value, t)); };
  const double lipschitz = (2.0 + 2.0 * static_cast<double>(alpha.value)) / 3.0;

  InfScanReport out{static_cast<double>(alpha.value), alpha.label, ladder, {}};
  double best = modulus(0.0);
  double arg = 0.0;
  double start = 0.0;
  for (double T : ladder) {
    const double span = T - start;
    const double cells = std::ceil(span / step);
    if (cells + 1.0 > static_cast<double>(cfg.max_scan_points))
      throw Error(ErrorKind::resolution, "inf_scan segment would need more than max_scan_points grid points");
    const auto n = static_cast<std::size_t>(cells);
    const double h = span / cells;
    auto t_at = [&](std::size_t k) { return start + h * static_cast<double>(k); };
    constexpr double none = std::numeric_limits<double>::infinity();
    double left = none;
    double v = modulus(t_at(0));
    for (std::size_t k = 0; k <= n; ++k) {
      const double right = k < n ? modulus(t_at(k + 1)) : none;
      if (v < best) {
        best = v;
        arg = t_at(k);
      }
      if (v <= left && v <= right && v - lipschitz * h < best) {
        const double a = t_at(k == 0 ? 0 : k - 1);
        const double b = t_at(k == n ? n : k + 1);
        const auto [tm, vm] = detail::golden_section_min(modulus, a, b, cfg.refine_tol);
        if (vm < best) {
          best = vm;
          arg = tm;
        }
      }
      left = v;
      v = right;
    }
    out.minima.push_back({T, best, arg});
    start = T;
  }
  return out;
}

inline std::string inf_scan_csv(const InfScanReport& report) {
  std::string out = "T,min_modulus,argmin_t\n";
  char line[128];
  for (const auto& row : report.minima) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", row.T, row.min_modulus, row.argmin_t);
    out += line;
  }
  return out;
}

inline std::string kutlu_scan_csv(const KutluScan& scan) {
  std::string out = "t1,t2,modulus\n";
  char line[128];
  for (const auto& [t1, t2] : scan.zero_locations) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", t1, t2, std::abs(kutlu_phi(t1, t2)));
    out += line;
  }
  return out;
}

}  // namespace qidlab

#endif  // QIDLAB_IMPOSSIBILITY_HPP
