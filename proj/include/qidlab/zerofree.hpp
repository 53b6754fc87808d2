#ifndef QIDLAB_ZEROFREE_HPP
#define QIDLAB_ZEROFREE_HPP

// Choosing delta so that delta e^{it gamma0} + (1 - delta) f0(t) never
// vanishes, and certifying the result.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qidlab/charfn.hpp"
#include "qidlab/config.hpp"
#include "qidlab/dist.hpp"
#include "qidlab/error.hpp"

namespace qidlab {

struct DeltaSelection {
  double delta;
  std::vector<double> bad_deltas;
  ZeroFreeCertificate certificate;
  double gamma0;
  double tau;
};

namespace detail {

inline void require_not_symmetric_about(const Law& f0, double gamma0, const Config& cfg) {
  const auto info = support_info(f0);
  const double c = *info.cext;
  if (std::abs(gamma0 - c) <= cfg.symmetry_tol * std::max(1.0, std::abs(c)) &&
      is_shift_symmetric(f0, cfg.symmetry_tol))
    throw Error(ErrorKind::precondition, "law is shift-symmetric and gamma0 equals its center");
}

/// Scan grid step for one lattice period: fine enough that the Lipschitz
/// slack stays small next to the modulus.
inline double period_step(double half_period, const Config& cfg) {
  return std::min(cfg.scan_step, half_period / 1024.0);
}

/// Scan with step halving until the Lipschitz lower bound turns positive or
/// the grid minimum itself reads as a zero.
template <ComplexFunction F>
ZeroFreeCertificate halving_scan(const F& f, double T, double step, double lipschitz, const Config& cfg) {
  auto cert = min_modulus_scan(f, T, step, true, lipschitz, cfg);
  for (int i = 0; i < cfg.max_step_halvings && !(*cert.lower_bound > 0.0) && cert.min_modulus >= cfg.zero_verdict;
       ++i) {
    step /= 2.0;
    if (2.0 * std::ceil(T / step) + 1.0 > static_cast<double>(cfg.max_scan_points)) break;
    cert = min_modulus_scan(f, T, step, true, lipschitz, cfg);
  }
  return cert;
}

/// Lower bound on inf |c_d f_d| over R: exact for one atom, a one-period scan
/// for lattices, a windowed scan otherwise (flagged).
inline ZeroFreeCertificate discrete_floor(const Law& f, const Config& cfg) {
  const auto& d = *f.discrete_part();
  const double w = f.discrete_weight();
  const Law dl = Law::discrete(d);
  const CharFn fd(dl);
  if (d.size() == 1) return {std::numbers::pi, std::numbers::pi, w, 0.0, std::nullopt, 0.0, w, false};
  auto weighted = [&](double t) { return w * fd(t); };
  const auto lattice = detect_lattice(d, cfg);
  if (lattice) {
    const double half = std::numbers::pi / lattice->span;
    return halving_scan(weighted, half, period_step(half, cfg), w * fd.lipschitz(), cfg);
  }
  auto cert = halving_scan(weighted, cfg.scan_window, cfg.scan_step, w * fd.lipschitz(), cfg);
  cert.resolution_limited = true;
  return cert;
}

}  // namespace detail

/// Certificate over an explicit window.
inline ZeroFreeCertificate certify_window(const Law& f, double T, double step, const Config& cfg = default_config()) {
  const CharFn cf(f);
  auto cert = min_modulus_scan(cf, T, step, true, cf.lipschitz(), cfg);
  cert.resolution_limited = true;
  return cert;
}

/// Certificate that inf_t |f(t)| > 0 on all of R where an exhaustive window is
/// known: one period for lattice laws; for laws with a density part, the
/// window beyond which the density term is dominated by the discrete floor.
inline ZeroFreeCertificate certify_zero_free(const Law& f, const Config& cfg = default_config()) {
  const CharFn cf(f);
  if (f.is_discrete()) {
    auto cert = detail::discrete_floor(f, cfg);
    return cert;
  }
  if (f.is_absolutely_continuous()) {
    // |f| -> 0, so only a windowed statement is possible
    auto cert = detail::halving_scan(cf, cfg.scan_window, cfg.scan_step, cf.lipschitz(), cfg);
    cert.resolution_limited = true;
    return cert;
  }
  const auto floor = detail::discrete_floor(f, cfg);
  const double m_d = floor.lower_bound.value_or(0.0);
  const double w_a = f.continuous_weight();
  if (!(m_d > 0.0)) {
    auto cert = floor;
    cert.lower_bound = 0.0;
    return cert;
  }
  const double t_star = decay_window(cf, m_d / (2.0 * w_a), cfg);
  const double tail = w_a * cf.density_envelope(t_star);
  double T = std::max(t_star, floor.window_T);
  const double step = std::min(cfg.scan_step, floor.grid_step);
  auto cert = detail::halving_scan(cf, T, step, cf.lipschitz(), cfg);
  cert.tail_bound = tail;
  cert.lower_bound = std::min(*cert.lower_bound, m_d - tail);
  cert.resolution_limited = floor.resolution_limited;
  return cert;
}

/// The deltas delta' = -Re f1 / (1 - Re f1) at roots of Im f1 with Re f1 < 0,
/// where f1(t) = f0(t) e^{-it gamma0}. Sorted and deduplicated.
inline std::vector<double> bad_delta_set(const CharFn& f0, double gamma0, double T, double step,
                                         const Config& cfg = default_config()) {
  detail::require_not_symmetric_about(f0.law(), gamma0, cfg);
  std::vector<double> bad;
  for (double t : imag_zero_scan(f0, gamma0, T, step, cfg)) {
    const double re = (f0(t) * detail::unit(-t * gamma0)).real();
    if (re < 0.0) bad.push_back(-re / (1.0 - re));
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end(),
                        [&](double a, double b) { return std::abs(a - b) <= cfg.delta_separation; }),
            bad.end());
  return bad;
}

/// Window on which bad deltas are enumerated: two lattice periods of the
/// discrete part, widened to the decay window at bad_set_fraction * tau when
/// there is a density part.
inline double bad_set_window(const CharFn& f0, double gamma0, double tau, const Config& cfg = default_config()) {
  const Law& law = f0.law();
  double T = 0.0;
  if (const auto& d = law.discrete_part()) {
    const auto lattice = detect_lattice(*d, cfg);
    if (lattice && lattice->span > 0.0) {
      T = 2.0 * std::numbers::pi / lattice->span;
    } else if (lattice) {
      const double gap = std::abs(lattice->origin - gamma0);
      T = gap > 0.0 ? 2.0 * std::numbers::pi / gap : std::numbers::pi;
    } else {
      T = cfg.scan_window;
    }
  }
  if (law.continuous_part()) T = std::max(T, decay_window(f0, cfg.bad_set_fraction * tau, cfg));
  return std::max(T, 1.0);
}

/// Pick delta in (0, tau) away from the bad set and certify the mixture
/// delta * delta_{gamma0} + (1 - delta) * F0 as zero-free.
inline DeltaSelection select_delta(const Law& f0, double gamma0, double tau, const Config& cfg = default_config()) {
  if (!(tau > 0.0 && tau <= 1.0)) throw Error(ErrorKind::invalid_argument, "tau must lie in (0, 1]");
  detail::require_not_symmetric_about(f0, gamma0, cfg);
  const CharFn cf(f0);
  const double T = bad_set_window(cf, gamma0, tau, cfg);
  const double step = std::min(cfg.scan_step, T / 4096.0);
  const auto bad = bad_delta_set(cf, gamma0, T, step, cfg);

  std::vector<double> cuts{0.0};
  for (double b : bad)
    if (b > 0.0 && b < tau) cuts.push_back(b);
  cuts.push_back(tau);
  std::vector<std::pair<double, double>> gaps;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) gaps.push_back({cuts[i], cuts[i + 1]});
  std::stable_sort(gaps.begin(), gaps.end(),
                   [](const auto& a, const auto& b) { return a.second - a.first > b.second - b.first; });

  const Law atom = Law::point(gamma0);
  std::size_t tried = 0;
  std::string last;
  for (const auto& [lo, hi] : gaps) {
    if (tried++ >= cfg.max_delta_candidates) break;
    if (hi - lo <= 2.0 * cfg.delta_separation) continue;
    const double delta = 0.5 * (lo + hi);
    const auto mixed = mix(delta, atom, f0, cfg);
    auto cert = certify_zero_free(mixed, cfg);
    if (cert.positive()) return {delta, bad, cert, gamma0, tau};
    last = "delta = " + std::to_string(delta) + " gives lower bound " + std::to_string(cert.lower_bound.value_or(0.0));
  }
  throw Error(ErrorKind::unverifiable, "no candidate delta certified (" + last + ")");
}

}  // namespace qidlab

#endif  // QIDLAB_ZEROFREE_HPP
