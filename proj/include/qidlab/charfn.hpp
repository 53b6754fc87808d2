#ifndef QIDLAB_CHARFN_HPP
#define QIDLAB_CHARFN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "qidlab/config.hpp"
#include "qidlab/detail/numeric.hpp"
#include "qidlab/dist.hpp"
#include "qidlab/error.hpp"

namespace qidlab {

/// Characteristic function of a Law. The density part is evaluated in closed
/// form: a piecewise-linear density is a sum of hat functions, so its transform
/// is h sinc^2(th/2) e^{itx0} sum_i p_i e^{itih}.
class CharFn {
 public:
  explicit CharFn(Law law) : law_(std::move(law)) {
    const auto info = support_info(law_);
    center_ = *info.cext;
    lipschitz_ = info.half_width();
    if (const auto& a = law_.continuous_part()) {
      const auto s = a->samples();
      for (std::size_t i = 0; i + 1 < s.size(); ++i) variation_ += std::abs(s[i + 1] - s[i]);
      for (std::size_t k = 0; k < s.size(); ++k) {
        const double left = k > 0 ? s[k - 1] : 0.0;
        const double right = k + 1 < s.size() ? s[k + 1] : 0.0;
        slope_variation_ += std::abs(right - 2.0 * s[k] + left);
      }
      slope_variation_ /= a->step();
    }
  }

  const Law& law() const { return law_; }

  cplx operator()(double t) const {
    cplx out{0.0, 0.0};
    if (law_.discrete_part()) out += law_.discrete_weight() * discrete_part(t);
    if (law_.continuous_part()) out += law_.continuous_weight() * density_part(t);
    return out;
  }

  /// CF of the (unit mass) discrete component.
  cplx discrete_part(double t) const {
    cplx out{0.0, 0.0};
    if (const auto& d = law_.discrete_part())
      for (const auto& a : d->atoms()) out += a.mass * detail::unit(t * a.location);
    return out;
  }

  /// CF of the (unit mass) density component.
  cplx density_part(double t) const {
    const auto& a = law_.continuous_part();
    if (!a) return {0.0, 0.0};
    const double h = a->step();
    const auto s = a->samples();
    const cplx z = detail::unit(t * h);
    cplx acc{0.0, 0.0};
    for (std::size_t i = s.size(); i-- > 0;) acc = acc * z + s[i];
    const double sc = detail::sinc(0.5 * t * h);
    return h * sc * sc * detail::unit(t * a->origin()) * acc;
  }

  /// Lipschitz constant of |f|: half the support width.
  double lipschitz() const { return lipschitz_; }
  double center() const { return center_; }

  /// Rigorous bound on |density_part(t)| from the total variation of p and p'.
  double density_envelope(double t) const {
    const double at = std::abs(t);
    double bound = 1.0;
    if (at > 0.0) bound = std::min({bound, variation_ / at, slope_variation_ / (at * at)});
    return bound;
  }

  double density_variation() const { return variation_; }
  double slope_variation() const { return slope_variation_; }

 private:
  Law law_;
  double center_ = 0.0;
  double lipschitz_ = 0.0;
  double variation_ = 0.0;
  double slope_variation_ = 0.0;
};

struct ZeroFreeCertificate {
  double window_T;
  double grid_step;
  double min_modulus;
  double argmin_t;
  std::optional<double> tail_bound;
  /// Lipschitz constant used for `lower_bound`.
  std::optional<double> lipschitz;
  /// min_modulus minus the worst case between grid points; valid on all of R
  /// when the window is exhaustive (lattice period or decay window).
  std::optional<double> lower_bound;
  /// Set when the window is not known to be exhaustive.
  bool resolution_limited = false;

  bool positive() const { return lower_bound ? *lower_bound > 0.0 : min_modulus > 0.0; }
};

inline const char* verdict(const ZeroFreeCertificate& c, const Config& cfg = default_config()) {
  return c.min_modulus < cfg.zero_verdict ? "zero found" : "zero-free at resolution";
}

/// Scan |f| on the symmetric grid k*T/N, k = -N..N, with N = ceil(T/step).
/// With `refine`, the deepest local minima are polished by golden section.
template <ComplexFunction F>
ZeroFreeCertificate min_modulus_scan(const F& f, double T, double step, bool refine,
                                     std::optional<double> lipschitz = std::nullopt,
                                     const Config& cfg = default_config()) {
  if (!(T > 0.0) || !(step > 0.0)) throw Error(ErrorKind::invalid_argument, "T and step must be positive");
  const double n_half = std::ceil(T / step);
  if (2.0 * n_half + 1.0 > static_cast<double>(cfg.max_scan_points))
    throw Error(ErrorKind::resolution, "scan would need more than max_scan_points grid points");
  const auto N = static_cast<long>(n_half);
  const double h = T / static_cast<double>(N);
  const std::size_t count = static_cast<std::size_t>(2 * N + 1);
  std::vector<double> mod(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = h * static_cast<double>(static_cast<long>(k) - N);
    mod[k] = std::abs(cplx(f(t)));
  }
  const auto it = std::min_element(mod.begin(), mod.end());
  const double grid_min = *it;
  double best = grid_min;
  double arg = h * static_cast<double>(static_cast<long>(it - mod.begin()) - N);
  if (refine) {
    std::vector<std::size_t> minima;
    for (std::size_t k = 0; k < count; ++k) {
      const bool left = k == 0 || mod[k] <= mod[k - 1];
      const bool right = k + 1 == count || mod[k] <= mod[k + 1];
      if (left && right) minima.push_back(k);
    }
    const std::size_t keep = std::min(minima.size(), cfg.refine_candidates);
    std::partial_sort(minima.begin(), minima.begin() + static_cast<long>(keep), minima.end(),
                      [&](std::size_t a, std::size_t b) { return mod[a] < mod[b]; });
    auto modulus = [&](double t) { return std::abs(cplx(f(t))); };
    for (std::size_t m = 0; m < keep; ++m) {
      const double t = h * static_cast<double>(static_cast<long>(minima[m]) - N);
      const double a = std::max(-T, t - h);
      const double b = std::min(T, t + h);
      const auto [ts, v] = detail::golden_section_min(modulus, a, b, cfg.refine_tol);
      if (v < best) {
        best = v;
        arg = ts;
      }
    }
  }
  ZeroFreeCertificate cert{T, h, best, arg, std::nullopt, lipschitz, std::nullopt, false};
  if (lipschitz) cert.lower_bound = std::min(best, std::max(0.0, grid_min - *lipschitz * h / 2.0));
  return cert;
}

/// Smallest T* with sup_{|t| >= T*} |density CF| <= threshold according to the
/// variation envelope.
inline double decay_window(const CharFn& f, double threshold, const Config& cfg = default_config()) {
  if (!f.law().continuous_part()) throw Error(ErrorKind::precondition, "law has no density part");
  if (!(threshold > 0.0)) throw Error(ErrorKind::invalid_argument, "threshold must be positive");
  if (threshold >= 1.0) return 0.0;
  const double t_star =
      std::min(f.density_variation() / threshold, std::sqrt(f.slope_variation() / threshold));
  if (t_star > cfg.decay_t_max)
    throw Error(ErrorKind::resolution, "decay threshold not reached below T_max = " + std::to_string(cfg.decay_t_max));
  return t_star;
}

/// Roots of Im(f0(t) e^{-it gamma0}) in [-T, T]: exact grid zeros and sign
/// changes, each polished by TOMS 748.
inline std::vector<double> imag_zero_scan(const CharFn& f0, double gamma0, double T, double step,
                                          const Config& cfg = default_config()) {
  if (!(T > 0.0) || !(step > 0.0)) throw Error(ErrorKind::invalid_argument, "T and step must be positive");
  const double n_half = std::ceil(T / step);
  if (2.0 * n_half + 1.0 > static_cast<double>(cfg.max_scan_points))
    throw Error(ErrorKind::resolution, "scan would need more than max_scan_points grid points");
  const auto N = static_cast<long>(n_half);
  const double h = T / static_cast<double>(N);
  auto g = [&](double t) { return (f0(t) * detail::unit(-t * gamma0)).imag(); };
  std::vector<double> ts(static_cast<std::size_t>(2 * N + 1));
  std::vector<double> gs(ts.size());
  double peak = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ts[k] = h * static_cast<double>(static_cast<long>(k) - N);
    gs[k] = g(ts[k]);
    peak = std::max(peak, std::abs(gs[k]));
  }
  if (peak <= cfg.identically_zero_tol)
    throw Error(ErrorKind::identically_zero, "Im f1 vanishes on the whole scan grid");
  std::vector<double> roots;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (gs[k] == 0.0) {
      roots.push_back(ts[k]);
      continue;
    }
    if (k + 1 < ts.size() && gs[k + 1] != 0.0 && (gs[k] < 0.0) != (gs[k + 1] < 0.0)) {
      boost::uintmax_t iters = 100;
      const auto tol = [&](double a, double b) { return std::abs(b - a) <= cfg.refine_tol * std::max(1.0, std::abs(a)); };
      const auto r = boost::math::tools::toms748_solve(g, ts[k], ts[k + 1], gs[k], gs[k + 1], tol, iters);
      roots.push_back(0.5 * (r.first + r.second));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
              roots.end());
  return roots;
}

struct LogBranch {
  std::vector<double> grid;
  std::vector<cplx> values;
  double branch_step;
};

namespace detail {

template <ComplexFunction F>
cplx log_increment(const F& f, double a, double b, cplx fa, cplx fb, int depth, const Config& cfg) {
  const cplx d = std::log(fb / fa);
  if (std::abs(d) < std::numbers::pi / 2.0) return d;
  if (depth >= cfg.log_max_depth)
    throw Error(ErrorKind::branch_tracking, "log increment stays >= pi/2 near t = " + std::to_string(a));
  const double m = 0.5 * (a + b);
  const cplx fm = f(m);
  if (std::abs(fm) < cfg.log_floor)
    throw Error(ErrorKind::possible_zero, "|f| below floor at t = " + std::to_string(m));
  return log_increment(f, a, m, fa, fm, depth + 1, cfg) + log_increment(f, m, b, fm, fb, depth + 1, cfg);
}

/// Continuous log along the monotone sequence ts, starting from `start` at ts[0].
template <ComplexFunction F>
std::vector<cplx> track_log(const F& f, const std::vector<double>& ts, cplx start, const Config& cfg) {
  std::vector<cplx> out(ts.size());
  if (ts.empty()) return out;
  out[0] = start;
  cplx prev = f(ts[0]);
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const cplx cur = f(ts[k]);
    if (std::abs(cur) < cfg.log_floor)
      throw Error(ErrorKind::possible_zero, "|f| below floor at t = " + std::to_string(ts[k]));
    out[k] = out[k - 1] + log_increment(f, ts[k - 1], ts[k], prev, cur, 0, cfg);
    prev = cur;
  }
  return out;
}

}  // namespace detail

/// Distinguished logarithm on the grid k*T/N over [-T, T], with log f(0) = 0.
template <ComplexFunction F>
LogBranch distinguished_log(const F& f, double T, double step, const Config& cfg = default_config()) {
  const auto scan = min_modulus_scan(f, T, step, true, std::nullopt, cfg);
  if (scan.min_modulus < cfg.log_floor)
    throw Error(ErrorKind::possible_zero,
                "|f| = " + std::to_string(scan.min_modulus) + " at t = " + std::to_string(scan.argmin_t));
  const double h = scan.grid_step;
  const auto N = static_cast<long>(std::llround(T / h));
  std::vector<double> forward;
  std::vector<double> backward;
  for (long k = 0; k <= N; ++k) {
    forward.push_back(h * static_cast<double>(k));
    backward.push_back(-h * static_cast<double>(k));
  }
  const cplx start = std::log(cplx(f(0.0)));
  const auto up = detail::track_log(f, forward, start, cfg);
  const auto down = detail::track_log(f, backward, start, cfg);
  LogBranch out{{}, {}, h};
  for (long k = N; k >= 1; --k) {
    out.grid.push_back(backward[static_cast<std::size_t>(k)]);
    out.values.push_back(down[static_cast<std::size_t>(k)]);
  }
  for (long k = 0; k <= N; ++k) {
    out.grid.push_back(forward[static_cast<std::size_t>(k)]);
    out.values.push_back(up[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace qidlab

#endif  // QIDLAB_CHARFN_HPP
