#ifndef QIDLAB_PIPELINES_HPP
#define QIDLAB_PIPELINES_HPP

// Constructive approximation by rational-infinitely divisible laws:
// absolutely continuous targets (smoothing with a continuous Bernoulli
// kernel), lattice targets, and lattice + density mixtures.

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
#include "qidlab/zerofree.hpp"

namespace qidlab {

struct ApproxParams {
  std::optional<double> r_eps;
  std::optional<double> c_eps;
  std::optional<double> gamma_eps;
  std::optional<double> delta_eps;
  std::optional<double> tau_eps;
  std::optional<double> q;
  std::optional<Side> side;
  std::optional<long> K1;
  std::optional<long> K2;
  std::optional<double> q1_eps;
  std::optional<double> q2_eps;
  std::optional<double> r_hat;
  std::optional<double> c_hat;
  std::optional<double> mu_d;
  std::optional<double> delta_cap;
  std::optional<double> discrete_lower_bound;
  std::optional<double> discrete_min_modulus;
};

enum class Construction { abs_cont, lattice, degenerate, mixture_single_atom, mixture_recut, mixture_lattice };

inline const char* to_string(Construction c) {
  switch (c) {
    case Construction::abs_cont: return "abs_cont";
    case Construction::lattice: return "lattice";
    case Construction::degenerate: return "degenerate";
    case Construction::mixture_single_atom: return "mixture_case_1a";
    case Construction::mixture_recut: return "mixture_case_1b";
    case Construction::mixture_lattice: return "mixture_case_2";
  }
  return "unknown";
}

struct ApproxResult {
  Law approximant;
  double eps;
  ApproxParams params;
  double tv_value;
  double tv_error_bound;
  double tv_bound_claimed;
  ZeroFreeCertificate certificate;
  Construction construction;

  bool bound_holds() const { return tv_value <= tv_bound_claimed + tv_error_bound; }
  bool verified() const { return bound_holds() && certificate.positive(); }
};

struct TruncatedDensity {
  Law law;
  double r_eps;
  double c_eps;
};

struct TruncatedLattice {
  Law law;
  Lattice lattice;
  long K1;
  long K2;
  double q1_eps;
  double q2_eps;
};

namespace detail {

inline void require_eps(double eps, double upper) {
  if (!(eps > 0.0 && eps < upper))
    throw Error(ErrorKind::invalid_argument, "eps must lie in (0, " + std::to_string(upper) + ")");
}

inline void check_bound(const ApproxResult& r) {
  if (!r.bound_holds())
    throw Error(ErrorKind::bound_violation, "tv = " + std::to_string(r.tv_value) + " exceeds claimed " +
                                                std::to_string(r.tv_bound_claimed));
}

/// Zero the samples from index `cut` on and renormalize; returns the law and
/// the (pre-normalization) mass that was kept.
inline std::pair<DensityLaw, double> cut_right(const DensityLaw& a, std::size_t cut) {
  std::vector<double> s(a.samples().begin(), a.samples().begin() + static_cast<long>(cut) + 1);
  s.back() = 0.0;
  double kept = 0.0;
  for (double v : s) kept += v;
  kept *= a.step();
  return {DensityLaw::normalized(a.origin(), a.step(), std::move(s)), kept};
}

}  // namespace detail

/// Restrict a density to the smallest symmetric window [-r, r] (through grid
/// nodes) whose outside mass is at most truncation_tail_fraction * eps, and
/// renormalize by the kept mass c.
inline TruncatedDensity truncate_density(const Law& f, double eps, const Config& cfg = default_config()) {
  detail::require_eps(eps, 1.0);
  if (!f.is_absolutely_continuous()) throw Error(ErrorKind::precondition, "truncate_density needs a pure density");
  const auto& a = *f.continuous_part();
  const auto s = a.samples();
  const std::size_t n = s.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + s[i];
  const double total = a.step() * prefix[n];
  const double allowed = cfg.truncation_tail_fraction * eps;
  std::vector<double> radii;
  radii.reserve(n);
  for (std::size_t i = 0; i < n; ++i) radii.push_back(std::abs(a.node(i)));
  std::sort(radii.begin(), radii.end());
  const double full_r = std::max(std::abs(a.origin()), std::abs(a.right()));
  for (double r : radii) {
    const double slack = 1e-12 * std::max(1.0, r);
    const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil((-r - slack - a.origin()) / a.step())));
    const auto hi_d = std::floor((r + slack - a.origin()) / a.step());
    if (hi_d < 0.0) continue;
    const auto hi = std::min(n - 1, static_cast<std::size_t>(hi_d));
    if (hi < lo + 2) continue;
    if (lo == 0 && hi == n - 1) break;
    const double kept = a.step() * (prefix[hi] - prefix[lo + 1]);
    if (total - kept > allowed) continue;
    std::vector<double> window(s.begin() + static_cast<long>(lo), s.begin() + static_cast<long>(hi) + 1);
    window.front() = 0.0;
    window.back() = 0.0;
    return {Law::density(DensityLaw::normalized(a.node(lo), a.step(), std::move(window))), r, kept / total};
  }
  return {f, full_r, 1.0};
}

/// Move the lattice tails below index K1 and above K2 onto the atoms at K1
/// and K2, where each tail carries mass < eps/2.
inline TruncatedLattice truncate_lattice(const Law& f, double eps, const Config& cfg = default_config()) {
  detail::require_eps(eps, 1.0);
  if (!f.is_discrete()) throw Error(ErrorKind::precondition, "truncate_lattice needs a discrete law");
  const auto& d = *f.discrete_part();
  if (d.size() < 2) throw Error(ErrorKind::precondition, "truncate_lattice needs at least two atoms");
  const auto lattice = detect_lattice(d, cfg);
  if (!lattice) throw Error(ErrorKind::precondition, "discrete law is not supported on a lattice");
  const auto atoms = d.atoms();
  const std::size_t n = atoms.size();
  std::size_t j1 = 0;
  double left = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (left >= eps / 2.0) break;
    j1 = j;
    left += atoms[j].mass;
  }
  std::size_t j2 = n - 1;
  double right = 0.0;
  for (std::size_t j = n; j-- > 0;) {
    if (right >= eps / 2.0) break;
    j2 = j;
    right += atoms[j].mass;
  }
  if (j2 < j1) j2 = j1;
  double q1 = 0.0;
  double q2 = 0.0;
  for (std::size_t j = 0; j < j1; ++j) q1 += atoms[j].mass;
  for (std::size_t j = j2 + 1; j < n; ++j) q2 += atoms[j].mass;
  std::vector<Atom> kept(atoms.begin() + static_cast<long>(j1), atoms.begin() + static_cast<long>(j2) + 1);
  kept.front().mass += q1;
  kept.back().mass += q2;
  return {Law::discrete(DiscreteLaw::normalized(std::move(kept), cfg.merge_tol)), *lattice,
          lattice->index(atoms[j1].location), lattice->index(atoms[j2].location), q1, q2};
}

/// Lattice target: truncate, then mix in delta_eps at gamma_eps = lext.
inline ApproxResult approximate_lattice(const Law& f, double eps, const Config& cfg = default_config()) {
  detail::require_eps(eps, 1.0);
  if (!f.is_discrete()) throw Error(ErrorKind::precondition, "lattice mode needs a discrete law");
  const auto& d = *f.discrete_part();
  if (!detect_lattice(d, cfg)) throw Error(ErrorKind::precondition, "discrete law is not supported on a lattice");
  if (d.size() == 1) {
    ApproxParams p;
    p.gamma_eps = d.lext();
    p.delta_eps = 0.0;
    return {f, eps, p, 0.0, 0.0, 4.0 * eps, certify_zero_free(f, cfg), Construction::degenerate};
  }
  const auto trunc = truncate_lattice(f, eps, cfg);
  ApproxParams p;
  p.K1 = trunc.K1;
  p.K2 = trunc.K2;
  p.q1_eps = trunc.q1_eps;
  p.q2_eps = trunc.q2_eps;
  const double gamma = trunc.law.discrete_part()->lext();
  p.gamma_eps = gamma;
  Law approx = trunc.law;
  ZeroFreeCertificate cert{};
  if (trunc.law.discrete_part()->size() == 1) {
    // one atom carries more than 1 - eps; the truncated law is degenerate
    p.delta_eps = 0.0;
    cert = certify_zero_free(approx, cfg);
  } else {
    const auto sel = select_delta(trunc.law, gamma, eps, cfg);
    p.delta_eps = sel.delta;
    p.tau_eps = eps;
    approx = mix(sel.delta, Law::point(gamma), trunc.law, cfg);
    cert = sel.certificate;
  }
  const auto tv = tv_distance(f, approx, cfg);
  ApproxResult r{std::move(approx), eps, p, tv.value, tv.error_bound, 4.0 * eps, cert, Construction::lattice};
  detail::check_bound(r);
  return r;
}

/// Absolutely continuous target: find tau_eps < tau with ||F - F*B|| < eps,
/// truncate, mix in an atom at gamma_eps = lext(F_eps), and smooth with
/// B^{+/-}_{q,tau_eps}. The certificate is for the mixture before smoothing;
/// smoothing by a kernel without real zeros in its CF keeps that property.
inline ApproxResult approximate_abs_cont(const Law& f, double eps, double q, double tau, Side side,
                                         const Config& cfg = default_config()) {
  detail::require_eps(eps, 1.0);
  if (!f.is_absolutely_continuous()) throw Error(ErrorKind::precondition, "abs mode needs a pure density law");
  if (!(tau > 0.0)) throw Error(ErrorKind::invalid_argument, "tau must be positive");
  continuous_bernoulli_constant(q);
  if (std::abs(q - 0.5) < cfg.q_half_exclusion) throw Error(ErrorKind::invalid_argument, "q must differ from 1/2");
  const double h = f.continuous_part()->step();

  std::optional<Law> kernel;
  double tau_eps = 0.0;
  for (int k = 1; k <= cfg.tau_ladder_max; ++k) {
    const double t = tau / std::ldexp(1.0, k);
    std::size_t cells = cfg.min_kernel_cells;
    double t_eff = t;
    if (t >= static_cast<double>(cfg.min_kernel_cells) * h) {
      cells = static_cast<std::size_t>(std::floor(t / h));
      t_eff = static_cast<double>(cells) * h;
    }
    auto b = continuous_bernoulli(q, t_eff, side, cells, cfg);
    const auto smoothed = convolve_with_error(f, b, cfg);
    const auto tv = tv_distance(f, smoothed.value, cfg);
    if (tv.value + tv.error_bound + smoothed.error < eps) {
      kernel = std::move(b);
      tau_eps = t_eff;
      break;
    }
  }
  if (!kernel) throw Error(ErrorKind::search_exhausted, "no tau on the halving ladder gives ||F - F*B|| < eps");

  const auto trunc = truncate_density(f, eps, cfg);
  const double gamma = support_info(trunc.law).lext;
  const auto sel = select_delta(trunc.law, gamma, eps, cfg);
  const auto mixed = mix_with_error(sel.delta, Law::point(gamma), trunc.law, cfg);
  auto out = convolve_with_error(mixed.value, *kernel, cfg);
  const auto tv = tv_distance(f, out.value, cfg);

  ApproxParams p;
  p.r_eps = trunc.r_eps;
  p.c_eps = trunc.c_eps;
  p.gamma_eps = gamma;
  p.delta_eps = sel.delta;
  p.tau_eps = tau_eps;
  p.q = q;
  p.side = side;
  ApproxResult r{std::move(out.value), eps, p, tv.value, tv.error_bound + out.error + mixed.error, 4.0 * eps,
                 sel.certificate, Construction::abs_cont};
  detail::check_bound(r);
  return r;
}

/// Lattice + density mixture target, eps in (0, 1/2).
inline ApproxResult approximate_mixture(const Law& f, double eps, const Config& cfg = default_config()) {
  detail::require_eps(eps, 0.5);
  if (f.is_discrete()) return approximate_lattice(f, eps, cfg);
  const double c_d = f.discrete_weight();
  const Law f_a = Law::density(*f.continuous_part());
  const auto trunc = truncate_density(f_a, eps, cfg);
  const DensityLaw& p_eps = *trunc.law.continuous_part();
  const double h = p_eps.step();

  ApproxParams p;
  p.r_eps = trunc.r_eps;
  p.c_eps = trunc.c_eps;

  auto finish = [&](Law approx, const ZeroFreeCertificate& cert, double claimed, Construction kind) {
    const auto tv = tv_distance(f, approx, cfg);
    ApproxResult r{std::move(approx), eps, p, tv.value, tv.error_bound, claimed, cert, kind};
    detail::check_bound(r);
    return r;
  };

  if (f.is_absolutely_continuous()) {
    const double gamma = p_eps.origin();
    const auto sel = select_delta(trunc.law, gamma, eps, cfg);
    p.gamma_eps = gamma;
    p.delta_eps = sel.delta;
    p.tau_eps = eps;
    return finish(mix(sel.delta, Law::point(gamma), trunc.law, cfg), sel.certificate, 4.0 * eps,
                  Construction::mixture_single_atom);
  }

  const auto& d = *f.discrete_part();
  if (!detect_lattice(d, cfg)) throw Error(ErrorKind::precondition, "discrete part is not supported on a lattice");

  if (d.size() == 1) {
    const double g1 = d.lext();
    const Law atom = Law::point(g1);
    const Law f_eps = mix(c_d, atom, trunc.law, cfg);
    p.gamma_eps = g1;
    if (std::abs(*support_info(f_eps).cext - g1) >= h / 2.0) {
      const auto sel = select_delta(f_eps, g1, eps, cfg);
      p.delta_eps = sel.delta;
      p.tau_eps = eps;
      return finish(mix(sel.delta, atom, f_eps, cfg), sel.certificate, 4.0 * eps, Construction::mixture_single_atom);
    }
    // atom at the center: cut the density on the right so the center moves
    const auto s = p_eps.samples();
    std::optional<std::size_t> best;
    double cut_mass = 0.0;
    for (std::size_t j = s.size() - 1; j > 0; --j) {
      cut_mass += trunc.c_eps * h * s[j];
      if (cut_mass >= eps / 2.0 || !(p_eps.node(j) > g1 + h)) break;
      best = j;
    }
    if (!best) throw Error(ErrorKind::search_exhausted, "no admissible right cut for the centered atom");
    auto [cut, kept] = detail::cut_right(p_eps, *best);
    p.r_hat = p_eps.node(*best);
    p.c_hat = trunc.c_eps * kept;
    const Law f_hat = mix(c_d, atom, Law::density(std::move(cut)), cfg);
    const auto sel = select_delta(f_hat, g1, eps, cfg);
    p.delta_eps = sel.delta;
    p.tau_eps = eps;
    return finish(mix(sel.delta, atom, f_hat, cfg), sel.certificate, 6.0 * eps, Construction::mixture_recut);
  }

  // two or more lattice atoms
  const auto sub = approximate_lattice(Law::discrete(d), eps / 4.0, cfg);
  const double mu = sub.certificate.lower_bound.value_or(sub.certificate.min_modulus);
  if (!(mu > 0.0)) throw Error(ErrorKind::unverifiable, "lattice part approximant has no positive modulus floor");
  const Law f_eps = mix(c_d, sub.approximant, trunc.law, cfg);
  const double tau_cap = std::min(eps, (1.0 - eps) * c_d * mu);
  const auto& d_eps = *sub.approximant.discrete_part();
  const double center = *support_info(f_eps).cext;
  double gamma2 = d_eps.lext();
  if (std::abs(gamma2 - center) < h / 2.0) gamma2 = d_eps.rext();
  if (std::abs(gamma2 - center) < h / 2.0) gamma2 = d_eps.lext() - detect_lattice(d, cfg)->span;
  const auto sel = select_delta(f_eps, gamma2, tau_cap, cfg);
  const double delta = sel.delta;
  const double denom = delta + c_d - delta * c_d;
  const double floor_bound = (tau_cap - delta) / denom;
  const CharFn fd_eps(sub.approximant);
  auto fd_circ = [&](double t) { return (delta * detail::unit(t * gamma2) + (1.0 - delta) * c_d * fd_eps(t)) / denom; };
  const auto lattice = *detect_lattice(d, cfg);
  const double half = std::numbers::pi / lattice.span;
  const auto scan = min_modulus_scan(fd_circ, half, detail::period_step(half, cfg), true, std::nullopt, cfg);
  p.gamma_eps = gamma2;
  p.delta_eps = delta;
  p.tau_eps = tau_cap;
  p.mu_d = mu;
  p.delta_cap = tau_cap;
  p.discrete_lower_bound = floor_bound;
  p.discrete_min_modulus = scan.min_modulus;
  if (!(floor_bound > 0.0) || scan.min_modulus < floor_bound * (1.0 - 1e-9))
    throw Error(ErrorKind::unverifiable, "discrete part floor not confirmed by the scan");
  return finish(mix(delta, Law::point(gamma2), f_eps, cfg), sel.certificate, 4.0 * eps, Construction::mixture_lattice);
}

}  // namespace qidlab

#endif  // QIDLAB_PIPELINES_HPP
