#ifndef QIDLAB_SPECTRAL_HPP
#define QIDLAB_SPECTRAL_HPP

// Signed compound-Poisson form of a zero-free lattice CF:
//   log f(t) = i gamma t + sum_{k != 0} lambda_k (e^{itbk} - 1).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qidlab/charfn.hpp"
#include "qidlab/config.hpp"
#include "qidlab/dist.hpp"
#include "qidlab/error.hpp"

namespace qidlab {

struct SpectralPair {
  double drift_gamma;
  double lattice_a;
  double lattice_b;
  std::vector<std::pair<long, double>> signed_atoms;
  int truncation_K;
  double residual;
};

/// t -> exp{i gamma t + sum lambda_k (e^{itbk} - 1)}.
class SpectralCf {
 public:
  explicit SpectralCf(SpectralPair pair) : pair_(std::move(pair)) {}

  cplx operator()(double t) const {
    cplx exponent{0.0, pair_.drift_gamma * t};
    for (const auto& [k, lambda] : pair_.signed_atoms)
      exponent += lambda * (detail::unit(t * pair_.lattice_b * static_cast<double>(k)) - 1.0);
    return std::exp(exponent);
  }

  const SpectralPair& pair() const { return pair_; }

 private:
  SpectralPair pair_;
};

inline SpectralCf reconstruct_cf(const SpectralPair& pair) { return SpectralCf(pair); }

/// sup over `grid` of |f(t) - reconstruct(t)|.
inline double pair_roundtrip_error(const Law& f, const SpectralPair& pair, std::span<const double> grid) {
  const CharFn cf(f);
  const auto rc = reconstruct_cf(pair);
  double worst = 0.0;
  for (double t : grid) worst = std::max(worst, std::abs(cf(t) - rc(t)));
  return worst;
}

/// Extract the pair for a lattice law on `lattice`, keeping |k| <= K.
inline SpectralPair lattice_spectral_pair(const Law& f, const Lattice& lattice, int K,
                                          const Config& cfg = default_config()) {
  if (K < 0) throw Error(ErrorKind::invalid_argument, "K must be >= 0");
  if (!f.is_discrete()) throw Error(ErrorKind::precondition, "spectral extraction needs a discrete law");
  const auto& d = *f.discrete_part();
  if (d.size() == 1) return {d.lext(), d.lext(), 1.0, {}, K, 0.0};
  if (!(lattice.span > 0.0)) throw Error(ErrorKind::invalid_argument, "lattice span must be positive");

  // f(t) = e^{ita} g(bt) with g 2pi-periodic
  std::vector<std::pair<long, double>> idx;
  for (const auto& a : d.atoms()) idx.push_back({lattice.index(a.location), a.mass});
  auto g = [&](double s) {
    cplx out{0.0, 0.0};
    for (const auto& [k, m] : idx) out += m * detail::unit(s * static_cast<double>(k));
    return out;
  };
  const double pi = std::numbers::pi;
  const auto scan = min_modulus_scan(g, pi, std::min(cfg.scan_step, pi / 1024.0), true, std::nullopt, cfg);
  if (scan.min_modulus < cfg.log_floor)
    throw Error(ErrorKind::not_extractable,
                "CF zero: |f| = " + std::to_string(scan.min_modulus) + " near t = " +
                    std::to_string(scan.argmin_t / lattice.span));

  const std::size_t N = std::max<std::size_t>(cfg.spectral_min_points, 8 * static_cast<std::size_t>(K));
  std::vector<double> s(N + 1);
  for (std::size_t m = 0; m <= N; ++m) s[m] = 2.0 * pi * static_cast<double>(m) / static_cast<double>(N);
  const auto logs = detail::track_log(g, s, std::log(g(0.0)), cfg);
  const long winding = std::lround((logs[N] - logs[0]).imag() / (2.0 * pi));

  SpectralPair out{lattice.origin + lattice.span * static_cast<double>(winding), lattice.origin, lattice.span, {}, K, 0.0};
  for (long k = -K; k <= K; ++k) {
    if (k == 0) continue;
    cplx c{0.0, 0.0};
    for (std::size_t m = 0; m < N; ++m) {
      const cplx periodic = logs[m] - cplx(0.0, static_cast<double>(winding) * s[m]);
      c += periodic * detail::unit(-static_cast<double>(k) * s[m]);
    }
    const double lambda = c.real() / static_cast<double>(N);
    if (std::abs(lambda) >= cfg.spectral_drop_tol) out.signed_atoms.push_back({k, lambda});
  }

  std::vector<double> grid(4 * N + 1);
  for (std::size_t m = 0; m < grid.size(); ++m)
    grid[m] = (2.0 * pi / lattice.span) * static_cast<double>(m) / static_cast<double>(4 * N);
  out.residual = pair_roundtrip_error(f, out, grid);
  return out;
}

inline SpectralPair lattice_spectral_pair(const Law& f, int K, const Config& cfg = default_config()) {
  if (!f.is_discrete()) throw Error(ErrorKind::precondition, "spectral extraction needs a discrete law");
  const auto lattice = detect_lattice(*f.discrete_part(), cfg);
  if (!lattice) throw Error(ErrorKind::precondition, "discrete law is not supported on a lattice");
  return lattice_spectral_pair(f, *lattice, K, cfg);
}

/// Same pair in the sin-centered Levy-Khinchine normalization: shift gamma
/// and jumps of the spectral function G.
struct LevyKhinchine {
  double gamma;
  std::vector<std::pair<double, double>> jumps;  // (x, jump of G at x)
};

inline LevyKhinchine to_levy_khinchine(const SpectralPair& pair) {
  LevyKhinchine out{pair.drift_gamma, {}};
  for (const auto& [k, lambda] : pair.signed_atoms) {
    const double x = pair.lattice_b * static_cast<double>(k);
    out.gamma += lambda * std::sin(x);
    out.jumps.push_back({x, lambda * x * x / (1.0 + x * x)});
  }
  return out;
}

}  // namespace qidlab

#endif  // QIDLAB_SPECTRAL_HPP
