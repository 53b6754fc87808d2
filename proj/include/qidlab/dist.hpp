#ifndef QIDLAB_DIST_HPP
#define QIDLAB_DIST_HPP

// Univariate laws: finitely many atoms mixed with a piecewise-linear density
// on a uniform grid. The density is the linear interpolant of its samples and
// vanishes at both grid ends, so the trapezoid rule integrates it exactly and
// total variation between two such laws is an exact finite computation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qidlab/config.hpp"
#include "qidlab/detail/numeric.hpp"
#include "qidlab/error.hpp"

namespace qidlab {

struct Atom {
  double location;
  double mass;
};

/// Probability law with finitely many atoms, sorted strictly by location.
class DiscreteLaw {
 public:
  /// Validates masses (positive, summing to 1 within `cfg.discrete_mass_tol`),
  /// sorts, and merges atoms closer than `cfg.merge_tol`.
  static DiscreteLaw from_atoms(std::vector<Atom> atoms, const Config& cfg = default_config()) {
    if (atoms.empty()) throw Error(ErrorKind::invalid_argument, "discrete law needs at least one atom");
    double total = 0.0;
    for (const auto& a : atoms) {
      if (!std::isfinite(a.location) || !std::isfinite(a.mass))
        throw Error(ErrorKind::invalid_argument, "non-finite atom");
      if (a.mass <= 0.0) throw Error(ErrorKind::invalid_argument, "atom masses must be positive");
      total += a.mass;
    }
    if (std::abs(total - 1.0) > cfg.discrete_mass_tol)
      throw Error(ErrorKind::invalid_argument,
                  "atom masses sum to " + std::to_string(total) + ", expected 1");
    return normalized(std::move(atoms), cfg.merge_tol);
  }

  static DiscreteLaw point(double location) { return DiscreteLaw({{location, 1.0}}); }

  /// Sort, merge and rescale to unit mass without the sum check. For
  /// internally generated atom lists whose sum is 1 up to rounding.
  static DiscreteLaw normalized(std::vector<Atom> atoms, double merge_tol) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const auto& a : atoms) {
      if (!merged.empty() && a.location - merged.back().location <= merge_tol)
        merged.back().mass += a.mass;
      else
        merged.push_back(a);
    }
    double total = 0.0;
    for (const auto& a : merged) total += a.mass;
    if (std::abs(total - 1.0) > 1e-14)
      for (auto& a : merged) a.mass /= total;
    return DiscreteLaw(std::move(merged));
  }

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double lext() const { return atoms_.front().location; }
  double rext() const { return atoms_.back().location; }

 private:
  explicit DiscreteLaw(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

enum class Quadrature { trapezoid };

/// Piecewise-linear density on the grid origin + i*step, i = 0..n-1.
class DensityLaw {
 public:
  static DensityLaw from_samples(double origin, double step, std::vector<double> samples,
                                 const Config& cfg = default_config()) {
    if (!std::isfinite(origin) || !(step > 0.0) || !std::isfinite(step))
      throw Error(ErrorKind::invalid_argument, "density grid needs finite origin and positive step");
    if (samples.size() < 3) throw Error(ErrorKind::invalid_argument, "density needs at least 3 samples");
    for (double s : samples)
      if (!std::isfinite(s) || s < 0.0)
        throw Error(ErrorKind::invalid_argument, "density samples must be finite and non-negative");
    if (samples.front() != 0.0 || samples.back() != 0.0)
      throw Error(ErrorKind::invalid_argument, "density must vanish at both grid ends");
    const double mass = step * std::accumulate(samples.begin(), samples.end(), 0.0);
    if (std::abs(mass - 1.0) > cfg.density_mass_tol)
      throw Error(ErrorKind::invalid_argument,
                  "density integrates to " + std::to_string(mass) + ", expected 1");
    if (std::abs(mass - 1.0) > 1e-14)
      for (auto& s : samples) s /= mass;
    return DensityLaw(origin, step, std::move(samples));
  }

  /// Samples `pdf` on `cells` equal cells of [left, right], zeroes the two end
  /// samples and rescales to unit mass.
  template <class Pdf>
  static DensityLaw from_function(const Pdf& pdf, double left, double right, std::size_t cells) {
    if (!(right > left) || cells < 2)
      throw Error(ErrorKind::invalid_argument, "density grid needs right > left and >= 2 cells");
    const double h = (right - left) / static_cast<double>(cells);
    std::vector<double> samples(cells + 1, 0.0);
    for (std::size_t i = 1; i < cells; ++i) {
      const double v = pdf(left + h * static_cast<double>(i));
      if (!std::isfinite(v) || v < 0.0)
        throw Error(ErrorKind::invalid_argument, "pdf must be finite and non-negative");
      samples[i] = v;
    }
    return normalized(left, h, std::move(samples));
  }

  /// Rescale to unit mass without checks beyond positivity of the mass.
  static DensityLaw normalized(double origin, double step, std::vector<double> samples) {
    const double mass = step * std::accumulate(samples.begin(), samples.end(), 0.0);
    if (!(mass > 0.0)) throw Error(ErrorKind::invalid_argument, "density has no mass");
    if (std::abs(mass - 1.0) > 1e-14)
      for (auto& s : samples) s /= mass;
    samples.front() = 0.0;
    samples.back() = 0.0;
    return DensityLaw(origin, step, std::move(samples));
  }

  double origin() const { return origin_; }
  double step() const { return step_; }
  std::size_t size() const { return samples_.size(); }
  double node(std::size_t i) const { return origin_ + step_ * static_cast<double>(i); }
  double right() const { return node(samples_.size() - 1); }
  std::span<const double> samples() const { return samples_; }
  Quadrature quadrature() const { return Quadrature::trapezoid; }

  /// Value of the linear interpolant; zero outside the grid.
  double operator()(double x) const {
    const double u = (x - origin_) / step_;
    if (!(u > 0.0) || u >= static_cast<double>(samples_.size() - 1)) return 0.0;
    const auto i = static_cast<std::size_t>(u);
    const double frac = u - static_cast<double>(i);
    return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
  }

  double mass() const { return step_ * std::accumulate(samples_.begin(), samples_.end(), 0.0); }

 private:
  DensityLaw(double origin, double step, std::vector<double> samples)
      : origin_(origin), step_(step), samples_(std::move(samples)) {}

  double origin_;
  double step_;
  std::vector<double> samples_;
};

/// c_d * discrete + (1 - c_d) * density.
class Law {
 public:
  static Law discrete(DiscreteLaw d) { return Law(1.0, std::move(d), std::nullopt); }
  static Law density(DensityLaw a) { return Law(0.0, std::nullopt, std::move(a)); }
  static Law point(double location) { return discrete(DiscreteLaw::point(location)); }

  static Law mixture(double discrete_weight, std::optional<DiscreteLaw> d, std::optional<DensityLaw> a) {
    if (!(discrete_weight >= 0.0 && discrete_weight <= 1.0))
      throw Error(ErrorKind::invalid_argument, "discrete weight must lie in [0, 1]");
    if ((discrete_weight > 0.0) != d.has_value())
      throw Error(ErrorKind::invalid_argument, "discrete part present iff discrete weight > 0");
    if ((discrete_weight < 1.0) != a.has_value())
      throw Error(ErrorKind::invalid_argument, "density part present iff discrete weight < 1");
    return Law(discrete_weight, std::move(d), std::move(a));
  }

  double discrete_weight() const { return weight_; }
  double continuous_weight() const { return 1.0 - weight_; }
  const std::optional<DiscreteLaw>& discrete_part() const { return discrete_; }
  const std::optional<DensityLaw>& continuous_part() const { return density_; }
  bool is_discrete() const { return !density_; }
  bool is_absolutely_continuous() const { return !discrete_; }

 private:
  Law(double w, std::optional<DiscreteLaw> d, std::optional<DensityLaw> a)
      : weight_(w), discrete_(std::move(d)), density_(std::move(a)) {}

  double weight_;
  std::optional<DiscreteLaw> discrete_;
  std::optional<DensityLaw> density_;
};

struct SupportInfo {
  double lext;
  double rext;
  std::optional<double> cext;

  bool bounded() const { return std::isfinite(lext) && std::isfinite(rext); }
  double half_width() const { return 0.5 * (rext - lext); }
};

/// Lattice origin + span * k. `span == 0` marks a single point.
struct Lattice {
  double origin;
  double span;

  long index(double x) const { return span > 0.0 ? std::lround((x - origin) / span) : 0; }
  double at(long k) const { return origin + span * static_cast<double>(k); }
};

template <class T>
struct WithError {
  T value;
  double error;
};

struct TvResult {
  double value;
  double error_bound;
};

enum class Side { plus, minus };

inline const char* to_string(Side side) { return side == Side::plus ? "plus" : "minus"; }

namespace detail {

/// Weighted non-owning view of piecewise-linear samples.
struct PlView {
  double weight;
  double origin;
  double step;
  std::span<const double> samples;

  double right() const { return origin + step * static_cast<double>(samples.size() - 1); }
  double node(std::size_t i) const { return origin + step * static_cast<double>(i); }
  double operator()(double x) const {
    const double u = (x - origin) / step;
    if (!(u > 0.0) || u >= static_cast<double>(samples.size() - 1)) return 0.0;
    const auto i = static_cast<std::size_t>(u);
    const double frac = u - static_cast<double>(i);
    return weight * (samples[i] + frac * (samples[i + 1] - samples[i]));
  }
};

inline PlView view(const DensityLaw& a, double weight, double shift = 0.0) {
  return {weight, a.origin() + shift, a.step(), a.samples()};
}

/// Integral of |linear| over a segment of length len with end values d0, d1.
inline double abs_linear_integral(double len, double d0, double d1) {
  if ((d0 >= 0.0 && d1 >= 0.0) || (d0 <= 0.0 && d1 <= 0.0)) return 0.5 * len * (std::abs(d0) + std::abs(d1));
  return 0.5 * len * (d0 * d0 + d1 * d1) / (std::abs(d0) + std::abs(d1));
}

/// Exact integral of |a - b| for two piecewise-linear functions, merging both
/// node sets so the difference is linear on every segment.
inline double l1_difference(const PlView& a, const PlView& b) {
  const bool has_a = !a.samples.empty() && a.weight != 0.0;
  const bool has_b = !b.samples.empty() && b.weight != 0.0;
  auto diff = [&](double x) { return (has_a ? a(x) : 0.0) - (has_b ? b(x) : 0.0); };
  std::size_t i = has_a ? 0 : a.samples.size();
  std::size_t j = has_b ? 0 : b.samples.size();
  const std::size_t na = has_a ? a.samples.size() : 0;
  const std::size_t nb = has_b ? b.samples.size() : 0;
  if (na == 0 && nb == 0) return 0.0;
  const double scale = std::max({1.0, has_a ? std::abs(a.right()) : 0.0, has_b ? std::abs(b.right()) : 0.0,
                                 has_a ? std::abs(a.origin) : 0.0, has_b ? std::abs(b.origin) : 0.0});
  const double tie = 1e-13 * scale;
  double total = 0.0;
  bool started = false;
  double x_prev = 0.0;
  double d_prev = 0.0;
  i = 0;
  j = 0;
  while (i < na || j < nb) {
    double x;
    const double xa = i < na ? a.node(i) : std::numeric_limits<double>::infinity();
    const double xb = j < nb ? b.node(j) : std::numeric_limits<double>::infinity();
    if (std::abs(xa - xb) <= tie) {
      x = xa;
      ++i;
      ++j;
    } else if (xa < xb) {
      x = xa;
      ++i;
    } else {
      x = xb;
      ++j;
    }
    const double d = diff(x);
    if (started && x > x_prev) total += abs_linear_integral(x - x_prev, d_prev, d);
    started = true;
    x_prev = x;
    d_prev = d;
  }
  return total;
}

/// L1 bound on replacing a piecewise-linear function by its interpolant on a
/// grid of step `h`: each kink of slope jump D costs at most D h^2 / 8.
inline double resample_error_bound(const PlView& v, double h) {
  double jumps = 0.0;
  const auto& s = v.samples;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double left = k > 0 ? s[k - 1] : 0.0;
    const double right = k + 1 < s.size() ? s[k + 1] : 0.0;
    jumps += std::abs(right - 2.0 * s[k] + left);
  }
  return std::abs(v.weight) * jumps / v.step * h * h / 8.0;
}

/// Sum weighted piecewise-linear terms on one common grid. Terms whose nodes
/// are a subset of the common grid are added exactly; others are resampled by
/// interpolation and charged `resample_error_bound`. The result is rescaled to
/// unit mass; `error` bounds the L1 distance between (sum of weights) * result
/// and the exact weighted sum.
inline WithError<DensityLaw> accumulate(std::span<const PlView> terms, const Config& cfg) {
  double h = std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double weight_sum = 0.0;
  for (const auto& t : terms) {
    h = std::min(h, t.step);
    lo = std::min(lo, t.origin);
    hi = std::max(hi, t.right());
    weight_sum += t.weight;
  }
  struct Placement {
    bool exact;
    long offset;
    long stride;
  };
  std::vector<Placement> placement;
  placement.reserve(terms.size());
  bool all_exact = true;
  for (const auto& t : terms) {
    long offset = 0;
    long stride = 1;
    const bool stride_ok = detail::near_integer(t.step / h, 1e-9, stride) && stride >= 1;
    const bool offset_ok = detail::near_integer((t.origin - lo) / h, 1e-9, offset);
    placement.push_back({stride_ok && offset_ok, offset, stride});
    all_exact = all_exact && stride_ok && offset_ok;
  }
  const double span = (hi - lo) / h;
  const double count = all_exact ? std::round(span) + 1.0 : std::ceil(span) + 2.0;
  if (count > static_cast<double>(cfg.max_grid_points))
    throw Error(ErrorKind::resolution, "combined density grid would need " +
                                           std::to_string(static_cast<long long>(count)) + " points");
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> out(n, 0.0);
  double error = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    const auto& p = placement[k];
    if (p.exact && p.stride == 1) {
      for (std::size_t i = 0; i < t.samples.size(); ++i)
        out[static_cast<std::size_t>(p.offset) + i] += t.weight * t.samples[i];
    } else {
      for (std::size_t m = 0; m < n; ++m) {
        const double x = lo + h * static_cast<double>(m);
        if (x < t.origin || x > t.right()) continue;
        out[m] += t(x);
      }
      if (!p.exact) error += resample_error_bound(t, h);
    }
  }
  const double mass = h * std::accumulate(out.begin(), out.end(), 0.0);
  error += std::abs(mass - weight_sum);
  return {DensityLaw::normalized(lo, h, std::move(out)), error};
}

/// Convolution of two piecewise-linear densities on a common step. Node values
/// of the exact convolution (a cubic spline) are h * (c[k-1]/6 + 2c[k]/3 +
/// c[k+1]/6) with c the discrete convolution of the samples; the error term
/// bounds the L1 cost of linear interpolation between those nodes.
inline WithError<DensityLaw> convolve_densities(const DensityLaw& a, const DensityLaw& b, const Config& cfg) {
  if (!same_step(a.step(), b.step())) {
    const bool a_finer = a.step() < b.step();
    const DensityLaw& fine = a_finer ? a : b;
    const DensityLaw& coarse = a_finer ? b : a;
    const double h = fine.step();
    // put the coarse density on a grid with the fine step
    std::vector<PlView> one{view(coarse, 1.0)};
    std::vector<double> zero_pad(3, 0.0);
    PlView anchor{0.0, coarse.origin(), h, zero_pad};
    one.push_back(anchor);
    auto resampled = accumulate(one, cfg);
    auto conv = convolve_densities(fine, resampled.value, cfg);
    conv.error += resampled.error;
    return conv;
  }
  const double h = a.step();
  const auto sa = a.samples();
  const auto sb = b.samples();
  const std::size_t n = sa.size() + sb.size() - 1;
  if (n > cfg.max_grid_points)
    throw Error(ErrorKind::resolution, "convolution grid would need " + std::to_string(n) + " points");
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] == 0.0) continue;
    for (std::size_t j = 0; j < sb.size(); ++j) c[i + j] += sa[i] * sb[j];
  }
  auto at = [&](long k) { return (k < 0 || k >= static_cast<long>(n)) ? 0.0 : c[static_cast<std::size_t>(k)]; };
  // The exact convolution is a cubic spline with nodal values h(c/6, 2c/3, c/6).
  // Nodes h(c/12, 5c/6, c/12) instead make the interpolant's CF agree with the
  // product of the factors' CFs to fourth order in th; the shift from the
  // exact nodal values goes into the error bound.
  std::vector<double> nodes(n, 0.0);
  std::vector<double> curvature(n, 0.0);
  for (long k = 0; k < static_cast<long>(n); ++k) {
    nodes[static_cast<std::size_t>(k)] = h * (at(k - 1) / 12.0 + 5.0 * at(k) / 6.0 + at(k + 1) / 12.0);
    curvature[static_cast<std::size_t>(k)] = (at(k - 1) - 2.0 * at(k) + at(k + 1)) / h;
  }
  double error = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k)
    error += h * h * h / 12.0 * std::max(std::abs(curvature[k]), std::abs(curvature[k + 1]));
  for (std::size_t k = 0; k < n; ++k) error += h * h * h / 12.0 * std::abs(curvature[k]);
  nodes.front() = 0.0;
  nodes.back() = 0.0;
  const double mass = h * std::accumulate(nodes.begin(), nodes.end(), 0.0);
  error += std::abs(mass - 1.0);
  return {DensityLaw::normalized(a.origin() + b.origin(), h, std::move(nodes)), error};
}

inline double euclid(double a, double b, double tol) {
  while (b > tol) {
    double r = std::fmod(a, b);
    if (b - r <= tol) r = 0.0;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace detail

/// Smallest lattice origin + span*Z containing all `locations` (sorted), up
/// to `cfg.lattice_tol` relative to the spread. The origin is reduced to
/// [0, span). Returns nullopt for non-lattice sets, including those whose
/// only fit needs more than `cfg.max_lattice_index` steps.
inline std::optional<Lattice> detect_lattice(std::span<const double> locations, const Config& cfg = default_config()) {
  if (locations.empty()) return std::nullopt;
  const double x0 = locations.front();
  if (locations.size() == 1) return Lattice{x0, 0.0};
  const double spread = locations.back() - x0;
  const double tol = cfg.lattice_tol * std::max(1.0, spread);
  double g = 0.0;
  for (double x : locations) g = detail::euclid(std::max(g, x - x0), std::min(g, x - x0), tol);
  if (!(g > tol)) return std::nullopt;
  for (double x : locations) {
    long k = 0;
    if (!detail::near_integer((x - x0) / g, tol / g, k) || k > cfg.max_lattice_index) return std::nullopt;
  }
  const double origin = x0 - g * std::floor(x0 / g + 1e-9);
  return Lattice{origin, g};
}

inline std::optional<Lattice> detect_lattice(const DiscreteLaw& d, const Config& cfg = default_config()) {
  std::vector<double> xs;
  xs.reserve(d.size());
  for (const auto& a : d.atoms()) xs.push_back(a.location);
  return detect_lattice(xs, cfg);
}

/// Support bounds, ignoring atoms and density cells of mass <= mass_tol.
inline SupportInfo support_info(const Law& f, double mass_tol = 0.0) {
  if (mass_tol < 0.0) throw Error(ErrorKind::invalid_argument, "mass_tol must be >= 0");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (const auto& d = f.discrete_part()) {
    for (const auto& a : d->atoms()) {
      if (f.discrete_weight() * a.mass <= mass_tol) continue;
      lo = std::min(lo, a.location);
      hi = std::max(hi, a.location);
    }
  }
  if (const auto& a = f.continuous_part()) {
    const auto s = a->samples();
    const double w = f.continuous_weight();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (w * 0.5 * a->step() * (s[i] + s[i + 1]) <= mass_tol) continue;
      lo = std::min(lo, a->node(i));
      hi = std::max(hi, a->node(i + 1));
    }
  }
  if (lo > hi) throw Error(ErrorKind::invalid_argument, "mass_tol removes the whole law");
  SupportInfo info{lo, hi, std::nullopt};
  if (info.bounded()) info.cext = 0.5 * (lo + hi);
  return info;
}

/// True iff the law reflected about cext equals itself within `tol`
/// (atom-wise on locations and masses, sample-wise on the density).
inline bool is_shift_symmetric(const Law& f, double tol) {
  const auto info = support_info(f);
  if (!info.bounded()) throw Error(ErrorKind::precondition, "shift symmetry needs bounded support");
  const double c = *info.cext;
  if (const auto& d = f.discrete_part()) {
    const auto atoms = d->atoms();
    const std::size_t n = atoms.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = atoms[i];
      const auto& b = atoms[n - 1 - i];
      if (std::abs(a.location + b.location - 2.0 * c) > tol * std::max(1.0, std::abs(c))) return false;
      if (std::abs(a.mass - b.mass) > tol) return false;
    }
  }
  if (const auto& a = f.continuous_part()) {
    const auto s = a->samples();
    const double peak = *std::max_element(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double x = a->node(i);
      if (std::abs(s[i] - (*a)(2.0 * c - x)) > tol * std::max(1.0, peak)) return false;
    }
  }
  return true;
}

/// c * F1 + (1 - c) * F2, with the resampling error of the density parts.
inline WithError<Law> mix_with_error(double c, const Law& f1, const Law& f2, const Config& cfg = default_config()) {
  if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorKind::invalid_argument, "mixing weight must lie in [0, 1]");
  if (c == 1.0) return {f1, 0.0};
  if (c == 0.0) return {f2, 0.0};
  std::vector<Atom> atoms;
  double wd = 0.0;
  auto add_atoms = [&](const Law& f, double scale) {
    if (!f.discrete_part()) return;
    const double w = scale * f.discrete_weight();
    wd += w;
    for (const auto& a : f.discrete_part()->atoms()) atoms.push_back({a.location, w * a.mass});
  };
  add_atoms(f1, c);
  add_atoms(f2, 1.0 - c);
  std::vector<detail::PlView> terms;
  if (const auto& a = f1.continuous_part()) terms.push_back(detail::view(*a, c * f1.continuous_weight()));
  if (const auto& a = f2.continuous_part()) terms.push_back(detail::view(*a, (1.0 - c) * f2.continuous_weight()));
  if (terms.empty()) return {Law::discrete(DiscreteLaw::normalized(std::move(atoms), cfg.merge_tol)), 0.0};
  auto density = detail::accumulate(terms, cfg);
  if (atoms.empty()) return {Law::density(std::move(density.value)), density.error};
  return {Law::mixture(wd, DiscreteLaw::normalized(std::move(atoms), cfg.merge_tol), std::move(density.value)),
          density.error};
}

inline Law mix(double c, const Law& f1, const Law& f2, const Config& cfg = default_config()) {
  return mix_with_error(c, f1, f2, cfg).value;
}

/// Convolution F1 * F2 together with an L1 bound on the representation error.
inline WithError<Law> convolve_with_error(const Law& f1, const Law& f2, const Config& cfg = default_config()) {
  const double w1 = f1.discrete_weight();
  const double w2 = f2.discrete_weight();
  std::vector<Atom> atoms;
  if (f1.discrete_part() && f2.discrete_part()) {
    for (const auto& a : f1.discrete_part()->atoms())
      for (const auto& b : f2.discrete_part()->atoms()) atoms.push_back({a.location + b.location, a.mass * b.mass});
  }
  std::vector<detail::PlView> terms;
  double error = 0.0;
  std::optional<DensityLaw> both;
  auto shifted_copies = [&](const Law& atoms_of, const DensityLaw& a, double weight) {
    for (const auto& atom : atoms_of.discrete_part()->atoms())
      terms.push_back(detail::view(a, weight * atom.mass, atom.location));
  };
  if (f1.discrete_part() && f2.continuous_part()) shifted_copies(f1, *f2.continuous_part(), w1 * (1.0 - w2));
  if (f2.discrete_part() && f1.continuous_part()) shifted_copies(f2, *f1.continuous_part(), w2 * (1.0 - w1));
  if (f1.continuous_part() && f2.continuous_part()) {
    auto conv = detail::convolve_densities(*f1.continuous_part(), *f2.continuous_part(), cfg);
    const double w = (1.0 - w1) * (1.0 - w2);
    error += w * conv.error;
    both = std::move(conv.value);
    terms.push_back(detail::view(*both, w));
  }
  if (terms.empty()) return {Law::discrete(DiscreteLaw::normalized(std::move(atoms), cfg.merge_tol)), 0.0};
  auto density = detail::accumulate(terms, cfg);
  error += density.error;
  if (atoms.empty()) return {Law::density(std::move(density.value)), error};
  return {Law::mixture(w1 * w2, DiscreteLaw::normalized(std::move(atoms), cfg.merge_tol), std::move(density.value)),
          error};
}

inline Law convolve(const Law& f1, const Law& f2, const Config& cfg = default_config()) {
  return convolve_with_error(f1, f2, cfg).value;
}

/// Law of scale * X + shift.
inline Law shift_scale(const Law& f, double shift, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorKind::invalid_argument, "scale must be positive");
  std::optional<DiscreteLaw> d;
  std::optional<DensityLaw> a;
  if (const auto& src = f.discrete_part()) {
    std::vector<Atom> atoms;
    for (const auto& atom : src->atoms()) atoms.push_back({scale * atom.location + shift, atom.mass});
    d = DiscreteLaw::normalized(std::move(atoms), 0.0);
  }
  if (const auto& src = f.continuous_part()) {
    std::vector<double> s(src->samples().begin(), src->samples().end());
    a = DensityLaw::normalized(scale * src->origin() + shift, scale * src->step(), std::move(s));
  }
  return Law::mixture(f.discrete_weight(), std::move(d), std::move(a));
}

/// Total variation norm of F1 - F2: atom mass differences plus the L1 distance
/// of the density parts. Exact for discrete laws; density parts are integrated
/// exactly on the union of both node sets, so the bound covers rounding only.
inline TvResult tv_distance(const Law& f1, const Law& f2, const Config& cfg = default_config()) {
  std::vector<Atom> a;
  std::vector<Atom> b;
  if (const auto& d = f1.discrete_part())
    for (const auto& x : d->atoms()) a.push_back({x.location, f1.discrete_weight() * x.mass});
  if (const auto& d = f2.discrete_part())
    for (const auto& x : d->atoms()) b.push_back({x.location, f2.discrete_weight() * x.mass});
  double value = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].location < b[j].location - cfg.merge_tol)) {
      value += a[i++].mass;
    } else if (i == a.size() || b[j].location < a[i].location - cfg.merge_tol) {
      value += b[j++].mass;
    } else {
      value += std::abs(a[i++].mass - b[j++].mass);
    }
  }
  double error = 0.0;
  const auto& p1 = f1.continuous_part();
  const auto& p2 = f2.continuous_part();
  if (p1 || p2) {
    const detail::PlView empty{0.0, 0.0, 1.0, {}};
    const auto v1 = p1 ? detail::view(*p1, f1.continuous_weight()) : empty;
    const auto v2 = p2 ? detail::view(*p2, f2.continuous_weight()) : empty;
    value += detail::l1_difference(v1, v2);
    const double nodes = static_cast<double>((p1 ? p1->size() : 0) + (p2 ? p2->size() : 0));
    error = 8.0 * std::numeric_limits<double>::epsilon() * nodes;
  }
  return {value, error};
}

/// Integral of |p(x) - p(x - u)| for the absolutely continuous component of F.
inline double l1_modulus(const Law& f, double u) {
  const auto& a = f.continuous_part();
  if (!a) throw Error(ErrorKind::invalid_argument, "law has no density part");
  if (u == 0.0) return 0.0;
  const double w = f.continuous_weight();
  return detail::l1_difference(detail::view(*a, w), detail::view(*a, w, u));
}

/// C_q = ln(q/(1-q)) / (2q-1) written as 2 atanh(2q-1)/(2q-1).
inline double continuous_bernoulli_constant(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::invalid_argument, "q must lie in (0, 1)");
  const double d = 2.0 * q - 1.0;
  if (std::abs(d) < 1e-8) return 2.0 + 2.0 * d * d / 3.0;
  return 2.0 * std::atanh(d) / d;
}

/// B^+_{q,tau} (support [0, tau]) or B^-_{q,tau} (support [-tau, 0]) as a
/// piecewise-linear density with `cells` cells.
inline Law continuous_bernoulli(double q, double tau, Side side, std::size_t cells,
                                const Config& cfg = default_config()) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::invalid_argument, "q must lie in (0, 1)");
  if (std::abs(q - 0.5) < cfg.q_half_exclusion)
    throw Error(ErrorKind::invalid_argument, "q must differ from 1/2");
  if (!(tau > 0.0)) throw Error(ErrorKind::invalid_argument, "tau must be positive");
  const double cq = continuous_bernoulli_constant(q);
  const double lq = std::log(q);
  const double lp = std::log1p(-q);
  auto pdf = [&](double x) { return cq * std::exp(x * lq + (1.0 - x) * lp); };
  const Law base = Law::density(DensityLaw::from_function(pdf, 0.0, 1.0, cells));
  return shift_scale(base, side == Side::plus ? 0.0 : -tau, tau);
}

inline Law continuous_bernoulli(double q, double tau, Side side, const Config& cfg = default_config()) {
  return continuous_bernoulli(q, tau, side, cfg.default_cells, cfg);
}

}  // namespace qidlab

#endif  // QIDLAB_DIST_HPP
