#ifndef QIDLAB_DETAIL_NUMERIC_HPP
#define QIDLAB_DETAIL_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <utility>

namespace qidlab {

using cplx = std::complex<double>;

/// Anything callable as t -> complex, e.g. a CharFn or a closed-form lambda.
template <class F>
concept ComplexFunction = std::regular_invocable<const F&, double> &&
    std::convertible_to<std::invoke_result_t<const F&, double>, cplx>;

namespace detail {

inline cplx unit(double phase) { return {std::cos(phase), std::sin(phase)}; }

inline bool near_integer(double x, double tol, long& rounded) {
  const double r = std::round(x);
  rounded = static_cast<long>(r);
  return std::abs(x - r) <= tol;
}

inline bool same_step(double h1, double h2) {
  return std::abs(h1 - h2) <= 1e-12 * std::max(h1, h2);
}

/// Golden-section search for a minimum of a unimodal function on [a, b].
/// Returns (argmin, min).
template <class Fn>
std::pair<double, double> golden_section_min(const Fn& fn, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  if (fc < fd) return {c, fc};
  return {d, fd};
}

/// sin(x)/x with the removable singularity filled in.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace detail
}  // namespace qidlab

#endif  // QIDLAB_DETAIL_NUMERIC_HPP
