#ifndef BLOTTO_NUMERIC_HPP_
#define BLOTTO_NUMERIC_HPP_

#include <cmath>
#include <utility>

namespace blotto {

// Golden-section search for a maximum of f on [lo, hi]. Returns (x, f(x)) for
// the best point evaluated. Assumes f is unimodal on the bracket; callers
// bracket around a scan incumbent.
template <class F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi,
                                             double tol, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace blotto

#endif  // BLOTTO_NUMERIC_HPP_
