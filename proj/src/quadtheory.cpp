#include "se1p/quadtheory.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "se1p/model.hpp"

namespace se1p {

namespace {

// errors go down to ~1e-27, far below double precision of the O(1) sums
using real50 = boost::multiprecision::cpp_bin_float_50;

void check(double k3, double alpha, double h) {
  if (!(h > 0)) throw InputError("trapezoidal check: h must be positive");
  if (!(k3 > 0)) throw InputError("trapezoidal check: k3 must be positive");
  if (!(alpha > 0)) throw InputError("trapezoidal check: alpha must be positive");
}

}  // namespace

long trapz_default_terms(double alpha, double h) { return static_cast<long>(std::ceil(9 / (std::sqrt(alpha) * h))); }

TrapzCheck trapz_error_1d(double k3, double alpha, double h, long n) {
  check(k3, alpha, h);
  if (n <= 0) n = trapz_default_terms(alpha, h);
  const real50 a(alpha), H(h), k(k3), k2 = k * k;
  const real50 pi = boost::math::constants::pi<real50>();

  real50 sum = exp(-a * k2) / k2;
  for (long j = 1; j <= n; ++j) {
    real50 x2 = real50(j) * j * H * H + k2;
    sum += 2 * exp(-a * x2) / x2;
  }
  real50 F = pi / k * boost::math::erfc(sqrt(a) * k);
  real50 measured = H * sum - F;
  real50 est = 2 * pi / k / (exp(2 * pi * k / H) - 1);
  return {measured.convert_to<double>(), est.convert_to<double>()};
}

TrapzCheck trapz_error_2d(double k3, double alpha, double h, long n, double C) {
  check(k3, alpha, h);
  if (n <= 0) n = trapz_default_terms(alpha, h);
  const real50 a(alpha), H(h), k(k3), k2 = k * k;
  const real50 pi = boost::math::constants::pi<real50>();

  std::vector<real50> g(n + 1), x2(n + 1);
  for (long j = 0; j <= n; ++j) {
    x2[j] = real50(j) * j * H * H;
    g[j] = exp(-a * x2[j]);
  }
  // quadrant sum with multiplicities 1 (axis) or 2 per coordinate
  real50 sum = 0;
  real50 ek = exp(-a * k2);
  for (long i = 0; i <= n; ++i) {
    real50 wi = i == 0 ? 1 : 2;
    for (long j = 0; j <= n; ++j) {
      real50 wj = j == 0 ? 1 : 2;
      sum += wi * wj * g[i] * g[j] / (x2[i] + x2[j] + k2);
    }
  }
  sum *= ek;
  real50 F = pi * boost::math::expint(1, a * k2);
  real50 measured = H * H * sum - F;
  double est = 2 * std::acos(-1.0) * C * std::exp(-2 * std::acos(-1.0) * k3 / h);
  return {measured.convert_to<double>(), est};
}

}  // namespace se1p
