#pragma once

#include <vector>

namespace se1p {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

double erfc(double x);

// J0 or J1, x >= 0.
double bessel_j(int order, double x);

// Modified Bessel function of the second kind, order zero.
double bessel_k0(double x);

// E1(x) = int_x^inf e^-t / t dt; exactly 0 beyond x = 34.
double exp_int_e1(double x);
double e1_series(double x);
double e1_continued_fraction(double x);

// gamma + log(x) + E1(x), accurate as x -> 0.
double ein_bar(double x);

// K0(a,b) = int_0^1 exp(-a/t - b t) dt/t
double incomplete_k0(double a, double b);

struct IncompleteK0Pair {
  double k0;  // K0(a,b)
  double d;   // int_0^1 exp(-a/t - b t) dt = -dK0/db
};

IncompleteK0Pair incomplete_k0_pair(double a, double b);

// Principal branch of w e^w = x for x >= 0.
double lambert_w0(double x);

}  // namespace se1p
