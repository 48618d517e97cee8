#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "se1p/model.hpp"
#include "se1p/specfun.hpp"

using namespace se1p;
using ld = long double;

namespace {

// Power series oracles in extended precision.
ld erf_series(ld x) {
  ld term = x, sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    sum += term / (2 * n + 1);
  }
  return 2 / std::sqrt(std::numbers::pi_v<ld>) * sum;
}

ld bessel_series(int order, ld x) {
  ld term = order == 0 ? 1 : x / 2, sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -(x * x / 4) / (ld(k) * (k + order));
    sum += term;
  }
  return sum;
}

ld e1_oracle(ld x) {
  ld term = 1, sum = 0;
  for (int n = 1; n < 300; ++n) {
    term *= -x / n;
    sum += term / n;
  }
  return -0.5772156649015328606065120900824024L - std::log(x) - sum;
}

ld lambert_oracle(ld x) {
  ld w = std::log1p(x);
  for (int i = 0; i < 100; ++i) w -= (w * std::exp(w) - x) / (std::exp(w) * (1 + w));
  return w;
}

// Independent quadrature of int_0^1 exp(-a/t - b t) dt / t.
double k0_oracle(double a, double b) {
  auto f = [&](double t) { return t > 0 ? std::exp(-a / t - b * t) / t : 0.0; };
  double s = 0;
  const int panels = 64;
  for (int i = 0; i < panels; ++i)
    s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, double(i) / panels, double(i + 1) / panels,
                                                                        10, 1e-15);
  return s;
}

// K0(1,1), frozen from the 128-node composite quadrature oracle.
constexpr double kK0_11 = 0.11389387274953346;

}  // namespace

TEST_CASE("erfc") {
  CHECK(se1p::erfc(0) == 1.0);
  CHECK(se1p::erfc(40) == 0.0);
  CHECK(std::abs(se1p::erfc(1) - 0.15729920705028513) <= 1e-15);
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    CHECK(std::abs(se1p::erfc(x) - double(1 - erf_series(x))) <= 1e-15);
    CHECK(std::abs(se1p::erfc(-x) - (2 - se1p::erfc(x))) <= 1e-15);
  }
}

TEST_CASE("Bessel J") {
  CHECK(bessel_j(0, 0) == 1.0);
  CHECK(bessel_j(1, 0) == 0.0);
  CHECK(std::abs(bessel_j(1, 1) - double(bessel_series(1, 1))) <= 1e-15);
  CHECK(std::abs(bessel_j(1, 1) - 0.4400505857449335) <= 1e-15);

  // first zero of J0 by bisection on the series
  ld lo = 2, hi = 3;
  for (int i = 0; i < 80; ++i) {
    ld mid = (lo + hi) / 2;
    (bessel_series(0, mid) > 0 ? lo : hi) = mid;
  }
  CHECK(std::abs(double(lo) - 2.404825557695773) <= 1e-15);
  CHECK(std::abs(bessel_j(0, double(lo))) <= 1e-15);

  for (double x : {0.3, 7.0, 55.5, 300.0, 2500.0, 1e4})
    for (int n : {0, 1}) CHECK(std::abs(bessel_j(n, x) - boost::math::cyl_bessel_j(n, x)) <= 1e-13);
  CHECK_THROWS_AS(bessel_j(2, 1.0), InputError);
  CHECK_THROWS_AS(bessel_j(0, -1.0), InputError);
}

TEST_CASE("complete k0") {
  for (double x : {1e-3, 0.1, 0.7, 1.9, 2.0, 2.1, 5.0, 20.0, 200.0}) {
    double ref = boost::math::cyl_bessel_k(0, x);
    CHECK(std::abs(bessel_k0(x) - ref) <= 2e-15 * ref);
  }
}

TEST_CASE("exponential integral") {
  CHECK(std::abs(exp_int_e1(1) - double(e1_oracle(1))) <= 1e-14 * double(e1_oracle(1)));
  CHECK(std::abs(exp_int_e1(1) - 0.21938393439552029) <= 1e-14 * 0.22);
  CHECK(exp_int_e1(40) == 0.0);
  CHECK(exp_int_e1(34.5) == 0.0);
  CHECK_THROWS_AS(exp_int_e1(0), InputError);
  CHECK_THROWS_AS(exp_int_e1(-1), InputError);

  // gamma + log x + E1(x) = x - x^2/4 + ..., so it is 1e-8 (not 0) at x = 1e-8
  const double x = 1e-8;
  CHECK(std::abs(kEulerGamma + std::log(x) + exp_int_e1(x) - x) <= 1e-12);
  CHECK(std::abs(ein_bar(x) - (x - x * x / 4)) <= 1e-15 * x);
  CHECK(ein_bar(0) == 0.0);

  for (double v : {1e-6, 0.01, 0.3, 0.99, 1.0, 1.5, 4.0, 12.0, 30.0}) {
    double ref = boost::math::expint(1, v);
    CHECK(std::abs(exp_int_e1(v) - ref) <= 1e-14 * ref);
  }
  for (double v = 0.9; v <= 1.1; v += 0.01) {
    double a = e1_series(v), b = e1_continued_fraction(v);
    CHECK(std::abs(a - b) <= 1e-13 * a);
  }
}

TEST_CASE("incomplete K0") {
  for (double a : {0.01, 0.5, 3.0, 20.0}) CHECK(std::abs(incomplete_k0(a, 0) - exp_int_e1(a)) <= 1e-15);

  for (double a : {0.5, 1.0, 5.0})
    for (double b : {0.5, 1.0, 5.0}) {
      double id = 2 * bessel_k0(2 * std::sqrt(a * b)) - incomplete_k0(b, a);
      CHECK(std::abs(incomplete_k0(a, b) - id) <= 1e-13);
    }

  CHECK(std::abs(k0_oracle(1, 1) - kK0_11) <= 1e-15);
  CHECK(std::abs(incomplete_k0(1, 1) - kK0_11) <= 1e-14);

  for (double a : {1e-3, 0.05, 0.8, 4.0, 30.0})
    for (double b : {0.0, 1e-3, 0.3, 2.0, 60.0}) CHECK(std::abs(incomplete_k0(a, b) - k0_oracle(a, b)) <= 1e-14);

  CHECK_THROWS_AS(incomplete_k0(0, 1), InputError);
  CHECK_THROWS_AS(incomplete_k0(1, -1), InputError);
}

TEST_CASE("incomplete K0 symmetry identity over a log grid") {
  double worst = 0;
  for (int i = 0; i <= 24; ++i)
    for (int j = 0; j <= 24; ++j) {
      double a = std::pow(10.0, -3 + 0.25 * i), b = std::pow(10.0, -3 + 0.25 * j);
      double id = 2 * bessel_k0(2 * std::sqrt(a * b)) - incomplete_k0(b, a);
      worst = std::max(worst, std::abs(incomplete_k0(a, b) - id));
    }
  CHECK(worst <= 1e-13);
}

TEST_CASE("incomplete K0 with its b-derivative") {
  for (double a : {0.01, 1.0, 9.0})
    for (double b : {0.0, 0.2, 3.0}) {
      auto r = incomplete_k0_pair(a, b);
      auto f = [&](double t) { return std::exp(-a / t - b * t); };
      double d = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 12, 1e-15);
      CHECK(std::abs(r.k0 - incomplete_k0(a, b)) <= 1e-14);
      CHECK(std::abs(r.d - d) <= 1e-14);
    }
}

TEST_CASE("Lambert W") {
  CHECK(lambert_w0(0) == 0.0);
  CHECK(std::abs(lambert_w0(std::numbers::e) - 1) <= 1e-15);
  CHECK(std::abs(lambert_w0(1) - double(lambert_oracle(1))) <= 1e-15);
  CHECK(std::abs(lambert_w0(1) - 0.5671432904097838) <= 1e-15);
  CHECK_THROWS_AS(lambert_w0(-0.1), InputError);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-6, 12);
  for (int k = 0; k < 300; ++k) {
    double x = std::pow(10.0, U(rng));
    double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-14 * std::max(1.0, x));
  }
}

TEST_CASE("Gauss-Legendre") {
  auto mid = gauss_legendre(1, 2, 5);
  REQUIRE(mid.nodes.size() == 1);
  CHECK(mid.nodes[0] == 3.5);
  CHECK(mid.weights[0] == 3.0);

  auto r2 = gauss_legendre(2, 0, 1);
  CHECK(std::abs(r2.integrate([](double x) { return x * x * x; }) - 0.25) <= 1e-15);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n = 1; n <= 40; ++n) {
    auto r = gauss_legendre(n, -0.5, 2.0);
    double ws = 0;
    for (double w : r.weights) {
      CHECK(w > 0);
      ws += w;
    }
    CHECK(std::abs(ws - 2.5) <= 1e-14 * 2.5);
    for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    // random polynomial of degree 2n-1, integrated exactly
    std::vector<double> c(2 * n);
    for (auto& v : c) v = U(rng);
    auto poly = [&](double x) {
      double s = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
      return s;
    };
    double exact = 0;
    for (std::size_t k = 0; k < c.size(); ++k)
      exact += c[k] * (std::pow(2.0, double(k + 1)) - std::pow(-0.5, double(k + 1))) / double(k + 1);
    double scale = 0;
    for (std::size_t k = 0; k < c.size(); ++k) scale += std::abs(c[k]) * std::pow(2.0, double(k + 1)) / double(k + 1);
    CHECK(std::abs(r.integrate(poly) - exact) <= 1e-14 * scale);
  }

  // 64 nodes on [0, 1/4] and [1/4, 1] reproduce the K0(1,1) fixture
  auto f = [](double t) { return std::exp(-1 / t - t) / t; };
  double s = gauss_legendre(64, 0, 0.25).integrate(f) + gauss_legendre(64, 0.25, 1).integrate(f);
  CHECK(std::abs(s - kK0_11) <= 1e-15);

  CHECK_THROWS_AS(gauss_legendre(0, 0, 1), InputError);
  CHECK_THROWS_AS(gauss_legendre(3, 1, 1), InputError);
}
