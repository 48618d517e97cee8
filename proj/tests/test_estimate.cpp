#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "se1p/estimate.hpp"
#include "se1p/gridding.hpp"

using namespace se1p;
using ld = long double;

namespace {

constexpr ld kPi = std::numbers::pi_v<ld>;
constexpr ld kC = 0.95L;

void check_invariants(const SolverParams& p) {
  CHECK(p.M % 2 == 0);
  CHECK(p.P % 2 == 0);
  CHECK(p.P <= p.M);
  CHECK(p.nl >= 0);
  CHECK(p.nl <= p.M / 2);
  CHECK(p.h == p.box[2] / p.M);
  CHECK(std::abs(p.Ltilde / p.Mtilde - p.h) <= 1e-15 * p.h);
  CHECK(p.Mtilde * p.h >= std::max(p.box[0], p.box[1]) + p.P * p.h - 1e-12);
  CHECK(p.sl() >= 1.0);
  CHECK(p.s0() >= 1 + std::sqrt(2.0) - 1.0 / p.Mtilde);
  CHECK(std::abs(p.R - std::sqrt(2.0) * p.Ltilde) <= 1e-14 * p.R);
  CHECK(std::abs(p.eta - p.P * p.xi * p.xi * p.h * p.h / (0.95 * 0.95 * std::numbers::pi)) <= 1e-15 * p.eta);
}

}  // namespace

TEST_CASE("rms_error") {
  std::vector<double> a{1, 2, 3}, z{0, 0};
  CHECK(rms_error(a, a, false) == 0.0);
  CHECK(rms_error(a, a, true) == 0.0);
  CHECK(rms_error(std::vector<double>{1, 1}, z, false) == 1.0);
  std::vector<double> ref{3, -1, 4, 1, -5, 9}, v = ref;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += (i * 7 % 3 ? 1 : -1) * 1e-3;
  CHECK(std::abs(rms_error(v, ref, false) - 1e-3) <= 1e-15);
  CHECK(std::abs(rms_error(v, ref, true) - 1e-3 / std::sqrt(133.0 / 6)) <= 1e-15);
  CHECK_THROWS_AS(rms_error(a, z, false), InputError);
  CHECK_THROWS_AS(rms_error(z, z, true), InputError);
  CHECK_THROWS_AS(rms_error(std::vector<double>{}, std::vector<double>{}, false), InputError);
}

TEST_CASE("truncation estimates against extended-precision formulas") {
  ld xi = 7, rc = 0.5, L = 2;
  ld real = std::sqrt(rc / (2 * L * L * L)) * std::exp(-xi * xi * rc * rc) / (xi * xi * rc * rc);
  CHECK(std::abs(est_real_trunc(7, 0.5, 1, 2) - double(real)) <= 1e-15 * double(real));

  ld x2 = 3.14L, k = 10, g = kPi * k / (x2 * L);
  ld four = x2 / (kPi * kPi) * std::pow(k, -1.5L) * std::exp(-g * g);
  CHECK(std::abs(est_fourier_trunc(3.14, 10, 1, 2) - double(four)) <= 1e-14 * double(four));

  // Q enters as a square root in both
  CHECK(std::abs(est_real_trunc(7, 0.5, 4, 2) / est_real_trunc(7, 0.5, 1, 2) - 2) <= 1e-14);
  CHECK(std::abs(est_fourier_trunc(3.14, 10, 9, 2) / est_fourier_trunc(3.14, 10, 1, 2) - 3) <= 1e-14);

  double prev = est_real_trunc(7, 0.25, 1, 2);
  for (double r : {0.3, 0.5, 0.8}) {
    double e = est_real_trunc(7, r, 1, 2);
    CHECK(e < prev);
    prev = e;
  }
  prev = est_fourier_trunc(3.14, 2, 1, 2);
  for (int kk = 3; kk <= 30; ++kk) {
    double e = est_fourier_trunc(3.14, kk, 1, 2);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("approximation estimate") {
  CHECK(std::abs(est_approx(12) - 4.3e-8) <= 0.1 * 4.3e-8);
  CHECK(std::abs(est_approx(12) - double(std::exp(-kC * kC * kPi * 6))) <= 1e-14 * 4.3e-8);
  ld e24 = std::exp(-kC * kC * kPi * 12);
  CHECK(std::abs(est_approx(24) - double(e24)) <= 1e-14 * double(e24));
  double ratio = std::exp(-0.95 * 0.95 * std::numbers::pi);
  for (int P = 1; P <= 40; ++P) CHECK(std::abs(est_approx(P + 2) / est_approx(P) - ratio) <= 1e-13 * ratio);
  CHECK_THROWS_AS(est_approx(0), InputError);
}

TEST_CASE("Lambert W inversions round trip") {
  for (double tol : {1e-3, 1e-6, 1e-9, 1e-12, 1e-15})
    for (double xi : {1.0, 3.0, 7.0})
      for (double L : {1.0, 2.0, 10.0}) {
        double rc = rc_for_tol(tol, xi, 1, L);
        CHECK(est_real_trunc(xi, rc, 1, L) <= 1.01 * tol);
        CHECK(est_real_trunc(xi, rc, 1, L) >= 0.99 * tol);
        double k = kinf_for_tol(tol, xi, 1, L);
        CHECK(est_fourier_trunc(xi, k, 1, L) <= 1.01 * tol);
        CHECK(est_fourier_trunc(xi, k, 1, L) >= 0.99 * tol);
      }
  CHECK_THROWS_AS(rc_for_tol(0, 1, 1, 1), InputError);
  CHECK_THROWS_AS(kinf_for_tol(1e-6, -1, 1, 1), InputError);
}

TEST_CASE("make_params derived fields and validation") {
  auto p = make_params({10, 10, 10}, 1.5, 1.9, 32, 12, 3, 88, 106);
  CHECK(p.h == 10.0 / 32);
  CHECK(p.Mfree == 32);
  CHECK(p.Mtilde == 44);
  CHECK(p.Ltilde == doctest::Approx(13.75));
  CHECK(p.sl() == 2.0);
  CHECK(std::abs(p.eta - 0.92997) <= 1e-5);
  check_invariants(p);

  // wide free directions extend the plane grid
  auto w = make_params({3, 2, 1}, 4, 0.4, 20, 8, 2, 200, 200);
  CHECK(w.Mfree == 60);
  CHECK(w.Mtilde == 68);

  CHECK(padded_size(2.4, 44) == 106);
  CHECK(padded_size(2.0, 44) == 88);
  CHECK(padded_size(1.0, 45) == 46);

  CHECK_THROWS_AS(make_params({1, 1, 1}, 1, 0.3, 31, 8, 2, 80, 100), InputError);   // odd M
  CHECK_THROWS_AS(make_params({1, 1, 1}, 1, 0.3, 32, 9, 2, 80, 100), InputError);   // odd P
  CHECK_THROWS_AS(make_params({1, 1, 1}, 1, 0.3, 8, 10, 2, 80, 100), InputError);   // P > M
  CHECK_THROWS_AS(make_params({1, 1, 1}, 1, 0.3, 32, 8, 16, 80, 100), InputError);  // nl too big
  CHECK_THROWS_AS(make_params({1, 1, 1}, 1, 0.3, 32, 8, 2, 39, 100), InputError);   // sl < 1
  CHECK_THROWS_AS(make_params({1, 1, 1}, 1, 0.3, 32, 8, 2, 80, 90), InputError);    // s0 < 1+sqrt2
  CHECK_THROWS_AS(make_params({1, 0, 1}, 1, 0.3, 32, 8, 2, 80, 100), InputError);
  CHECK_THROWS_AS(make_params({1, 1, 1}, 0, 0.3, 32, 8, 2, 80, 100), InputError);
}

TEST_CASE("select_params: first sample setting") {
  auto p = select_params(1e-6, 1.5, 1, {10, 10, 10});
  CHECK(p.M == 32);
  CHECK(p.P == 12);
  CHECK(p.Mtilde == 44);
  CHECK(p.nl == 3);
  CHECK(std::abs(p.sl() - 2) <= 0.3);
  CHECK(std::abs(p.Sl - 88) <= 0.3 * 44);
  CHECK(p.S0 == 106);
  check_invariants(p);
}

TEST_CASE("select_params: second sample setting follows the recipe rules") {
  const double tol = 1e-12, xi = 3;
  auto p = select_params(tol, xi, 1, {10, 10, 10});
  int M = 2 * int(std::ceil(kinf_for_tol(tol / 10, xi, 1, 10)));
  CHECK(p.M == M + M % 2);
  CHECK(est_approx(p.P) <= tol / 10);
  CHECK(est_approx(p.P - 2) > tol / 10);
  CHECK(p.Mtilde == p.M + p.P);
  CHECK(p.sl() >= -std::log(tol) / (2 * std::numbers::pi));
  CHECK(p.Sl == padded_size(-std::log(tol) / (2 * std::numbers::pi), p.Mtilde));
  // s0 = 2.4 unless the zero-mode aliasing bound needs the next even plane size
  int bound = int(std::ceil((1 + std::sqrt(2.0)) * p.Mtilde - 1));
  CHECK(p.S0 == std::max(padded_size(2.4, p.Mtilde), bound + bound % 2));
  CHECK(std::abs(p.s0() - 2.4) <= 3.0 / p.Mtilde);
  CHECK(p.eta < 1);
  check_invariants(p);
}

TEST_CASE("select_params: second sample setting against the tabulated values") {
  auto p = select_params(1e-12, 3, 1, {10, 10, 10});
  CHECK(std::abs(p.M - 96) <= 1);
  CHECK(std::abs(p.Mtilde - 120) <= 1);
  CHECK(p.P == 24);
  CHECK(std::abs(p.nl - 14) <= 1);
  CHECK(std::abs(p.sl() - 3.9) <= 0.3);
}

TEST_CASE("select_params: loose tolerance and options") {
  auto p = select_params(1, 8, 1, {1, 1, 1});
  CHECK(p.P == 2);
  CHECK(p.sl() == doctest::Approx(1.0).epsilon(2.0 / p.Mtilde));
  check_invariants(p);

  auto q = select_params(1e-6, 1.5, 1, {10, 10, 10}, {.nl = 5});
  CHECK(q.nl == 5);

  for (double tol : {1e-2, 1e-4, 1e-8, 1e-10})
    for (double xi : {6.0, 8.0, 12.0}) check_invariants(select_params(tol, xi, 1, {1, 1, 2}));

  CHECK_THROWS_AS(select_params(0, 1, 1, {1, 1, 1}), InputError);
  CHECK_THROWS_AS(select_params(2, 1, 1, {1, 1, 1}), InputError);
  CHECK_THROWS_AS(select_params(1e-6, 0, 1, {1, 1, 1}), InputError);
  // tiny xi L: window cannot fit in the grid
  CHECK_THROWS_AS(select_params(1e-12, 0.05, 1, {1, 1, 1}), InputError);
}
