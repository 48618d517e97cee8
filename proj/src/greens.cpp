#include "se1p/greens.hpp"

#include <cmath>
#include <numbers>

#include "se1p/parallel.hpp"
#include "se1p/specfun.hpp"

namespace se1p {

namespace {

// (1 - J0(x))/x^2 and J1(x)/x by their power series, for x < 1
void small_arg(double x, double& a, double& b) {
  double y = 0.25 * x * x;
  double ta = 0.25, tb = 0.5;  // k = 1 term of a, k = 0 term of b
  a = ta;
  b = tb;
  for (int k = 1; k < 30; ++k) {
    ta *= -y / ((k + 1.0) * (k + 1.0));
    tb *= -y / (k * (k + 1.0));
    a += ta;
    b += tb;
    if (std::abs(ta) < 1e-18 && std::abs(tb) < 1e-18) break;
  }
}

}  // namespace

double ghat(double kappa, double k3, double R) {
  if (!(R > 0)) throw InputError("ghat: R must be positive");
  if (!(kappa >= 0)) throw InputError("ghat: kappa must be >= 0");
  if (k3 != 0) return 1 / (kappa * kappa + k3 * k3);
  double x = R * kappa;
  if (x < 1) {
    double a, b;
    small_arg(x, a, b);
    return R * R * (a - std::log(R) * b);
  }
  return (1 - bessel_j(0, x)) / (kappa * kappa) - R * std::log(R) * bessel_j(1, x) / kappa;
}

double scaling_factor(double kappa, double k3, const ScalingSpec& s) {
  double k2 = kappa * kappa + k3 * k3;
  return std::exp(-(1 - s.eta) * k2 / (4 * s.xi * s.xi)) * ghat(kappa, k3, s.R);
}

namespace {

void check_spec(const ScalingSpec& s) {
  if (!(s.eta < 1)) throw InputError("scaling: eta >= 1 (P*xi^2*h^2/(c^2*pi)); decrease P or xi, or refine M");
  if (!(s.eta > 0) || !(s.xi > 0) || !(s.L3 > 0)) throw InputError("scaling: xi, eta and L3 must be positive");
}

template <class F>
void plane_factors(int S, int n3, double h, const ScalingSpec& s, F&& f) {
  const double twopi = 2 * std::numbers::pi;
  double dk = twopi / (S * h);
  double k3 = twopi * n3 / s.L3;
  for (int i = 0; i < S; ++i) {
    double kx = dk * signed_bin(i, S);
    for (int j = 0; j < S; ++j) {
      double ky = dk * signed_bin(j, S);
      f(std::size_t(i) * S + j, scaling_factor(std::sqrt(kx * kx + ky * ky), k3, s));
    }
  }
}

}  // namespace

void scale_field(SpectralField& spec, const ScalingSpec& s, int threads) {
  check_spec(s);
  parallel_for(spec.planes.size(), threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t n = b; n < e; ++n) {
      auto& pl = spec.planes[n];
      plane_factors(pl.S, pl.n3, spec.h, s, [&](std::size_t i, double f) { pl.data[i] *= f; });
    }
  });
}

std::vector<std::vector<double>> scaling_table(const AftLayout& layout, const ScalingSpec& s) {
  check_spec(s);
  std::vector<std::vector<double>> t(layout.M);
  for (int n = 0; n < layout.M; ++n) {
    int n3 = signed_bin(n, layout.M);
    int S = layout.plane_size(n3);
    t[n].resize(std::size_t(S) * S);
    plane_factors(S, n3, layout.h, s, [&](std::size_t i, double f) { t[n][i] = f; });
  }
  return t;
}

void apply_scaling(SpectralField& spec, const std::vector<std::vector<double>>& table, int threads) {
  if (table.size() != spec.planes.size()) throw InputError("apply_scaling: table does not match field");
  for (std::size_t n = 0; n < table.size(); ++n)
    if (table[n].size() != spec.planes[n].data.size()) throw InputError("apply_scaling: plane size mismatch");
  parallel_for(spec.planes.size(), threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t n = b; n < e; ++n) {
      auto& d = spec.planes[n].data;
      const auto& f = table[n];
      for (std::size_t i = 0; i < d.size(); ++i) d[i] *= f[i];
    }
  });
}

void scale_field(SpectralField& spec, const SolverParams& p, int threads) {
  scale_field(spec, ScalingSpec::from(p), threads);
}

}  // namespace se1p
