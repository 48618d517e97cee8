#pragma once

#include <optional>
#include <span>

#include "se1p/model.hpp"

namespace se1p {

inline constexpr double kWindowShape = 0.95;  // c in eta = P xi^2 h^2 / (c^2 pi)

// Everything the k-space pipeline consumes. Build with make_params so the derived fields
// stay consistent.
struct SolverParams {
  Vec3 box{};
  double xi = 0;
  double rc = 0;
  int M = 0;   // grid points along z
  int P = 0;   // Gaussian support points per dimension
  int nl = 0;  // local pad size
  int Sl = 0;  // plane size for |k3| in the local pad set (sl * Mtilde)
  int S0 = 0;  // plane size for k3 = 0 (s0 * Mtilde)

  double h = 0;
  int Mfree = 0;   // grid points covering the free directions
  int Mtilde = 0;  // Mfree + P
  double Ltilde = 0;
  double R = 0;
  double eta = 0;

  double sl() const { return double(Sl) / Mtilde; }
  double s0() const { return double(S0) / Mtilde; }
};

SolverParams make_params(const Vec3& box, double xi, double rc, int M, int P, int nl, int Sl, int S0);

// Smallest even integer >= s * Mtilde.
int padded_size(double s, int Mtilde);

// Same as make_params with oversampling factors instead of plane sizes.
SolverParams make_params_s(const Vec3& box, double xi, double rc, int M, int P, int nl, double sl, double s0);

double rms_error(std::span<const double> values, std::span<const double> reference, bool relative);

double est_real_trunc(double xi, double rc, double Q, double L);
double est_fourier_trunc(double xi, double kinf, double Q, double L);
double est_approx(int P);

// Inverses of the two truncation estimates.
double rc_for_tol(double tol, double xi, double Q, double L);
double kinf_for_tol(double tol, double xi, double Q, double L);

struct SelectOptions {
  std::optional<int> nl;
};

SolverParams select_params(double tol, double xi, double Q, const Vec3& box, const SelectOptions& opt = {});

}  // namespace se1p
