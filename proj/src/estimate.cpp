#include "se1p/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <numbers>
#include <string>

#include "se1p/gridding.hpp"
#include "se1p/specfun.hpp"

namespace se1p {

using std::numbers::pi;

SolverParams make_params(const Vec3& box, double xi, double rc, int M, int P, int nl, int Sl, int S0) {
  for (double L : box)
    if (!(L > 0)) throw InputError("box lengths must be positive");
  if (!(xi > 0)) throw InputError("xi must be positive");
  if (!(rc > 0)) throw InputError("rc must be positive");
  if (M < 2 || M % 2) throw InputError("M must be even and >= 2");
  if (P < 2 || P % 2) throw InputError("P must be even and >= 2");
  if (P > M) throw InputError("P must not exceed M");
  if (nl < 0 || nl > M / 2 - 1) throw InputError("nl must lie in [0, M/2-1]");

  SolverParams p;
  p.box = box;
  p.xi = xi;
  p.rc = rc;
  p.M = M;
  p.P = P;
  p.nl = nl;
  p.h = box[2] / M;
  double wide = std::max(box[0], box[1]) / p.h;
  p.Mfree = static_cast<int>(std::ceil(wide - 1e-9 * wide));
  p.Mtilde = p.Mfree + P;
  p.Ltilde = p.Mtilde * p.h;
  p.R = std::sqrt(2.0) * p.Ltilde;
  p.eta = compute_eta(P, xi, p.h);

  if (Sl < p.Mtilde) throw InputError("local plane size below Mtilde (sl < 1)");
  // periodic images of the truncated zero-mode kernel must not reach the data
  if (S0 < (1 + std::sqrt(2.0)) * p.Mtilde - 1)
    throw InputError("zero-mode plane size " + std::to_string(S0) + " too small for Mtilde=" +
                     std::to_string(p.Mtilde) + " (needs s0 >= 1+sqrt(2))");
  p.Sl = Sl;
  p.S0 = S0;
  return p;
}

int padded_size(double s, int Mtilde) {
  double x = s * Mtilde;
  auto n = static_cast<int>(std::ceil(x - 1e-9 * x));
  return n % 2 ? n + 1 : n;
}

SolverParams make_params_s(const Vec3& box, double xi, double rc, int M, int P, int nl, double sl, double s0) {
  // Mtilde does not depend on the plane sizes
  double h = box[2] / M;
  double wide = std::max(box[0], box[1]) / h;
  int Mtilde = static_cast<int>(std::ceil(wide - 1e-9 * wide)) + P;
  return make_params(box, xi, rc, M, P, nl, padded_size(sl, Mtilde), padded_size(s0, Mtilde));
}

double rms_error(std::span<const double> values, std::span<const double> reference, bool relative) {
  if (values.size() != reference.size()) throw InputError("rms_error: length mismatch");
  if (values.empty()) throw InputError("rms_error: empty input");
  double e = 0, r = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double d = values[i] - reference[i];
    e += d * d;
    r += reference[i] * reference[i];
  }
  double n = static_cast<double>(values.size());
  double rms = std::sqrt(e / n);
  if (!relative) return rms;
  if (r == 0) throw InputError("rms_error: zero reference norm");
  return rms / std::sqrt(r / n);
}

double est_real_trunc(double xi, double rc, double Q, double L) {
  double xr = xi * rc;
  return std::sqrt(Q * rc / (2 * L * L * L)) * std::exp(-xr * xr) / (xr * xr);
}

double est_fourier_trunc(double xi, double kinf, double Q, double L) {
  double g = pi * kinf / (xi * L);
  return xi / (pi * pi) * std::pow(kinf, -1.5) * std::sqrt(Q) * std::exp(-g * g);
}

double est_approx(int P) {
  if (P < 1) throw InputError("est_approx: P must be >= 1");
  double c = kWindowShape;
  return std::exp(-c * c * pi * P / 2);
}

double rc_for_tol(double tol, double xi, double Q, double L) {
  if (!(tol > 0) || !(xi > 0) || !(Q > 0) || !(L > 0)) throw InputError("rc_for_tol: arguments must be positive");
  double C = Q / (2 * L * L * L * xi * tol * tol);
  double w = lambert_w0(4.0 / 3.0 * std::pow(C, 2.0 / 3.0));
  return std::sqrt(3 * w) / (2 * xi);
}

double kinf_for_tol(double tol, double xi, double Q, double L) {
  if (!(tol > 0) || !(xi > 0) || !(Q > 0) || !(L > 0)) throw InputError("kinf_for_tol: arguments must be positive");
  double D = 4.0 / (3 * L * L) * std::pow(Q / pi, 2.0 / 3.0);
  double w = lambert_w0(D / std::pow(xi * tol * tol, 2.0 / 3.0));
  return std::sqrt(3.0) * L * xi / (2 * pi) * std::sqrt(w);
}

SolverParams select_params(double tol, double xi, double Q, const Vec3& box, const SelectOptions& opt) {
  if (!(tol > 0) || tol > 1) throw InputError("select_params: tol must lie in (0, 1]");
  if (!(xi > 0)) throw InputError("select_params: xi must be positive");
  if (!(Q > 0)) throw InputError("select_params: Q must be positive");

  // grid and window budgets each get a tenth of the tolerance
  double sub = tol / 10;
  double L3 = box[2];
  double Lvol = std::cbrt(box[0] * box[1] * box[2]);

  int M = 2 * static_cast<int>(std::ceil(kinf_for_tol(sub, xi, Q, L3)));
  if (M < 2) M = 2;
  int P = 2;
  while (est_approx(P) > sub) P += 2;
  if (P > M) {
    std::ostringstream msg;
    msg << "tolerance " << tol << " needs P=" << P << " > M=" << M << "; increase xi";
    throw InputError(msg.str());
  }

  int nl = opt.nl ? *opt.nl : std::max(0, std::min(static_cast<int>(std::floor(M / 10.0 + 0.5)), M / 2 - 1));

  double sl = std::max(1.0, -std::log(tol) / (2 * pi));
  double rc = rc_for_tol(tol, xi, Q, Lvol);
  // s0 ~ 2.4, raised when 2.4 falls short of the zero-mode aliasing bound for this Mtilde
  auto p = make_params_s(box, xi, rc, M, P, nl, sl, 2.5);
  auto need = static_cast<int>(std::ceil((1 + std::sqrt(2.0)) * p.Mtilde - 1));
  need += need % 2;
  return make_params(box, xi, rc, M, P, nl, p.Sl, std::max(padded_size(2.4, p.Mtilde), need));
}

}  // namespace se1p
