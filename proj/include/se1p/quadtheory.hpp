#pragma once

namespace se1p {

struct TrapzCheck {
  double measured;  // T_h - F
  double estimate;
};

// Terms per side used when n = 0: |j| h up to 9 / sqrt(alpha).
long trapz_default_terms(double alpha, double h);

// Trapezoidal rule for int exp(-alpha(k^2+k3^2))/(k^2+k3^2) dk; estimate is the closed-form
// error (2 pi / k3) / (exp(2 pi k3 / h) - 1).
TrapzCheck trapz_error_1d(double k3, double alpha, double h, long n = 0);

// Tensor trapezoidal rule for the same integrand over R^2 against pi E1(alpha k3^2);
// estimate is the heuristic 2 pi C exp(-2 pi k3 / h).
TrapzCheck trapz_error_2d(double k3, double alpha, double h, long n = 0, double C = 1);

}  // namespace se1p
