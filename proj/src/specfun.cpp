#include "se1p/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "se1p/model.hpp"

namespace se1p {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InputError("gauss_legendre: n must be >= 1");
  if (!(a < b)) throw InputError("gauss_legendre: degenerate interval");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1, p1 = 0;
    for (int k = 1; k <= n; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1);
    double wi = 2 / ((1 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0;

  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = c + hw * x[i];
    r.weights[i] = hw * w[i];
  }
  return r;
}

double erfc(double x) { return std::erfc(x); }

double bessel_j(int order, double x) {
  if (!(x >= 0) || !std::isfinite(x)) throw InputError("bessel_j: x must be finite and >= 0");
  if (order == 0) return ::j0(x);
  if (order == 1) return ::j1(x);
  throw InputError("bessel_j: only orders 0 and 1");
}

double bessel_k0(double x) {
  if (!(x > 0)) throw InputError("bessel_k0: x must be > 0");
  if (x <= 2) {
    double y = 0.25 * x * x;
    double term = 1, i0 = 1, hk = 0, sum = 0;
    for (int k = 1; k < 60; ++k) {
      term *= y / (double(k) * k);
      hk += 1.0 / k;
      i0 += term;
      sum += term * hk;
      if (term * hk < 1e-18 * sum) break;
    }
    return -(std::log(0.5 * x) + kEulerGamma) * i0 + sum;
  }
  // K0(x) = e^-x int_0^inf exp(-2x sinh^2(t/2)) dt, trapezoidal rule
  double h = std::min(0.1, 0.5 / std::sqrt(x));
  double s = 0.5;
  for (int j = 1;; ++j) {
    double sh = std::sinh(0.5 * j * h);
    double f = std::exp(-2 * x * sh * sh);
    s += f;
    if (f < 1e-19) break;
  }
  return std::exp(-x) * h * s;
}

double e1_series(double x) {
  double term = 1, sum = 0;
  for (int m = 1; m < 200; ++m) {
    term *= -x / m;
    double t = term / m;
    sum += t;
    if (std::abs(t) < 1e-18 * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(x) - sum;
}

double e1_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1, c = 1 / tiny, d = 1 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -double(i) * i;
    b += 2;
    d = 1 / (an * d + b);
    c = b + an / c;
    double del = c * d;
    h *= del;
    if (std::abs(del - 1) < 1e-16) break;
  }
  return h * std::exp(-x);
}

double exp_int_e1(double x) {
  if (!(x > 0)) throw InputError("exp_int_e1: x must be > 0");
  if (x > 34) return 0;
  return x < 1 ? e1_series(x) : e1_continued_fraction(x);
}

double ein_bar(double x) {
  if (x < 0) throw InputError("ein_bar: x must be >= 0");
  if (x == 0) return 0;
  if (x < 1) {
    double term = 1, sum = 0;
    for (int m = 1; m < 200; ++m) {
      term *= -x / m;
      double t = term / m;
      sum += t;
      if (std::abs(t) < 1e-18 * std::abs(sum)) break;
    }
    return -sum;
  }
  return kEulerGamma + std::log(x) + exp_int_e1(x);
}

namespace {

constexpr int kPanelNodes = 20;
constexpr double kPanelWidth = 1.0;
// integrand below exp(peak - kDrop) is dropped
constexpr double kDrop = 42.0;

struct Panel {
  std::vector<double> x, w;  // reference rule on [-1, 1]
};

const Panel& reference_panel() {
  static const Panel p = [] {
    auto r = gauss_legendre(kPanelNodes, -1, 1);
    return Panel{r.nodes, r.weights};
  }();
  return p;
}

// int over u in [u0, u1] of exp(-a e^-u - b e^u) (1, e^u), i.e. both K0 and D pieces on t = e^u.
// u0 may be -inf.
void log_segment(double a, double b, double u0, double u1, double& k0, double& d) {
  auto phi = [&](double u) { return -a * std::exp(-u) - b * std::exp(u); };
  double ustar = b > 0 ? 0.5 * std::log(a / b) : u1;
  double upk = std::clamp(ustar, u0, u1);
  double peak = phi(upk);

  // the exponent is concave: march outward from the peak to the cutoff
  double lo = upk;
  while (lo > u0 && phi(lo) > peak - kDrop) lo -= kPanelWidth;
  lo = std::max(lo, u0);
  double hi = upk;
  while (hi < u1 && phi(hi) > peak - kDrop) hi += kPanelWidth;
  hi = std::min(hi, u1);
  if (!(hi > lo)) return;

  const auto& ref = reference_panel();
  int np = std::max(1, static_cast<int>(std::ceil((hi - lo) / kPanelWidth)));
  double width = (hi - lo) / np;
  for (int p = 0; p < np; ++p) {
    double c = lo + (p + 0.5) * width, hw = 0.5 * width;
    for (int i = 0; i < kPanelNodes; ++i) {
      double u = c + hw * ref.x[i];
      double g = std::exp(phi(u)) * hw * ref.w[i];
      k0 += g;
      d += g * std::exp(u);
    }
  }
}

double split_k0(double a, double b, double v) {
  double k0 = 0, d = 0;
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  if (v > 0 && v < 1) {
    double lv = std::log(v);
    log_segment(a, b, ninf, lv, k0, d);
    log_segment(a, b, lv, 0.0, k0, d);
  } else {
    log_segment(a, b, ninf, 0.0, k0, d);
  }
  return k0;
}

}  // namespace

double incomplete_k0(double a, double b) {
  if (!(a > 0)) throw InputError("incomplete_k0: a must be > 0");
  if (b < 0) throw InputError("incomplete_k0: b must be >= 0");
  if (a >= b) return split_k0(a, b, std::min(std::sqrt(b), 1.0));
  double v = std::min(b * std::sqrt(b / a), 1.0);
  return 2 * bessel_k0(2 * std::sqrt(a * b)) - split_k0(b, a, v);
}

IncompleteK0Pair incomplete_k0_pair(double a, double b) {
  if (!(a > 0)) throw InputError("incomplete_k0_pair: a must be > 0");
  if (b < 0) throw InputError("incomplete_k0_pair: b must be >= 0");
  IncompleteK0Pair r{0, 0};
  log_segment(a, b, -std::numeric_limits<double>::infinity(), 0.0, r.k0, r.d);
  return r;
}

double lambert_w0(double x) {
  if (!(x >= 0)) throw InputError("lambert_w0: x must be >= 0");
  if (x == 0) return 0;
  if (std::isinf(x)) return x;
  double w = x < std::numbers::e ? std::log1p(x) : std::log(x) - std::log(std::log(x));
  if (x < std::numbers::e) w *= 0.6;
  for (int it = 0; it < 100; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double dw = f / (ew * (w + 1) - (w + 2) * f / (2 * w + 2));
    w -= dw;
    if (std::abs(dw) <= 1e-16 * (1 + std::abs(w))) break;
  }
  return w;
}

}  // namespace se1p
