#include "se1p/direct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "se1p/estimate.hpp"
#include "se1p/parallel.hpp"
#include "se1p/specfun.hpp"

namespace se1p {

using std::numbers::pi;

namespace {

struct Kernel {
  double g = 0;
  Vec3 grad{0, 0, 0};
};

void check_config(const DirectConfig& cfg) {
  if (!(cfg.xi > 0)) throw InputError("direct: xi must be positive");
  if (cfg.image_layers < 1) throw InputError("direct: image_layers must be >= 1");
  if (cfg.kinf < 1) throw InputError("direct: kinf must be >= 1");
}

// Potential at displacement d from a unit charge (and its gradient in d), periodic in z.
// skip_origin drops the alpha = 0 real-space image (the particle's own charge).
Kernel pair_kernel(const Vec3& d, double L3, const DirectConfig& cfg, unsigned terms, bool want_grad,
                   bool skip_origin = false) {
  Kernel K;
  const double xi = cfg.xi;
  const double rho2 = d[0] * d[0] + d[1] * d[1];

  if (terms & kRealTerm) {
    for (int a = -cfg.image_layers; a <= cfg.image_layers; ++a) {
      if (skip_origin && a == 0) continue;
      double dz = d[2] + a * L3;
      double r2 = rho2 + dz * dz;
      double r = std::sqrt(r2);
      double e = std::erfc(xi * r) / r;
      K.g += e;
      if (want_grad) {
        double s = -(2 * xi / std::sqrt(pi) * std::exp(-xi * xi * r2) + e) / r2;
        K.grad[0] += s * d[0];
        K.grad[1] += s * d[1];
        K.grad[2] += s * dz;
      }
    }
  }

  if (terms & kKSpaceTerm) {
    const double b = xi * xi * rho2;
    double g = 0, gz = 0, gr = 0;
    for (int n = 1; n <= cfg.kinf; ++n) {
      double k = 2 * pi * n / L3;
      double a = k * k / (4 * xi * xi);
      double c = std::cos(k * d[2]);
      if (want_grad) {
        auto kp = incomplete_k0_pair(a, b);
        g += c * kp.k0;
        gz -= k * std::sin(k * d[2]) * kp.k0;
        gr -= c * kp.d;
      } else {
        g += c * incomplete_k0(a, b);
      }
    }
    K.g += 2 / L3 * g;
    if (want_grad) {
      // dK0/db = -D, db/dx = 2 xi^2 x
      K.grad[0] += 2 / L3 * gr * 2 * xi * xi * d[0];
      K.grad[1] += 2 / L3 * gr * 2 * xi * xi * d[1];
      K.grad[2] += 2 / L3 * gz;
    }
  }

  if (terms & kZeroModeTerm) {
    double u = xi * xi * rho2;
    K.g -= ein_bar(u) / L3;
    if (want_grad) {
      double du = u > 0 ? -std::expm1(-u) / u : 1.0;
      double s = -2 * xi * xi / L3 * du;
      K.grad[0] += s * d[0];
      K.grad[1] += s * d[1];
    }
  }
  return K;
}

std::size_t pair_offset(std::size_t m, std::size_t n) { return m * n - m * (m + 1) / 2; }

void accumulate(const ParticleSystem& sys, const DirectConfig& cfg, unsigned terms, std::vector<double>* phi,
                std::vector<Vec3>* force) {
  check_config(cfg);
  if ((terms & kZeroModeTerm) && !sys.neutral()) throw InputError("zero-mode term requires a charge-neutral system");
  const std::size_t N = sys.size();
  const double L3 = sys.box()[2];
  const auto& x = sys.positions();
  const auto& q = sys.charges();
  const bool grad = force != nullptr;

  std::vector<Kernel> K(N * (N - 1) / 2);
  parallel_for(N, cfg.threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t m = b; m < e; ++m) {
      std::size_t base = pair_offset(m, N);
      for (std::size_t n = m + 1; n < N; ++n) K[base + (n - m - 1)] = pair_kernel(x[m] - x[n], L3, cfg, terms, grad);
    }
  });
  // own periodic images; their gradient vanishes by symmetry
  Kernel self = pair_kernel({0, 0, 0}, L3, cfg, terms, false, true);

  if (phi) phi->assign(N, 0.0);
  if (force) force->assign(N, Vec3{0, 0, 0});
  for (std::size_t m = 0; m < N; ++m) {
    if (phi) (*phi)[m] += q[m] * self.g;
    std::size_t base = pair_offset(m, N);
    for (std::size_t n = m + 1; n < N; ++n) {
      const Kernel& k = K[base + (n - m - 1)];
      if (phi) {
        (*phi)[m] += q[n] * k.g;
        (*phi)[n] += q[m] * k.g;
      }
      if (force) {
        double qq = q[m] * q[n];
        for (int d = 0; d < 3; ++d) {
          (*force)[m][d] -= qq * k.grad[d];
          (*force)[n][d] += qq * k.grad[d];
        }
      }
    }
  }
}

}  // namespace

DirectConfig DirectConfig::converged(double xi, const Vec3& box) {
  if (!(xi > 0)) throw InputError("direct: xi must be positive");
  double L3 = box[2];
  DirectConfig c;
  c.xi = xi;
  c.image_layers = std::max(1, static_cast<int>(std::ceil(6.2 / (xi * L3))));
  c.kinf = std::max(1, static_cast<int>(std::ceil(xi * L3 * std::sqrt(40.0) / pi)));
  return c;
}

DirectConfig converge_config(const ParticleSystem& sys, double xi, double tol) {
  DirectConfig cfg;
  cfg.xi = xi;
  cfg.image_layers = 1;
  cfg.kinf = 4;
  auto prev = direct_potential(sys, cfg, kAllTerms);
  for (int it = 0; it < 10; ++it) {
    DirectConfig next = cfg;
    next.image_layers *= 2;
    next.kinf *= 2;
    auto cur = direct_potential(sys, next, kAllTerms);
    if (rms_error(cur, prev, false) < 0.01 * tol) return next;
    prev = std::move(cur);
    cfg = next;
  }
  throw NumericalError("direct reference did not converge");
}

std::vector<double> direct_potential(const ParticleSystem& sys, const DirectConfig& cfg, unsigned terms) {
  std::vector<double> phi;
  accumulate(sys, cfg, terms, &phi, nullptr);
  if ((terms & kAllTerms) == kAllTerms)
    for (std::size_t i = 0; i < sys.size(); ++i) phi[i] += self_term(sys.charges()[i], cfg.xi);
  return phi;
}

std::vector<double> direct_real(const ParticleSystem& sys, const DirectConfig& cfg) {
  return direct_potential(sys, cfg, kRealTerm);
}

std::vector<double> direct_kspace(const ParticleSystem& sys, const DirectConfig& cfg) {
  return direct_potential(sys, cfg, kKSpaceTerm);
}

std::vector<double> direct_zeromode(const ParticleSystem& sys, double xi, int threads) {
  DirectConfig cfg;
  cfg.xi = xi;
  cfg.threads = threads;
  return direct_potential(sys, cfg, kZeroModeTerm);
}

double self_term(double q, double xi) { return -2 * xi / std::sqrt(pi) * q; }

Results direct_total(const ParticleSystem& sys, const DirectConfig& cfg, bool with_force) {
  if (!sys.neutral()) throw InputError("direct_total requires a charge-neutral system");
  Results r;
  r.breakdown.real = direct_real(sys, cfg);
  r.breakdown.fourier = direct_potential(sys, cfg, kFourierTerms);
  r.breakdown.self.resize(sys.size());
  r.potential.resize(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    r.breakdown.self[i] = self_term(sys.charges()[i], cfg.xi);
    r.potential[i] = r.breakdown.real[i] + r.breakdown.fourier[i] + r.breakdown.self[i];
  }
  r.energy = energy_of(sys, r.potential);
  if (with_force) r.force = direct_force(sys, cfg, kAllTerms);
  return r;
}

std::vector<Vec3> direct_force(const ParticleSystem& sys, const DirectConfig& cfg, unsigned terms) {
  std::vector<Vec3> f;
  accumulate(sys, cfg, terms, nullptr, &f);
  return f;
}

std::vector<Vec3> direct_force_fd(const ParticleSystem& sys, const DirectConfig& cfg, double step, unsigned terms) {
  check_config(cfg);
  if (!(step > 0)) throw InputError("direct_force_fd: step must be positive");
  if ((terms & kZeroModeTerm) && !sys.neutral()) throw InputError("zero-mode term requires a charge-neutral system");
  const std::size_t N = sys.size();
  const double L3 = sys.box()[2];
  const auto& x = sys.positions();
  const auto& q = sys.charges();
  std::vector<Vec3> f(N, Vec3{0, 0, 0});
  parallel_for(N, cfg.threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t m = b; m < e; ++m) {
      for (int d = 0; d < 3; ++d) {
        double side[2];
        for (int s = 0; s < 2; ++s) {
          Vec3 y = x[m];
          y[d] += s == 0 ? step : -step;
          double phi = 0;
          for (std::size_t n = 0; n < N; ++n)
            if (n != m) phi += q[n] * pair_kernel(y - x[n], L3, cfg, terms, false).g;
          side[s] = phi;
        }
        f[m][d] = -q[m] * (side[0] - side[1]) / (2 * step);
      }
    }
  });
  return f;
}

}  // namespace se1p
