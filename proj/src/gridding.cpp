#include "se1p/gridding.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "se1p/parallel.hpp"

namespace se1p {

using std::numbers::pi;

double compute_eta(int P, double xi, double h) {
  double c = kWindowShape;
  return P * xi * xi * h * h / (c * c * pi);
}

double window_prefactor(const SolverParams& p) { return std::pow(2 * p.xi * p.xi / (pi * p.eta), 1.5); }

namespace {

// Exponentials shared by every stencil of one parameter set.
struct FggTable {
  double alpha = 0, h = 0;
  int P = 0;
  std::vector<double> f3;  // exp(-alpha h^2 t^2)

  explicit FggTable(const SolverParams& p) : alpha(2 * p.xi * p.xi / p.eta), h(p.h), P(p.P), f3(p.P) {
    for (int t = 0; t < P; ++t) f3[t] = std::exp(-alpha * h * h * t * t);
  }
};

void fill_stencil(const Vec3& x, const SolverParams& p, const FggTable* fgg, GaussianStencil& st) {
  const int P = p.P, half = P / 2;
  const double h = p.h, alpha = 2 * p.xi * p.xi / p.eta;
  for (int d = 0; d < 3; ++d) {
    int k = static_cast<int>(std::floor(x[d] / h)) - half + 1;
    double d0 = k * h - x[d];
    st.offset[d] = d0;
    if (d < 2) {
      st.first[d] = k + half;
      if (st.first[d] < 0 || st.first[d] + P > p.Mtilde)
        throw InputError("Gaussian support leaves the extended grid in dimension " + std::to_string(d));
    } else {
      st.first[d] = k;
    }
    auto& w = st.w[d];
    w.resize(P);
    if (fgg) {
      double e1 = std::exp(-alpha * d0 * d0);
      double e2 = std::exp(-2 * alpha * d0 * h);
      double pw = 1;
      for (int t = 0; t < P; ++t) {
        w[t] = e1 * pw * fgg->f3[t];
        pw *= e2;
      }
    } else {
      for (int t = 0; t < P; ++t) {
        double r = d0 + t * h;
        w[t] = std::exp(-alpha * r * r);
      }
    }
  }
}

inline int wrap_index(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

void add_stencil(GridField& g, const GaussianStencil& st, double scale, int P) {
  const int M = g.nz(), Mt = g.nxy();
  double* data = g.values().data();
  const double *wx = st.w[0].data(), *wy = st.w[1].data(), *wz = st.w[2].data();
  for (int tz = 0; tz < P; ++tz) {
    int zi = wrap_index(st.first[2] + tz, M);
    double az = scale * wz[tz];
    for (int tx = 0; tx < P; ++tx) {
      double* row = data + (std::size_t(zi) * Mt + st.first[0] + tx) * Mt + st.first[1];
      double a = az * wx[tx];
      for (int ty = 0; ty < P; ++ty) row[ty] += a * wy[ty];
    }
  }
}

}  // namespace

void make_stencil(const Vec3& x, const SolverParams& p, GaussianStencil& st, bool direct) {
  if (direct) {
    fill_stencil(x, p, nullptr, st);
  } else {
    FggTable t(p);
    fill_stencil(x, p, &t, st);
  }
}

GridField spread(const ParticleSystem& sys, const SolverParams& p, int threads, GridStats* stats) {
  const std::size_t n = sys.size();
  const FggTable fgg(p);
  const double pref = window_prefactor(p);
  const int workers = worker_count(n, threads);

  GridField out(p.M, p.Mtilde, p.h);
  std::vector<GridField> partial(workers > 1 ? workers - 1 : 0, GridField(p.M, p.Mtilde, p.h));
  parallel_for(n, threads, [&](std::size_t b, std::size_t e, int w) {
    GridField& g = w == 0 ? out : partial[w - 1];
    GaussianStencil st;
    for (std::size_t i = b; i < e; ++i) {
      fill_stencil(sys.positions()[i], p, &fgg, st);
      add_stencil(g, st, pref * sys.charges()[i], p.P);
    }
  });
  for (auto& g : partial) {
    auto& dst = out.values();
    const auto& src = g.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  if (stats) {
    stats->stencil_points += n * std::uint64_t(p.P) * p.P * p.P;
    stats->exp_evals += n * 6 + p.P;
  }
  return out;
}

void gather(const GridField& field, const ParticleSystem& sys, const SolverParams& p, std::vector<double>* phi,
            std::vector<Vec3>* force, int threads, GridStats* stats) {
  if (field.nz() != p.M || field.nxy() != p.Mtilde) throw InputError("gather: grid does not match parameters");
  const std::size_t n = sys.size();
  const FggTable fgg(p);
  const double scale = 4 * pi * p.h * p.h * p.h * window_prefactor(p);
  const double two_alpha = 2 * fgg.alpha;
  const int P = p.P, M = p.M, Mt = p.Mtilde;
  const double h = p.h;
  if (phi) phi->assign(n, 0.0);
  if (force) force->assign(n, Vec3{0, 0, 0});

  parallel_for(n, threads, [&](std::size_t b, std::size_t e, int) {
    GaussianStencil st;
    std::vector<double> dx(P), dy(P);
    for (std::size_t i = b; i < e; ++i) {
      fill_stencil(sys.positions()[i], p, &fgg, st);
      const double *wx = st.w[0].data(), *wy = st.w[1].data(), *wz = st.w[2].data();
      for (int t = 0; t < P; ++t) {
        dx[t] = st.offset[0] + t * h;
        dy[t] = st.offset[1] + t * h;
      }
      double s = 0, gx = 0, gy = 0, gz = 0;
      for (int tz = 0; tz < P; ++tz) {
        int zi = wrap_index(st.first[2] + tz, M);
        double sxy = 0, sx = 0, sy = 0;
        for (int tx = 0; tx < P; ++tx) {
          const double* row = field.values().data() + (std::size_t(zi) * Mt + st.first[0] + tx) * Mt + st.first[1];
          double r = 0, ry = 0;
          for (int ty = 0; ty < P; ++ty) {
            double v = wy[ty] * row[ty];
            r += v;
            ry += v * dy[ty];
          }
          sxy += wx[tx] * r;
          sx += wx[tx] * dx[tx] * r;
          sy += wx[tx] * ry;
        }
        double dz = st.offset[2] + tz * h;
        s += wz[tz] * sxy;
        gx += wz[tz] * sx;
        gy += wz[tz] * sy;
        gz += wz[tz] * dz * sxy;
      }
      if (phi) (*phi)[i] = scale * s;
      if (force) {
        // grid minus particle offsets; F = -q grad phi
        double f = -sys.charges()[i] * scale * two_alpha;
        (*force)[i] = {f * gx, f * gy, f * gz};
      }
    }
  });
  if (stats) stats->stencil_points += n * std::uint64_t(P) * P * P;
}

std::vector<double> gather_potential(const GridField& field, const ParticleSystem& sys, const SolverParams& p,
                                     int threads) {
  std::vector<double> phi;
  gather(field, sys, p, &phi, nullptr, threads);
  return phi;
}

std::vector<Vec3> gather_force(const GridField& field, const ParticleSystem& sys, const SolverParams& p,
                               int threads) {
  std::vector<Vec3> f;
  gather(field, sys, p, nullptr, &f, threads);
  return f;
}

}  // namespace se1p
