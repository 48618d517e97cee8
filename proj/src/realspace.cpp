#include "se1p/realspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "se1p/parallel.hpp"

namespace se1p {

CellList::CellList(const ParticleSystem& sys, double rc) : rc_(rc) {
  const auto& L = sys.box();
  if (!(rc > 0)) throw InputError("cell list: rc must be positive");
  if (rc > 0.5 * L[2]) throw InputError("rc too large for box: rc must not exceed L3/2");
  if (rc > std::min(L[0], L[1])) throw InputError("rc too large for box: rc must not exceed min(L1, L2)");

  // cells larger than rc are fine; the cap keeps tiny cutoffs from allocating huge grids
  int cap = 2 * static_cast<int>(std::cbrt(double(sys.size()))) + 1;
  for (int d = 0; d < 3; ++d) nc_[d] = std::clamp(static_cast<int>(std::floor(L[d] / rc)), 1, cap);
  const std::size_t ncell = std::size_t(nc_[0]) * nc_[1] * nc_[2];
  cells_.assign(ncell, {});
  owner_.resize(sys.size());
  auto linear = [&](int cx, int cy, int cz) { return (std::size_t(cx) * nc_[1] + cy) * nc_[2] + cz; };

  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto& x = sys.positions()[i];
    int c[3];
    for (int d = 0; d < 3; ++d) c[d] = std::min(nc_[d] - 1, static_cast<int>(x[d] / L[d] * nc_[d]));
    std::size_t id = linear(c[0], c[1], c[2]);
    cells_[id].push_back(static_cast<int>(i));
    owner_[i] = id;
  }

  upper_.resize(ncell);
  for (int cx = 0; cx < nc_[0]; ++cx)
    for (int cy = 0; cy < nc_[1]; ++cy)
      for (int cz = 0; cz < nc_[2]; ++cz) {
        std::size_t self = linear(cx, cy, cz);
        auto& nb = upper_[self];
        for (int dx = -1; dx <= 1; ++dx)
          for (int dy = -1; dy <= 1; ++dy)
            for (int dz = -1; dz <= 1; ++dz) {
              int x = cx + dx, y = cy + dy;
              if (x < 0 || x >= nc_[0] || y < 0 || y >= nc_[1]) continue;
              int z = ((cz + dz) % nc_[2] + nc_[2]) % nc_[2];
              std::size_t id = linear(x, y, z);
              if (id >= self) nb.push_back(id);
            }
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      }
}

CellList build_cell_list(const ParticleSystem& sys, double rc) { return CellList(sys, rc); }

void real_space(const ParticleSystem& sys, double xi, double rc, std::vector<double>* phi, std::vector<Vec3>* force,
                int threads) {
  if (!(xi > 0)) throw InputError("real space: xi must be positive");
  const CellList cl(sys, rc);
  const std::size_t N = sys.size();
  const auto& q = sys.charges();
  const double c2 = 2 * xi / std::sqrt(std::numbers::pi);
  const int workers = worker_count(cl.cell_count(), threads);

  std::vector<std::vector<double>> pbuf(workers);
  std::vector<std::vector<Vec3>> fbuf(workers);
  parallel_for(cl.cell_count(), threads, [&](std::size_t b, std::size_t e, int w) {
    auto& pp = pbuf[w];
    auto& ff = fbuf[w];
    if (phi) pp.assign(N, 0.0);
    if (force) ff.assign(N, Vec3{0, 0, 0});
    for (std::size_t c = b; c < e; ++c)
      cl.pairs_of_cell(sys, c, [&](int i, int j, const Vec3& d, double r2) {
        if (r2 == 0) throw NumericalError("coincident particles in real-space sum");
        double r = std::sqrt(r2);
        double e = std::erfc(xi * r) / r;
        if (phi) {
          pp[i] += q[j] * e;
          pp[j] += q[i] * e;
        }
        if (force) {
          double s = q[i] * q[j] * (c2 * std::exp(-xi * xi * r2) + e) / r2;
          for (int k = 0; k < 3; ++k) {
            ff[i][k] += s * d[k];
            ff[j][k] -= s * d[k];
          }
        }
      });
  });

  if (phi) {
    phi->assign(N, 0.0);
    for (const auto& pp : pbuf)
      for (std::size_t i = 0; i < N; ++i) (*phi)[i] += pp[i];
  }
  if (force) {
    force->assign(N, Vec3{0, 0, 0});
    for (const auto& ff : fbuf)
      for (std::size_t i = 0; i < N; ++i) (*force)[i] += ff[i];
  }
}

std::vector<double> real_potential(const ParticleSystem& sys, double xi, double rc, int threads) {
  std::vector<double> phi;
  real_space(sys, xi, rc, &phi, nullptr, threads);
  return phi;
}

std::vector<Vec3> real_force(const ParticleSystem& sys, double xi, double rc, int threads) {
  std::vector<Vec3> f;
  real_space(sys, xi, rc, nullptr, &f, threads);
  return f;
}

}  // namespace se1p
