#pragma once

#include <cstdint>
#include <vector>

#include "se1p/estimate.hpp"
#include "se1p/model.hpp"

namespace se1p {

// eta = P xi^2 h^2 / (c^2 pi)
double compute_eta(int P, double xi, double h);

// Real grid, z (periodic, length nz) outermost, then x, then y.
class GridField {
 public:
  GridField() = default;
  GridField(int nz, int nxy, double h) : nz_(nz), nxy_(nxy), h_(h), v_(std::size_t(nz) * nxy * nxy, 0.0) {}

  int nz() const { return nz_; }
  int nxy() const { return nxy_; }
  double h() const { return h_; }
  std::size_t size() const { return v_.size(); }
  std::size_t index(int z, int x, int y) const { return (std::size_t(z) * nxy_ + x) * nxy_ + y; }
  double& at(int z, int x, int y) { return v_[index(z, x, y)]; }
  double at(int z, int x, int y) const { return v_[index(z, x, y)]; }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

 private:
  int nz_ = 0, nxy_ = 0;
  double h_ = 0;
  std::vector<double> v_;
};

// Truncated Gaussian around one particle, separable into three weight vectors.
// Grid point t along dimension d sits at offset[d] + t*h from the particle.
// first[0..1] are extended-grid indices; first[2] is an unwrapped z index.
struct GaussianStencil {
  std::array<int, 3> first{};
  std::array<double, 3> offset{};
  std::array<std::vector<double>, 3> w;
};

// Weights by the fast-gridding factorization (default) or by direct exponentials.
void make_stencil(const Vec3& x, const SolverParams& p, GaussianStencil& st, bool direct = false);

struct GridStats {
  std::uint64_t stencil_points = 0;
  std::uint64_t exp_evals = 0;
};

// Normalization of the spreading window, (2 xi^2 / (pi eta))^{3/2}.
double window_prefactor(const SolverParams& p);

GridField spread(const ParticleSystem& sys, const SolverParams& p, int threads = 0, GridStats* stats = nullptr);

// Potential and/or force (either pointer may be null) read back from a processed grid
// in one sweep.
void gather(const GridField& field, const ParticleSystem& sys, const SolverParams& p, std::vector<double>* phi,
            std::vector<Vec3>* force, int threads = 0, GridStats* stats = nullptr);

std::vector<double> gather_potential(const GridField& field, const ParticleSystem& sys, const SolverParams& p,
                                     int threads = 0);
std::vector<Vec3> gather_force(const GridField& field, const ParticleSystem& sys, const SolverParams& p,
                               int threads = 0);

}  // namespace se1p
