#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "se1p/model.hpp"

namespace se1p {

// Uniform bucketing with cells no smaller than rc; z wraps, x and y do not.
class CellList {
 public:
  CellList(const ParticleSystem& sys, double rc);

  const std::array<int, 3>& dims() const { return nc_; }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<int>& members(std::size_t cell) const { return cells_[cell]; }
  std::size_t cell_of(std::size_t particle) const { return owner_[particle]; }
  // Distinct neighbouring cells (self included) with index >= cell.
  const std::vector<std::size_t>& upper_neighbors(std::size_t cell) const { return upper_[cell]; }
  double rc() const { return rc_; }

  // f(i, j, d) for every unordered pair closer than rc, d = x_i - x_j (z minimum image).
  template <class F>
  void for_each_pair(const ParticleSystem& sys, F&& f) const {
    for (std::size_t c = 0; c < cells_.size(); ++c) pairs_of_cell(sys, c, f);
  }

  template <class F>
  void pairs_of_cell(const ParticleSystem& sys, std::size_t c, F&& f) const {
    const auto& x = sys.positions();
    const double L3 = sys.box()[2], rc2 = rc_ * rc_;
    for (std::size_t nb : upper_[c]) {
      const auto& A = cells_[c];
      const auto& B = cells_[nb];
      for (std::size_t ia = 0; ia < A.size(); ++ia) {
        std::size_t jb0 = nb == c ? ia + 1 : 0;
        for (std::size_t jb = jb0; jb < B.size(); ++jb) {
          int i = A[ia], j = B[jb];
          Vec3 d = x[i] - x[j];
          d[2] -= L3 * std::nearbyint(d[2] / L3);
          double r2 = dot(d, d);
          if (r2 <= rc2) f(i, j, d, r2);
        }
      }
    }
  }

 private:
  double rc_;
  std::array<int, 3> nc_{};
  std::vector<std::vector<int>> cells_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<std::size_t> owner_;
};

CellList build_cell_list(const ParticleSystem& sys, double rc);

// Either output may be null.
void real_space(const ParticleSystem& sys, double xi, double rc, std::vector<double>* phi, std::vector<Vec3>* force,
                int threads = 0);

std::vector<double> real_potential(const ParticleSystem& sys, double xi, double rc, int threads = 0);
std::vector<Vec3> real_force(const ParticleSystem& sys, double xi, double rc, int threads = 0);

}  // namespace se1p
