#pragma once

#include <vector>

#include "se1p/aft.hpp"
#include "se1p/estimate.hpp"
#include "se1p/gridding.hpp"
#include "se1p/model.hpp"

namespace se1p {

// Wall-clock seconds of the last solve, per stage.
struct StageTimes {
  double grid = 0;    // spreading
  double fft = 0;     // forward and inverse transforms
  double scale = 0;
  double gather = 0;
  double real = 0;
  double total() const { return grid + fft + scale + gather + real; }
};

struct FourierResult {
  std::vector<double> potential;
  std::vector<Vec3> force;
};

struct SolveOptions {
  bool forces = true;
  // Off-spec: shift every charge by the mean so the zero mode is defined.
  bool subtract_mean_charge = false;
};

// Reusable k-space workspace for one parameter set. Not safe for concurrent solve() calls;
// use one Solver per thread.
class Solver {
 public:
  explicit Solver(const SolverParams& params, int threads = 0);

  const SolverParams& params() const { return p_; }

  FourierResult fourier(const ParticleSystem& sys, bool forces = true);
  Results solve(const ParticleSystem& sys, const SolveOptions& opt = {});

  const StageTimes& last_times() const { return times_; }
  const AftStats& last_fft_stats() const { return fft_stats_; }
  const GridStats& last_grid_stats() const { return grid_stats_; }

 private:
  SolverParams p_;
  int threads_;
  AftLayout layout_;
  std::vector<std::vector<double>> scaling_;
  StageTimes times_;
  AftStats fft_stats_;
  GridStats grid_stats_;
};

std::vector<double> fourier_potential(const ParticleSystem& sys, const SolverParams& p, int threads = 0);
std::vector<Vec3> fourier_force(const ParticleSystem& sys, const SolverParams& p, int threads = 0);
Results solve(const ParticleSystem& sys, const SolverParams& p, const SolveOptions& opt = {}, int threads = 0);

}  // namespace se1p
