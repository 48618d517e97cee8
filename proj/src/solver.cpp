#include "se1p/solver.hpp"

#include <chrono>

#include "se1p/direct.hpp"
#include "se1p/greens.hpp"
#include "se1p/realspace.hpp"

namespace se1p {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void check_system(const ParticleSystem& sys, const SolverParams& p) {
  for (int d = 0; d < 3; ++d)
    if (sys.box()[d] != p.box[d]) throw InputError("system box does not match solver parameters");
}

}  // namespace

Solver::Solver(const SolverParams& params, int threads)
    : p_(params), threads_(threads), layout_(AftLayout::from(params)) {
  scaling_ = scaling_table(layout_, ScalingSpec::from(p_));
}

FourierResult Solver::fourier(const ParticleSystem& sys, bool forces) {
  check_system(sys, p_);
  if (!sys.neutral()) throw InputError("k-space solve requires a charge-neutral system");
  times_ = {};
  fft_stats_ = {};
  grid_stats_ = {};

  auto t0 = Clock::now();
  GridField H = spread(sys, p_, threads_, &grid_stats_);
  times_.grid = since(t0);

  t0 = Clock::now();
  SpectralField spec = aft_forward(H, layout_, threads_, &fft_stats_);
  times_.fft = since(t0);

  t0 = Clock::now();
  apply_scaling(spec, scaling_, threads_);
  times_.scale = since(t0);

  t0 = Clock::now();
  GridField Ht = aft_inverse(spec, layout_, threads_, &fft_stats_);
  times_.fft += since(t0);

  t0 = Clock::now();
  FourierResult r;
  gather(Ht, sys, p_, &r.potential, forces ? &r.force : nullptr, threads_, &grid_stats_);
  times_.gather = since(t0);
  return r;
}

Results Solver::solve(const ParticleSystem& input, const SolveOptions& opt) {
  const ParticleSystem* sys = &input;
  ParticleSystem shifted = input;
  if (!input.neutral()) {
    if (!opt.subtract_mean_charge) throw InputError("solve requires a charge-neutral system");
    std::vector<double> q = input.charges();
    double mean = input.charge_sum() / double(q.size());
    for (auto& v : q) v -= mean;
    shifted = input.with_charges(std::move(q));
    sys = &shifted;
  }

  FourierResult kf = fourier(*sys, opt.forces);

  auto t0 = Clock::now();
  std::vector<double> rphi;
  std::vector<Vec3> rf;
  real_space(*sys, p_.xi, p_.rc, &rphi, opt.forces ? &rf : nullptr, threads_);
  times_.real = since(t0);

  const std::size_t N = sys->size();
  Results res;
  res.breakdown.real = std::move(rphi);
  res.breakdown.fourier = std::move(kf.potential);
  res.breakdown.self.resize(N);
  res.potential.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    res.breakdown.self[i] = self_term(sys->charges()[i], p_.xi);
    res.potential[i] = res.breakdown.real[i] + res.breakdown.fourier[i] + res.breakdown.self[i];
  }
  if (opt.forces) {
    res.force = std::move(rf);
    for (std::size_t i = 0; i < N; ++i) res.force[i] += kf.force[i];
  }
  res.energy = energy_of(*sys, res.potential);
  return res;
}

std::vector<double> fourier_potential(const ParticleSystem& sys, const SolverParams& p, int threads) {
  return Solver(p, threads).fourier(sys, false).potential;
}

std::vector<Vec3> fourier_force(const ParticleSystem& sys, const SolverParams& p, int threads) {
  return Solver(p, threads).fourier(sys, true).force;
}

Results solve(const ParticleSystem& sys, const SolverParams& p, const SolveOptions& opt, int threads) {
  return Solver(p, threads).solve(sys, opt);
}

}  // namespace se1p
