#pragma once

#include "se1p/aft.hpp"
#include "se1p/estimate.hpp"

namespace se1p {

struct ScalingSpec {
  double xi = 0, eta = 0, R = 0, L3 = 0;

  static ScalingSpec from(const SolverParams& p) { return {p.xi, p.eta, p.R, p.box[2]}; }
};

// Modified Green's function; the k3 = 0 branch is the 2D log kernel truncated at radius R.
double ghat(double kappa, double k3, double R);

// exp(-(1-eta)(kappa^2+k3^2)/(4 xi^2)) * ghat
double scaling_factor(double kappa, double k3, const ScalingSpec& s);

void scale_field(SpectralField& spec, const ScalingSpec& s, int threads = 0);

// Per-plane factors in SpectralField order, for repeated scaling with fixed parameters.
std::vector<std::vector<double>> scaling_table(const AftLayout& layout, const ScalingSpec& s);
void apply_scaling(SpectralField& spec, const std::vector<std::vector<double>>& table, int threads = 0);
void scale_field(SpectralField& spec, const SolverParams& p, int threads = 0);

}  // namespace se1p
