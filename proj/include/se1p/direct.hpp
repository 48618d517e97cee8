#pragma once

#include <vector>

#include "se1p/model.hpp"

namespace se1p {

// Term selection for the direct sums and their forces.
enum DirectTerms : unsigned {
  kRealTerm = 1,
  kKSpaceTerm = 2,
  kZeroModeTerm = 4,
  kFourierTerms = kKSpaceTerm | kZeroModeTerm,
  kAllTerms = kRealTerm | kKSpaceTerm | kZeroModeTerm,
};

struct DirectConfig {
  double xi = 0;
  int image_layers = 1;  // real-space images |alpha| <= image_layers along z
  int kinf = 1;          // k3 = 2 pi n / L3 with 0 < |n| <= kinf
  int threads = 0;

  // Truncation below double precision for any particle positions in the box.
  static DirectConfig converged(double xi, const Vec3& box);
};

// Doubles image_layers and kinf from a small start until potentials move by < 0.01*tol.
DirectConfig converge_config(const ParticleSystem& sys, double xi, double tol);

std::vector<double> direct_real(const ParticleSystem& sys, const DirectConfig& cfg);
std::vector<double> direct_kspace(const ParticleSystem& sys, const DirectConfig& cfg);
std::vector<double> direct_zeromode(const ParticleSystem& sys, double xi, int threads = 0);
double self_term(double q, double xi);

// Potential of the selected terms; the self term is added when all terms are selected.
std::vector<double> direct_potential(const ParticleSystem& sys, const DirectConfig& cfg, unsigned terms);

Results direct_total(const ParticleSystem& sys, const DirectConfig& cfg, bool with_force = false);

// Forces of the selected terms by analytic differentiation.
std::vector<Vec3> direct_force(const ParticleSystem& sys, const DirectConfig& cfg, unsigned terms = kAllTerms);

// Central differences of the selected terms' potential of all other particles.
std::vector<Vec3> direct_force_fd(const ParticleSystem& sys, const DirectConfig& cfg, double step,
                                  unsigned terms = kAllTerms);

}  // namespace se1p
