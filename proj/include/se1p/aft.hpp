#pragma once

#include <complex>
#include <vector>

#include "se1p/estimate.hpp"
#include "se1p/gridding.hpp"

namespace se1p {

using cplx = std::complex<double>;

// Signed k3 indices: I = {0 < |n| <= nl}, J = the remaining nonzero modes incl. -M/2.
struct PadSets {
  std::vector<int> I, J;
  int zero = 0;
};

PadSets pad_sets(int M, int nl);

// Signed index of transform bin i out of n (i < n/2 -> i, else i - n).
inline int signed_bin(int i, int n) { return i < n / 2 ? i : i - n; }

struct AftLayout {
  int M = 0, Mtilde = 0, nl = 0, Sl = 0, S0 = 0;
  double h = 0;

  static AftLayout from(const SolverParams& p) { return {p.M, p.Mtilde, p.nl, p.Sl, p.S0, p.h}; }
  // Plane size owning signed k3 index n3.
  int plane_size(int n3) const;
};

struct SpectralPlane {
  int n3 = 0;  // signed k3 index
  int S = 0;   // plane is S x S, x-major
  std::vector<cplx> data;
};

// One plane per z bin, stored in transform order (bin n holds signed index signed_bin(n, M)).
struct SpectralField {
  int M = 0, Mtilde = 0;
  double h = 0;
  std::vector<SpectralPlane> planes;

  double dkappa(int bin) const;
  double k3(int bin, double L3) const;
};

// Counts by the usual 5 n log2 n model for a length-n complex transform.
struct AftStats {
  double flops_z = 0;
  double flops_planes = 0;
  std::size_t transforms_2d = 0;
  double flops() const { return flops_z + flops_planes; }
};

SpectralField aft_forward(const GridField& field, const AftLayout& layout, int threads = 0,
                          AftStats* stats = nullptr);
GridField aft_inverse(const SpectralField& spec, const AftLayout& layout, int threads = 0,
                      AftStats* stats = nullptr);
// Same, keeping the imaginary part; layout of GridField::index.
std::vector<cplx> aft_inverse_complex(const SpectralField& spec, const AftLayout& layout, int threads = 0,
                                      AftStats* stats = nullptr);

// Flop model of one forward transform without running it.
AftStats aft_op_count(const AftLayout& layout);

}  // namespace se1p
