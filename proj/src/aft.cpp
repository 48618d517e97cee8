#include "se1p/aft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "se1p/parallel.hpp"

namespace se1p {

namespace {

// Plans are created lazily under a lock and reused; executing a plan on new arrays is
// thread-safe, planning is not.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [k, plan] : plans_) fftw_destroy_plan(plan);
  }

  // In-place 2D transform of an n x n array.
  fftw_plan plane(int n, int sign) { return get({2, n, 0, sign}); }

  // In-place length-n transforms of `count` interleaved columns (stride = count).
  fftw_plan columns(int n, int count, int sign) { return get({1, n, count, sign}); }

 private:
  using Key = std::tuple<int, int, int, int>;

  fftw_plan get(const Key& key) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto [kind, n, count, sign] = key;
    std::size_t len = kind == 2 ? std::size_t(n) * n : std::size_t(n) * count;
    auto* buf = fftw_alloc_complex(len);
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan;
    if (kind == 2) {
      plan = fftw_plan_dft_2d(n, n, buf, buf, sign, flags);
    } else {
      int dims[1] = {n};
      plan = fftw_plan_many_dft(1, dims, count, buf, nullptr, count, 1, buf, nullptr, count, 1, sign, flags);
    }
    fftw_free(buf);
    if (!plan) throw NumericalError("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

  std::mutex mu_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

double fft_flops(double n) { return n > 1 ? 5 * n * std::log2(n) : 0; }

void check_layout(const AftLayout& L) {
  if (L.M < 2 || L.Mtilde < 1) throw InputError("aft: bad grid dimensions");
  if (L.nl < 0 || L.nl > L.M / 2 - 1) throw InputError("aft: nl out of range");
  if (L.Sl < L.Mtilde || L.S0 < L.Mtilde) throw InputError("aft: plane sizes must be at least Mtilde");
}

}  // namespace

PadSets pad_sets(int M, int nl) {
  if (M < 2 || M % 2) throw InputError("pad_sets: M must be even and >= 2");
  if (nl < 0 || nl > M / 2 - 1) throw InputError("pad_sets: nl must lie in [0, M/2-1]");
  PadSets s;
  for (int n = -M / 2; n < M / 2; ++n) {
    if (n == 0) continue;
    if (std::abs(n) <= nl)
      s.I.push_back(n);
    else
      s.J.push_back(n);
  }
  return s;
}

int AftLayout::plane_size(int n3) const {
  if (n3 == 0) return S0;
  if (std::abs(n3) <= nl) return Sl;
  return Mtilde;
}

double SpectralField::dkappa(int bin) const { return 2 * std::numbers::pi / (planes.at(bin).S * h); }

double SpectralField::k3(int bin, double L3) const { return 2 * std::numbers::pi * planes.at(bin).n3 / L3; }

AftStats aft_op_count(const AftLayout& L) {
  AftStats s;
  s.flops_z = double(L.Mtilde) * L.Mtilde * fft_flops(L.M);
  for (int n = 0; n < L.M; ++n) {
    double S = L.plane_size(signed_bin(n, L.M));
    s.flops_planes += fft_flops(S * S);
    ++s.transforms_2d;
  }
  return s;
}

SpectralField aft_forward(const GridField& field, const AftLayout& L, int threads, AftStats* stats) {
  check_layout(L);
  if (field.nz() != L.M || field.nxy() != L.Mtilde) throw InputError("aft_forward: grid dimensions mismatch");
  const int M = L.M, Mt = L.Mtilde;
  const std::size_t slice = std::size_t(Mt) * Mt;

  std::vector<cplx> cols(field.values().begin(), field.values().end());
  fftw_execute_dft(plans().columns(M, int(slice), FFTW_FORWARD), as_fftw(cols.data()), as_fftw(cols.data()));

  SpectralField spec;
  spec.M = M;
  spec.Mtilde = Mt;
  spec.h = L.h;
  spec.planes.resize(M);
  parallel_for(M, threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t n = b; n < e; ++n) {
      auto& pl = spec.planes[n];
      pl.n3 = signed_bin(int(n), M);
      pl.S = L.plane_size(pl.n3);
      pl.data.assign(std::size_t(pl.S) * pl.S, cplx(0));
      const cplx* src = cols.data() + n * slice;
      for (int x = 0; x < Mt; ++x)
        for (int y = 0; y < Mt; ++y) pl.data[std::size_t(x) * pl.S + y] = src[std::size_t(x) * Mt + y];
      fftw_execute_dft(plans().plane(pl.S, FFTW_FORWARD), as_fftw(pl.data.data()), as_fftw(pl.data.data()));
    }
  });
  if (stats) {
    auto c = aft_op_count(L);
    stats->flops_z += c.flops_z;
    stats->flops_planes += c.flops_planes;
    stats->transforms_2d += c.transforms_2d;
  }
  return spec;
}

std::vector<cplx> aft_inverse_complex(const SpectralField& spec, const AftLayout& L, int threads, AftStats* stats) {
  check_layout(L);
  const int M = L.M, Mt = L.Mtilde;
  if (spec.M != M || spec.Mtilde != Mt || int(spec.planes.size()) != M)
    throw InputError("aft_inverse: spectral field does not match layout");
  for (int n = 0; n < M; ++n) {
    const auto& pl = spec.planes[n];
    if (pl.n3 != signed_bin(n, M) || pl.S != L.plane_size(pl.n3) || pl.data.size() != std::size_t(pl.S) * pl.S)
      throw InputError("aft_inverse: inconsistent plane inventory at bin " + std::to_string(n));
  }
  const std::size_t slice = std::size_t(Mt) * Mt;
  std::vector<cplx> cols(std::size_t(M) * slice);

  parallel_for(M, threads, [&](std::size_t b, std::size_t e, int) {
    std::vector<cplx> work;
    for (std::size_t n = b; n < e; ++n) {
      const auto& pl = spec.planes[n];
      work = pl.data;
      fftw_execute_dft(plans().plane(pl.S, FFTW_BACKWARD), as_fftw(work.data()), as_fftw(work.data()));
      double norm = 1.0 / (double(pl.S) * pl.S);
      cplx* dst = cols.data() + n * slice;
      for (int x = 0; x < Mt; ++x)
        for (int y = 0; y < Mt; ++y) dst[std::size_t(x) * Mt + y] = work[std::size_t(x) * pl.S + y] * norm;
    }
  });
  fftw_execute_dft(plans().columns(M, int(slice), FFTW_BACKWARD), as_fftw(cols.data()), as_fftw(cols.data()));
  double norm = 1.0 / M;
  for (auto& c : cols) c *= norm;
  if (stats) {
    auto c = aft_op_count(L);
    stats->flops_z += c.flops_z;
    stats->flops_planes += c.flops_planes;
    stats->transforms_2d += c.transforms_2d;
  }
  return cols;
}

GridField aft_inverse(const SpectralField& spec, const AftLayout& L, int threads, AftStats* stats) {
  auto cols = aft_inverse_complex(spec, L, threads, stats);
  GridField out(L.M, L.Mtilde, L.h);
  auto& v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = cols[i].real();
  return out;
}

}  // namespace se1p
