#include "se1p/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace se1p {

double wrap_periodic(double z, double L) {
  double w = z - L * std::floor(z / L);
  // floor can round up to exactly L for tiny negative z
  if (w >= L) w -= L;
  if (w < 0) w = 0;
  return w;
}

ParticleSystem::ParticleSystem(std::vector<Vec3> positions, std::vector<double> charges, Vec3 box)
    : x_(std::move(positions)), q_(std::move(charges)), box_(box) {
  if (x_.empty()) throw InputError("system needs at least one particle");
  if (x_.size() != q_.size()) throw InputError("positions and charges differ in length");
  for (double L : box_)
    if (!(L > 0) || !std::isfinite(L)) throw InputError("box lengths must be positive and finite");

  double qabs = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    auto& p = x_[i];
    for (double c : p)
      if (!std::isfinite(c)) throw InputError("non-finite coordinate for particle " + std::to_string(i));
    if (!std::isfinite(q_[i])) throw InputError("non-finite charge for particle " + std::to_string(i));
    for (int d = 0; d < 2; ++d)
      if (p[d] < 0 || p[d] >= box_[d])
        throw InputError("free-direction coordinate outside box (particle " + std::to_string(i) + ")");
    p[2] = wrap_periodic(p[2], box_[2]);
    qsum_ += q_[i];
    qabs += std::abs(q_[i]);
    q2_ += q_[i] * q_[i];
  }
  neutral_ = std::abs(qsum_) <= 1e-12 * qabs;
}

ParticleSystem ParticleSystem::with_positions(std::vector<Vec3> positions) const {
  return ParticleSystem(std::move(positions), q_, box_);
}

ParticleSystem ParticleSystem::with_charges(std::vector<double> charges) const {
  return ParticleSystem(x_, std::move(charges), box_);
}

namespace {

bool next_data_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::vector<double> parse_numbers(const std::string& line, int lineno, std::size_t expect) {
  std::istringstream ss(line);
  std::vector<double> v;
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    double d;
    try {
      d = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw InputError("line " + std::to_string(lineno) + ": malformed number '" + tok + "'");
    if (!std::isfinite(d)) throw InputError("line " + std::to_string(lineno) + ": non-finite value");
    v.push_back(d);
  }
  if (v.size() != expect)
    throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(expect) + " fields, got " +
                     std::to_string(v.size()));
  return v;
}

}  // namespace

ParticleSystem read_system(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_data_line(in, line, lineno)) throw InputError("empty particle file");
  auto head = parse_numbers(line, lineno, 4);
  if (head[0] < 1 || head[0] != std::floor(head[0])) throw InputError("header: N must be a positive integer");
  auto n = static_cast<std::size_t>(head[0]);

  std::vector<Vec3> x;
  std::vector<double> q;
  x.reserve(n);
  q.reserve(n);
  while (next_data_line(in, line, lineno)) {
    if (x.size() == n) throw InputError("more particle lines than header N=" + std::to_string(n));
    auto v = parse_numbers(line, lineno, 4);
    x.push_back({v[0], v[1], v[2]});
    q.push_back(v[3]);
  }
  if (x.size() != n)
    throw InputError("header says N=" + std::to_string(n) + " but file has " + std::to_string(x.size()) + " particles");
  return ParticleSystem(std::move(x), std::move(q), {head[1], head[2], head[3]});
}

ParticleSystem load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_system(in);
}

void write_system(std::ostream& out, const ParticleSystem& sys) {
  const auto& b = sys.box();
  out << std::setprecision(17);
  out << sys.size() << ' ' << b[0] << ' ' << b[1] << ' ' << b[2] << '\n';
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto& p = sys.positions()[i];
    out << p[0] << ' ' << p[1] << ' ' << p[2] << ' ' << sys.charges()[i] << '\n';
  }
}

void save_system(const std::filesystem::path& path, const ParticleSystem& sys) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_system(out, sys);
  if (!out) throw InputError("write failed: " + path.string());
}

ParticleSystem gen_uniform(std::size_t n, const Vec3& box, std::uint64_t seed) {
  if (n == 0 || n % 2 != 0) throw InputError("gen_uniform needs an even, positive N");
  std::mt19937_64 rng(seed);
  std::vector<Vec3> x(n);
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int d = 0; d < 3; ++d) {
      // 53-bit uniform in [0,1), independent of the library's distribution code
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x[i][d] = std::min(u * box[d], std::nextafter(box[d], 0.0));
    }
    q[i] = (i % 2 == 0) ? 1.0 : -1.0;
  }
  return ParticleSystem(std::move(x), std::move(q), box);
}

double energy_of(const ParticleSystem& sys, const std::vector<double>& potential) {
  if (potential.size() != sys.size()) throw InputError("energy_of: potential length differs from N");
  double e = 0;
  for (std::size_t i = 0; i < sys.size(); ++i) e += sys.charges()[i] * potential[i];
  return e;
}

void write_results_csv(std::ostream& out, const Results& res) {
  out << std::setprecision(17);
  out << "# schema=1\n";
  out << "# energy=" << res.energy << '\n';
  out << "index,phi,fx,fy,fz\n";
  for (std::size_t i = 0; i < res.potential.size(); ++i) {
    out << i << ',' << res.potential[i];
    if (i < res.force.size())
      out << ',' << res.force[i][0] << ',' << res.force[i][1] << ',' << res.force[i][2];
    else
      out << ",,,";
    out << '\n';
  }
}

}  // namespace se1p
