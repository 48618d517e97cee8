#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace se1p {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) {
  a[0] += b[0];
  a[1] += b[1];
  a[2] += b[2];
  return a;
}
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Invalid input or configuration (bad file, violated precondition).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation that ran but produced an inconsistent result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Charged particles in a box periodic in z, free in x and y.
class ParticleSystem {
 public:
  ParticleSystem(std::vector<Vec3> positions, std::vector<double> charges, Vec3 box);

  std::size_t size() const { return q_.size(); }
  const std::vector<Vec3>& positions() const { return x_; }
  const std::vector<double>& charges() const { return q_; }
  const Vec3& box() const { return box_; }

  double charge_sum() const { return qsum_; }
  // Q = sum of squared charges
  double q2() const { return q2_; }
  bool neutral() const { return neutral_; }

  ParticleSystem with_positions(std::vector<Vec3> positions) const;
  ParticleSystem with_charges(std::vector<double> charges) const;

 private:
  std::vector<Vec3> x_;
  std::vector<double> q_;
  Vec3 box_;
  double qsum_ = 0, q2_ = 0;
  bool neutral_ = false;
};

// Periodic fold of z into [0, L).
double wrap_periodic(double z, double L);

ParticleSystem read_system(std::istream& in);
ParticleSystem load_system(const std::filesystem::path& path);
void write_system(std::ostream& out, const ParticleSystem& sys);
void save_system(const std::filesystem::path& path, const ParticleSystem& sys);

// Uniform positions, charges alternating +1/-1.
ParticleSystem gen_uniform(std::size_t n, const Vec3& box, std::uint64_t seed);

struct Breakdown {
  std::vector<double> real, fourier, self;
};

struct Results {
  std::vector<double> potential;
  std::vector<Vec3> force;
  double energy = 0;
  Breakdown breakdown;
};

double energy_of(const ParticleSystem& sys, const std::vector<double>& potential);

// CSV "index,phi,fx,fy,fz" preceded by a schema comment.
void write_results_csv(std::ostream& out, const Results& res);

}  // namespace se1p
