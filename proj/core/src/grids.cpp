#include "sphericoh/grids.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sphericoh::grids {

BasisKind parse_kind(const std::string& s) {
  if (s == "wigner") return BasisKind::wigner;
  if (s == "sh" || s == "spherical") return BasisKind::spherical;
  throw std::invalid_argument("unknown basis kind: " + s);
}

std::string kind_name(BasisKind k) {
  return k == BasisKind::wigner ? "wigner" : "sh";
}

std::vector<double> equispaced_elevation(int m) {
  if (m < 2) throw std::invalid_argument("equispaced_elevation: m must be >= 2");
  std::vector<double> theta(m);
  for (int p = 1; p <= m; ++p) {
    double x = double(2 * p - m - 1) / double(m - 1);
    theta[p - 1] = std::acos(x);
  }
  return theta;
}

Grid equispaced_grid(int m) {
  Grid g;
  g.theta = equispaced_elevation(m);
  g.phi.assign(m, 0.0);
  g.chi.assign(m, 0.0);
  g.cos_theta.resize(m);
  for (int p = 1; p <= m; ++p)
    g.cos_theta[p - 1] = double(2 * p - m - 1) / double(m - 1);
  return g;
}

namespace {

// Explicit 53-bit mapping to [0, 2pi) so runs are reproducible across
// standard-library implementations.
class AngleRng {
 public:
  explicit AngleRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double next() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    double u = double(z >> 11) * 0x1.0p-53;
    return u * 2.0 * std::numbers::pi;
  }

 private:
  std::uint64_t state_;
};

}  // namespace

Grid equispaced_grid_random(int m, std::uint64_t seed) {
  Grid g = equispaced_grid(m);
  AngleRng rng(seed);
  for (int p = 0; p < m; ++p) g.phi[p] = rng.next();
  for (int p = 0; p < m; ++p) g.chi[p] = rng.next();
  return g;
}

std::vector<ModeIndex> enumerate_modes(int bandwidth, BasisKind kind) {
  if (bandwidth < 1) throw std::invalid_argument("enumerate_modes: B must be >= 1");
  std::vector<ModeIndex> modes;
  modes.reserve(mode_count(bandwidth, kind));
  for (int l = 0; l < bandwidth; ++l) {
    for (int k = -l; k <= l; ++k) {
      if (kind == BasisKind::spherical) {
        modes.push_back({l, k, 0});
      } else {
        for (int n = -l; n <= l; ++n) modes.push_back({l, k, n});
      }
    }
  }
  return modes;
}

std::size_t mode_count(int bandwidth, BasisKind kind) {
  std::size_t b = static_cast<std::size_t>(bandwidth);
  if (kind == BasisKind::spherical) return b * b;
  return b * (2 * b - 1) * (2 * b + 1) / 3;
}

int min_samples(int bandwidth) {
  if (bandwidth < 3) throw std::invalid_argument("min_samples: B must be >= 3");
  // smallest integer m >= (B+2)^2/10 + 1, in exact integer arithmetic
  long num = long(bandwidth + 2) * (bandwidth + 2) + 10;  // 10*m >= num
  return int((num + 9) / 10);
}

void write_grid_csv(std::ostream& os, const Grid& g) {
  os << "p,theta,phi,chi\n";
  os.precision(17);
  for (std::size_t p = 0; p < g.size(); ++p) {
    os << (p + 1) << ',' << g.theta[p] << ',' << g.phi[p] << ',' << g.chi[p]
       << '\n';
  }
}

Grid read_grid_csv(std::istream& is) {
  Grid g;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty grid file");
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string field;
    double vals[4];
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(ss, field, ',')) throw std::runtime_error("bad grid row: " + line);
      vals[i] = std::stod(field);
    }
    g.theta.push_back(vals[1]);
    g.phi.push_back(vals[2]);
    g.chi.push_back(vals[3]);
    g.cos_theta.push_back(std::cos(vals[1]));
  }
  return g;
}

std::vector<double> read_angle_file(std::istream& is) {
  std::vector<double> v;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    v.push_back(std::stod(line));
  }
  return v;
}

}  // namespace sphericoh::grids
