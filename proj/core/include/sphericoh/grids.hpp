#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Sampling grids on the sphere / rotation group and mode enumeration.

namespace sphericoh::grids {

enum class BasisKind { wigner, spherical };

BasisKind parse_kind(const std::string& s);  // "wigner" | "sh" | "spherical"
std::string kind_name(BasisKind k);

/// Identity of one sensing-matrix column: degree l and orders k, n
/// (n is identically 0 for the spherical-harmonics basis).
struct ModeIndex {
  int l = 0;
  int k = 0;
  int n = 0;
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// m sample triples (theta, phi, chi). cos_theta is cached from the exact
/// rational formula for the equispaced constructor so polynomial arguments
/// avoid the arccos/cos round trip.
struct Grid {
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> chi;
  std::vector<double> cos_theta;

  std::size_t size() const { return theta.size(); }
};

/// theta_p = arccos((2p - m - 1)/(m - 1)), p = 1..m. Requires m >= 2.
std::vector<double> equispaced_elevation(int m);

/// Equispaced-elevation grid with all phi, chi zero.
Grid equispaced_grid(int m);

/// Equispaced-elevation grid with phi (and chi) drawn uniformly from
/// [0, 2pi) by a reproducible generator.
Grid equispaced_grid_random(int m, std::uint64_t seed);

/// Deterministic column ordering: l ascending, then k, then n.
/// Count is B(2B-1)(2B+1)/3 for the Wigner basis and B^2 for spherical.
std::vector<ModeIndex> enumerate_modes(int bandwidth, BasisKind kind);

std::size_t mode_count(int bandwidth, BasisKind kind);

/// Smallest integer m with m >= (B+2)^2/10 + 1 (requires B >= 3).
int min_samples(int bandwidth);

/// CSV with header `p,theta,phi,chi`, 17 significant digits.
void write_grid_csv(std::ostream& os, const Grid& g);
Grid read_grid_csv(std::istream& is);

/// Reads one angle per line (used for --phi-file / --chi-file).
std::vector<double> read_angle_file(std::istream& is);

}  // namespace sphericoh::grids
