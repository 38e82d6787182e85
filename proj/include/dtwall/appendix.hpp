#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dtwall/rational.hpp"

namespace dtwall {

// Integral lattice of rank 1 or 2 with signature (1, rank - 1), together with
// a polarization L of positive square.
struct SurfaceLattice {
  int rank = 1;
  std::array<std::array<i64, 2>, 2> gram{};
  std::array<i64, 2> L{};
};

SurfaceLattice make_lattice(int rank, const std::array<std::array<i64, 2>, 2>& gram,
                            const std::array<i64, 2>& L);

Rat lattice_dot(const SurfaceLattice& lat, const std::array<Rat, 2>& a,
                const std::array<Rat, 2>& b);

// One filtration step: rank r > 0, divisor part l, second-degree part s.
struct HNFactor {
  i64 r = 1;
  std::array<i64, 2> l{};
  Rat s;
};

struct HNData {
  SurfaceLattice lat;
  std::vector<HNFactor> factors;
};

// Checks r_i > 0, strictly decreasing slopes (l_i . L) / r_i, the chain bound
// slope_i <= slope_{i+1} + L^2, and l_i^2 >= 2 r_i s_i for each factor.
// Returns the first violation as text, or nothing when all hold.
std::optional<std::string> hn_hypotheses_ok(const HNData& d);

struct IneqReport {
  bool holds = false;   // sum s_i <= (L^2/24)(r^3 - r) + l^2 / (2r)
  Rat lhs, rhs, slack;  // slack = rhs - lhs
  bool desire_ok = false;  // sum s_i <= l^2/(2r) + sum_{i<j} (r_j l_i - r_i l_j)^2 / (2 r_i r_j r)
  bool hodge_ok = false;   // (w . L)^2 >= L^2 w^2 for every w = r_j l_i - r_i l_j
};

// Throws std::invalid_argument when hn_hypotheses_ok reports a violation.
IneqReport check_rank_bound(const HNData& d);

// Filtration of an m-fold thickening of a section: factors (1, -jL, j^2 L^2 / 2)
// for j = 0..m-1. Attains the rank bound with zero slack.
HNData thickened_section_data(i64 m, const SurfaceLattice& lat);

// Maximum of sum_{i<j} (j - i)^2 over filtrations with r factors: r^2(r^2-1)/12.
Rat spacing_cap(i64 r);

struct HNBounds {
  i64 rmax = 4;       // factor ranks drawn from [1, rmax]
  i64 lmax = 6;       // divisor coordinates drawn from [-lmax, lmax]
  i64 smax_drop = 4;  // s_i = l_i^2/(2 r_i) - drop/2, drop in [0, smax_drop]
};

// Deterministic sample satisfying every hypothesis; throws std::runtime_error
// when no admissible divisor part exists within the coordinate bounds.
HNData random_hn(unsigned long seed, int nfactors, const HNBounds& b, const SurfaceLattice& lat);

}  // namespace dtwall
