#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "dtwall/geometry.hpp"
#include "dtwall/invariants.hpp"
#include "dtwall/numclass.hpp"

namespace dtwall {

// One decomposition class_d4(m, k, n) = v1 + v2 with
//   v1 = -twist_exp((1, 0, -k1, -n1), m1),  v2 = twist_exp((1, 0, -k2, -n2), m2),
// m2 = m1 + m, both (k_i, n_i) inside the strict box k_i < eps m^2, |n_i| < eps m^3.
struct Splitting {
  i64 m1 = 0, m2 = 0;
  i64 k1 = 0, k2 = 0;
  i64 n1 = 0, n2 = 0;
  NumClass v1, v2;
  std::optional<Rat> u0;  // wall position in u = t^2 for the b-twisted v2, when positive
  Rat chi;                // euler_pairing(v2, v1)
};

struct SplittingSet {
  i64 m = 1;
  i64 k = 0, n = 0;
  Rat epsilon;
  Rat b;        // chosen twist parameter -k / (m H^3)
  Rat eta_val;  // defect of (m, k, n)
  std::vector<Splitting> items;  // ordered by (m1, k1, n1)
};

// Enumerates all splittings with b - m < m1 < b. Every item is checked to
// recompose to class_d4(m, k, n) and to match the closed-form pairing
//   chi = n1 - n2 - m (k1 + k2) + twist_chi(m).
SplittingSet enumerate_splittings(i64 m, i64 k, i64 n, const Rat& epsilon, const Geometry& geom);

struct Dt4Result {
  Rat value;
  size_t splittings = 0;         // enumerated decompositions
  size_t contributing = 0;       // with both table entries present and nonzero
  unsigned long missing_i = 0;   // absent ideal-table entries treated as 0
  unsigned long missing_p = 0;   // absent pair-table entries treated as 0
};

// value = sum over splittings of (-1)^(chi - 1) chi I(k2, n2) P(k1, -n1),
// with the box cut at eps = mu H^3 / (2 m^xi). Requires mu > 0 and xi >= 1;
// xi may be any rational (bounds are compared exactly). Throws integrity_error
// when a pairing value is not an integer.
Dt4Result dt4_via_wallcross(i64 m, i64 k, i64 n, const Rat& xi, const Rat& mu,
                            const InvariantTable& table_i, const InvariantTable& table_p,
                            const Geometry& geom);

struct WallGroup {
  Rat u0;
  bool in_window = false;
  bool on_boundary = false;
  std::vector<Splitting> items;
};

struct WallReport {
  SplittingSet set;
  // [ (3/4) m^2 (1 - eta) clamped at 0, 3 m^2 / 4 ]; absent when eta < 0.
  std::optional<std::pair<Rat, Rat>> window;
  std::vector<WallGroup> groups;  // distinct wall positions, u0 descending
  size_t no_positive_wall = 0;    // splittings without a positive wall
};

WallReport find_walls(i64 m, i64 k, i64 n, const Rat& epsilon, const Geometry& geom);

// Strict two-sided bounds satisfied by extreme polar states at eta-band cut
// eps = eta H^3 / 2; index 0 is the (m1, k1, n1) side, index 1 the other.
struct PolarFlags {
  std::array<bool, 2> k_in{};  // k_i < eta H^3 m^2 / 2
  std::array<bool, 2> n_in{};  // |n_i| < eta H^3 m^3 / 2
  std::array<bool, 2> d_ok{};  // |d_i - m/2| < m eta / 3
  std::array<bool, 2> g_ok{};  // H^3 m^2 (1 -+ 2 eta/3)^2 / 8 < H^3 d_i^2 / 2 - k_i < ... (1 + 2 eta/3)^2 ...
  bool boundary = false;       // some bound attained with equality
  bool pass = false;           // all strict bounds hold
};

PolarFlags polar_flags(const Splitting& sp, i64 m, const Rat& b, const Rat& eta_val,
                       const Geometry& geom);
std::vector<PolarFlags> validate_extreme_polar(const SplittingSet& set, const Geometry& geom);

}  // namespace dtwall
