#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dtwall/invariants.hpp"

namespace dtwall {

// One series variable. Exponents are stored as integers scaled by `scale`:
// a stored exponent e means e / scale. The window [lo, hi] (scaled units,
// inclusive) is mandatory; terms outside it do not exist.
struct VarSpec {
  char name = 'x';
  i64 scale = 1;
  i64 lo = 0;
  i64 hi = 0;

  bool operator==(const VarSpec&) const = default;
};

i64 default_scale(char name);  // x -> 6, y -> 2, z -> 12

struct ExpKey {
  std::array<i64, 3> e{0, 0, 0};
  auto operator<=>(const ExpKey&) const = default;
};

// Sparse truncated Laurent series in 1..3 variables with exact coefficients.
// Invariants: no stored zero coefficients; every key inside the window;
// canonical term order is lexicographic on the scaled exponent tuple.
struct LaurentSeries {
  int nvars = 1;
  std::array<VarSpec, 3> var{};
  std::map<ExpKey, Rat> terms;
};

// Validates variable count, names (drawn from x,y,z in that order), positive
// scales and ordered windows; throws std::invalid_argument.
LaurentSeries make_series(const std::vector<VarSpec>& vars);

// Adds c at key if inside the window (silently truncates otherwise); removes
// the term if the sum cancels.
void add_term(LaurentSeries& s, const ExpKey& key, const Rat& c);

// Coefficient at unscaled exponents (0 when absent or off-lattice).
Rat coeff(const LaurentSeries& s, const std::array<Rat, 3>& exps);

// Same variables required. Scales are raised to the lcm, windows intersect
// (per-variable intersections must be nonempty).
LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b);

// Product on the Minkowski sum of the windows: exact for finite inputs.
LaurentSeries series_mul_span(const LaurentSeries& a, const LaurentSeries& b);

// Integer exponent. Negative exponents invert first, which requires a nonzero
// coefficient at exponent zero and no negative-exponent support.
LaurentSeries series_pow(const LaurentSeries& a, i64 e);

// Per-variable sub-window (scaled units of s); terms outside are dropped.
LaurentSeries restrict_window(const LaurentSeries& s,
                              const std::vector<std::pair<i64, i64>>& window);

// Raise scales; each new scale must be a positive multiple of the old one.
LaurentSeries rescale(const LaurentSeries& s, const std::vector<i64>& scales);

// Embed into a variable set containing s's variables (new variables get
// exponent zero); existing variables keep exponents, possibly rescaled, and
// are truncated to the target windows.
LaurentSeries promote(const LaurentSeries& s, const std::vector<VarSpec>& target);

// MacMahon series of (sign * x) raised to `power`:
// prod_{j>=1} (1 - (sign x)^j)^(-j power) through x^order. sign is +1 or -1.
LaurentSeries macmahon(int sign, i64 power, i64 order);

// prod_{N>=1} (1 - x^N)^(-chi_p) through x^order.
LaurentSeries gottsche(i64 chi_p, i64 order);

// Local model of an m-fold thickened surface inside the threefold: the sign
// (-1)^(twist_chi(m) - 1) times the sum over twists a of
//   x^(-H^3 m^3/6 + a m^2 H^3/2 - a^2 m H^3/2)  y^(H^3 m^2/2 - a m H^3)
// multiplied by the surface product series gottsche(H^3 m^3 + c2H m, .).
// Exact inside the given (x, y) window; the y-window makes the twist range
// finite. Throws std::invalid_argument when twist_chi(m) is not an integer.
LaurentSeries local_d4_series(i64 m, const Geometry& geom, const std::array<VarSpec, 2>& window);

// Replace `var` by the monomial prod_j v_j^(image_exps[j]) (indices are the
// series' own variable positions). Windows map to the exact image box.
LaurentSeries substitute_monomial(const LaurentSeries& a, char var,
                                  const std::array<Rat, 3>& image_exps);

// (x, y) series with a term value * x^n y^k per entry; entries falling outside
// the window are an error.
LaurentSeries table_to_series(const InvariantTable& t, const std::array<VarSpec, 2>& window);

// Three-variable generating series of the two-sided twist sum: for each
// m1 in m1_range (m2 = m1 + m), prefactor
//   x^(h3/6 (m1^3 - m2^3)) y^(h3/2 (m1^2 - m2^2)) z^(twist_chi(m))
// times the I table in (x z^-1, x^m2 y z^-m) and the P table in
// (x z^-1, x^-m1 y^-1 z^-m), keeping entries with k < eps m^2, |n| < eps m^3,
// truncated to window3. Requires eps > 0 and m >= 1.
LaurentSeries assemble_zd6(i64 m, const Rat& epsilon, const InvariantTable& table_i,
                           const InvariantTable& table_p, const Geometry& geom,
                           std::pair<i64, i64> m1_range, const std::array<VarSpec, 3>& window3);

// d/dz evaluated at z0 (+1 or -1): c x^a y^b z^e -> c e z0^(e-1) x^a y^b.
// Fractional z-exponents raise integrity_error.
LaurentSeries dz_at(const LaurentSeries& s, int z0);

struct CoeffDiff {
  Rat n, k;      // unscaled exponents
  Rat lhs, rhs;  // differing coefficients
};

// Compare two (x, y) series at every position of the common window with
// n + k^2/(2 m h3) < -(h3/24) m^3 (1 - mu/m^xi); returns the differences.
std::vector<CoeffDiff> compare_modulo(const LaurentSeries& a, const LaurentSeries& b, i64 m,
                                      const Rat& xi, const Rat& mu, const Geometry& geom);

struct DtptReport {
  bool ok = true;
  std::vector<CurvePoint> differing;
};

// Checks I = M(-x)^chi(X) * P through x^order at every curve degree present.
DtptReport dtpt_check(const InvariantTable& table_i, const InvariantTable& table_p,
                      const Geometry& geom, i64 order);

// Canonical dump: "var <name> scale <D> window <lo> <hi>" per variable, then
// "<num>/<den> <e1> [<e2> [<e3>]]" per term in lexicographic key order.
std::string dump_series(const LaurentSeries& s);
std::string series_to_json_text(const LaurentSeries& s);

}  // namespace dtwall
