#pragma once

#include <optional>
#include <utility>

#include "dtwall/numclass.hpp"

namespace dtwall {

// Slope of a twisted class at squared stability parameter u = t^2; the
// parameter t itself is never materialized.
struct SlopeValue {
  bool infinite = false;
  Rat value;  // meaningful only when !infinite

  bool operator==(const SlopeValue&) const = default;
};

// (g - (u/6) H^3 r) / d on the b-twisted class; infinite when d = 0.
// Requires u > 0.
SlopeValue reduced_slope(const NumClass& vB, const Rat& u, const Geometry& geom);

// The unique u with vanishing reduced slope, 6g/(H^3 r); requires r != 0.
// Empty when that value is not positive.
std::optional<Rat> wall_u_for(const NumClass& vB, const Geometry& geom);

// ((3/4) m^2 (1 - eta) clamped at 0, (3/4) m^2); requires m >= 1, eta >= 0.
std::pair<Rat, Rat> wall_window(i64 m, const Rat& eta_val);

// d^2 H^3 - 2 r g >= 0; invariant under twisting.
bool check_bg(const NumClass& v, const Geometry& geom);

// s <= u d H^3 / 18, evaluated on the zero-slope locus only: requires u > 0
// and reduced_slope(vB, u) == 0, otherwise throws.
bool check_bmt(const NumClass& vB, const Rat& u, const Geometry& geom);

// -H^3 m^3 / 24 <= n + k^2/(2 m H^3); equivalent to eta(m,k,n) >= 0.
bool check_d4_bound(i64 m, i64 k, i64 n, const Geometry& geom);

// 3m^2 - mu m^(3-xi) - 3m > 0, decided exactly by cross-exponentiation.
// Requires m >= 1, xi >= 1, mu > 0.
bool stability_gap_positive(i64 m, const Rat& xi, const Rat& mu);

// m * degC <= 3N for a degree-degC curve on an m-fold thickening.
bool check_hcn(i64 m, i64 deg_c, i64 n_sections);

// Exact test of eta < mu / m^xi for rational xi (cross-exponentiated).
// Requires m >= 1, mu > 0.
bool eta_below_mu_ratio(const Rat& eta_val, const Rat& mu, const Rat& xi, i64 m);

struct ValidityReport {
  Rat eta_val;
  bool eta_nonneg = false;        // eta >= 0
  bool eta_below_mu = false;      // eta < mu / m^xi
  bool cond_eta = false;          // 0 <= eta < min(3/(2m), 1/2)
  bool gap_positive = false;      // stability_gap_positive(m, xi, mu)
  bool mu_window_ok = false;      // (xi > 1 and mu > 0) or (xi = 1 and 0 < mu < 3/2)
};

ValidityReport validity_report(i64 m, i64 k, i64 n, const Rat& xi, const Rat& mu,
                               const Geometry& geom);

}  // namespace dtwall
