#include "dtwall/tilt.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtwall {

namespace {

unsigned long ulong_of(const Int& z, const char* what) {
  if (z < 0 || !z.fits_ulong_p()) throw std::invalid_argument(std::string("bad exponent in ") + what);
  return z.get_ui();
}

}  // namespace

SlopeValue reduced_slope(const NumClass& vB, const Rat& u, const Geometry& geom) {
  if (u <= 0) throw std::invalid_argument("reduced_slope: u must be positive");
  if (vB.d == 0) return {true, Rat(0)};
  return {false, (vB.g - u / 6 * rat(geom.h3) * vB.r) / vB.d};
}

std::optional<Rat> wall_u_for(const NumClass& vB, const Geometry& geom) {
  if (vB.r == 0) throw std::invalid_argument("wall_u_for: r must be nonzero");
  Rat u0 = 6 * vB.g / (rat(geom.h3) * vB.r);
  if (u0 <= 0) return std::nullopt;
  return u0;
}

std::pair<Rat, Rat> wall_window(i64 m, const Rat& eta_val) {
  if (m < 1) throw std::invalid_argument("wall_window: m must be >= 1");
  if (eta_val < 0) throw std::invalid_argument("wall_window: eta must be >= 0");
  Rat hi = rat(3 * m * m, 4);
  Rat lo = hi * (1 - eta_val);
  if (lo < 0) lo = 0;
  return {lo, hi};
}

bool check_bg(const NumClass& v, const Geometry& geom) {
  return v.d * v.d * rat(geom.h3) - 2 * v.r * v.g >= 0;
}

bool check_bmt(const NumClass& vB, const Rat& u, const Geometry& geom) {
  SlopeValue rho = reduced_slope(vB, u, geom);
  if (rho.infinite || rho.value != 0)
    throw std::invalid_argument("check_bmt: reduced slope must vanish at u");
  return vB.s <= u * vB.d * rat(geom.h3) / 18;
}

bool check_d4_bound(i64 m, i64 k, i64 n, const Geometry& geom) {
  Rat lhs = -rat(geom.h3) * rat(m) * rat(m) * rat(m) / 24;
  return lhs <= rat(n) + rat(k) * rat(k) / (2 * rat(m) * rat(geom.h3));
}

bool eta_below_mu_ratio(const Rat& eta_val, const Rat& mu, const Rat& xi, i64 m) {
  if (m < 1) throw std::invalid_argument("eta_below_mu_ratio: m must be >= 1");
  if (mu <= 0) throw std::invalid_argument("eta_below_mu_ratio: mu must be positive");
  if (xi < 0) throw std::invalid_argument("eta_below_mu_ratio: xi must be >= 0");
  if (eta_val <= 0) return true;
  // eta < mu / m^(p/q)  <=>  eta^q m^p < mu^q
  i64 q = to_i64(xi.get_den());
  unsigned long p = ulong_of(xi.get_num(), "eta_below_mu_ratio");
  return pow_rat(eta_val, q) * pow_int(Int(m), p) < pow_rat(mu, q);
}

bool stability_gap_positive(i64 m, const Rat& xi, const Rat& mu) {
  if (m < 1) throw std::invalid_argument("stability_gap_positive: m must be >= 1");
  if (xi < 1) throw std::invalid_argument("stability_gap_positive: xi must be >= 1");
  if (mu <= 0) throw std::invalid_argument("stability_gap_positive: mu must be positive");
  // 3m^2 - 3m > mu m^(3 - p/q), both sides nonnegative, so compare q-th powers:
  // (3m^2-3m)^q m^(max(0, p-3q)) > mu^q m^(max(0, 3q-p)).
  i64 q = to_i64(xi.get_den());
  i64 p = to_i64(xi.get_num());
  Rat lhs = pow_rat(rat(3 * m * m - 3 * m), q);
  Rat rhs = pow_rat(mu, q);
  Int e = Int(3) * q - p;
  if (e >= 0)
    rhs *= pow_int(Int(m), ulong_of(e, "stability_gap_positive"));
  else
    lhs *= pow_int(Int(m), ulong_of(-e, "stability_gap_positive"));
  return lhs > rhs;
}

bool check_hcn(i64 m, i64 deg_c, i64 n_sections) {
  if (m < 1) throw std::invalid_argument("check_hcn: m must be >= 1");
  return Int(m) * Int(deg_c) <= Int(3) * Int(n_sections);
}

ValidityReport validity_report(i64 m, i64 k, i64 n, const Rat& xi, const Rat& mu,
                               const Geometry& geom) {
  ValidityReport rep;
  rep.eta_val = eta(m, k, n, geom);
  rep.eta_nonneg = rep.eta_val >= 0;
  rep.eta_below_mu = eta_below_mu_ratio(rep.eta_val, mu, xi, m);
  Rat cap = std::min(rat(3, 2 * m), rat(1, 2));
  rep.cond_eta = rep.eta_nonneg && rep.eta_val < cap;
  rep.gap_positive = stability_gap_positive(m, xi, mu);
  rep.mu_window_ok = (xi > 1 && mu > 0) || (xi == 1 && mu > 0 && mu < rat(3, 2));
  return rep;
}

}  // namespace dtwall
