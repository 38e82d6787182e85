#include "dtwall/wallcross.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dtwall/errors.hpp"
#include "dtwall/tilt.hpp"

namespace dtwall {

namespace {

// Largest integer strictly below q.
i64 strict_sup(const Rat& q) {
  Int f = floor_int(q);
  if (rat(to_i64(f)) == q) f -= 1;
  return to_i64(f);
}

SplittingSet enumerate_box(i64 m, i64 k, i64 n, i64 k_sup, i64 n_sup, const Geometry& geom) {
  if (m < 1) throw std::invalid_argument("enumerate_splittings: m must be >= 1");
  SplittingSet out;
  out.m = m;
  out.k = k;
  out.n = n;
  out.b = choose_b(m, k, geom);
  out.eta_val = eta(m, k, n, geom);

  const NumClass target = class_d4(m, k, n);
  const Rat h3 = rat(geom.h3);
  const Rat tchi = twist_chi(geom, m);
  const i64 m1_lo = to_i64(floor_int(out.b - rat(m))) + 1;
  const i64 m1_hi = to_i64(ceil_int(out.b)) - 1;

  for (i64 m1 = m1_lo; m1 <= m1_hi; ++m1) {
    const i64 m2 = m1 + m;
    Rat dkq = rat(k) + h3 / 2 * (rat(m2) * rat(m2) - rat(m1) * rat(m1));
    if (!is_integer(dkq)) continue;
    Rat noffq = h3 / 6 * (pow_rat(rat(m1), 3) - pow_rat(rat(m2), 3));
    if (!is_integer(noffq)) continue;
    const i64 dk = to_i64(dkq.get_num());
    const i64 noff = to_i64(noffq.get_num());
    const i64 k1_hi = std::min(k_sup, dk > 0 ? k_sup - dk : k_sup);
    for (i64 k1 = std::max<i64>(0, -dk); k1 <= k1_hi; ++k1) {
      const i64 k2 = k1 + dk;
      for (i64 n1 = -n_sup; n1 <= n_sup; ++n1) {
        const i64 n2 = n + n1 - m2 * k2 + m1 * k1 - noff;
        if (n2 < -n_sup || n2 > n_sup) continue;
        Splitting sp;
        sp.m1 = m1;
        sp.m2 = m2;
        sp.k1 = k1;
        sp.k2 = k2;
        sp.n1 = n1;
        sp.n2 = n2;
        sp.v1 = -twist_exp(NumClass{1, 0, rat(-k1), rat(-n1)}, rat(m1), geom);
        sp.v2 = twist_exp(NumClass{1, 0, rat(-k2), rat(-n2)}, rat(m2), geom);
        sp.chi = rat(n1) - rat(n2) - rat(m) * rat(k1 + k2) + tchi;
        if (!(sp.v1 + sp.v2 == target))
          throw std::logic_error("enumerate_splittings: decomposition does not recompose");
        if (euler_pairing(sp.v2, sp.v1, geom) != sp.chi)
          throw std::logic_error("enumerate_splittings: pairing mismatch");
        sp.u0 = wall_u_for(b_twist(sp.v2, out.b, geom), geom);
        out.items.push_back(std::move(sp));
      }
    }
  }
  // the loops emit (m1, k1, n1) in increasing lexicographic order already
  return out;
}

}  // namespace

SplittingSet enumerate_splittings(i64 m, i64 k, i64 n, const Rat& epsilon, const Geometry& geom) {
  if (epsilon <= 0) throw std::invalid_argument("enumerate_splittings: epsilon must be positive");
  const Rat m2 = rat(m) * rat(m);
  SplittingSet out =
      enumerate_box(m, k, n, strict_sup(epsilon * m2), strict_sup(epsilon * m2 * rat(m)), geom);
  out.epsilon = epsilon;
  return out;
}

Dt4Result dt4_via_wallcross(i64 m, i64 k, i64 n, const Rat& xi, const Rat& mu,
                            const InvariantTable& table_i, const InvariantTable& table_p,
                            const Geometry& geom) {
  if (m < 1) throw std::invalid_argument("dt4_via_wallcross: m must be >= 1");
  if (mu <= 0) throw std::invalid_argument("dt4_via_wallcross: mu must be positive");
  if (xi < 1) throw std::invalid_argument("dt4_via_wallcross: xi must be >= 1");

  // Box cut eps = mu H^3 / (2 m^xi): for integer c >= 0 and exponent e,
  // c < eps m^e iff (2c)^q m^(p - eq)^+ < (mu H^3)^q m^(eq - p)^+, xi = p/q.
  const i64 p = to_i64(xi.get_num()), q = to_i64(xi.get_den());
  auto below = [&](i64 c, i64 e) {
    Rat lhs = pow_rat(rat(2 * c), q) * pow_rat(rat(m), std::max<i64>(0, p - e * q));
    Rat rhs = pow_rat(mu * rat(geom.h3), q) * pow_rat(rat(m), std::max<i64>(0, e * q - p));
    return lhs < rhs;
  };
  auto box_sup = [&](i64 e) {
    if (!below(0, e)) return i64(-1);
    i64 hi = 1;
    while (below(hi, e)) hi *= 2;
    i64 lo = hi / 2;  // below(lo) holds, below(hi) fails
    while (hi - lo > 1) {
      i64 mid = lo + (hi - lo) / 2;
      (below(mid, e) ? lo : hi) = mid;
    }
    return lo;
  };

  SplittingSet set = enumerate_box(m, k, n, box_sup(2), box_sup(3), geom);
  Dt4Result res;
  res.value = 0;
  res.splittings = set.items.size();
  for (const Splitting& sp : set.items) {
    if (!is_integer(sp.chi))
      throw integrity_error("pairing value " + rat_str(sp.chi) + " is not an integer");
    auto it_i = table_i.entries.find({sp.k2, sp.n2});
    auto it_p = table_p.entries.find({sp.k1, -sp.n1});
    if (it_i == table_i.entries.end()) ++res.missing_i;
    if (it_p == table_p.entries.end()) ++res.missing_p;
    if (it_i == table_i.entries.end() || it_p == table_p.entries.end()) continue;
    Rat prod = it_i->second * it_p->second;
    if (prod == 0) continue;
    ++res.contributing;
    bool even = mpz_even_p(sp.chi.get_num().get_mpz_t()) != 0;
    res.value += (even ? -sp.chi : sp.chi) * prod;
  }
  return res;
}

WallReport find_walls(i64 m, i64 k, i64 n, const Rat& epsilon, const Geometry& geom) {
  WallReport rep;
  rep.set = enumerate_splittings(m, k, n, epsilon, geom);
  if (rep.set.eta_val >= 0) rep.window = wall_window(m, rep.set.eta_val);
  std::map<Rat, std::vector<Splitting>> by_wall;
  for (const Splitting& sp : rep.set.items) {
    if (sp.u0)
      by_wall[*sp.u0].push_back(sp);
    else
      ++rep.no_positive_wall;
  }
  for (auto it = by_wall.rbegin(); it != by_wall.rend(); ++it) {
    WallGroup g;
    g.u0 = it->first;
    if (rep.window) {
      g.in_window = rep.window->first <= g.u0 && g.u0 <= rep.window->second;
      g.on_boundary = g.u0 == rep.window->first || g.u0 == rep.window->second;
    }
    g.items = std::move(it->second);
    rep.groups.push_back(std::move(g));
  }
  return rep;
}

PolarFlags polar_flags(const Splitting& sp, i64 m, const Rat& b, const Rat& eta_val,
                       const Geometry& geom) {
  PolarFlags f;
  const Rat h3 = rat(geom.h3);
  const Rat msq = rat(m) * rat(m);
  const Rat kcap = eta_val * h3 / 2 * msq;
  const Rat ncap = kcap * rat(m);
  const Rat dcap = rat(m) * eta_val / 3;
  const Rat dmid = rat(m, 2);
  const Rat glo = h3 / 8 * msq * pow_rat(1 - 2 * eta_val / 3, 2);
  const Rat ghi = h3 / 8 * msq * pow_rat(1 + 2 * eta_val / 3, 2);

  auto strict = [&f](const Rat& a, const Rat& cap) {
    if (a == cap) f.boundary = true;
    return a < cap;
  };
  const Rat d[2] = {b - rat(sp.m1), rat(sp.m2) - b};
  const i64 kk[2] = {sp.k1, sp.k2};
  const i64 nn[2] = {sp.n1, sp.n2};
  for (int i = 0; i < 2; ++i) {
    f.k_in[i] = strict(rat(kk[i]), kcap);
    f.n_in[i] = strict(abs(rat(nn[i])), ncap);
    f.d_ok[i] = strict(abs(d[i] - dmid), dcap);
    Rat gq = h3 / 2 * d[i] * d[i] - rat(kk[i]);
    f.g_ok[i] = strict(glo, gq) && strict(gq, ghi);
  }
  f.pass = f.k_in[0] && f.k_in[1] && f.n_in[0] && f.n_in[1] && f.d_ok[0] && f.d_ok[1] &&
           f.g_ok[0] && f.g_ok[1];
  return f;
}

std::vector<PolarFlags> validate_extreme_polar(const SplittingSet& set, const Geometry& geom) {
  std::vector<PolarFlags> out;
  out.reserve(set.items.size());
  for (const Splitting& sp : set.items)
    out.push_back(polar_flags(sp, set.m, set.b, set.eta_val, geom));
  return out;
}

}  // namespace dtwall
