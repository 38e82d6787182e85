#include "dtwall/series.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dtwall/errors.hpp"
#include "dtwall/tilt.hpp"
#include "json.hpp"

namespace dtwall {

namespace {

i64 add_ck(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series exponent overflow");
  return r;
}

i64 mul_ck(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series exponent overflow");
  return r;
}

i64 lcm_ck(i64 a, i64 b) {
  i64 g = std::gcd(a, b);
  return mul_ck(a / g, b);
}

int var_index(const LaurentSeries& s, char name) {
  for (int i = 0; i < s.nvars; ++i)
    if (s.var[i].name == name) return i;
  return -1;
}

void require_same_vars(const LaurentSeries& a, const LaurentSeries& b, const char* op) {
  if (a.nvars != b.nvars) throw std::invalid_argument(std::string(op) + ": incompatible variable sets");
  for (int i = 0; i < a.nvars; ++i)
    if (a.var[i].name != b.var[i].name)
      throw std::invalid_argument(std::string(op) + ": incompatible variable sets");
}

// Raise both operands to common (lcm) scales; windows follow the scales.
void align_scales(LaurentSeries& a, LaurentSeries& b) {
  std::vector<i64> scales(a.nvars);
  bool same = true;
  for (int i = 0; i < a.nvars; ++i) {
    scales[i] = lcm_ck(a.var[i].scale, b.var[i].scale);
    same = same && scales[i] == a.var[i].scale && scales[i] == b.var[i].scale;
  }
  if (same) return;
  a = rescale(a, scales);
  b = rescale(b, scales);
}

LaurentSeries empty_like(const LaurentSeries& a, const LaurentSeries& b, const char* op) {
  LaurentSeries out;
  out.nvars = a.nvars;
  for (int i = 0; i < a.nvars; ++i) {
    out.var[i] = a.var[i];
    out.var[i].lo = std::max(a.var[i].lo, b.var[i].lo);
    out.var[i].hi = std::min(a.var[i].hi, b.var[i].hi);
    if (out.var[i].lo > out.var[i].hi)
      throw std::invalid_argument(std::string(op) + ": empty window intersection");
  }
  return out;
}

// Exact scaled exponent from an unscaled rational; throws when the scale
// lattice cannot represent it.
i64 scaled_exp(const Rat& q, i64 scale, const char* what) {
  Rat v = q * rat(scale);
  if (!is_integer(v))
    throw std::invalid_argument(std::string(what) + ": exponent " + rat_str(q) +
                                " not representable at scale " + std::to_string(scale));
  return to_i64(v.get_num());
}

Rat binom(i64 top, i64 i) {
  Rat out = 1;
  for (i64 t = 1; t <= i; ++t) out *= rat(top - t + 1, t);
  return out;
}

// Multiply s (1-var, scale 1, window [0, order]) by (1 + c x^j)^e.
void mul_binomial_factor(LaurentSeries& s, const Rat& c, i64 j, i64 e, i64 order) {
  LaurentSeries f = s;  // same window/scale
  f.terms.clear();
  Rat acc = 1;
  for (i64 i = 0; mul_ck(i, j) <= order; ++i) {
    if (i > 0) acc *= c;
    add_term(f, ExpKey{{i * j, 0, 0}}, binom(e, i) * acc);
  }
  s = series_mul(s, f);
}

LaurentSeries one_dim_unit(i64 order) {
  LaurentSeries s = make_series({VarSpec{'x', 1, 0, order}});
  add_term(s, ExpKey{}, 1);
  return s;
}

LaurentSeries series_inverse(const LaurentSeries& a) {
  for (int i = 0; i < a.nvars; ++i)
    if (a.var[i].lo > 0 || a.var[i].hi < 0)
      throw std::invalid_argument("series_pow: window must contain exponent zero for inversion");
  Rat c0;
  i64 total_hi = 0;
  for (const auto& [key, c] : a.terms) {
    i64 deg = 0;
    for (int i = 0; i < a.nvars; ++i) {
      if (key.e[i] < 0)
        throw std::invalid_argument("series_pow: negative support, cannot invert");
      deg = add_ck(deg, key.e[i]);
    }
    if (deg == 0) c0 = c;
  }
  if (c0 == 0) throw std::invalid_argument("series_pow: constant term vanishes, cannot invert");
  for (int i = 0; i < a.nvars; ++i) total_hi = add_ck(total_hi, a.var[i].hi);

  // a = c0 (1 - u) with u supported in positive total degree; sum the
  // geometric series, which exhausts the window after total_hi rounds.
  LaurentSeries u;
  u.nvars = a.nvars;
  u.var = a.var;
  for (const auto& [key, c] : a.terms) {
    bool zero_key = std::all_of(key.e.begin(), key.e.end(), [](i64 v) { return v == 0; });
    if (!zero_key) add_term(u, key, -c / c0);
  }
  LaurentSeries out = u, pow = u;
  add_term(out, ExpKey{}, 1);
  for (i64 round = 2; round <= total_hi && !pow.terms.empty(); ++round) {
    pow = series_mul(pow, u);
    for (const auto& [key, c] : pow.terms) add_term(out, key, c);
  }
  for (auto& [key, c] : out.terms) c /= c0;
  return out;
}

}  // namespace

i64 default_scale(char name) {
  switch (name) {
    case 'x': return 6;
    case 'y': return 2;
    case 'z': return 12;
  }
  throw std::invalid_argument("default_scale: unknown variable");
}

LaurentSeries make_series(const std::vector<VarSpec>& vars) {
  if (vars.empty() || vars.size() > 3)
    throw std::invalid_argument("make_series: need 1..3 variables");
  const std::string names = "xyz";
  size_t pos = 0;
  for (const auto& v : vars) {
    pos = names.find(v.name, pos);
    if (pos == std::string::npos)
      throw std::invalid_argument("make_series: variables must be drawn from x,y,z in order");
    ++pos;
    if (v.scale < 1) throw std::invalid_argument("make_series: scale must be positive");
    if (v.lo > v.hi) throw std::invalid_argument("make_series: window lo > hi");
  }
  LaurentSeries s;
  s.nvars = static_cast<int>(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) s.var[i] = vars[i];
  return s;
}

void add_term(LaurentSeries& s, const ExpKey& key, const Rat& c) {
  if (c == 0) return;
  for (int i = 0; i < s.nvars; ++i)
    if (key.e[i] < s.var[i].lo || key.e[i] > s.var[i].hi) return;
  for (int i = s.nvars; i < 3; ++i)
    if (key.e[i] != 0) throw std::invalid_argument("add_term: exponent on missing variable");
  auto [it, fresh] = s.terms.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) s.terms.erase(it);
  }
}

Rat coeff(const LaurentSeries& s, const std::array<Rat, 3>& exps) {
  ExpKey key;
  for (int i = 0; i < s.nvars; ++i) {
    Rat v = exps[i] * rat(s.var[i].scale);
    if (!is_integer(v)) return 0;
    key.e[i] = to_i64(v.get_num());
  }
  auto it = s.terms.find(key);
  return it == s.terms.end() ? Rat(0) : it->second;
}

LaurentSeries series_add(const LaurentSeries& a0, const LaurentSeries& b0) {
  require_same_vars(a0, b0, "series_add");
  LaurentSeries a = a0, b = b0;
  align_scales(a, b);
  LaurentSeries out = empty_like(a, b, "series_add");
  for (const auto& [key, c] : a.terms) add_term(out, key, c);
  for (const auto& [key, c] : b.terms) add_term(out, key, c);
  return out;
}

LaurentSeries series_mul(const LaurentSeries& a0, const LaurentSeries& b0) {
  require_same_vars(a0, b0, "series_mul");
  LaurentSeries a = a0, b = b0;
  align_scales(a, b);
  LaurentSeries out = empty_like(a, b, "series_mul");
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      ExpKey key;
      for (int i = 0; i < 3; ++i) key.e[i] = add_ck(ka.e[i], kb.e[i]);
      add_term(out, key, ca * cb);
    }
  return out;
}

LaurentSeries series_mul_span(const LaurentSeries& a0, const LaurentSeries& b0) {
  require_same_vars(a0, b0, "series_mul_span");
  LaurentSeries a = a0, b = b0;
  align_scales(a, b);
  LaurentSeries out;
  out.nvars = a.nvars;
  for (int i = 0; i < a.nvars; ++i) {
    out.var[i] = a.var[i];
    out.var[i].lo = add_ck(a.var[i].lo, b.var[i].lo);
    out.var[i].hi = add_ck(a.var[i].hi, b.var[i].hi);
  }
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      ExpKey key;
      for (int i = 0; i < 3; ++i) key.e[i] = add_ck(ka.e[i], kb.e[i]);
      add_term(out, key, ca * cb);
    }
  return out;
}

LaurentSeries series_pow(const LaurentSeries& a, i64 e) {
  if (e < 0) return series_pow(series_inverse(a), -e);
  LaurentSeries out = a;
  out.terms.clear();
  add_term(out, ExpKey{}, 1);
  LaurentSeries base = a;
  i64 left = e;
  while (left > 0) {
    if (left & 1) out = series_mul(out, base);
    left >>= 1;
    if (left > 0) base = series_mul(base, base);
  }
  return out;
}

LaurentSeries restrict_window(const LaurentSeries& s,
                              const std::vector<std::pair<i64, i64>>& window) {
  if (static_cast<int>(window.size()) != s.nvars)
    throw std::invalid_argument("restrict_window: wrong variable count");
  LaurentSeries out = s;
  out.terms.clear();
  for (int i = 0; i < s.nvars; ++i) {
    auto [lo, hi] = window[i];
    if (lo > hi) throw std::invalid_argument("restrict_window: lo > hi");
    out.var[i].lo = lo;
    out.var[i].hi = hi;
  }
  for (const auto& [key, c] : s.terms) add_term(out, key, c);
  return out;
}

LaurentSeries rescale(const LaurentSeries& s, const std::vector<i64>& scales) {
  if (static_cast<int>(scales.size()) != s.nvars)
    throw std::invalid_argument("rescale: wrong variable count");
  std::array<i64, 3> factor{1, 1, 1};
  LaurentSeries out = s;
  out.terms.clear();
  for (int i = 0; i < s.nvars; ++i) {
    if (scales[i] < s.var[i].scale || scales[i] % s.var[i].scale != 0)
      throw std::invalid_argument("rescale: new scale must be a multiple of the old one");
    factor[i] = scales[i] / s.var[i].scale;
    out.var[i].scale = scales[i];
    out.var[i].lo = mul_ck(s.var[i].lo, factor[i]);
    out.var[i].hi = mul_ck(s.var[i].hi, factor[i]);
  }
  for (const auto& [key, c] : s.terms) {
    ExpKey k2;
    for (int i = 0; i < s.nvars; ++i) k2.e[i] = mul_ck(key.e[i], factor[i]);
    out.terms.emplace(k2, c);
  }
  return out;
}

LaurentSeries promote(const LaurentSeries& s, const std::vector<VarSpec>& target) {
  LaurentSeries out = make_series(target);
  std::array<int, 3> src_pos{-1, -1, -1};
  {
    int j = 0;
    for (int i = 0; i < out.nvars; ++i)
      if (j < s.nvars && s.var[j].name == out.var[i].name) src_pos[i] = j++;
    if (j != s.nvars)
      throw std::invalid_argument("promote: target must contain the source variables");
  }
  std::array<i64, 3> factor{1, 1, 1};
  for (int i = 0; i < out.nvars; ++i) {
    if (src_pos[i] < 0) continue;
    const VarSpec& sv = s.var[src_pos[i]];
    if (out.var[i].scale % sv.scale != 0)
      throw std::invalid_argument("promote: target scale must be a multiple of the source scale");
    factor[i] = out.var[i].scale / sv.scale;
  }
  for (const auto& [key, c] : s.terms) {
    ExpKey k2;
    for (int i = 0; i < out.nvars; ++i)
      k2.e[i] = src_pos[i] < 0 ? 0 : mul_ck(key.e[src_pos[i]], factor[i]);
    add_term(out, k2, c);
  }
  return out;
}

LaurentSeries macmahon(int sign, i64 power, i64 order) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("macmahon: sign must be +1 or -1");
  if (order < 0) throw std::invalid_argument("macmahon: order must be >= 0");
  LaurentSeries s = one_dim_unit(order);
  for (i64 j = 1; j <= order; ++j) {
    // factor (1 - (sign x)^j)^(-j power)
    Rat c = sign == -1 && (j & 1) ? Rat(1) : Rat(-1);
    mul_binomial_factor(s, c, j, -j * power, order);
  }
  return s;
}

LaurentSeries gottsche(i64 chi_p, i64 order) {
  if (order < 0) throw std::invalid_argument("gottsche: order must be >= 0");
  LaurentSeries s = one_dim_unit(order);
  for (i64 j = 1; j <= order; ++j) mul_binomial_factor(s, Rat(-1), j, -chi_p, order);
  return s;
}

LaurentSeries local_d4_series(i64 m, const Geometry& geom, const std::array<VarSpec, 2>& window) {
  if (m < 1) throw std::invalid_argument("local_d4_series: m must be >= 1");
  Rat tchi = twist_chi(geom, m);
  if (!is_integer(tchi))
    throw std::invalid_argument("local_d4_series: twist characteristic " + rat_str(tchi) +
                                " of geometry " + (geom.id.empty() ? "(unnamed)" : geom.id) +
                                " is not an integer");
  bool chi_even = mpz_even_p(tchi.get_num().get_mpz_t()) != 0;
  const Rat sign = chi_even ? Rat(-1) : Rat(1);  // (-1)^(chi - 1)

  LaurentSeries out = make_series({window[0], window[1]});
  if (out.nvars != 2 || out.var[0].name != 'x' || out.var[1].name != 'y')
    throw std::invalid_argument("local_d4_series: window must name x, y");

  const Rat h3 = rat(geom.h3);
  const Rat mq = rat(m);
  // y-exponent H^3 m^2/2 - a m H^3 is strictly decreasing in a; the y-window
  // pins the twist range.
  const Rat ylo = rat(out.var[1].lo, out.var[1].scale);
  const Rat yhi = rat(out.var[1].hi, out.var[1].scale);
  const i64 a_lo = to_i64(ceil_int((h3 * mq * mq / 2 - yhi) / (mq * h3)));
  const i64 a_hi = to_i64(floor_int((h3 * mq * mq / 2 - ylo) / (mq * h3)));

  const Rat xhi = rat(out.var[0].hi, out.var[0].scale);
  i64 order = 0;
  std::vector<std::array<Rat, 2>> spikes;
  for (i64 a = a_lo; a <= a_hi; ++a) {
    Rat ex = -h3 * mq * mq * mq / 6 + rat(a) * mq * mq * h3 / 2 - rat(a) * rat(a) * mq * h3 / 2;
    Rat ey = h3 * mq * mq / 2 - rat(a) * mq * h3;
    if (ex > xhi) continue;  // surface factor only raises the x-exponent
    spikes.push_back({ex, ey});
    order = std::max(order, to_i64(floor_int(xhi - ex)));
  }
  LaurentSeries surf = gottsche(geom.h3 * m * m * m + geom.c2h * m, order);
  for (const auto& [ex, ey] : spikes)
    for (const auto& [key, c] : surf.terms) {
      ExpKey k2{{scaled_exp(ex + rat(key.e[0]), out.var[0].scale, "local_d4_series"),
                 scaled_exp(ey, out.var[1].scale, "local_d4_series"), 0}};
      add_term(out, k2, sign * c);
    }
  return out;
}

LaurentSeries substitute_monomial(const LaurentSeries& a, char var,
                                  const std::array<Rat, 3>& image_exps) {
  int vi = var_index(a, var);
  if (vi < 0) throw std::invalid_argument("substitute_monomial: no such variable");
  const i64 dv = a.var[vi].scale;

  LaurentSeries out = a;
  out.terms.clear();
  // New scales accommodate e_v * image_exps[j] exactly.
  for (int j = 0; j < a.nvars; ++j) {
    i64 den = to_i64(image_exps[j].get_den());
    out.var[j].scale = j == vi ? mul_ck(dv, den) : lcm_ck(a.var[j].scale, mul_ck(dv, den));
  }
  // Exact image box: linear and monotone in the substituted exponent.
  for (int j = 0; j < a.nvars; ++j) {
    Rat clo = image_exps[j] * rat(a.var[vi].lo, dv);
    Rat chi_ = image_exps[j] * rat(a.var[vi].hi, dv);
    if (clo > chi_) std::swap(clo, chi_);
    Rat base_lo = j == vi ? Rat(0) : rat(a.var[j].lo, a.var[j].scale);
    Rat base_hi = j == vi ? Rat(0) : rat(a.var[j].hi, a.var[j].scale);
    out.var[j].lo = scaled_exp(base_lo + clo, out.var[j].scale, "substitute_monomial");
    out.var[j].hi = scaled_exp(base_hi + chi_, out.var[j].scale, "substitute_monomial");
  }
  for (const auto& [key, c] : a.terms) {
    Rat ev = rat(key.e[vi], dv);
    ExpKey k2;
    for (int j = 0; j < a.nvars; ++j) {
      Rat base = j == vi ? Rat(0) : rat(key.e[j], a.var[j].scale);
      k2.e[j] = scaled_exp(base + ev * image_exps[j], out.var[j].scale, "substitute_monomial");
    }
    add_term(out, k2, c);
  }
  return out;
}

LaurentSeries table_to_series(const InvariantTable& t, const std::array<VarSpec, 2>& window) {
  LaurentSeries out = make_series({window[0], window[1]});
  for (const auto& [pt, v] : t.entries) {
    ExpKey key{{mul_ck(pt.n, window[0].scale), mul_ck(pt.k, window[1].scale), 0}};
    for (int i = 0; i < 2; ++i)
      if (key.e[i] < out.var[i].lo || key.e[i] > out.var[i].hi)
        throw std::invalid_argument("table_to_series: entry (" + std::to_string(pt.k) + ", " +
                                    std::to_string(pt.n) + ") outside the window");
    add_term(out, key, v);
  }
  return out;
}

LaurentSeries assemble_zd6(i64 m, const Rat& epsilon, const InvariantTable& table_i,
                           const InvariantTable& table_p, const Geometry& geom,
                           std::pair<i64, i64> m1_range, const std::array<VarSpec, 3>& window3) {
  if (m < 1) throw std::invalid_argument("assemble_zd6: m must be >= 1");
  if (epsilon <= 0) throw std::invalid_argument("assemble_zd6: epsilon must be positive");
  LaurentSeries out = make_series({window3[0], window3[1], window3[2]});
  if (out.nvars != 3 || out.var[0].name != 'x' || out.var[1].name != 'y' || out.var[2].name != 'z')
    throw std::invalid_argument("assemble_zd6: window must name x, y, z");

  const Rat h3 = rat(geom.h3);
  const Rat kcap = epsilon * rat(m) * rat(m);
  const Rat ncap = epsilon * rat(m) * rat(m) * rat(m);
  const Rat chi0 = twist_chi(geom, m);
  auto in_box = [&](const CurvePoint& pt) {
    return rat(pt.k) < kcap && rat(pt.n) < ncap && rat(-pt.n) < ncap;
  };

  for (i64 m1 = m1_range.first; m1 <= m1_range.second; ++m1) {
    i64 m2 = m1 + m;
    Rat px = h3 / 6 * (pow_rat(rat(m1), 3) - pow_rat(rat(m2), 3));
    Rat py = h3 / 2 * (rat(m1) * rat(m1) - rat(m2) * rat(m2));
    for (const auto& [pi, vi] : table_i.entries) {
      if (!in_box(pi)) continue;
      // I-substitution x -> x z^-1, y -> x^m2 y z^-m
      Rat ix = px + rat(pi.n) + rat(m2) * rat(pi.k);
      Rat iy = py + rat(pi.k);
      Rat iz = chi0 - rat(pi.n) - rat(m) * rat(pi.k);
      for (const auto& [pp, vp] : table_p.entries) {
        if (!in_box(pp)) continue;
        // P-substitution x -> x z^-1, y -> x^-m1 y^-1 z^-m
        Rat ex = ix + rat(pp.n) - rat(m1) * rat(pp.k);
        Rat ey = iy - rat(pp.k);
        Rat ez = iz - rat(pp.n) - rat(m) * rat(pp.k);
        ExpKey key{{scaled_exp(ex, out.var[0].scale, "assemble_zd6"),
                    scaled_exp(ey, out.var[1].scale, "assemble_zd6"),
                    scaled_exp(ez, out.var[2].scale, "assemble_zd6")}};
        add_term(out, key, vi * vp);
      }
    }
  }
  return out;
}

LaurentSeries dz_at(const LaurentSeries& s, int z0) {
  if (z0 != 1 && z0 != -1) throw std::invalid_argument("dz_at: z0 must be +1 or -1");
  if (s.nvars != 3 || s.var[2].name != 'z')
    throw std::invalid_argument("dz_at: need a three-variable series in x, y, z");
  const i64 dz = s.var[2].scale;
  LaurentSeries out;
  out.nvars = 2;
  out.var[0] = s.var[0];
  out.var[1] = s.var[1];
  for (const auto& [key, c] : s.terms) {
    if (key.e[2] % dz != 0)
      throw integrity_error("dz_at: fractional z-exponent " + std::to_string(key.e[2]) + "/" +
                            std::to_string(dz));
    i64 e = key.e[2] / dz;
    if (e == 0) continue;
    Rat factor = rat(e);
    if (z0 == -1 && ((e - 1) & 1)) factor = -factor;
    add_term(out, ExpKey{{key.e[0], key.e[1], 0}}, c * factor);
  }
  return out;
}

std::vector<CoeffDiff> compare_modulo(const LaurentSeries& a0, const LaurentSeries& b0, i64 m,
                                      const Rat& xi, const Rat& mu, const Geometry& geom) {
  require_same_vars(a0, b0, "compare_modulo");
  if (a0.nvars != 2) throw std::invalid_argument("compare_modulo: need (x, y) series");
  if (m < 1) throw std::invalid_argument("compare_modulo: m must be >= 1");
  LaurentSeries a = a0, b = b0;
  align_scales(a, b);
  std::array<i64, 2> lo{std::max(a.var[0].lo, b.var[0].lo), std::max(a.var[1].lo, b.var[1].lo)};
  std::array<i64, 2> hi{std::min(a.var[0].hi, b.var[0].hi), std::min(a.var[1].hi, b.var[1].hi)};

  const Rat base = rat(geom.h3) * rat(m) * rat(m) * rat(m) / 24;
  auto in_regime = [&](const Rat& n, const Rat& k) {
    Rat eta_val = (n + k * k / (2 * rat(m) * rat(geom.h3)) + base) / base;
    return eta_below_mu_ratio(eta_val, mu, xi, m);
  };

  std::vector<CoeffDiff> diffs;
  std::set<ExpKey> keys;
  for (const auto& [key, c] : a.terms) keys.insert(key);
  for (const auto& [key, c] : b.terms) keys.insert(key);
  for (const auto& key : keys) {
    if (key.e[0] < lo[0] || key.e[0] > hi[0] || key.e[1] < lo[1] || key.e[1] > hi[1]) continue;
    auto ia = a.terms.find(key);
    auto ib = b.terms.find(key);
    Rat ca = ia == a.terms.end() ? Rat(0) : ia->second;
    Rat cb = ib == b.terms.end() ? Rat(0) : ib->second;
    if (ca == cb) continue;
    Rat n = rat(key.e[0], a.var[0].scale);
    Rat k = rat(key.e[1], a.var[1].scale);
    if (in_regime(n, k)) diffs.push_back({n, k, ca, cb});
  }
  std::sort(diffs.begin(), diffs.end(), [](const CoeffDiff& p, const CoeffDiff& q) {
    if (p.n != q.n) return p.n < q.n;
    return p.k < q.k;
  });
  return diffs;
}

DtptReport dtpt_check(const InvariantTable& table_i, const InvariantTable& table_p,
                      const Geometry& geom, i64 order) {
  if (order < 0) throw std::invalid_argument("dtpt_check: order must be >= 0");
  LaurentSeries mac = macmahon(-1, geom.chi, order);
  std::vector<Rat> mcoef(static_cast<size_t>(order) + 1, Rat(0));
  for (const auto& [key, c] : mac.terms) mcoef[static_cast<size_t>(key.e[0])] = c;

  std::map<i64, std::map<i64, Rat>> by_k_i, by_k_p;
  i64 nmin = 0;
  for (const auto& [pt, v] : table_i.entries) {
    by_k_i[pt.k][pt.n] = v;
    nmin = std::min(nmin, pt.n);
  }
  for (const auto& [pt, v] : table_p.entries) {
    by_k_p[pt.k][pt.n] = v;
    nmin = std::min(nmin, pt.n);
  }
  std::vector<i64> degrees;
  for (const auto& [k, _] : by_k_i) degrees.push_back(k);
  for (const auto& [k, _] : by_k_p)
    if (!by_k_i.count(k)) degrees.push_back(k);
  std::sort(degrees.begin(), degrees.end());

  DtptReport rep;
  for (i64 k : degrees) {
    const auto* ik = by_k_i.count(k) ? &by_k_i.at(k) : nullptr;
    const auto* pk = by_k_p.count(k) ? &by_k_p.at(k) : nullptr;
    for (i64 n = nmin; n <= order; ++n) {
      Rat lhs = 0, rhs = 0;
      if (ik && ik->count(n)) lhs = ik->at(n);
      if (pk)
        for (i64 j = 0; j <= order && n - j >= nmin; ++j)
          if (pk->count(n - j)) rhs += mcoef[static_cast<size_t>(j)] * pk->at(n - j);
      if (lhs != rhs) {
        rep.ok = false;
        rep.differing.push_back({k, n});
      }
    }
  }
  return rep;
}

std::string dump_series(const LaurentSeries& s) {
  std::ostringstream out;
  for (int i = 0; i < s.nvars; ++i)
    out << "var " << s.var[i].name << " scale " << s.var[i].scale << " window " << s.var[i].lo
        << " " << s.var[i].hi << "\n";
  for (const auto& [key, c] : s.terms) {
    out << frac_str(c);
    for (int i = 0; i < s.nvars; ++i) out << " " << key.e[i];
    out << "\n";
  }
  return out.str();
}

std::string series_to_json_text(const LaurentSeries& s) {
  nlohmann::ordered_json j;
  j["vars"] = nlohmann::ordered_json::array();
  for (int i = 0; i < s.nvars; ++i)
    j["vars"].push_back({{"name", std::string(1, s.var[i].name)},
                         {"scale", s.var[i].scale},
                         {"window", {s.var[i].lo, s.var[i].hi}}});
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [key, c] : s.terms) {
    std::vector<i64> e(key.e.begin(), key.e.begin() + s.nvars);
    j["terms"].push_back({{"coeff", frac_str(c)}, {"exp", e}});
  }
  return j.dump();
}

}  // namespace dtwall
