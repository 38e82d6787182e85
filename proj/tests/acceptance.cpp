// End-to-end acceptance harness. Prints one [PASS]/[FAIL] line per criterion
// and exits nonzero if any fails. Every comparison is exact; there are no
// tolerances anywhere. argv[1] must be the path to the dtwall binary (used by
// the output-determinism criterion).

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dtwall/appendix.hpp"
#include "dtwall/errors.hpp"
#include "dtwall/geometry.hpp"
#include "dtwall/invariants.hpp"
#include "dtwall/numclass.hpp"
#include "dtwall/series.hpp"
#include "dtwall/tilt.hpp"
#include "dtwall/wallcross.hpp"

using namespace dtwall;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail = {}) {
  std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : ": ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool guarded(const char* name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  report(name, ok, ok ? std::string() : detail);
  return ok;
}

// portable across standard libraries, unlike the stdlib distributions
i64 draw(std::mt19937_64& rng, i64 lo, i64 hi) {
  return lo + static_cast<i64>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

Geometry t6() { return make_geometry(6, 12, -2, "toy-h6"); }
Geometry quintic() { return make_geometry(5, 50, -200, "quintic"); }

std::vector<Geometry> geometry_pool() {
  return {t6(), quintic(), make_geometry(8, 56, 0, "even8")};
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  size_t hw = std::thread::hardware_concurrency();
  size_t nt = std::min(n, hw ? hw : 1);
  if (nt <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex em;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  for (size_t t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(em);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. The per-class wall-crossing sum and the z-derivative of the assembled
//    three-variable series agree at every admissible box point, for synthetic
//    random tables on (H^3, c2H) = (6, 12) and m = 2, 3, 4.

bool crit_dual_pipeline(std::string& detail) {
  const Geometry g = t6();
  const Rat xi = 1, mu = 1;
  std::mt19937_64 rng(20260823);
  for (i64 m = 2; m <= 4; ++m) {
    const Rat eps = mu * rat(g.h3) / (2 * rat(m));  // mu H^3 / (2 m^xi), xi = 1
    const i64 kc = to_i64(ceil_int(eps * rat(m) * rat(m)));
    const i64 nc = to_i64(ceil_int(eps * rat(m) * rat(m) * rat(m)));

    InvariantTable ti, tp;
    ti.kind = TableKind::DT_ideal;
    tp.kind = TableKind::PT;
    for (i64 k = 0; k < kc; ++k)
      for (i64 n = -(nc - 1); n <= nc - 1; ++n) {
        if (draw(rng, 0, 2) == 0) ti.entries[{k, n}] = rat(draw(rng, -9, 9));
        if (draw(rng, 0, 2) == 0) tp.entries[{k, n}] = rat(draw(rng, -9, 9));
      }

    const i64 tc = to_i64(floor_int(twist_chi(g, m)));  // integral for (6, 12)
    const std::array<VarSpec, 3> w3{VarSpec{'x', 1, -(nc - 1), nc - 1},
                                    VarSpec{'y', 1, 0, kc - 1},
                                    VarSpec{'z', 1, tc - 4 * nc, tc + 2 * nc}};
    LaurentSeries dz = dz_at(assemble_zd6(m, eps, ti, tp, g, {-m, -1}, w3), -1);

    struct Pt {
      i64 k, n;
      Rat val;
    };
    std::vector<Pt> pts;
    for (i64 k = 0; k < kc; ++k)
      for (i64 n = -(nc - 1); n <= nc - 1; ++n) pts.push_back({k, n, Rat(0)});
    parallel_for(pts.size(), [&](size_t i) {
      pts[i].val = dt4_via_wallcross(m, pts[i].k, pts[i].n, xi, mu, ti, tp, g).value;
    });

    InvariantTable td;
    td.kind = TableKind::DT4;
    size_t regime = 0;
    for (const Pt& p : pts) {
      td.entries[{p.k, p.n}] = p.val;
      if (!eta_below_mu_ratio(eta(m, p.k, p.n, g), mu, xi, m)) continue;
      ++regime;
      if (coeff(dz, {rat(p.n), rat(p.k), Rat(0)}) != p.val) {
        detail = "mismatch at m=" + std::to_string(m) + " k=" + std::to_string(p.k) +
                 " n=" + std::to_string(p.n);
        return false;
      }
    }
    if (regime == 0) {
      detail = "empty comparison regime at m=" + std::to_string(m);
      return false;
    }
    LaurentSeries tb = table_to_series(td, {w3[0], w3[1]});
    auto diffs = compare_modulo(dz, tb, m, xi, mu, g);
    if (!diffs.empty()) {
      detail = std::to_string(diffs.size()) + " series differences at m=" + std::to_string(m);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 2. The frozen toy class (m, k, n) = (2, 0, -2) on (6, 12) with singleton
//    tables I = P = {(0,0) -> 1} evaluates to -10 through both routes.

bool crit_toy_value(std::string& detail) {
  const Geometry g = t6();
  InvariantTable ti, tp;
  ti.kind = TableKind::DT_ideal;
  ti.entries[{0, 0}] = 1;
  tp.kind = TableKind::PT;
  tp.entries[{0, 0}] = 1;

  Dt4Result res = dt4_via_wallcross(2, 0, -2, 1, 1, ti, tp, g);
  if (res.value != -10) {
    detail = "sum route gave " + rat_str(res.value);
    return false;
  }
  if (res.splittings != 108 || res.contributing != 1) {
    detail = "unexpected splitting counts";
    return false;
  }

  const std::array<VarSpec, 3> w3{VarSpec{'x', 1, -11, 11}, VarSpec{'y', 1, 0, 5},
                                  VarSpec{'z', 1, 10 - 48, 10 + 24}};
  LaurentSeries dz = dz_at(assemble_zd6(2, rat(3, 2), ti, tp, g, {-2, -1}, w3), -1);
  Rat c = coeff(dz, {rat(-2), rat(0), Rat(0)});
  if (c != -10) {
    detail = "series route gave " + rat_str(c);
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. On at least 500 enumerated splittings across random classes and
//    geometries, the closed-form pairing value n1 - n2 - m(k1+k2) + chi(twist)
//    equals the bilinear pairing of the two summand classes, and the summands
//    recompose to the divisor class.

bool crit_pairing_closed_form(std::string& detail) {
  std::mt19937_64 rng(7);
  auto gs = geometry_pool();
  size_t checked = 0;
  for (int it = 0; it < 200 && checked < 500; ++it) {
    const Geometry& g = gs[static_cast<size_t>(draw(rng, 0, 2))];
    i64 m = draw(rng, 1, 3);
    i64 k = draw(rng, 0, 2 * m * m);
    i64 n = draw(rng, -20, 20);
    Rat epsv = rat(draw(rng, 1, 4), 2);
    SplittingSet set = enumerate_splittings(m, k, n, epsv, g);
    NumClass target = class_d4(m, k, n);
    Rat tc = twist_chi(g, m);
    for (const Splitting& sp : set.items) {
      Rat closed = rat(sp.n1 - sp.n2 - m * (sp.k1 + sp.k2)) + tc;
      if (closed != euler_pairing(sp.v2, sp.v1, g) || closed != sp.chi) {
        detail = "pairing mismatch";
        return false;
      }
      if (!(sp.v1 + sp.v2 == target)) {
        detail = "summands do not recompose";
        return false;
      }
      ++checked;
    }
  }
  if (checked < 500) {
    detail = "only " + std::to_string(checked) + " splittings sampled";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 4. For 500 random classes, twisting (0, m, -k, -n) by the canonical b
//    kills the r and g components, leaves d = m, and stores the defect in the
//    s component: s = (1 - eta) H^3 m^3 / 24.

bool crit_defect_identity(std::string& detail) {
  std::mt19937_64 rng(11);
  auto gs = geometry_pool();
  for (int it = 0; it < 500; ++it) {
    const Geometry& g = gs[static_cast<size_t>(draw(rng, 0, 2))];
    i64 m = draw(rng, 1, 6);
    i64 k = draw(rng, 0, 3 * m * m);
    i64 n = draw(rng, -40, 40);
    NumClass w = b_twist(class_d4(m, k, n), choose_b(m, k, g), g);
    Rat want_s = (1 - eta(m, k, n, g)) * rat(g.h3) * rat(m * m * m) / 24;
    if (!(w.r == 0 && w.d == rat(m) && w.g == 0 && w.s == want_s)) {
      detail = "components off at m=" + std::to_string(m) + " k=" + std::to_string(k) +
               " n=" + std::to_string(n);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 5 and 6 share one exhaustive sweep over H^3 = 6 classes with m <= 5 and
// defect 0 < eta < min(3/(2m), 1/2), box cut eps = eta H^3 / 2.

struct PolarSweep {
  bool ok_flags = true;  // reported flags match independently recomputed bounds
  bool ok_box = true;    // every splitting inside the box, orientation correct
  bool ok_u0 = true;     // wall value recomputed, bounded by 3 m^2 / 4
  bool ok_band = true;   // flag-passing splittings inside the tight wall band
  bool ok_walls = true;  // wall report flags match the window arithmetic
  size_t passes = 0;
  bool pinned_fail = false;  // the known flag-failing in-box splitting
  bool pinned_pass = false;  // the known flag-passing wall below the naive floor
  std::string note;
};

const PolarSweep& polar_sweep() {
  static PolarSweep merged = [] {
    const Geometry g = t6();
    std::vector<std::array<i64, 3>> cls;
    for (i64 m = 1; m <= 5; ++m) {
      Rat cap = std::min(rat(3, 2 * m), rat(1, 2));
      for (i64 k = 0; k <= m * m; ++k) {
        Rat x = -rat(k * k, 12 * m) - rat(m * m * m, 4);  // eta = 0 at n = x
        i64 nlo = to_i64(floor_int(x)) + 1;
        i64 nhi = to_i64(ceil_int(x + cap * rat(m * m * m, 4))) - 1;
        for (i64 n = nlo; n <= nhi; ++n) cls.push_back({m, k, n});
      }
    }

    std::vector<PolarSweep> out(cls.size());
    parallel_for(cls.size(), [&](size_t ci) {
      PolarSweep& o = out[ci];
      auto [m, k, n] = cls[ci];
      auto flag = [&](bool& slot, const std::string& what) {
        slot = false;
        if (o.note.empty())
          o.note = what + " at (" + std::to_string(m) + "," + std::to_string(k) + "," +
                   std::to_string(n) + ")";
      };
      Rat e = eta(m, k, n, g);
      if (!(e > 0 && e < std::min(rat(3, 2 * m), rat(1, 2)))) {
        flag(o.ok_box, "defect outside sweep band");
        return;
      }
      Rat epsv = e * rat(g.h3) / 2;
      SplittingSet set = enumerate_splittings(m, k, n, epsv, g);
      auto flags = validate_extreme_polar(set, g);

      const Rat h3 = rat(g.h3);
      const Rat msq = rat(m * m);
      const Rat kcap = e * h3 * msq / 2;
      const Rat ncap = kcap * rat(m);
      const Rat dcap = rat(m) * e / 3;
      const Rat glo = h3 * msq / 8 * pow_rat(1 - 2 * e / 3, 2);
      const Rat ghi = h3 * msq / 8 * pow_rat(1 + 2 * e / 3, 2);
      const Rat band_lo = 6 * glo / h3, band_hi = 6 * ghi / h3;

      for (size_t j = 0; j < set.items.size(); ++j) {
        const Splitting& sp = set.items[j];
        if (!(rat(sp.k1) < epsv * msq && rat(sp.k2) < epsv * msq &&
              abs(rat(sp.n1)) < epsv * msq * rat(m) && abs(rat(sp.n2)) < epsv * msq * rat(m)))
          flag(o.ok_box, "splitting escapes the box");
        Rat d1 = set.b - sp.m1, d2 = rat(sp.m2) - set.b;
        if (!(sp.v1.r == -1 && sp.v2.r == 1 && d1 > 0 && d2 > 0))
          flag(o.ok_box, "orientation off");

        Rat gq1 = h3 / 2 * d1 * d1 - sp.k1;
        Rat gq2 = h3 / 2 * d2 * d2 - sp.k2;
        Rat u0r = 6 * gq2 / h3;
        if (u0r > 0 ? !(sp.u0 && *sp.u0 == u0r) : sp.u0.has_value())
          flag(o.ok_u0, "wall value recompute");
        if (sp.u0 && !(*sp.u0 <= 3 * msq / 4)) flag(o.ok_u0, "wall above 3m^2/4");

        const PolarFlags& f = flags[j];
        bool want_k[2] = {rat(sp.k1) < kcap, rat(sp.k2) < kcap};
        bool want_n[2] = {abs(rat(sp.n1)) < ncap, abs(rat(sp.n2)) < ncap};
        bool want_d[2] = {abs(d1 - rat(m, 2)) < dcap, abs(d2 - rat(m, 2)) < dcap};
        bool want_g[2] = {glo < gq1 && gq1 < ghi, glo < gq2 && gq2 < ghi};
        bool want_bnd = rat(sp.k1) == kcap || rat(sp.k2) == kcap || abs(rat(sp.n1)) == ncap ||
                        abs(rat(sp.n2)) == ncap || abs(d1 - rat(m, 2)) == dcap ||
                        abs(d2 - rat(m, 2)) == dcap || gq1 == glo || gq1 == ghi || gq2 == glo ||
                        gq2 == ghi;
        bool want_pass = want_k[0] && want_k[1] && want_n[0] && want_n[1] && want_d[0] &&
                         want_d[1] && want_g[0] && want_g[1];
        for (int i2 = 0; i2 < 2; ++i2)
          if (f.k_in[i2] != want_k[i2] || f.n_in[i2] != want_n[i2] || f.d_ok[i2] != want_d[i2] ||
              f.g_ok[i2] != want_g[i2])
            flag(o.ok_flags, "flag recompute");
        if (f.boundary != want_bnd || f.pass != want_pass) flag(o.ok_flags, "pass/boundary");
        if (f.pass && f.boundary) flag(o.ok_flags, "pass with boundary");
        if (f.pass) {
          ++o.passes;
          if (!(sp.u0 && band_lo < *sp.u0 && *sp.u0 < band_hi))
            flag(o.ok_band, "pass outside tight band");
        }
        if (m == 4 && k == 3 && n == -15 && sp.m1 == -2 && sp.k1 == 0 && sp.n1 == 0)
          o.pinned_fail = !f.pass && !f.d_ok[1];
        if (m == 3 && k == 4 && n == -5 && sp.m1 == -2 && sp.k1 == 5 && sp.n1 == -20)
          o.pinned_pass = f.pass && sp.u0 && *sp.u0 == rat(121, 27) && *sp.u0 < rat(27, 4) * (1 - e);
      }

      if (k == 0) {
        WallReport wr = find_walls(m, k, n, epsv, g);
        auto win = wall_window(m, e);
        if (!wr.window || !(*wr.window == win)) flag(o.ok_walls, "window");
        size_t total = wr.no_positive_wall;
        Rat prev;
        bool first = true;
        for (const WallGroup& grp : wr.groups) {
          total += grp.items.size();
          if (!first && !(grp.u0 < prev)) flag(o.ok_walls, "group order");
          prev = grp.u0;
          first = false;
          bool inw = win.first <= grp.u0 && grp.u0 <= win.second;
          bool onb = grp.u0 == win.first || grp.u0 == win.second;
          if (grp.in_window != inw || grp.on_boundary != onb) flag(o.ok_walls, "window flags");
        }
        if (total != set.items.size()) flag(o.ok_walls, "group partition");
      }
    });

    PolarSweep m2;
    for (const PolarSweep& o : out) {
      m2.ok_flags &= o.ok_flags;
      m2.ok_box &= o.ok_box;
      m2.ok_u0 &= o.ok_u0;
      m2.ok_band &= o.ok_band;
      m2.ok_walls &= o.ok_walls;
      m2.passes += o.passes;
      m2.pinned_fail |= o.pinned_fail;
      m2.pinned_pass |= o.pinned_pass;
      if (m2.note.empty()) m2.note = o.note;
    }
    return m2;
  }();
  return merged;
}

// 5. Wall values: recomputed exactly, bounded above by 3m^2/4 everywhere,
//    inside the open tight band for every flag-passing splitting, and the
//    wall-report window flags agree with the window arithmetic (including the
//    frozen eta = 0 toy picture).

bool crit_wall_bounds(std::string& detail) {
  WallReport wr = find_walls(2, 0, -2, rat(1, 2), t6());
  auto win = wall_window(2, 0);
  bool toy_ok = wr.window && *wr.window == win && win.first == 3 && win.second == 3 &&
                wr.groups.size() == 2 && wr.groups[0].u0 == 3 && wr.groups[0].in_window &&
                wr.groups[0].on_boundary && wr.groups[0].items.size() == 7 &&
                wr.groups[1].u0 == 2 && !wr.groups[1].in_window &&
                wr.groups[1].items.size() == 5 && wr.no_positive_wall == 0;
  if (!toy_ok) {
    detail = "frozen toy wall picture off";
    return false;
  }
  const PolarSweep& s = polar_sweep();
  if (!(s.ok_u0 && s.ok_band && s.ok_walls && s.passes > 0 && s.pinned_pass)) {
    detail = s.note.empty() ? "sweep assertions failed" : s.note;
    if (!s.pinned_pass) detail += " [pinned below-floor wall not seen]";
    return false;
  }
  return true;
}

// 6. Extreme polar flags: every enumerated splitting stays inside the box
//    with the right orientation, the reported flags agree bit-for-bit with
//    independently recomputed bounds, and the known in-box splitting that
//    violates the d-bound is flagged rather than dropped.

bool crit_polar_flags(std::string& detail) {
  const PolarSweep& s = polar_sweep();
  if (!(s.ok_flags && s.ok_box && s.pinned_fail)) {
    detail = s.note.empty() ? "sweep assertions failed" : s.note;
    if (!s.pinned_fail) detail += " [pinned flagged splitting not seen]";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. The box-counting series match brute-force counts: the cubical-partition
//    generating product against a direct enumeration through order 10, and
//    the one-variable product against the partition recurrence through 20.

namespace brute {

// number of plane partitions with total n: rows weakly decrease along both axes
void pp_rows(const std::vector<int>& prev, int rem, i64& count);

void pp_row(const std::vector<int>& prev, size_t idx, int maxv, std::vector<int>& row, int rem,
            i64& count) {
  if (!row.empty()) pp_rows(row, rem, count);  // stop the row here
  if (idx >= prev.size()) return;
  int top = std::min(prev[idx], std::min(maxv, rem));
  for (int v = top; v >= 1; --v) {
    row.push_back(v);
    pp_row(prev, idx + 1, v, row, rem - v, count);
    row.pop_back();
  }
}

void pp_rows(const std::vector<int>& prev, int rem, i64& count) {
  if (rem == 0) {
    ++count;
    return;
  }
  std::vector<int> row;
  pp_row(prev, 0, rem, row, rem, count);
}

i64 plane_partitions(int n) {
  if (n == 0) return 1;
  i64 count = 0;
  std::vector<int> top(static_cast<size_t>(n), n);
  std::vector<int> row;
  pp_row(top, 0, n, row, n, count);
  return count;
}

std::vector<i64> partition_numbers(int nmax) {
  std::vector<i64> p(static_cast<size_t>(nmax) + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= nmax; ++n)
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      i64 sgn = (k % 2) ? 1 : -1;
      p[n] += sgn * p[n - g1];
      if (g2 <= n) p[n] += sgn * p[n - g2];
    }
  return p;
}

}  // namespace brute

bool crit_counting_series(std::string& detail) {
  LaurentSeries mac = macmahon(1, 1, 10);
  for (int n = 0; n <= 10; ++n)
    if (coeff(mac, {rat(n), Rat(0), Rat(0)}) != rat(brute::plane_partitions(n))) {
      detail = "cubical count differs at order " + std::to_string(n);
      return false;
    }
  LaurentSeries gs = gottsche(1, 20);
  auto p = brute::partition_numbers(20);
  for (int n = 0; n <= 20; ++n)
    if (coeff(gs, {rat(n), Rat(0), Rat(0)}) != rat(p[static_cast<size_t>(n)])) {
      detail = "partition count differs at order " + std::to_string(n);
      return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// 8. Degree-zero tables built from the signed box-counting product factor
//    through the convolution identity for several Euler characteristics, and
//    a perturbed table is caught at exactly the perturbed point.

bool crit_degree_zero(std::string& detail) {
  for (i64 chi : {i64(-200), i64(-2), i64(0), i64(4)}) {
    auto [ti, tp] = toy_degree0(chi, 10);
    Geometry g = make_geometry(6, 12, chi);
    DtptReport r = dtpt_check(ti, tp, g, 10);
    if (!r.ok) {
      detail = "factorization fails at chi = " + std::to_string(chi);
      return false;
    }
  }
  auto [ti, tp] = toy_degree0(-2, 10);
  ti.entries[{0, 3}] += 1;
  DtptReport r = dtpt_check(ti, tp, make_geometry(6, 12, -2), 10);
  if (r.ok || r.differing != std::vector<CurvePoint>{{0, 3}}) {
    detail = "perturbation not localized";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 9. Local thickened-surface series: for both reference geometries and
//    m = 1..5 every coefficient is an integer of the global sign
//    (-1)^(chi(twist) - 1), the bottom spike has coefficient sign * 1, and
//    the dumps are byte-identical to the frozen golden files.

bool crit_local_series(std::string& detail) {
  for (const Geometry& g : {t6(), quintic()}) {
    for (i64 m = 1; m <= 5; ++m) {
      const i64 h3m3 = g.h3 * m * m * m;
      const std::array<VarSpec, 2> w{VarSpec{'x', 6, -h3m3 - 60, -h3m3 + 60},
                                     VarSpec{'y', 2, -2 * g.h3 * m * m, 2 * g.h3 * m * m}};
      LaurentSeries s = local_d4_series(m, g, w);
      std::string where = g.id + " m=" + std::to_string(m);
      if (s.terms.empty()) {
        detail = "empty series for " + where;
        return false;
      }
      Rat tc = twist_chi(g, m);
      int sign = mpz_even_p(Int(tc - 1).get_mpz_t()) ? 1 : -1;
      for (const auto& [key, c] : s.terms) {
        if (!is_integer(c) || !(sign > 0 ? c > 0 : c < 0)) {
          detail = "coefficient sign/integrality for " + where;
          return false;
        }
      }
      if (coeff(s, {-rat(h3m3, 6), rat(g.h3 * m * m, 2), Rat(0)}) != rat(sign)) {
        detail = "bottom spike coefficient for " + where;
        return false;
      }
      std::string want = slurp(std::string(GOLDEN_DIR) + "/localdt_" + g.id + "_m" +
                               std::to_string(m) + ".txt");
      if (want.empty()) {
        detail = "missing golden file for " + where;
        return false;
      }
      if (dump_series(s) != want) {
        detail = "dump differs from golden for " + where;
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 10. Filtration rank bound: 10000 seeded random filtrations on rank-1 and
//     rank-2 lattices satisfy the bound together with the intermediate
//     inequalities; the thickened-section family attains it with zero slack.

bool crit_filtration_bound(std::string& detail) {
  const std::array<SurfaceLattice, 3> lats{
      make_lattice(1, {{{1, 0}, {0, 0}}}, {1, 0}),
      make_lattice(1, {{{3, 0}, {0, 0}}}, {1, 0}),
      make_lattice(2, {{{0, 1}, {1, 0}}}, {1, 1}),
  };
  const HNBounds hb;
  std::vector<std::string> bad(10000);
  parallel_for(bad.size(), [&](size_t seed) {
    const SurfaceLattice& lat = lats[seed % 3];
    HNData d = random_hn(seed, 1 + static_cast<int>(seed % 4), hb, lat);
    if (hn_hypotheses_ok(d)) {
      bad[seed] = "hypotheses";
      return;
    }
    IneqReport r = check_rank_bound(d);
    if (!r.holds || !r.desire_ok || !r.hodge_ok) {
      bad[seed] = "bound chain";
      return;
    }
    i64 rtot = 0;
    for (const HNFactor& f : d.factors) rtot += f.r;
    Rat spread = 0;
    for (size_t i = 0; i < d.factors.size(); ++i)
      for (size_t j = i + 1; j < d.factors.size(); ++j)
        spread += rat(d.factors[i].r) * rat(d.factors[j].r) * rat(static_cast<i64>(j - i)) *
                  rat(static_cast<i64>(j - i));
    if (spread > spacing_cap(rtot)) bad[seed] = "spacing cap";
  });
  for (size_t seed = 0; seed < bad.size(); ++seed)
    if (!bad[seed].empty()) {
      detail = bad[seed] + " at seed " + std::to_string(seed);
      return false;
    }

  const std::array<SurfaceLattice, 3> tl{
      make_lattice(1, {{{1, 0}, {0, 0}}}, {1, 0}),
      make_lattice(2, {{{0, 1}, {1, 0}}}, {1, 1}),  // L^2 = 2
      make_lattice(1, {{{3, 0}, {0, 0}}}, {1, 0}),
  };
  for (const SurfaceLattice& lat : tl)
    for (i64 m = 1; m <= 10; ++m) {
      IneqReport r = check_rank_bound(thickened_section_data(m, lat));
      if (!(r.holds && r.slack == 0 && r.desire_ok && r.hodge_ok)) {
        detail = "thickened family slack at m = " + std::to_string(m);
        return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------
// 11. For 1000 random classes the divisor bound predicate agrees with the
//     sign of the defect.

bool crit_defect_sign(std::string& detail) {
  std::mt19937_64 rng(23);
  auto gs = geometry_pool();
  for (int it = 0; it < 1000; ++it) {
    const Geometry& g = gs[static_cast<size_t>(draw(rng, 0, 2))];
    i64 m = draw(rng, 1, 8);
    i64 k = draw(rng, 0, 4 * m * m);
    i64 n = draw(rng, -m * m * m - 40, 40);
    if (check_d4_bound(m, k, n, g) != (eta(m, k, n, g) >= 0)) {
      detail = "disagreement at (" + std::to_string(m) + "," + std::to_string(k) + "," +
               std::to_string(n) + ") on " + g.id;
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 12. The CLI produces byte-identical output across worker-thread counts.

bool crit_cli_determinism(std::string& detail, const std::string& cli) {
  if (cli.empty()) {
    detail = "missing CLI path argument";
    return false;
  }
  const std::string data = TEST_DATA_DIR;
  const std::string args = " dt4 --geometry '" + data + "/geometry_t6.json' --table-i '" + data +
                           "/toy_i.json' --table-p '" + data +
                           "/toy_p.json' --m 2 --k-range 0:5 --n-range -12:0 --xi 1 --mu 1 --json";
  const std::string o1 = "/tmp/dtwall_acc_threads1.out";
  const std::string o4 = "/tmp/dtwall_acc_threads4.out";
  int c1 = std::system(("DTWALL_THREADS=1 '" + cli + "'" + args + " > " + o1 + "").c_str());
  int c4 = std::system(("DTWALL_THREADS=4 '" + cli + "'" + args + " > " + o4 + "").c_str());
  if (c1 != 0 || c4 != 0) {
    detail = "CLI exited nonzero";
    return false;
  }
  std::string a = slurp(o1), b = slurp(o4);
  if (a.empty()) {
    detail = "empty CLI output";
    return false;
  }
  if (a != b) {
    detail = "outputs differ between thread counts";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  guarded("01 wall-crossing sum matches series derivative (m=2,3,4)", crit_dual_pipeline);
  guarded("02 frozen toy class evaluates to -10 via both routes", crit_toy_value);
  guarded("03 pairing closed form on 500+ splittings", crit_pairing_closed_form);
  guarded("04 twisted-class defect identity on 500 classes", crit_defect_identity);
  guarded("05 wall values bounded and banded (exhaustive m<=5)", crit_wall_bounds);
  guarded("06 extreme polar flags exact (exhaustive m<=5)", crit_polar_flags);
  guarded("07 counting series match brute-force enumeration", crit_counting_series);
  guarded("08 degree-zero tables factor through the box product", crit_degree_zero);
  guarded("09 local thickened-surface series: signs, integrality, goldens", crit_local_series);
  guarded("10 filtration rank bound on 10000 seeded samples", crit_filtration_bound);
  guarded("11 defect sign agrees with divisor bound on 1000 classes", crit_defect_sign);
  guarded("12 CLI output byte-identical across thread counts",
          [&](std::string& d) { return crit_cli_determinism(d, cli); });
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
