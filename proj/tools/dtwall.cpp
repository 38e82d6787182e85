#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "dtwall/appendix.hpp"
#include "dtwall/errors.hpp"
#include "dtwall/series.hpp"
#include "dtwall/tilt.hpp"
#include "dtwall/wallcross.hpp"
#include "json.hpp"

using namespace dtwall;
using ordered_json = nlohmann::ordered_json;

namespace {

Rat rat_arg(const std::string& text, const std::string& flag) {
  auto r = parse_rat(text);
  if (!r) throw CLI::ValidationError(flag, "expected an integer or p/q");
  return *r;
}

std::pair<i64, i64> range_arg(const std::string& text, const std::string& flag) {
  auto sep = text.find(':');
  if (sep != std::string::npos) {
    auto lo = parse_rat(text.substr(0, sep));
    auto hi = parse_rat(text.substr(sep + 1));
    if (lo && hi && is_integer(*lo) && is_integer(*hi))
      return {to_i64(lo->get_num()), to_i64(hi->get_num())};
  }
  throw CLI::ValidationError(flag, "expected lo:hi with integer bounds");
}

std::vector<i64> ints_arg(const std::string& text, const std::string& flag) {
  std::vector<i64> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t sep = text.find(',', pos);
    std::string cell = text.substr(pos, sep == std::string::npos ? sep : sep - pos);
    auto v = parse_rat(cell);
    if (!v || !is_integer(*v)) throw CLI::ValidationError(flag, "expected comma-separated integers");
    out.push_back(to_i64(v->get_num()));
    if (sep == std::string::npos) break;
    pos = sep + 1;
  }
  return out;
}

unsigned thread_budget(size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("DTWALL_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
  }
  if (jobs < n) n = jobs ? static_cast<unsigned>(jobs) : 1;
  return n;
}

// Runs fn(i) for i < jobs on a small pool; output slots keep results ordered
// so the serialization below is identical for any worker count.
void parallel_for(size_t jobs, const std::function<void(size_t)>& fn) {
  unsigned workers = thread_budget(jobs);
  if (workers <= 1) {
    for (size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_lock;
  auto body = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_lock);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void warn_tables(const InvariantTable& ti, const InvariantTable& tp, const Geometry& geom) {
  if (ti.kind != TableKind::DT_ideal && ti.kind != TableKind::DT_ideal_hat)
    std::cerr << "warning: ideal-side table has kind " << kind_name(ti.kind) << "\n";
  if (tp.kind != TableKind::PT && tp.kind != TableKind::PT_hat)
    std::cerr << "warning: pair-side table has kind " << kind_name(tp.kind) << "\n";
  for (const auto* t : {&ti, &tp})
    if (auto w = geometry_mismatch(*t, geom)) std::cerr << "warning: " << *w << "\n";
}

ordered_json splitting_json(const Splitting& sp) {
  ordered_json j;
  j["m1"] = sp.m1;
  j["m2"] = sp.m2;
  j["k1"] = sp.k1;
  j["n1"] = sp.n1;
  j["k2"] = sp.k2;
  j["n2"] = sp.n2;
  j["chi"] = rat_str(sp.chi);
  j["u0"] = sp.u0 ? ordered_json(rat_str(*sp.u0)) : ordered_json(nullptr);
  return j;
}

struct CommonGeom {
  std::string path;
  Geometry geom;
  void load() { geom = load_geometry(path); }
};

int run(int argc, char** argv) {
  CLI::App app{"wall-crossing invariants of divisor classes"};
  app.require_subcommand(1);

  std::string geom_path, table_i_path, table_p_path;
  i64 m = 1, k = 0, n = 0;
  std::string xi_s = "1", mu_s = "1", eps_s;
  std::string krange_s, nrange_s, m1range_s;
  std::string wx_s, wy_s, wz_s;
  i64 sx = default_scale('x'), sy = default_scale('y'), sz = default_scale('z');
  bool as_json = false;

  auto add_geom = [&](CLI::App* sub) {
    sub->add_option("--geometry", geom_path, "geometry JSON file")->required();
  };
  auto add_tables = [&](CLI::App* sub) {
    sub->add_option("--table-i", table_i_path, "ideal-side table (JSON or TSV)")->required();
    sub->add_option("--table-p", table_p_path, "pair-side table (JSON or TSV)")->required();
  };

  auto* dt4 = app.add_subcommand("dt4", "divisor invariant through the wall-crossing sum");
  add_geom(dt4);
  add_tables(dt4);
  dt4->add_option("--m", m, "divisor multiple")->required();
  dt4->add_option("--k", k, "curve-degree offset");
  dt4->add_option("--n", n, "point-degree offset");
  dt4->add_option("--k-range", krange_s, "sweep k over lo:hi");
  dt4->add_option("--n-range", nrange_s, "sweep n over lo:hi");
  dt4->add_option("--xi", xi_s, "cut exponent (rational, >= 1)");
  dt4->add_option("--mu", mu_s, "cut coefficient (rational, > 0)");

  auto* series = app.add_subcommand("series", "assembled three-variable generating series");
  add_geom(series);
  add_tables(series);
  series->add_option("--m", m, "divisor multiple")->required();
  series->add_option("--epsilon", eps_s, "box cut (rational, > 0)")->required();
  series->add_option("--m1-range", m1range_s, "twist range lo:hi")->required();
  series->add_option("--window-x", wx_s, "x-exponent window lo:hi (scaled)")->required();
  series->add_option("--window-y", wy_s, "y-exponent window lo:hi (scaled)")->required();
  series->add_option("--window-z", wz_s, "z-exponent window lo:hi (scaled)")->required();
  series->add_option("--scale-x", sx, "x-exponent denominator");
  series->add_option("--scale-y", sy, "y-exponent denominator");
  series->add_option("--scale-z", sz, "z-exponent denominator");
  int dz_point = 0;
  series->add_option("--dz", dz_point, "print d/dz at z = +1 or -1 instead")
      ->check(CLI::IsMember({1, -1}));
  bool do_compare = false;
  series->add_flag("--compare", do_compare, "check d/dz at -1 against the wall-crossing sum");
  series->add_option("--xi", xi_s, "cut exponent for --compare");
  series->add_option("--mu", mu_s, "cut coefficient for --compare");

  auto* walls = app.add_subcommand("walls", "wall positions for one class");
  add_geom(walls);
  walls->add_option("--m", m, "divisor multiple")->required();
  walls->add_option("--k", k, "curve-degree offset")->required();
  walls->add_option("--n", n, "point-degree offset")->required();
  walls->add_option("--epsilon", eps_s, "box cut (rational, > 0)")->required();

  auto* localdt = app.add_subcommand("localdt", "local thickened-surface series");
  add_geom(localdt);
  localdt->add_option("--m", m, "thickening multiple")->required();
  localdt->add_option("--window-x", wx_s, "x-exponent window lo:hi (scaled)")->required();
  localdt->add_option("--window-y", wy_s, "y-exponent window lo:hi (scaled)")->required();
  localdt->add_option("--scale-x", sx, "x-exponent denominator");
  localdt->add_option("--scale-y", sy, "y-exponent denominator");

  auto* check = app.add_subcommand("check", "validity report for one class");
  add_geom(check);
  check->add_option("--m", m, "divisor multiple")->required();
  check->add_option("--k", k, "curve-degree offset")->required();
  check->add_option("--n", n, "point-degree offset")->required();
  check->add_option("--xi", xi_s, "cut exponent");
  check->add_option("--mu", mu_s, "cut coefficient");

  auto* hn = app.add_subcommand("hn", "rank bound on filtration data");
  int lat_rank = 1;
  std::string gram_s = "1", polar_s = "1";
  i64 thick = 0, nfactors = 3;
  unsigned long seed = 1;
  i64 rmax = 4, lmax = 6, sdrop = 4;
  hn->add_option("--rank", lat_rank, "lattice rank (1 or 2)");
  hn->add_option("--gram", gram_s, "pairing entries g00[,g01,g11]");
  hn->add_option("--polar", polar_s, "polarization coordinates a[,b]");
  hn->add_option("--thickened", thick, "use the m-fold thickened-section filtration");
  hn->add_option("--factors", nfactors, "number of random factors");
  hn->add_option("--seed", seed, "random seed");
  hn->add_option("--rmax", rmax, "max factor rank");
  hn->add_option("--lmax", lmax, "divisor coordinate bound");
  hn->add_option("--sdrop", sdrop, "max discriminant drop (halves)");

  for (auto* sub : {dt4, series, walls, localdt, check, hn})
    sub->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  Rat xi = rat_arg(xi_s, "--xi"), mu = rat_arg(mu_s, "--mu");

  if (dt4->parsed()) {
    Geometry geom = load_geometry(geom_path);
    InvariantTable ti = load_table(table_i_path), tp = load_table(table_p_path);
    warn_tables(ti, tp, geom);
    ordered_json out;
    out["m"] = m;
    out["xi"] = rat_str(xi);
    out["mu"] = rat_str(mu);
    if (!krange_s.empty() || !nrange_s.empty()) {
      auto kr = krange_s.empty() ? std::pair<i64, i64>{k, k} : range_arg(krange_s, "--k-range");
      auto nr = nrange_s.empty() ? std::pair<i64, i64>{n, n} : range_arg(nrange_s, "--n-range");
      if (kr.first > kr.second || nr.first > nr.second)
        throw CLI::ValidationError("--k-range/--n-range", "lo > hi");
      std::vector<std::pair<i64, i64>> jobs;
      for (i64 kk = kr.first; kk <= kr.second; ++kk)
        for (i64 nn = nr.first; nn <= nr.second; ++nn) jobs.push_back({kk, nn});
      std::vector<Dt4Result> slots(jobs.size());
      parallel_for(jobs.size(), [&](size_t i) {
        slots[i] = dt4_via_wallcross(m, jobs[i].first, jobs[i].second, xi, mu, ti, tp, geom);
      });
      out["results"] = ordered_json::array();
      unsigned long missing = 0;
      for (size_t i = 0; i < jobs.size(); ++i) {
        ordered_json r;
        r["k"] = jobs[i].first;
        r["n"] = jobs[i].second;
        r["value"] = rat_str(slots[i].value);
        r["splittings"] = slots[i].splittings;
        r["contributing"] = slots[i].contributing;
        missing += slots[i].missing_i + slots[i].missing_p;
        out["results"].push_back(r);
      }
      if (missing > 0)
        std::cerr << "warning: " << missing << " table lookups fell outside the tables\n";
    } else {
      Dt4Result r = dt4_via_wallcross(m, k, n, xi, mu, ti, tp, geom);
      out["k"] = k;
      out["n"] = n;
      out["value"] = rat_str(r.value);
      out["splittings"] = r.splittings;
      out["contributing"] = r.contributing;
      out["missing_i"] = r.missing_i;
      out["missing_p"] = r.missing_p;
      if (r.missing_i + r.missing_p > 0)
        std::cerr << "warning: " << r.missing_i + r.missing_p
                  << " table lookups fell outside the tables\n";
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (series->parsed()) {
    Geometry geom = load_geometry(geom_path);
    InvariantTable ti = load_table(table_i_path), tp = load_table(table_p_path);
    warn_tables(ti, tp, geom);
    Rat eps = rat_arg(eps_s, "--epsilon");
    auto m1r = range_arg(m1range_s, "--m1-range");
    auto wx = range_arg(wx_s, "--window-x");
    auto wy = range_arg(wy_s, "--window-y");
    auto wz = range_arg(wz_s, "--window-z");
    std::array<VarSpec, 3> window{VarSpec{'x', sx, wx.first, wx.second},
                                  VarSpec{'y', sy, wy.first, wy.second},
                                  VarSpec{'z', sz, wz.first, wz.second}};
    LaurentSeries zd6 = assemble_zd6(m, eps, ti, tp, geom, m1r, window);
    if (do_compare) {
      LaurentSeries dz = dz_at(zd6, -1);
      InvariantTable sweep;
      sweep.kind = TableKind::DT4;
      i64 n_lo = to_i64(ceil_int(rat(wx.first, sx))), n_hi = to_i64(floor_int(rat(wx.second, sx)));
      i64 k_lo = std::max<i64>(0, to_i64(ceil_int(rat(wy.first, sy))));
      i64 k_hi = to_i64(floor_int(rat(wy.second, sy)));
      for (i64 nn = n_lo; nn <= n_hi; ++nn)
        for (i64 kk = k_lo; kk <= k_hi; ++kk) {
          Rat v = dt4_via_wallcross(m, kk, nn, xi, mu, ti, tp, geom).value;
          if (v != 0) sweep.entries[{kk, nn}] = v;
        }
      LaurentSeries ref = table_to_series(
          sweep, {VarSpec{'x', sx, wx.first, wx.second}, VarSpec{'y', sy, wy.first, wy.second}});
      auto diffs = compare_modulo(dz, ref, m, xi, mu, geom);
      ordered_json out;
      out["matches"] = diffs.empty();
      out["differences"] = ordered_json::array();
      for (const auto& d : diffs)
        out["differences"].push_back({{"n", rat_str(d.n)},
                                      {"k", rat_str(d.k)},
                                      {"series", rat_str(d.lhs)},
                                      {"sum", rat_str(d.rhs)}});
      std::cout << out.dump(2) << "\n";
      return diffs.empty() ? 0 : 1;
    }
    if (dz_point) {
      LaurentSeries dz = dz_at(zd6, dz_point);
      std::cout << (as_json ? series_to_json_text(dz) + "\n" : dump_series(dz));
    } else {
      std::cout << (as_json ? series_to_json_text(zd6) + "\n" : dump_series(zd6));
    }
    return 0;
  }

  if (walls->parsed()) {
    Geometry geom = load_geometry(geom_path);
    Rat eps = rat_arg(eps_s, "--epsilon");
    WallReport rep = find_walls(m, k, n, eps, geom);
    ordered_json out;
    out["m"] = m;
    out["k"] = k;
    out["n"] = n;
    out["epsilon"] = rat_str(eps);
    out["b"] = rat_str(rep.set.b);
    out["eta"] = rat_str(rep.set.eta_val);
    out["window"] = rep.window ? ordered_json::array({rat_str(rep.window->first),
                                                      rat_str(rep.window->second)})
                               : ordered_json(nullptr);
    out["no_positive_wall"] = rep.no_positive_wall;
    out["walls"] = ordered_json::array();
    for (const auto& g : rep.groups) {
      ordered_json wj;
      wj["u0"] = rat_str(g.u0);
      wj["in_window"] = g.in_window;
      wj["on_boundary"] = g.on_boundary;
      wj["splittings"] = ordered_json::array();
      for (const auto& sp : g.items) wj["splittings"].push_back(splitting_json(sp));
      out["walls"].push_back(wj);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (localdt->parsed()) {
    Geometry geom = load_geometry(geom_path);
    auto wx = range_arg(wx_s, "--window-x");
    auto wy = range_arg(wy_s, "--window-y");
    LaurentSeries s = local_d4_series(
        m, geom, {VarSpec{'x', sx, wx.first, wx.second}, VarSpec{'y', sy, wy.first, wy.second}});
    std::cout << (as_json ? series_to_json_text(s) + "\n" : dump_series(s));
    return 0;
  }

  if (check->parsed()) {
    Geometry geom = load_geometry(geom_path);
    ValidityReport rep = validity_report(m, k, n, xi, mu, geom);
    ordered_json out;
    out["m"] = m;
    out["k"] = k;
    out["n"] = n;
    out["eta"] = rat_str(rep.eta_val);
    out["eta_nonneg"] = rep.eta_nonneg;
    out["eta_below_mu"] = rep.eta_below_mu;
    out["cond_eta"] = rep.cond_eta;
    out["gap_positive"] = rep.gap_positive;
    out["mu_window_ok"] = rep.mu_window_ok;
    out["b"] = rat_str(choose_b(m, k, geom));
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (hn->parsed()) {
    auto gram_v = ints_arg(gram_s, "--gram");
    auto polar_v = ints_arg(polar_s, "--polar");
    std::array<std::array<i64, 2>, 2> gram{};
    std::array<i64, 2> L{};
    if (lat_rank == 1 && gram_v.size() == 1 && polar_v.size() == 1) {
      gram[0][0] = gram_v[0];
      L[0] = polar_v[0];
    } else if (lat_rank == 2 && gram_v.size() == 3 && polar_v.size() == 2) {
      gram[0][0] = gram_v[0];
      gram[0][1] = gram[1][0] = gram_v[1];
      gram[1][1] = gram_v[2];
      L = {polar_v[0], polar_v[1]};
    } else {
      throw CLI::ValidationError("--gram/--polar", "entry count does not match --rank");
    }
    SurfaceLattice lat = make_lattice(lat_rank, gram, L);
    HNData data = thick > 0 ? thickened_section_data(thick, lat)
                            : random_hn(seed, static_cast<int>(nfactors),
                                        HNBounds{rmax, lmax, sdrop}, lat);
    IneqReport rep = check_rank_bound(data);
    ordered_json out;
    out["factors"] = ordered_json::array();
    for (const auto& f : data.factors) {
      ordered_json fj;
      fj["r"] = f.r;
      fj["l"] = lat_rank == 1 ? ordered_json::array({f.l[0]})
                              : ordered_json::array({f.l[0], f.l[1]});
      fj["s"] = rat_str(f.s);
      out["factors"].push_back(fj);
    }
    out["holds"] = rep.holds;
    out["lhs"] = rat_str(rep.lhs);
    out["rhs"] = rat_str(rep.rhs);
    out["slack"] = rat_str(rep.slack);
    out["desire_ok"] = rep.desire_ok;
    out["hodge_ok"] = rep.hodge_ok;
    std::cout << out.dump(2) << "\n";
    return rep.holds ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const integrity_error& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
