#include "dtwall/appendix.hpp"

#include <random>
#include <stdexcept>

namespace dtwall {

namespace {

Rat dot_raw(const SurfaceLattice& lat, const std::array<Rat, 2>& a, const std::array<Rat, 2>& b) {
  Rat out = 0;
  for (int i = 0; i < lat.rank; ++i)
    for (int j = 0; j < lat.rank; ++j) out += a[i] * rat(lat.gram[i][j]) * b[j];
  return out;
}

std::array<Rat, 2> to_rat2(const std::array<i64, 2>& v) { return {rat(v[0]), rat(v[1])}; }

Rat lsq(const SurfaceLattice& lat) { return dot_raw(lat, to_rat2(lat.L), to_rat2(lat.L)); }

Rat slope(const SurfaceLattice& lat, const HNFactor& f) {
  return dot_raw(lat, to_rat2(f.l), to_rat2(lat.L)) / rat(f.r);
}

}  // namespace

SurfaceLattice make_lattice(int rank, const std::array<std::array<i64, 2>, 2>& gram,
                            const std::array<i64, 2>& L) {
  if (rank != 1 && rank != 2) throw std::invalid_argument("lattice rank must be 1 or 2");
  SurfaceLattice lat;
  lat.rank = rank;
  lat.gram = gram;
  lat.L = L;
  if (gram[0][1] != gram[1][0]) throw std::invalid_argument("lattice pairing must be symmetric");
  if (rank == 1) {
    if (gram[0][0] <= 0) throw std::invalid_argument("rank-1 lattice needs positive square");
  } else {
    Int det = Int(gram[0][0]) * gram[1][1] - Int(gram[0][1]) * gram[1][0];
    if (det >= 0) throw std::invalid_argument("rank-2 lattice must have signature (1,1)");
  }
  if (lsq(lat) <= 0) throw std::invalid_argument("polarization must have positive square");
  return lat;
}

Rat lattice_dot(const SurfaceLattice& lat, const std::array<Rat, 2>& a,
                const std::array<Rat, 2>& b) {
  return dot_raw(lat, a, b);
}

std::optional<std::string> hn_hypotheses_ok(const HNData& d) {
  if (d.factors.empty()) return "no factors";
  const Rat L2 = lsq(d.lat);
  for (size_t i = 0; i < d.factors.size(); ++i) {
    const HNFactor& f = d.factors[i];
    if (f.r <= 0) return "factor " + std::to_string(i) + ": rank must be positive";
    Rat l2 = dot_raw(d.lat, to_rat2(f.l), to_rat2(f.l));
    if (l2 < 2 * rat(f.r) * f.s)
      return "factor " + std::to_string(i) + ": discriminant bound l^2 >= 2 r s fails";
    if (i + 1 < d.factors.size()) {
      Rat mu_i = slope(d.lat, f), mu_next = slope(d.lat, d.factors[i + 1]);
      if (!(mu_i > mu_next))
        return "factors " + std::to_string(i) + "," + std::to_string(i + 1) +
               ": slopes must strictly decrease";
      if (!(mu_i <= mu_next + L2))
        return "factors " + std::to_string(i) + "," + std::to_string(i + 1) +
               ": slope gap exceeds L^2";
    }
  }
  return std::nullopt;
}

IneqReport check_rank_bound(const HNData& d) {
  if (auto bad = hn_hypotheses_ok(d)) throw std::invalid_argument(*bad);
  const Rat L2 = lsq(d.lat);
  Rat r = 0, s = 0;
  std::array<Rat, 2> l{Rat(0), Rat(0)};
  for (const HNFactor& f : d.factors) {
    r += rat(f.r);
    s += f.s;
    for (int c = 0; c < 2; ++c) l[c] += rat(f.l[c]);
  }
  IneqReport rep;
  rep.lhs = s;
  rep.rhs = L2 / 24 * (r * r * r - r) + dot_raw(d.lat, l, l) / (2 * r);
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.lhs <= rep.rhs;

  Rat cross = 0;
  rep.hodge_ok = true;
  for (size_t i = 0; i < d.factors.size(); ++i)
    for (size_t j = i + 1; j < d.factors.size(); ++j) {
      const HNFactor &fi = d.factors[i], &fj = d.factors[j];
      std::array<Rat, 2> w;
      for (int c = 0; c < 2; ++c) w[c] = rat(fj.r) * rat(fi.l[c]) - rat(fi.r) * rat(fj.l[c]);
      Rat wl = dot_raw(d.lat, w, to_rat2(d.lat.L));
      if (wl * wl < L2 * dot_raw(d.lat, w, w)) rep.hodge_ok = false;
      cross += dot_raw(d.lat, w, w) / (2 * rat(fi.r) * rat(fj.r) * r);
    }
  rep.desire_ok = s <= dot_raw(d.lat, l, l) / (2 * r) + cross;
  return rep;
}

HNData thickened_section_data(i64 m, const SurfaceLattice& lat) {
  if (m < 1) throw std::invalid_argument("thickened_section_data: m must be >= 1");
  HNData d;
  d.lat = lat;
  const Rat L2 = lsq(lat);
  for (i64 j = 0; j < m; ++j) {
    HNFactor f;
    f.r = 1;
    for (int c = 0; c < 2; ++c) f.l[c] = -j * lat.L[c];
    f.s = rat(j) * rat(j) * L2 / 2;
    d.factors.push_back(f);
  }
  return d;
}

Rat spacing_cap(i64 r) { return rat(r) * rat(r) * (rat(r) * rat(r) - 1) / 12; }

// stdlib distributions differ between standard libraries; a plain modulo draw
// keeps the samples identical everywhere.
static i64 draw(std::mt19937_64& rng, i64 lo, i64 hi) {
  return lo + static_cast<i64>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

HNData random_hn(unsigned long seed, int nfactors, const HNBounds& b, const SurfaceLattice& lat) {
  if (nfactors < 1) throw std::invalid_argument("random_hn: need at least one factor");
  if (b.rmax < 1 || b.lmax < 1 || b.smax_drop < 0)
    throw std::invalid_argument("random_hn: bad bounds");
  std::mt19937_64 rng(seed);

  HNData d;
  d.lat = lat;
  const Rat L2 = lsq(lat);
  for (int i = 0; i < nfactors; ++i) {
    HNFactor f;
    if (i == 0) {
      // nonnegative coordinates keep the slope chain away from the box floor
      f.r = draw(rng, 1, b.rmax);
      for (int c = 0; c < lat.rank; ++c) f.l[c] = draw(rng, 0, b.lmax);
    } else {
      // slope window [mu_prev - L^2, mu_prev): enumerate admissible
      // (rank, divisor) pairs in the coordinate box, then pick one at random
      Rat mu_prev = slope(d.lat, d.factors.back());
      std::vector<std::pair<i64, std::array<i64, 2>>> candidates;
      std::array<i64, 2> l{0, 0};
      i64 second_hi = lat.rank == 2 ? b.lmax : 0;
      for (i64 r = 1; r <= b.rmax; ++r)
        for (l[0] = -b.lmax; l[0] <= b.lmax; ++l[0])
          for (l[1] = -second_hi; l[1] <= second_hi; ++l[1]) {
            Rat mu = dot_raw(lat, to_rat2(l), to_rat2(lat.L)) / rat(r);
            if (mu < mu_prev && mu >= mu_prev - L2) candidates.push_back({r, l});
          }
      if (candidates.empty())
        throw std::runtime_error("random_hn: no admissible factor in the coordinate box");
      auto [r, lc] = candidates[static_cast<size_t>(
          draw(rng, 0, static_cast<i64>(candidates.size()) - 1))];
      f.r = r;
      f.l = lc;
    }
    Rat l2 = dot_raw(d.lat, to_rat2(f.l), to_rat2(f.l));
    f.s = l2 / (2 * rat(f.r)) - rat(draw(rng, 0, b.smax_drop), 2);
    d.factors.push_back(f);
  }
  return d;
}

}  // namespace dtwall
