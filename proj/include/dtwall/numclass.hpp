#pragma once

#include <array>
#include <compare>

#include "dtwall/geometry.hpp"
#include "dtwall/rational.hpp"

namespace dtwall {

// A numerical class contracted along H: r = ch0, d = ch1/H, g = ch2 . H,
// s = integral of ch3. All components exact rationals.
struct NumClass {
  Rat r, d, g, s;

  bool operator==(const NumClass&) const = default;
  NumClass operator+(const NumClass& o) const { return {r + o.r, d + o.d, g + o.g, s + o.s}; }
  NumClass operator-(const NumClass& o) const { return {r - o.r, d - o.d, g - o.g, s - o.s}; }
  NumClass operator-() const { return {-r, -d, -g, -s}; }
};

// A curve class of degree k >= 0 with holomorphic Euler characteristic n;
// the key type for invariant tables.
struct CurvePoint {
  i64 k = 0;
  i64 n = 0;
  auto operator<=>(const CurvePoint&) const = default;
};

// Multiplication by exp(tH).
NumClass twist_exp(const NumClass& v, const Rat& t, const Geometry& geom);

// Multiplication by exp(-bH).
NumClass b_twist(const NumClass& v, const Rat& b, const Geometry& geom);

// The rank-zero class (0, m, -k, -n); requires m >= 1.
NumClass class_d4(i64 m, i64 k, i64 n);

// b with b_twist(class_d4(m,k,n), b) having zero g-component: -k/(m H^3).
Rat choose_b(i64 m, i64 k, const Geometry& geom);

// Normalized defect of (m,k,n): (n + k^2/(2 m H^3) + H^3 m^3/24) / (H^3 m^3 / 24).
Rat eta(i64 m, i64 k, i64 n, const Geometry& geom);

// Antisymmetric bilinear pairing
// chi(a,b) = a.r b.s - a.d b.g + a.g b.d - b.r a.s + (c2h/12)(a.r b.d - b.r a.d).
Rat euler_pairing(const NumClass& a, const NumClass& b, const Geometry& geom);

// Cubic polynomial in the twist variable: coefficients (a3, a2, a1, a0) of
// chi(v(b), n) where v(b) = b_twist(v, b).
std::array<Rat, 4> hilbert_poly(const NumClass& v, const Rat& b, const Geometry& geom);

}  // namespace dtwall
