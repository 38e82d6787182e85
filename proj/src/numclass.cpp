#include "dtwall/numclass.hpp"

#include <stdexcept>

namespace dtwall {

NumClass twist_exp(const NumClass& v, const Rat& t, const Geometry& geom) {
  Rat h3 = rat(geom.h3);
  Rat t2 = t * t / 2;
  Rat t3 = t * t * t / 6;
  return NumClass{
      v.r,
      v.d + t * v.r,
      v.g + t * v.d * h3 + t2 * v.r * h3,
      v.s + t * v.g + t2 * v.d * h3 + t3 * v.r * h3,
  };
}

NumClass b_twist(const NumClass& v, const Rat& b, const Geometry& geom) {
  return twist_exp(v, -b, geom);
}

NumClass class_d4(i64 m, i64 k, i64 n) {
  if (m < 1) throw std::invalid_argument("class_d4: m must be >= 1");
  return NumClass{rat(0), rat(m), rat(-k), rat(-n)};
}

Rat choose_b(i64 m, i64 k, const Geometry& geom) {
  if (m < 1) throw std::invalid_argument("choose_b: m must be >= 1");
  return rat(-k) / (rat(m) * rat(geom.h3));
}

Rat eta(i64 m, i64 k, i64 n, const Geometry& geom) {
  if (m < 1) throw std::invalid_argument("eta: m must be >= 1");
  Rat base = rat(geom.h3) * rat(m) * rat(m) * rat(m) / 24;
  return (rat(n) + rat(k) * rat(k) / (2 * rat(m) * rat(geom.h3)) + base) / base;
}

Rat euler_pairing(const NumClass& a, const NumClass& b, const Geometry& geom) {
  return a.r * b.s - a.d * b.g + a.g * b.d - b.r * a.s +
         rat(geom.c2h) / 12 * (a.r * b.d - b.r * a.d);
}

std::array<Rat, 4> hilbert_poly(const NumClass& v, const Rat& b, const Geometry& geom) {
  NumClass w = b_twist(v, b, geom);
  Rat h3 = rat(geom.h3);
  Rat c = rat(geom.c2h) / 12;
  return {w.r * h3 / 6, w.d * h3 / 2, w.g + w.r * c, w.s + w.d * c};
}

}  // namespace dtwall
