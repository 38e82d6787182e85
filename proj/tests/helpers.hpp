#pragma once

#include <random>

#include "dtwall/geometry.hpp"

namespace tst {

inline dtwall::Geometry t6() { return dtwall::make_geometry(6, 12, -2, "toy-h6"); }
inline dtwall::Geometry quintic() { return dtwall::make_geometry(5, 50, -200, "quintic"); }

inline dtwall::i64 pick(std::mt19937_64& rng, dtwall::i64 lo, dtwall::i64 hi) {
  return std::uniform_int_distribution<dtwall::i64>(lo, hi)(rng);
}

inline dtwall::Rat pick_rat(std::mt19937_64& rng, dtwall::i64 span, dtwall::i64 dmax) {
  return dtwall::rat(pick(rng, -span, span), pick(rng, 1, dmax));
}

}  // namespace tst
