#pragma once

#include <string>

#include "dtwall/rational.hpp"

namespace dtwall {

// Ambient threefold data reduced along the ample generator H:
// h3 = H^3, c2h = c2 . H, chi = topological Euler characteristic.
struct Geometry {
  i64 h3 = 0;
  i64 c2h = 0;
  i64 chi = 0;
  std::string id;
};

// Requires h3 >= 1; throws std::invalid_argument otherwise.
Geometry make_geometry(i64 h3, i64 c2h, i64 chi, std::string id = {});

// JSON object with integer fields "H3", "c2H", "chiX" and optional "id".
Geometry load_geometry(const std::string& path);
Geometry geometry_from_json_text(const std::string& text);

// chi of the rank-one twist by m: h3 m^3/6 + c2h m/12. Not always an integer;
// callers that need integrality check it themselves.
Rat twist_chi(const Geometry& g, i64 m);

}  // namespace dtwall
