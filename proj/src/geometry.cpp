#include "dtwall/geometry.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dtwall {

Geometry make_geometry(i64 h3, i64 c2h, i64 chi, std::string id) {
  if (h3 < 1) throw std::invalid_argument("geometry: H3 must be >= 1");
  return Geometry{h3, c2h, chi, std::move(id)};
}

Geometry geometry_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object() || !j.contains("H3") || !j.contains("c2H") || !j.contains("chiX"))
    throw std::invalid_argument("geometry: need fields H3, c2H, chiX");
  for (const char* f : {"H3", "c2H", "chiX"})
    if (!j[f].is_number_integer())
      throw std::invalid_argument(std::string("geometry: field ") + f + " must be an integer");
  std::string id;
  if (j.contains("id")) id = j["id"].get<std::string>();
  return make_geometry(j["H3"].get<i64>(), j["c2H"].get<i64>(), j["chiX"].get<i64>(), id);
}

Geometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open geometry file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return geometry_from_json_text(ss.str());
}

Rat twist_chi(const Geometry& g, i64 m) {
  return rat(g.h3) * rat(m) * rat(m) * rat(m) / 6 + rat(g.c2h) * rat(m) / 12;
}

}  // namespace dtwall
