#include "dtwall/invariants.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dtwall/series.hpp"
#include "json.hpp"

namespace dtwall {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const char* kind_names[] = {"DT_ideal", "PT", "DT4", "DT_ideal_hat", "PT_hat", "DT4_hat"};

Rat value_from_json(const json& v, const std::string& origin) {
  if (v.is_number_integer()) return rat(v.get<i64>());
  if (v.is_string()) {
    auto r = parse_rat(v.get<std::string>());
    if (r) return *r;
  }
  throw std::invalid_argument(origin + ": value must be an integer or a \"p/q\" string");
}

i64 int_field(const json& e, const char* name, const std::string& origin) {
  if (!e.contains(name) || !e[name].is_number_integer())
    throw std::invalid_argument(origin + ": entry needs integer field \"" + name + "\"");
  return e[name].get<i64>();
}

}  // namespace

const char* kind_name(TableKind k) { return kind_names[static_cast<int>(k)]; }

std::optional<TableKind> parse_kind(const std::string& name) {
  for (int i = 0; i < 6; ++i)
    if (name == kind_names[i]) return static_cast<TableKind>(i);
  return std::nullopt;
}

void validate_table(const InvariantTable& t) {
  bool integral = t.kind != TableKind::DT4 && t.kind != TableKind::DT4_hat;
  for (const auto& [pt, v] : t.entries) {
    if (pt.k < 0)
      throw std::invalid_argument("table: key k = " + std::to_string(pt.k) + " must be >= 0");
    if (integral && !is_integer(v))
      throw std::invalid_argument(std::string("table: ") + kind_name(t.kind) + " value " +
                                  rat_str(v) + " at (" + std::to_string(pt.k) + ", " +
                                  std::to_string(pt.n) + ") must be an integer");
  }
}

InvariantTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open table file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return is_json ? table_from_json_text(buf.str(), path) : table_from_tsv_text(buf.str(), path);
}

InvariantTable table_from_json_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
  InvariantTable t;
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument(origin + ": need object with string field \"kind\"");
  auto k = parse_kind(j["kind"].get<std::string>());
  if (!k) throw std::invalid_argument(origin + ": unknown kind " + j["kind"].dump());
  t.kind = *k;
  if (j.contains("geometry_id")) {
    if (!j["geometry_id"].is_string())
      throw std::invalid_argument(origin + ": \"geometry_id\" must be a string");
    t.geometry_id = j["geometry_id"].get<std::string>();
  }
  if (!j.contains("entries") || !j["entries"].is_array())
    throw std::invalid_argument(origin + ": need array field \"entries\"");
  for (const auto& e : j["entries"]) {
    CurvePoint pt{int_field(e, "k", origin), int_field(e, "n", origin)};
    if (!e.contains("value")) throw std::invalid_argument(origin + ": entry needs \"value\"");
    if (!t.entries.emplace(pt, value_from_json(e["value"], origin)).second)
      throw std::invalid_argument(origin + ": duplicate key (" + std::to_string(pt.k) + ", " +
                                  std::to_string(pt.n) + ")");
  }
  validate_table(t);
  return t;
}

InvariantTable table_from_tsv_text(const std::string& text, const std::string& origin) {
  InvariantTable t;
  t.kind = TableKind::DT4;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  bool kind_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string where = origin + ":" + std::to_string(lineno);
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto header = [&](const char* tag) -> std::optional<std::string> {
        std::string prefix = std::string("# ") + tag + ":";
        if (line.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
        std::string rest = line.substr(prefix.size());
        size_t a = rest.find_first_not_of(" \t");
        if (a == std::string::npos) return std::string();
        size_t b = rest.find_last_not_of(" \t");
        return rest.substr(a, b - a + 1);
      };
      if (auto v = header("kind")) {
        auto k = parse_kind(*v);
        if (!k) throw std::invalid_argument(where + ": unknown kind " + *v);
        t.kind = *k;
        kind_seen = true;
      } else if (auto g = header("geometry")) {
        t.geometry_id = *g;
      }
      continue;
    }
    std::istringstream cells(line);
    std::string ks, ns, vs;
    if (!std::getline(cells, ks, '\t') || !std::getline(cells, ns, '\t') ||
        !std::getline(cells, vs, '\t'))
      throw std::invalid_argument(where + ": need k<TAB>n<TAB>value");
    auto kq = parse_rat(ks), nq = parse_rat(ns), vq = parse_rat(vs);
    if (!kq || !nq || !is_integer(*kq) || !is_integer(*nq) || !vq)
      throw std::invalid_argument(where + ": malformed entry");
    CurvePoint pt{to_i64(kq->get_num()), to_i64(nq->get_num())};
    if (!t.entries.emplace(pt, *vq).second)
      throw std::invalid_argument(where + ": duplicate key (" + std::to_string(pt.k) + ", " +
                                  std::to_string(pt.n) + ")");
  }
  if (!kind_seen) throw std::invalid_argument(origin + ": missing \"# kind:\" header");
  validate_table(t);
  return t;
}

std::string table_to_json_text(const InvariantTable& t) {
  ordered_json j;
  j["kind"] = kind_name(t.kind);
  j["geometry_id"] = t.geometry_id;
  j["entries"] = ordered_json::array();
  for (const auto& [pt, v] : t.entries) {
    ordered_json e;
    e["k"] = pt.k;
    e["n"] = pt.n;
    if (is_integer(v) && mpz_fits_slong_p(v.get_num().get_mpz_t()))
      e["value"] = to_i64(v.get_num());
    else
      e["value"] = frac_str(v);
    j["entries"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::optional<std::string> geometry_mismatch(const InvariantTable& t, const Geometry& g) {
  if (t.geometry_id.empty() || g.id.empty() || t.geometry_id == g.id) return std::nullopt;
  return "table geometry \"" + t.geometry_id + "\" differs from \"" + g.id + "\"";
}

std::pair<InvariantTable, InvariantTable> toy_degree0(i64 chi, i64 nmax) {
  if (nmax < 0) throw std::invalid_argument("toy_degree0: nmax must be >= 0");
  InvariantTable p;
  p.kind = TableKind::PT;
  p.entries[{0, 0}] = 1;
  InvariantTable ideal;
  ideal.kind = TableKind::DT_ideal;
  LaurentSeries mac = macmahon(-1, chi, nmax);
  for (const auto& [key, c] : mac.terms) ideal.entries[{0, key.e[0]}] = c;
  return {ideal, p};
}

bool table_support_in(const InvariantTable& t, i64 m, const Rat& epsilon) {
  Rat kcap = epsilon * rat(m) * rat(m);
  Rat ncap = kcap * rat(m);
  for (const auto& [pt, v] : t.entries)
    if (rat(pt.k) >= kcap || rat(pt.n) >= ncap || rat(-pt.n) >= ncap) return false;
  return true;
}

}  // namespace dtwall
