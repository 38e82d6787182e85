#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "dtwall/geometry.hpp"
#include "dtwall/numclass.hpp"

namespace dtwall {

enum class TableKind { DT_ideal, PT, DT4, DT_ideal_hat, PT_hat, DT4_hat };

const char* kind_name(TableKind k);
std::optional<TableKind> parse_kind(const std::string& name);

// Finite map (k, n) -> value. Keys need k >= 0 and must be unique; the
// rank-one kinds (everything except DT4 / DT4_hat) carry integer values.
struct InvariantTable {
  TableKind kind = TableKind::DT4;
  std::string geometry_id;
  std::map<CurvePoint, Rat> entries;
};

// Validates key and value constraints; throws std::invalid_argument.
void validate_table(const InvariantTable& t);

// JSON: {"kind": ..., "geometry_id": ..., "entries": [{"k":, "n":, "value":}]}
// where value is an integer or a "p/q" string. TSV: lines "k<TAB>n<TAB>value"
// with '#' comments; kind and geometry_id from optional "# kind:" / "# geometry:"
// header comments. Selected by file extension (.json / anything else = TSV).
InvariantTable load_table(const std::string& path);
InvariantTable table_from_json_text(const std::string& text, const std::string& origin = "table");
InvariantTable table_from_tsv_text(const std::string& text, const std::string& origin = "table");
std::string table_to_json_text(const InvariantTable& t);

// Empty when ids match or either id is empty; otherwise a warning message.
std::optional<std::string> geometry_mismatch(const InvariantTable& t, const Geometry& g);

// Degree-zero toy pair: P = {(0,0) -> 1} and I with entries (0, n) for
// 0 <= n <= nmax given by the n-th coefficient of M(-x)^chi.
std::pair<InvariantTable, InvariantTable> toy_degree0(i64 chi, i64 nmax);

// True when every key satisfies k < eps m^2 and |n| < eps m^3 (strict).
bool table_support_in(const InvariantTable& t, i64 m, const Rat& epsilon);

}  // namespace dtwall
