#include <string>

#include "doctest.h"
#include "dtwall/invariants.hpp"
#include "dtwall/series.hpp"
#include "helpers.hpp"

using namespace dtwall;

namespace {
const std::string data_dir = TEST_DATA_DIR;
}

TEST_CASE("kind names round-trip") {
  for (auto k : {TableKind::DT_ideal, TableKind::PT, TableKind::DT4, TableKind::DT_ideal_hat,
                 TableKind::PT_hat, TableKind::DT4_hat})
    CHECK(parse_kind(kind_name(k)).value() == k);
  CHECK(!parse_kind("DT5"));
}

TEST_CASE("geometry files") {
  Geometry g = load_geometry(data_dir + "/geometry_quintic.json");
  CHECK(g.h3 == 5);
  CHECK(g.c2h == 50);
  CHECK(g.chi == -200);
  CHECK(g.id == "quintic");
  CHECK(twist_chi(g, 3) == 35);
  CHECK_THROWS_AS(geometry_from_json_text("{\"H3\": 0, \"c2H\": 1, \"chiX\": 0}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(geometry_from_json_text("{\"c2H\": 1, \"chiX\": 0}"), std::invalid_argument);
  CHECK(geometry_from_json_text("{\"H3\": 2, \"c2H\": -4, \"chiX\": 7}").id.empty());
}

TEST_CASE("table JSON round-trip") {
  InvariantTable t = load_table(data_dir + "/toy_i.json");
  CHECK(t.kind == TableKind::DT_ideal);
  CHECK(t.geometry_id == "toy-h6");
  CHECK(t.entries.size() == 1);
  CHECK(t.entries.at({0, 0}) == 1);
  InvariantTable back = table_from_json_text(table_to_json_text(t));
  CHECK(back.kind == t.kind);
  CHECK((back.entries == t.entries));
}

TEST_CASE("table TSV parsing") {
  InvariantTable t = load_table(data_dir + "/toy_p.tsv");
  CHECK(t.kind == TableKind::PT);
  CHECK(t.geometry_id == "toy-h6");
  CHECK(t.entries.at({0, 0}) == 1);
  CHECK_THROWS_AS(table_from_tsv_text("0\t0\t1\n"), std::invalid_argument);  // no kind header
  CHECK_THROWS_AS(table_from_tsv_text("# kind: PT\n0\t0\n"), std::invalid_argument);
  CHECK_THROWS_AS(table_from_tsv_text("# kind: PT\n0\t0\t1\n0\t0\t2\n"), std::invalid_argument);
}

TEST_CASE("table validation") {
  InvariantTable t;
  t.kind = TableKind::PT;
  t.entries[{-1, 0}] = 1;
  CHECK_THROWS_AS(validate_table(t), std::invalid_argument);
  t.entries.clear();
  t.entries[{0, 0}] = rat(1, 2);
  CHECK_THROWS_AS(validate_table(t), std::invalid_argument);  // integer-valued kind
  t.kind = TableKind::DT4;
  CHECK_NOTHROW(validate_table(t));
  t.kind = TableKind::PT_hat;
  CHECK_THROWS_AS(validate_table(t), std::invalid_argument);
}

TEST_CASE("geometry id mismatch warning") {
  InvariantTable t;
  t.geometry_id = "other";
  CHECK(geometry_mismatch(t, tst::t6()).has_value());
  t.geometry_id = "toy-h6";
  CHECK(!geometry_mismatch(t, tst::t6()));
  t.geometry_id.clear();
  CHECK(!geometry_mismatch(t, tst::t6()));
}

TEST_CASE("degree-zero toy pair") {
  auto [ti, tp] = toy_degree0(-6, 8);
  CHECK(tp.entries.size() == 1);
  CHECK(tp.entries.at({0, 0}) == 1);
  LaurentSeries mac = macmahon(-1, -6, 8);
  for (i64 n = 0; n <= 8; ++n) {
    Rat c = coeff(mac, {rat(n), 0, 0});
    if (c != 0) CHECK(ti.entries.at({0, n}) == c);
  }
  CHECK(ti.entries.at({0, 0}) == 1);
  CHECK(ti.entries.at({0, 1}) == 6);  // x-coefficient of (1 + x)^6
}

TEST_CASE("strict support box") {
  InvariantTable t;
  t.kind = TableKind::DT4;
  t.entries[{1, -3}] = 1;
  CHECK(table_support_in(t, 2, 1));       // 1 < 4, 3 < 8
  CHECK(!table_support_in(t, 2, rat(1, 4)));
  t.entries[{2, 0}] = 1;
  CHECK(!table_support_in(t, 2, rat(1, 2)));  // k = 2 not < 2
}
