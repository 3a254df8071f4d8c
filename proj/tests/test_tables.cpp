#include "doctest.h"

#include "colebrook/tables.hpp"

using namespace colebrook;

TEST_SUITE("tables") {

TEST_CASE("identifiers") {
  const auto ids = table_ids();
  CHECK(ids.size() == 11);
  for (const char* id : {"1", "5", "10", "3pt"}) CHECK(has_table(id));
  CHECK_FALSE(has_table("0"));
  CHECK_FALSE(has_table("11"));
  CHECK_THROWS(replay_table("11"));
}

TEST_CASE("printed precision") {
  CHECK(printed_tolerance("0.495092014") == doctest::Approx(1e-9));
  CHECK(printed_tolerance("0.010279663295529") == doctest::Approx(1e-9));
  CHECK(printed_tolerance("-573.0134") == doctest::Approx(5e-5));
  CHECK(parse_printed("-0.001370207567104") == -0.001370207567104);
}

TEST_CASE("every published table replays") {
  for (const auto& id : table_ids()) {
    CAPTURE(id);
    const TableReport r = replay_table(id);
    INFO(format_report(r, false));
    CHECK(r.passed());
    CHECK(r.cells_checked() > 0);
    CHECK(r.failures().empty());
  }
}

TEST_CASE("known misprints are reported, not hidden") {
  CHECK(replay_table("3").errata() == 1);
  CHECK(replay_table("5").errata() == 2);
  CHECK(replay_table("6").errata() == 2);
  CHECK(replay_table("7").errata() == 2);
  CHECK(replay_table("3pt").errata() == 1);
  CHECK(replay_table("1").errata() == 0);
}

TEST_CASE("iteration counts") {
  auto counts = [](const char* id) {
    std::vector<int> out;
    for (const auto& c : replay_table(id).cases)
      for (const auto& k : c.counts) out.push_back(k.actual);
    return out;
  };
  CHECK(counts("1") == std::vector<int>{4, 4});
  CHECK(counts("2") == std::vector<int>{11, 5});
  CHECK(counts("3") == std::vector<int>{3, 3});
  CHECK(counts("8")[0] == 6);
  CHECK(counts("9") == std::vector<int>{4, 3});
  CHECK(counts("10") == std::vector<int>{7, 4, 5, 13, 7, 8});
  CHECK(counts("3pt") == std::vector<int>{1});
}

}
