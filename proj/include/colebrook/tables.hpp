#pragma once

// Published convergence tables, embedded as printed text, and a replay that
// regenerates every cell and compares it at the printed precision.

#include <string>
#include <string_view>
#include <vector>

namespace colebrook {

struct CellCheck {
  std::string column;
  std::string expected;  // as printed; empty when the cell is blank
  double actual = 0.0;
  double tolerance = 0.0;
  bool ok = true;
  // The printed digits exceed what double precision can reproduce for this
  // cell; `tolerance` is the rounding bound instead.
  bool rounding_limited = false;
  std::string erratum;  // non-empty: known misprint, reported but not failed
};

struct RowCheck {
  std::string label;
  std::vector<CellCheck> cells;
};

struct CountCheck {
  std::string label;
  int expected = 0;
  int actual = 0;
  bool ok() const { return expected == actual; }
};

struct CaseReport {
  std::string heading;
  std::vector<std::string> columns;
  std::vector<RowCheck> rows;
  std::vector<CountCheck> counts;
};

struct TableReport {
  std::string id;
  std::string title;
  std::vector<CaseReport> cases;

  bool passed() const;
  int cells_checked() const;
  int errata() const;
  std::vector<std::string> failures() const;
};

// "1".."10" and "3pt" (the worked three-point example).
std::vector<std::string> table_ids();
bool has_table(std::string_view id);
TableReport replay_table(std::string_view id);

// Half a unit in the last printed decimal place, or 1e-9, whichever is looser.
double printed_tolerance(std::string_view printed);
double parse_printed(std::string_view printed);

std::string format_report(const TableReport& r, bool show_all = true);

}  // namespace colebrook
