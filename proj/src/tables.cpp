#include "colebrook/tables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "colebrook/lambert_w.hpp"
#include "colebrook/solvers.hpp"

namespace colebrook {

namespace {

using Row = std::pair<std::string, std::vector<std::string>>;

struct Erratum {
  std::string row;
  std::string column;
  std::string note;
};

struct CaseFixture {
  std::string heading;
  double re;
  double rr;
  std::vector<Row> rows;
  std::vector<int> iterations;  // one per counted column group
  std::vector<Erratum> errata;
  // Column order when it differs from the table default.
  std::vector<std::string> keys = {};
  std::vector<std::string> columns = {};
};

enum class Layout { Solver, Lambert, ThreePoint };

struct TableFixture {
  std::string id;
  std::string title;
  Layout layout = Layout::Solver;
  Method method = Method::NewtonX;
  StartStrategy start = StartStrategy::traditional();
  std::vector<std::string> keys;     // value source per column
  std::vector<std::string> columns;  // display names
  std::vector<CaseFixture> cases;
  // The run stops once an iterate prints the same as its predecessor.
  int printed_decimals = 15;
};

const double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<TableFixture>& fixtures() {
  static const std::vector<TableFixture> all = [] {
    std::vector<TableFixture> t;

    t.push_back({"1", "Newton in lambda, traditional start", Layout::Solver, Method::NewtonLambda,
                 StartStrategy::traditional(), {"f", "f'", "lambda"},
                 {"f(lambda)", "f'(lambda)", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Start", {"", "", "0.009352225155363"}},
                    {"Iteration 1", {"0.495092014", "-573.0134258", "0.010216239839661"}},
                    {"Iteration 2", {"0.031705666", "-502.2190127", "0.010279370993451"}},
                    {"Iteration 3", {"0.000145453", "-497.622807", "0.010279663289327"}},
                    {"Iteration 4", {"0.000000003", "-497.6016902", "0.010279663295529"}},
                    {"Control step", {"0.000000000", "-497.6016898", "0.010279663295529"}}},
                   {4}, {}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Start", {"", "", "0.036588313752304"}},
                    {"Iteration 1", {"0.143632267", "-73.25157738", "0.038549121591193"}},
                    {"Iteration 2", {"0.005520057", "-67.74092562", "0.038630609361351"}},
                    {"Iteration 3", {"0.000008725", "-67.52696208", "0.038630738574469"}},
                    {"Iteration 4", {"0.000000000", "-67.5266237", "0.038630738574792"}},
                    {"Control step", {"0.000000000", "-67.5266237", "0.038630738574792"}}},
                   {4}, {}}}});

    t.push_back({"2", "Newton in lambda, fixed start", Layout::Solver, Method::NewtonLambda,
                 StartStrategy::fixed_newton(), {"f", "f'", "lambda"},
                 {"f(lambda)", "f'(lambda)", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Start", {"", "", "0.024069128765101"}},
                    {"Iteration 1", {"-3.554956084", "-139.7424853", "-0.001370207567104"}},
                    {"Iteration 2", {"17.630891548", "-10069.59089", "0.000380696888310"}},
                    {"Iteration 3", {"42.275315189", "-68216.8306", "0.001000416608714"}},
                    {"Iteration 4", {"22.325487096", "-16105.99979", "0.002386576262278"}},
                    {"Iteration 5", {"10.932300910", "-4398.30144", "0.004872149626988"}},
                    {"Iteration 6", {"4.615550920", "-1516.202309", "0.007916302041016"}},
                    {"Iteration 7", {"1.426053458", "-734.846953", "0.009856914916156"}},
                    {"Iteration 8", {"0.217044469", "-529.7853757", "0.010266598684182"}},
                    {"Iteration 9", {"0.006507144", "-498.5470019", "0.010279650902858"}},
                    {"Iteration 10", {"0.000006167", "-497.602585", "0.010279663295518"}},
                    {"Iteration 11", {"0.000000000", "-497.6016898", "0.010279663295529"}},
                    {"Control step", {"0.000000000", "-497.6016898", "0.010279663295529"}}},
                   {11}, {}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Start", {"", "", "0.024069128765101"}},
                    {"Iteration 1", {"1.391712394", "-137.1740994", "0.034214720386916"}},
                    {"Iteration 2", {"0.326434508", "-80.9945153", "0.038245048943635"}},
                    {"Iteration 3", {"0.026240732", "-68.54940037", "0.038627849256271"}},
                    {"Iteration 4", {"0.000195117", "-67.53419088", "0.038630738412914"}},
                    {"Iteration 5", {"0.000000011", "-67.52662412", "0.038630738574792"}},
                    {"Control step", {"0.000000000", "-67.5266237", "0.038630738574792"}}},
                   {5}, {}}}});

    t.push_back({"3", "Newton in x, fixed start x0=6.445695939", Layout::Solver, Method::NewtonX,
                 StartStrategy::value(6.445695939), {"f", "f'", "x", "lambda"},
                 {"f(x)", "f'(x)", "x", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Start", {"", "", "6.445695939", "0.024069128768719"}},
                    {"Iteration 1",
                     {"-3.554956085", "1.043635910", "9.852014225862620", "0.010302673560706"}},
                    {"Iteration 2",
                     {"-0.011430857", "1.037259804", "9.863034470914730", "0.010279663490514"}},
                    {"Iteration 3",
                     {"-0.000000097", "1.037242198", "9.863034564455800", "0.010279663295529"}},
                    {"Control step",
                     {"0.000000000", "1.037242198", "9.863034564455800", "0.010279663295529"}}},
                   {3}, {}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Start", {"", "", "6.445695939", "0.024069128768719"}},
                    {"Iteration 1",
                     {"1.391712393", "1.024454486", "5.087204750239650", "0.038640395682209"}},
                    {"Iteration 2",
                     {"-0.000651990", "1.025427001", "5.087840572945700", "0.038630738577020"}},
                    {"Iteration 3",
                     {"0.000000000", "1.025426528", "5.087840573092420", "0.038630738574792"}},
                    {"Control step",
                     {"0.000000000", "1.046830475", "5.087840573092420", "0.038630738574792"}}},
                   {3},
                   {{"Control step", "f'(x)",
                     "misprint: f'(x) at the root is 1.025426528, as in the rows above"}}}}});

    t.push_back({"4", "Newton in x, traditional start", Layout::Solver, Method::NewtonX,
                 StartStrategy::traditional(), {"f", "f'", "x", "lambda"},
                 {"f(x)", "f'(x)", "x", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Start", {"", "", "10.34052343", "0.009352225155363"}},
                    {"Iteration 1",
                     {"0.495092014", "1.036495031", "9.862863625818000", "0.010280019623455"}},
                    {"Iteration 2",
                     {"-0.000177305", "1.037242471", "9.863034564433310", "0.010279663295576"}},
                    {"Iteration 3",
                     {"0.000000000", "1.037242198", "9.863034564455800", "0.010279663295529"}},
                    {"Control step",
                     {"0.000000000", "1.037242198", "9.863034564455800", "0.010279663295529"}}},
                   {3}, {}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Start", {"", "", "5.227918429", "0.036588313752304"}},
                    {"Iteration 1",
                     {"0.143632267", "1.025322691", "5.087833489750430", "0.038630846139210"}},
                    {"Iteration 2",
                     {"-0.000007263", "1.025426533", "5.087840573092400", "0.038630738574793"}},
                    {"Iteration 3",
                     {"0.000000000", "1.025426528", "5.087840573092420", "0.038630738574792"}},
                    {"Control step",
                     {"0.000000000", "1.025426528", "5.087840573092420", "0.038630738574792"}}},
                   {3}, {}}}});

    t.push_back({"5", "Halley in x, fixed start x0=7.990256504", Layout::Solver, Method::HalleyX,
                 StartStrategy::fixed_halley(), {"f", "f'", "f''", "x", "lambda"},
                 {"f(x)", "f'(x)", "f''(x)", "x", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Start", {"", "", "", "7.990256504", "0.015663210285978"}},
                    {"Iteration 1", {"-1.945484250", "1.040493788", "-0.001887828",
                                     "9.863203600915390", "0.010279310950983"}},
                    {"Iteration 2", {"0.000175332", "1.037241928", "-0.001596798",
                                     "9.863034564455800", "0.010279663295529"}},
                    {"Control step", {"0.000000000", "1.037242198", "-0.001596821",
                                      "9.863034564455800", "0.010279663295529"}}},
                   {2},
                   {{"Start", "lambda",
                     "misprint: 7.990256504^-2 = 0.015663130177332; the printed value belongs to "
                     "x0 = 7.99023607"}}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Start", {"", "", "", "7.990256504", "0.015663210285978"}},
                    {"Iteration 1", {"2.973246188", "1.023435376", "-0.000632309",
                                     "5.087698791122220", "0.038632891696967"}},
                    {"Iteration 2", {"-0.000145387", "1.025426633", "-0.000744326",
                                     "5.087840573092420", "0.038630738574792"}},
                    {"Control step", {"0.000000000", "1.025426528", "-0.000744320",
                                      "5.087840573092420", "0.038630738574792"}}},
                   {2},
                   {{"Start", "lambda",
                     "misprint: 7.990256504^-2 = 0.015663130177332; the printed value belongs to "
                     "x0 = 7.99023607"}}}}});

    t.push_back({"6", "Third-order Householder in x, traditional start", Layout::Solver,
                 Method::Householder3X, StartStrategy::traditional(),
                 {"f", "f'", "f''", "f'''", "x", "lambda"},
                 {"f(x)", "f'(x)", "f''(x)", "f'''(x)", "x", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Start", {"", "", "", "", "10.34052343", "0.009352225155363"}},
                    {"Iteration 1", {"0.495092014", "1.036495031", "-0.001533392", "0.000128855",
                                     "9.863034531578420", "0.010279663364062"}},
                    {"Iteration 2", {"-0.000000034", "1.037242198", "-0.001596821", "0.000136933",
                                     "9.863034564455800", "0.010279663295529"}},
                    {"Control step", {"0.000000000", "1.037242198", "-0.001596821", "0.000136933",
                                      "9.863034564455800", "0.010279663295529"}}},
                   {2}, {}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Start", {"", "", "", "", "10.34052343", "0.009352225155363"}},
                    {"Iteration 1", {"0.143632267", "1.025322691", "-0.000738253", "0.000043046",
                                     "5.087840573035260", "0.038630738575660"}},
                    {"Iteration 2", {"0.000000000", "1.025426528", "-0.000744320", "0.000043578",
                                     "5.087840573092420", "0.038630738574792"}},
                    {"Control step", {"0.000000000", "1.025426528", "-0.000744320", "0.000043578",
                                      "5.087840573092420", "0.038630738574792"}}},
                   {2},
                   {{"Start", "x",
                     "misprint: heading repeats the first case; the traditional start here is "
                     "5.227918429, which the f(x) of iteration 1 confirms"},
                    {"Start", "lambda", "misprint: heading repeats the first case (0.036588313752304)"}}}}});

    t.push_back({"7", "Schroder in x, fixed start x0=7.990256504", Layout::Solver,
                 Method::SchroderX, StartStrategy::fixed_halley(), {"f", "f'", "f''", "x", "lambda"},
                 {"f(x)", "f'(x)", "f''(x)", "x", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Start", {"", "", "", "7.990256504", "0.015663210285978"}},
                    {"Iteration 1", {"-1.945484250", "1.040493788", "-0.001887828",
                                     "9.863198212166060", "0.010279322183170"}},
                    {"Iteration 2", {"0.000169742", "1.037241937", "-0.001596799",
                                     "9.863034564455800", "0.010279663295529"}},
                    {"Control step", {"0.000000000", "1.037242198", "-0.001596821",
                                      "9.863034564455800", "0.010279663295529"}}},
                   {2},
                   {{"Start", "lambda",
                     "misprint: 7.990256504^-2 = 0.015663130177332; the printed value belongs to "
                     "x0 = 7.99023607"}}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Start", {"", "", "", "7.990256504", "0.015663210285978"}},
                    {"Iteration 1", {"2.973246188", "1.023435376", "-0.000632309",
                                     "5.087701128882780", "0.038632856193927"}},
                    {"Iteration 2", {"-0.000142990", "1.025426632", "-0.000744326",
                                     "5.087840573092420", "0.038630738574792"}},
                    {"Control step", {"0.000000000", "1.025426528", "-0.000744320",
                                      "5.087840573092420", "0.038630738574792"}}},
                   {2},
                   {{"Start", "lambda",
                     "misprint: 7.990256504^-2 = 0.015663130177332; the printed value belongs to "
                     "x0 = 7.99023607"}}}}});

    t.push_back({"8", "Secant in lambda, fixed and traditional starts", Layout::Solver,
                 Method::SecantLambda, StartStrategy::traditional(),
                 {"f", "f(prev)", "slope", "lambda"},
                 {"f(lambda_i)", "f(lambda_i-1)", "slope", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Prior", {"", "", "", "0.024069128765101"}},
                    {"Start", {"", "", "", "0.009352225155363"}},
                    {"Iteration 1",
                     {"0.495092014", "-3.554956084", "-275.1970255", "0.011151270814558"}},
                    {"Iteration 2",
                     {"-0.408071981", "0.495092014", "-502.0239429", "0.010338417191085"}},
                    {"Iteration 3",
                     {"-0.029111936", "-0.408071981", "-466.2094551", "0.010275973292109"}},
                    {"Iteration 4",
                     {"0.001836644", "-0.029111936", "-495.6221591", "0.010279679026163"}},
                    {"Iteration 5",
                     {"-0.000007828", "0.001836644", "-497.734448", "0.010279663299743"}},
                    {"Iteration 6",
                     {"-0.000000002", "-0.000007828", "-497.6011214", "0.010279663295529"}},
                    {"Control step",
                     {"0.000000000", "-0.000000002", "-497.6012179", "0.010279663295529"}}},
                   {6}, {}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Prior", {"", "", "", "0.024069128765101"}},
                    {"Start", {"", "", "", "0.036588313752304"}},
                    {"Iteration 1",
                     {"1.391712394", "0.143632267", "-99.69340079", "0.038029053721052"}},
                    {"Iteration 2",
                     {"0.143632267", "0.041110009", "-71.15944585", "0.038606770549177"}},
                    {"Iteration 3",
                     {"0.041110009", "0.001619232", "-68.35663251", "0.038630458556837"}},
                    {"Iteration 4",
                     {"0.001619232", "0.000018909", "-67.5583902", "0.038630738444645"}},
                    {"Iteration 5",
                     {"0.000018909", "0.000000009", "-67.52699052", "0.038630738574792"}},
                    {"Control step",
                     {"0.000000009", "0.000000000", "-67.52662212", "0.038630738574792"}}},
                   {5}, {},
                   // this case prints the older residual first
                   {"f(prev)", "f", "slope", "lambda"},
                   {"f(lambda_i-1)", "f(lambda_i)", "slope", "lambda"}}}});

    t.push_back({"9", "Secant in x, fixed and traditional starts", Layout::Solver, Method::SecantX,
                 StartStrategy::traditional(), {"f(prev)", "f", "slope", "x", "lambda"},
                 {"f(x_i-1)", "f(x_i)", "slope", "x", "lambda"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"Prior", {"", "", "", "6.445695939", "0.024069128765101"}},
                    {"Start", {"", "", "", "10.34052343", "0.009352225155363"}},
                    {"Iteration 1", {"-3.554956084", "0.495092014", "1.039853012",
                                     "9.864406125318800", "0.010276804896656"}},
                    {"Iteration 2", {"0.495092014", "0.001422639", "1.03686501",
                                     "9.863034066961850", "0.010279664332547"}},
                    {"Iteration 3", {"0.001422639", "-0.000000516", "1.037241104",
                                     "9.863034564456330", "0.010279663295528"}},
                    {"Iteration 4", {"-0.000000516", "0.000000000", "1.0372422",
                                     "9.863034564455800", "0.010279663295529"}},
                    {"Control step", {"0.000000000", "0.000000000", "1.037162162",
                                      "9.863034564455800", "0.010279663295529"}}},
                   {4}, {}},
                  {"Re=3e4, rr=9e-3", 3e4, 9e-3,
                   {{"Prior", {"", "", "", "6.445695939", "0.024069128765101"}},
                    {"Start", {"", "", "", "5.227918429", "0.036588313752304"}},
                    {"Iteration 1", {"1.391712394", "0.143632267", "1.024883541",
                                     "5.087773465040530", "0.038631757665255"}},
                    {"Iteration 2", {"0.143632267", "-0.000068814", "1.025374564",
                                     "5.087840576494990", "0.038630738523123"}},
                    {"Iteration 3", {"-0.000068814", "0.000000003", "1.025426553",
                                     "5.087840573092420", "0.038630738574792"}},
                    {"Control step", {"0.000000003", "0.000000000", "1.025426591",
                                      "5.087840573092420", "0.038630738574792"}}},
                   {3}, {}}}});

    TableFixture w{"10", "Lambert W by Newton, Halley and Schroder from z0=15", Layout::Lambert,
                   Method::NewtonX, StartStrategy::traditional(), {"newton", "halley", "schroder"},
                   {"Newton", "Halley", "Schroder"}, {}};
    w.cases.push_back(
        {"Re=5e6, y=2293411.45", 5e6, 0.0,
         {{"y", {"2293411.45", "2293411.45", "2293411.45"}},
          {"Iteration 0", {"15", "15", "15"}},
          {"Iteration 1", {"14.10634749", "13.29860556", "13.68208338"}},
          {"Iteration 2", {"13.28604947", "12.2757343", "12.62556802"}},
          {"Iteration 3", {"12.62863905", "12.14855784", "12.17738057"}},
          {"Iteration 4", {"12.25343232", "12.14835704", "12.14836628"}},
          {"Iteration 5", {"12.15407754", "12.14835704", "12.14835704"}},
          {"Iteration 6", {"12.14837461", "", "12.14835704"}},
          {"Iteration 7", {"12.14835704", "", ""}},
          {"Iteration 8", {"12.14835704", "", ""}}},
         {7, 4, 5}, {}});
    w.cases.push_back(
        {"Re=3e4, y=13760.47", 3e4, 0.0,
         {{"y", {"13760.47", "13760.47", "13760.47"}},
          {"Iteration 0", {"15", "15", "15"}},
          {"Iteration 1", {"14.06276308", "13.1333396", "13.59610616"}},
          {"Iteration 2", {"13.12986539", "11.29171838", "12.20340124"}},
          {"Iteration 3", {"12.20257063", "9.520829163", "10.83006437"}},
          {"Iteration 4", {"11.28354302", "8.068323472", "9.505729616"}},
          {"Iteration 5", {"10.37904335", "7.530266826", "8.341483562"}},
          {"Iteration 6", {"9.504505014", "7.512930233", "7.637280252"}},
          {"Iteration 7", {"8.697314341", "7.512929679", "7.513654122"}},
          {"Iteration 8", {"8.037456295", "7.512929679", "7.512929679"}},
          {"Iteration 9", {"7.640105762", "", "7.512929679"}},
          {"Iteration 10", {"7.52154464", "", ""}},
          {"Iteration 11", {"7.512971011", "", ""}},
          {"Iteration 12", {"7.51292968", "", ""}},
          {"Iteration 13", {"7.512929679", "", ""}},
          {"Iteration 14", {"7.512929679", "", ""}}},
         {13, 7, 8}, {}});
    t.push_back(std::move(w));

    t.push_back({"3pt", "Three-point method, one outer iteration from x0=7.273124147",
                 Layout::ThreePoint, Method::ThreePointX, StartStrategy::fixed_three_point(),
                 {"value"}, {"value"},
                 {{"Re=5e6, rr=2.5e-5", 5e6, 2.5e-5,
                   {{"x0", {"7.273124147"}},
                    {"f(x0)", {"-2.692152546"}},
                    {"f'(x0)", {"1.041894438"}},
                    {"y0", {"9.857025593360860"}},
                    {"f(y0)", {"-0.006232787"}},
                    {"z0", {"9.863035589"}},
                    {"f(z0)", {"-0.006232787"}},
                    {"x1", {"9.863034564"}},
                    {"lambda1", {"0.010279663295529"}}},
                   {1},
                   {{"f(z0)", "value", "misprint: repeats f(y0); f(z0) is of order 1e-6"}}}},
                 9});
    return t;
  }();
  return all;
}

const TableFixture* find_fixture(std::string_view id) {
  for (const auto& f : fixtures())
    if (f.id == id) return &f;
  return nullptr;
}

// A regenerated cell. `noise` bounds the rounding error of the value when
// it is ill-conditioned (a secant slope built from nearly equal residuals).
struct Actual {
  double value = kNaN;
  double noise = 0.0;
  Actual(double v = kNaN, double n = 0.0) : value(v), noise(n) {}
};

using Values = std::map<std::string, std::vector<Actual>>;

// Rounding error of a secant slope: each residual is a sum of terms of size
// about m and carries a few ulp of m, which the difference of residuals
// then divides by.
double slope_noise(double slope, double f_prev, double f_cur, double m) {
  const double df = std::abs(f_prev - f_cur);
  const double bound = 8.0 * std::numeric_limits<double>::epsilon() * m;
  if (df <= bound) return std::numeric_limits<double>::infinity();
  return std::abs(slope) * bound / (df - bound);
}

// Per-row values keyed by column key for a solver trace.
Values solver_rows(const std::vector<std::string>& keys, const IterationTrace<double>& tr) {
  const bool x_space = tr.variable == Space::X;
  auto row = [&](std::optional<double> f, const std::vector<double>* aux, double it,
                 double at) {
    std::vector<Actual> v;
    for (const auto& key : keys) {
      Actual val;
      if (key == "f" && f) {
        val = *f;
      } else if (key == (x_space ? "x" : "lambda")) {
        val = it;
      } else if (key == "lambda") {
        val = 1.0 / (it * it);
      } else if (aux) {
        for (std::size_t k = 0; k < tr.aux_names.size(); ++k)
          if (tr.aux_names[k] == key && k < aux->size()) val = (*aux)[k];
        if (key == "slope" && f && aux->size() >= 2) {
          const double m = x_space ? std::abs(at) : 1.0 / std::sqrt(std::abs(at));
          val.noise = slope_noise((*aux)[1], (*aux)[0], *f, m);
        }
      }
      v.push_back(val);
    }
    return v;
  };
  Values out;
  if (tr.prior) out["Prior"] = row(std::nullopt, nullptr, *tr.prior, *tr.prior);
  out["Start"] = row(std::nullopt, nullptr, tr.iterates.front(), tr.iterates.front());
  for (std::size_t i = 1; i < tr.iterates.size(); ++i)
    out[fmt::format("Iteration {}", i)] =
        row(tr.residuals[i - 1], &tr.aux[i - 1], tr.iterates[i], tr.iterates[i - 1]);
  if (tr.control)
    out["Control step"] =
        row(tr.control->residual, &tr.control->aux, tr.control->iterate, tr.iterates.back());
  return out;
}

void compare(CaseReport& rep, const CaseFixture& c, const std::vector<std::string>& columns,
             const Values& actual) {
  rep.heading = c.heading;
  rep.columns = columns;
  for (const auto& [label, printed] : c.rows) {
    RowCheck rc{label, {}};
    auto it = actual.find(label);
    for (std::size_t k = 0; k < printed.size(); ++k) {
      CellCheck cell;
      cell.column = columns[k];
      cell.expected = printed[k];
      const Actual a = it != actual.end() && k < it->second.size() ? it->second[k] : Actual{};
      cell.actual = a.value;
      if (!printed[k].empty()) {
        cell.tolerance = printed_tolerance(printed[k]);
        const double diff = std::abs(cell.actual - parse_printed(printed[k]));
        if (diff > cell.tolerance && a.noise > cell.tolerance) {
          cell.tolerance = a.noise;
          cell.rounding_limited = true;
        }
        cell.ok = diff <= cell.tolerance;
      } else {
        cell.ok = true;
      }
      for (const auto& e : c.errata)
        if (e.row == label && e.column == cell.column) {
          cell.erratum = e.note;
          cell.ok = true;
        }
      rc.cells.push_back(std::move(cell));
    }
    rep.rows.push_back(std::move(rc));
  }
}

CaseReport replay_solver_case(const TableFixture& t, const CaseFixture& c) {
  const FlowConditions<double> fc(c.re, c.rr);
  SolverConfig<double> cfg;
  cfg.method = t.method;
  cfg.start = t.start;
  cfg.tolerance = 0.0;
  cfg.stop_decimals = t.printed_decimals;
  cfg.verify = true;
  const IterationTrace<double> tr = solve(fc, cfg);
  const auto& keys = c.keys.empty() ? t.keys : c.keys;
  CaseReport rep;
  compare(rep, c, c.columns.empty() ? t.columns : c.columns, solver_rows(keys, tr));
  rep.counts.push_back({"iterations", c.iterations.at(0), tr.converged ? tr.iterations : -1});
  return rep;
}

// W iterates are printed to 10 significant digits.
CaseReport replay_lambert_case(const TableFixture& t, const CaseFixture& c) {
  const double y = lambert_argument(c.re);
  Values actual;
  CaseReport rep;
  std::vector<std::vector<double>> cols;
  for (std::size_t k = 0; k < t.keys.size(); ++k) {
    WConfig<double> cfg;
    cfg.method = parse_w_method(t.keys[k]);
    cfg.stop_digits = 10;
    cfg.verify = true;
    const WTrace<double> w = lambert_w(y, cfg);
    std::vector<double> col = w.iterates;
    if (w.control) col.push_back(*w.control);
    cols.push_back(col);
    rep.counts.push_back({fmt::format("{} iterations", t.columns[k]), c.iterations.at(k),
                          w.converged ? w.iterations : -1});
  }
  actual["y"] = std::vector<Actual>(t.keys.size(), Actual{y});
  std::size_t longest = 0;
  for (const auto& col : cols) longest = std::max(longest, col.size());
  for (std::size_t i = 0; i < longest; ++i) {
    std::vector<Actual> row;
    for (const auto& col : cols) row.emplace_back(i < col.size() ? col[i] : kNaN);
    actual[fmt::format("Iteration {}", i)] = row;
  }
  auto counts = std::move(rep.counts);
  compare(rep, c, t.columns, actual);
  rep.counts = std::move(counts);
  return rep;
}

CaseReport replay_three_point_case(const TableFixture& t, const CaseFixture& c) {
  const FlowConditions<double> fc(c.re, c.rr);
  SolverConfig<double> cfg;
  cfg.method = Method::ThreePointX;
  cfg.start = t.start;
  cfg.tolerance = 0.0;
  cfg.stop_decimals = t.printed_decimals;
  cfg.verify = true;
  const IterationTrace<double> tr = solve(fc, cfg);
  Values actual;
  if (!tr.aux.empty()) {
    const auto& a = tr.aux.front();
    actual["x0"] = {tr.iterates[0]};
    actual["f(x0)"] = {tr.residuals[0]};
    actual["f'(x0)"] = {a[0]};
    actual["y0"] = {a[1]};
    actual["f(y0)"] = {a[2]};
    actual["z0"] = {a[3]};
    actual["f(z0)"] = {a[4]};
    actual["x1"] = {tr.iterates[1]};
    actual["lambda1"] = {1.0 / (tr.iterates[1] * tr.iterates[1])};
  }
  CaseReport rep;
  compare(rep, c, t.columns, actual);
  rep.counts.push_back({"outer iterations", c.iterations.at(0), tr.converged ? tr.iterations : -1});
  return rep;
}

}  // namespace

double parse_printed(std::string_view printed) {
  return std::stod(std::string(printed));
}

double printed_tolerance(std::string_view printed) {
  const auto dot = printed.find('.');
  const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
  return std::max(0.5 * std::pow(10.0, -decimals), 1e-9);
}

bool TableReport::passed() const { return failures().empty(); }

int TableReport::cells_checked() const {
  int n = 0;
  for (const auto& c : cases)
    for (const auto& r : c.rows)
      for (const auto& cell : r.cells)
        if (!cell.expected.empty()) ++n;
  return n;
}

int TableReport::errata() const {
  int n = 0;
  for (const auto& c : cases)
    for (const auto& r : c.rows)
      for (const auto& cell : r.cells)
        if (!cell.erratum.empty()) ++n;
  return n;
}

std::vector<std::string> TableReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : cases) {
    for (const auto& r : c.rows)
      for (const auto& cell : r.cells)
        if (!cell.ok)
          out.push_back(fmt::format("{} / {} / {}: expected {}, got {:.15g} (tol {:g})", c.heading,
                                    r.label, cell.column, cell.expected, cell.actual,
                                    cell.tolerance));
    for (const auto& k : c.counts)
      if (!k.ok())
        out.push_back(
            fmt::format("{} / {}: expected {}, got {}", c.heading, k.label, k.expected, k.actual));
  }
  return out;
}

std::vector<std::string> table_ids() {
  std::vector<std::string> ids;
  for (const auto& f : fixtures()) ids.push_back(f.id);
  return ids;
}

bool has_table(std::string_view id) { return find_fixture(id) != nullptr; }

TableReport replay_table(std::string_view id) {
  const TableFixture* t = find_fixture(id);
  if (!t) throw UsageError(fmt::format("unknown table '{}'", id));
  TableReport rep{t->id, t->title, {}};
  for (const auto& c : t->cases) {
    switch (t->layout) {
      case Layout::Solver: rep.cases.push_back(replay_solver_case(*t, c)); break;
      case Layout::Lambert: rep.cases.push_back(replay_lambert_case(*t, c)); break;
      case Layout::ThreePoint: rep.cases.push_back(replay_three_point_case(*t, c)); break;
    }
  }
  return rep;
}

std::string format_report(const TableReport& r, bool show_all) {
  std::string out = fmt::format("Table {}: {}\n", r.id, r.title);
  for (const auto& c : r.cases) {
    out += fmt::format("\n  {}\n", c.heading);
    for (const auto& row : c.rows) {
      for (const auto& cell : row.cells) {
        if (cell.expected.empty()) continue;
        if (!show_all && cell.ok && cell.erratum.empty() && !cell.rounding_limited) continue;
        const char* mark = !cell.ok                 ? "MISMATCH"
                           : !cell.erratum.empty()   ? "erratum"
                           : cell.rounding_limited ? "ok (rounding-limited)"
                                                   : "ok";
        out += fmt::format("    {:<14} {:<14} expected {:>20}  got {:>22.15g}  {}\n", row.label,
                           cell.column, cell.expected, cell.actual, mark);
        if (!cell.erratum.empty()) out += fmt::format("      note: {}\n", cell.erratum);
      }
    }
    for (const auto& k : c.counts)
      out += fmt::format("    {:<29} expected {:>20}  got {:>22}  {}\n", k.label, k.expected,
                         k.actual, k.ok() ? "ok" : "MISMATCH");
  }
  out += fmt::format("\n  {} cells, {} errata, {}\n", r.cells_checked(), r.errata(),
                     r.passed() ? "all match" : fmt::format("{} mismatches", r.failures().size()));
  return out;
}

}  // namespace colebrook
