#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oscinfo/metrics.hpp>
#include <oscinfo/run.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace oscinfo;

namespace {

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.comments.push_back(line);
      continue;
    }
    if (csv.columns.empty()) {
      csv.columns = split(line, ',');
      continue;
    }
    std::vector<double> row;
    for (const std::string& cell : split(line, ',')) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

// value of a trailing "# <key>,<value>" comment
double comment_value(const Csv& csv, const std::string& key) {
  const std::string prefix = "# " + key + ",";
  for (const std::string& c : csv.comments)
    if (c.rfind(prefix, 0) == 0) return std::stod(c.substr(prefix.size()));
  throw std::runtime_error("missing comment " + key);
}

bool has_comment_containing(const Csv& csv, const std::string& needle) {
  for (const std::string& c : csv.comments)
    if (c.find(needle) != std::string::npos) return true;
  return false;
}

const std::vector<double>& row_at(const Csv& csv, double t) {
  for (const auto& row : csv.rows)
    if (std::abs(row.at(0) - t) < 1e-12) return row;
  throw std::runtime_error("no row at requested time");
}

int column_index(const Csv& csv, const std::string& name) {
  for (std::size_t i = 0; i < csv.columns.size(); ++i)
    if (csv.columns[i] == name) return static_cast<int>(i);
  throw std::runtime_error("no column " + name);
}

}  // namespace

TEST_CASE("grid spec parsing and construction") {
  const GridSpec g = parse_grid_spec("0:2:201");
  CHECK(g.start == 0.0);
  CHECK(g.stop == 2.0);
  CHECK(g.count == 201);
  CHECK(format_grid_spec(g) == "0:2:201");

  const Eigen::VectorXd v = make_grid(g);
  CHECK(v.size() == 201);
  CHECK(v(0) == 0.0);
  CHECK(v(200) == 2.0);
  CHECK(v(50) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(parse_grid_spec("0:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("a:2:10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("0:b:10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("0:2:1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid_spec("0:2:-5"), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(GridSpec{0.0, 1.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(GridSpec{5.0, 1.0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(GridSpec{1.0, 1.0, 10}), std::invalid_argument);
}

TEST_CASE("sweep variable names") {
  CHECK(parse_sweep_variable("g") == SweepVariable::coupling);
  CHECK(parse_sweep_variable("coupling") == SweepVariable::coupling);
  CHECK(parse_sweep_variable("omega_c") == SweepVariable::field);
  CHECK(parse_sweep_variable("field") == SweepVariable::field);
  CHECK(parse_sweep_variable("delta") == SweepVariable::detuning);
  CHECK(parse_sweep_variable("detuning") == SweepVariable::detuning);
  CHECK_THROWS_AS(parse_sweep_variable("x"), std::invalid_argument);
  CHECK(std::string(sweep_variable_name(SweepVariable::field)) == "omega_c");
}

TEST_CASE("depth sweep over the coupling") {
  const DepthSweepConfig cfg;  // omega1 = 1, omega2 = 1.2, omega_c = 1.5, 0:2:201
  const std::string text = depth_sweep_csv(cfg);
  CHECK(text == depth_sweep_csv(cfg));  // deterministic

  const Csv csv = parse_csv(text);
  REQUIRE(csv.columns ==
          std::vector<std::string>{"g", "depth", "weak_limit_diag", "field_limit_diag"});
  REQUIRE(csv.rows.size() == 201);

  // frozen anchors at g = 0 and g = 0.5
  CHECK(csv.rows[0].at(1) == doctest::Approx(0.6210703635985205).epsilon(1e-10));
  CHECK(csv.rows[50].at(1) == doctest::Approx(0.6906906076687735).epsilon(1e-10));
  // with no coupling the full depth collapses onto the weak-coupling diagnostic
  CHECK(csv.rows[0].at(1) == doctest::Approx(csv.rows[0].at(2)).epsilon(1e-12));
  // depth grows with the coupling on the first quarter of the sweep
  for (int i = 1; i <= 50; ++i) CHECK(csv.rows[i].at(1) > csv.rows[i - 1].at(1));
  // constant field column
  for (int i = 0; i < 201; i += 40)
    CHECK(csv.rows[i].at(3) == doctest::Approx(std::log(1.5)).epsilon(1e-12));
}

TEST_CASE("depth sweep over the field approaches its asymptote") {
  DepthSweepConfig cfg;
  cfg.sweep = SweepVariable::field;
  cfg.g = 0.5;
  cfg.grid = GridSpec{0.0, 10.0, 101};
  const Csv csv = parse_csv(depth_sweep_csv(cfg));
  REQUIRE(csv.columns.at(0) == std::string("omega_c"));
  // field diagnostic is NaN at omega_c = 0 (printed as nan, parsed by stod)
  CHECK(std::isnan(csv.rows[0].at(3)));
  CHECK(std::isfinite(csv.rows[0].at(1)));
  // at omega_c = 10 the depth sits near log(omega_c)
  const auto& last = csv.rows.back();
  CHECK(std::abs(last.at(1) - last.at(3)) / last.at(3) < 5e-2);
}

TEST_CASE("zero-width detuning sweep is flat") {
  DepthSweepConfig cfg;
  cfg.sweep = SweepVariable::detuning;
  cfg.omega2 = 1.0;
  cfg.g = 0.5;
  cfg.omega_c = 1.0;
  cfg.grid = GridSpec{0.0, 1e-18, 2};
  const Csv csv = parse_csv(depth_sweep_csv(cfg));
  REQUIRE(csv.columns.at(0) == std::string("delta"));
  REQUIRE(csv.rows.size() == 2);
  CHECK(std::abs(csv.rows[0].at(1) - csv.rows[1].at(1)) < 1e-12);

  // matches the directly computed degenerate-pair depth
  const CoupledParams p = make_params(1.0, 1.0, 0.5, 1.0);
  const double direct = circuit_depth(steady_state_exponent(p).exponent, 1.0);
  CHECK(csv.rows[0].at(1) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("detuning sweep rejects an inverted bare frequency") {
  DepthSweepConfig cfg;
  cfg.sweep = SweepVariable::detuning;
  cfg.omega2 = 1.0;
  cfg.grid = GridSpec{-2.0, 0.5, 6};
  CHECK_THROWS_WITH_AS(depth_sweep_csv(cfg), doctest::Contains("detuning"),
                       std::invalid_argument);
}

TEST_CASE("quench csv: no-op quench holds every observable constant") {
  QuenchRunConfig cfg;
  cfg.quench = QuenchSpec{1.0, 1.5, 1.0, 1.5, 0.0, 0.0};
  cfg.grid = GridSpec{0.0, 2.0, 201};
  const Csv csv = parse_csv(quench_csv(cfg));
  REQUIRE(csv.columns ==
          std::vector<std::string>{"t", "S_c", "I", "depth", "h1", "h2"});
  REQUIRE(csv.rows.size() == 201);
  for (const auto& row : csv.rows) {
    CHECK(row.at(1) == doctest::Approx(csv.rows[0].at(1)).epsilon(1e-10));
    CHECK(row.at(2) == doctest::Approx(csv.rows[0].at(2)).epsilon(1e-10));
    CHECK(row.at(3) == doctest::Approx(csv.rows[0].at(3)).epsilon(1e-10));
    CHECK(row.at(4) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(row.at(5) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("quench csv: frozen anchors at t = 0.3") {
  QuenchRunConfig cfg;
  cfg.quench.g_f = 0.5;
  cfg.grid = GridSpec{0.0, 0.6, 601};
  const Csv csv = parse_csv(quench_csv(cfg));
  const auto& row = row_at(csv, 0.3);
  CHECK(row.at(1) == doctest::Approx(0.3699307391858607).epsilon(2e-6));
  CHECK(std::abs(row.at(2) - 0.001951180100703266) < 1e-6);
  CHECK(row.at(3) == doctest::Approx(0.8472242816055289).epsilon(2e-6));
}

TEST_CASE("quench csv: default run and its time averages") {
  const QuenchRunConfig cfg;  // (2, 2.01) -> (2, 2.01), g_f = 1, omega_c = 1
  const std::string text = quench_csv(cfg);
  CHECK(text == quench_csv(cfg));

  const Csv csv = parse_csv(text);
  REQUIRE(csv.rows.size() == 2001);
  CHECK(has_comment_containing(csv, "max_residual_h1="));
  CHECK(comment_value(csv, "time_avg_S_c") ==
        doctest::Approx(0.3664664919083029).epsilon(3e-5));
  CHECK(std::abs(comment_value(csv, "time_avg_I") - 0.006735164939905559) < 1e-5);

  // t = 0 row: ground state of the pre-quench (uncoupled) pair
  const auto& first = csv.rows.front();
  CHECK(first.at(4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(first.at(5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(first.at(2) < 1e-7);  // essentially no mutual information before the quench
}

TEST_CASE("quench csv: a stronger field mixes the modes harder") {
  const QuenchRunConfig base;
  QuenchRunConfig strong = base;
  strong.quench.omega_c = 3.0;

  const Csv weak_csv = parse_csv(quench_csv(base));
  const Csv strong_csv = parse_csv(quench_csv(strong));
  const double avg_i_weak = comment_value(weak_csv, "time_avg_I");
  const double avg_i_strong = comment_value(strong_csv, "time_avg_I");
  CHECK(avg_i_strong == doctest::Approx(0.008074923671083306).epsilon(2e-4));
  CHECK(avg_i_strong > avg_i_weak);

  const double avg_sc_weak = comment_value(weak_csv, "time_avg_S_c");
  const double avg_sc_strong = comment_value(strong_csv, "time_avg_S_c");
  CHECK(avg_sc_strong == doctest::Approx(0.252076234075411).epsilon(2e-4));
  CHECK(avg_sc_strong < avg_sc_weak);
}

TEST_CASE("transport csv: defaults") {
  const TransportRunConfig cfg;  // both protocols, omega = 2, beta = 1, 0:10:1001
  const std::string text = transport_csv(cfg);
  CHECK(text == transport_csv(cfg));

  const Csv csv = parse_csv(text);
  REQUIRE(csv.columns.size() == 11);
  CHECK(csv.columns.at(1) == std::string("re_alpha_sudden"));
  CHECK(csv.columns.at(6) == std::string("re_alpha_smooth"));
  REQUIRE(csv.rows.size() == 1001);
  CHECK(has_comment_containing(csv, "vartheta=0.385968416453"));

  const double vartheta = 0.3859684164526524;
  const auto& first = csv.rows.front();
  const int fs = column_index(csv, "F_sudden");
  const int cs = column_index(csv, "C_sudden");
  const int qs = column_index(csv, "Q_sudden");
  const int fm = column_index(csv, "F_smooth");
  const int qm = column_index(csv, "Q_smooth");
  CHECK(first.at(fs) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(first.at(qs) == doctest::Approx(0.0));
  CHECK(first.at(cs) == doctest::Approx(2.0 * vartheta).epsilon(1e-10));
  CHECK(first.at(fm) == doctest::Approx(1.0).epsilon(1e-12));

  double max_q_sudden = 0.0, max_q_smooth = 0.0;
  for (const auto& row : csv.rows) {
    max_q_sudden = std::max(max_q_sudden, row.at(qs));
    max_q_smooth = std::max(max_q_smooth, row.at(qm));
  }
  CHECK(max_q_sudden == doctest::Approx(8.0).epsilon(1e-4));
  CHECK(std::abs(max_q_smooth - 5.5776) < 1e-3);
  CHECK(max_q_smooth < max_q_sudden);
}

TEST_CASE("transport csv: tabulated protocol from a file") {
  const std::string path = "run_test_protocol.txt";
  {
    std::ofstream out(path);
    out << "# toy ramp\n0 0\n0.5 0.2\n1 0.7\n2 1\n";
  }
  TransportRunConfig cfg;
  cfg.selection = ProtocolSelection::tabulated;
  cfg.table_path = path;
  cfg.grid = GridSpec{0.0, 4.0, 401};
  const Csv csv = parse_csv(transport_csv(cfg));
  REQUIRE(csv.columns.size() == 6);
  CHECK(csv.columns.at(1) == std::string("re_alpha_table"));
  CHECK(has_comment_containing(csv, "table=" + path));
  CHECK(csv.rows.front().at(3) == doctest::Approx(1.0).epsilon(1e-12));
  // excitation stays bounded by twice the sudden worst case
  for (const auto& row : csv.rows) CHECK(row.at(5) < 16.0);

  TransportRunConfig missing = cfg;
  missing.table_path.clear();
  CHECK_THROWS_WITH_AS(transport_csv(missing), doctest::Contains("--table"),
                       std::invalid_argument);
}

TEST_CASE("protocol selection names") {
  CHECK(parse_protocol_selection("sudden") == ProtocolSelection::sudden);
  CHECK(parse_protocol_selection("table") == ProtocolSelection::tabulated);
  CHECK(parse_protocol_selection("tabulated") == ProtocolSelection::tabulated);
  CHECK(parse_protocol_selection("both") == ProtocolSelection::both);
  CHECK_THROWS_AS(parse_protocol_selection("jump"), std::invalid_argument);
  CHECK(std::string(protocol_selection_name(ProtocolSelection::smooth)) == "smooth");
}

TEST_CASE("sync sweep csv") {
  const SyncSweepConfig cfg;  // omega1 = 1, g = 0.5, omega_c = 1, -0.8:0.8:161
  const std::string text = sync_sweep_csv(cfg);
  CHECK(text == sync_sweep_csv(cfg));

  const Csv csv = parse_csv(text);
  REQUIRE(csv.columns == std::vector<std::string>{"detuning", "S_c", "I"});
  REQUIRE(csv.rows.size() == 161);
  CHECK(csv.rows.front().at(0) == doctest::Approx(-0.8));
  CHECK(csv.rows.back().at(0) == doctest::Approx(0.8));
  for (const auto& row : csv.rows) {
    CHECK(row.at(1) > 0.0);
    CHECK(row.at(2) >= 0.0);
  }
  // coupling keeps the degenerate point correlated
  CHECK(row_at(csv, 0.0).at(2) > 0.01);

  SyncSweepConfig bad = cfg;
  bad.grid = GridSpec{-1.5, 0.0, 4};
  CHECK_THROWS_WITH_AS(sync_sweep_csv(bad), doctest::Contains("detuning"),
                       std::invalid_argument);
}
