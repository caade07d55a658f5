#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "../../tools/cli.hpp"
#include "hfock/measure.hpp"

using namespace hfock;
namespace fs = std::filesystem;

namespace {

const fs::path kData = HFOCK_TEST_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hfock");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hfock_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Value at (0, 0) in a field CSV.
double origin_value(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    double x, y, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &v) == 3 && x == 0.0 && y == 0.0) return v;
  }
  return NAN;
}

std::string trace_value(const fs::path& txt, const std::string& key) {
  std::ifstream in(txt);
  std::string k, v;
  while (in >> k >> v) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parsers") {
  CHECK(cli::parse_trunc("10,20,40") == std::vector<int>{10, 20, 40});
  CHECK(cli::parse_trunc("5") == std::vector<int>{5});
  CHECK_THROWS(cli::parse_trunc("10,x"));
  CHECK(cli::parse_p("inf") == HUGE_VAL);
  CHECK(cli::parse_p("3") == 3.0);
  CHECK_THROWS(cli::parse_p("two"));
  cli::Overrides low;
  low.p = "0.5";
  CHECK_THROWS_AS(cli::resolve(low, {}), InvalidArgument);
  CHECK(cli::parse_convention("paper") == Convention::PaperSum);
  CHECK(cli::parse_convention("basis") == Convention::BasisSum);
  CHECK_THROWS(cli::parse_convention("other"));
  CHECK(cli::parse_scheme("gl") == Scheme::GaussLegendre);
  CHECK(cli::parse_scheme("midpoint") == Scheme::Midpoint);
}

TEST_CASE("config precedence: flags over file over defaults") {
  cli::Overrides file;
  file.alpha = 2.0;
  file.r = 0.5;
  file.convention = "paper";
  cli::Overrides flags;
  flags.alpha = 3.0;
  const auto cfg = cli::resolve(flags, file);
  CHECK(cfg.alpha == 3.0);
  CHECK(cfg.r == 0.5);
  CHECK(cfg.convention == Convention::PaperSum);
  CHECK(cfg.p == 2.0);
  const auto q = cfg.quadrature(1.0);
  CHECK(q.step == doctest::Approx(0.05 / std::sqrt(3.0)));

  const fs::path dir = scratch("config");
  std::ofstream(dir / "c.json") << R"({"alpha": 0.5, "trunc": [4, 8], "quad_step": 0.2})";
  const auto loaded = cli::load_config_file(dir / "c.json");
  CHECK(loaded.alpha == 0.5);
  const auto merged = cli::resolve({}, loaded);
  CHECK(merged.trunc == std::vector<int>{4, 8});
  CHECK(merged.quadrature(0.0).step == 0.2);
}

TEST_CASE("berezin command") {
  const fs::path dir = scratch("berezin");
  auto r = run_cli({"berezin", (kData / "delta0.json").string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "berezin.csv").rfind("x,y,value\n", 0) == 0);
  CHECK(origin_value(dir / "berezin.csv") == doctest::Approx(1.0));
  r = run_cli({"berezin", (kData / "delta0.json").string(), "--convention", "paper", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(origin_value(dir / "berezin.csv") == doctest::Approx(2.0));
}

TEST_CASE("parse errors name the field") {
  const fs::path dir = scratch("missing");
  const auto r = run_cli({"berezin", (kData / "missing_w.json").string(), "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("atoms[0].w") != std::string::npos);
  CHECK(run_cli({"berezin", (kData / "no_such_file.json").string(), "--out", dir.string()}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"berezin", (kData / "delta0.json").string(), "--alpha", "-1"}).code == 2);
}

TEST_CASE("operator command") {
  const fs::path dir = scratch("operator");
  auto r = run_cli({"operator", (kData / "delta0.json").string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "spectrum.csv").rfind("index,eigenvalue\n0,1.00000000000e+00\n", 0) == 0);
  CHECK(trace_value(dir / "trace.txt", "matrix_trace") == "1.00000000000e+00");

  r = run_cli({"operator", (kData / "atom_1_0.json").string(), "--trunc", "30", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(std::stod(trace_value(dir / "trace.txt", "matrix_trace")) == doctest::Approx(2.0 - std::exp(-1.0)).epsilon(1e-10));
  CHECK(trace_value(dir / "trace.txt", "total_mass") == "1.00000000000e+00");
}

TEST_CASE("report command exit codes") {
  const fs::path dir = scratch("report");
  const std::string d0 = (kData / "delta0.json").string();
  CHECK(run_cli({"report", "compact", d0, "--out", dir.string()}).code == 0);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "arm_a.csv"));
  CHECK(run_cli({"report", "carleson", d0, "--r", "0", "--out", dir.string()}).code == 2);
  CHECK(run_cli({"report", "bounded", d0, "--trunc", "10", "--out", dir.string()}).code == 4);
  CHECK(run_cli({"report", "nonsense", d0, "--out", dir.string()}).code == 2);
  CHECK(run_cli({"report", "symbol-schatten", d0, "--out", dir.string()}).code == 2);
}

TEST_CASE("lattice command") {
  const fs::path dir = scratch("lattice");
  auto r = run_cli({"lattice", "--r", "1", "--extent", "6", "--out", dir.string()});
  REQUIRE(r.code == 0);
  std::ifstream cov(dir / "covering.txt");
  std::string key, factor;
  int count = 0;
  cov >> key >> factor >> key >> count;
  CHECK(key == "covering_multiplicity");
  CHECK(count == covering_multiplicity({1.0, 6}, 2.0, GridSpec::spanning(-0.5, 0.5, 101)));
  CHECK(count >= 12);
  CHECK(count <= 14);
  const std::string pts = slurp(dir / "lattice.csv");
  CHECK(pts.rfind("n,m,x,y\n", 0) == 0);
  r = run_cli({"lattice", (kData / "delta0.json").string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "lattice.csv").rfind("n,m,x,y,ball_mass\n", 0) == 0);
}

TEST_CASE("outputs are byte identical across runs") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const fs::path& d : {a, b}) {
    REQUIRE(run_cli({"operator", (kData / "atom_1_0.json").string(), "--out", d.string()}).code == 0);
  }
  for (const char* f : {"matrix.csv", "spectrum.csv", "trace.txt"}) CHECK(slurp(a / f) == slurp(b / f));
}

}  // TEST_SUITE
