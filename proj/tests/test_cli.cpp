#include <doctest.h>

#include <unistd.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "rgg/version.hpp"

using namespace rgg::cli;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("rgg_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  fs::path operator/(const std::string& name) const { return dir / name; }
};

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rgg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// CSV body without the comment preamble.
std::vector<std::string> csv_lines(const fs::path& p) {
  std::istringstream is(slurp(p));
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);)
    if (!line.starts_with("#")) lines.push_back(line);
  return lines;
}

nlohmann::json load_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

void write_file(const fs::path& p, const std::string& body) { std::ofstream(p) << body; }

}  // namespace

TEST_CASE("scatter of vacuum is a single row") {
  Scratch s;
  const auto r = invoke({"scatter", "--set", "scatter.M=5", "-o", s.dir.string()});
  REQUIRE(r.code == kOk);
  const auto lines = csv_lines(s / "scatter.csv");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "n,exact,thermal");
  CHECK(lines[1] == "0,1,1");
}

TEST_CASE("outputs embed the resolved configuration and version") {
  Scratch s;
  REQUIRE(invoke({"scatter", "--set", "scatter.M=3", "--set", "input.N=2", "-o", s.dir.string()}).code == kOk);
  const std::string csv = slurp(s / "scatter.csv");
  CHECK(csv.find(std::string("# engine: ") + rgg::kEngineName + " " + rgg::kEngineVersion) != std::string::npos);
  // defaults are expanded, not only the keys that were set
  CHECK(csv.find("# config: gn.theta_points=64") != std::string::npos);
  CHECK(csv.find("# config: scatter.M=3") != std::string::npos);

  REQUIRE(invoke({"gn", "--set", "scatter.M=3", "--set", "input.N=2", "-o", s.dir.string()}).code == kOk);
  const auto j = load_json(s / "gn.json");
  CHECK(j["engine"]["version"] == rgg::kEngineVersion);
  CHECK(j["config"]["mc"]["frames"] == "1000000");
  CHECK(j["config"]["input"]["N"] == "2");
}

TEST_CASE("config file with --set overrides") {
  Scratch s;
  write_file(s / "run.ini", "[input]\nkind = fock\nN = 8\n\n[scatter]\nM = 4\n");
  REQUIRE(invoke({"gn", "-c", (s / "run.ini").string(), "--set", "scatter.M=8", "-o", s.dir.string()}).code == kOk);
  const auto p = load_json(s / "gn.json")["result"]["point"];
  CHECK(p["M"] == 8);
  CHECK(p["g_exact"]["2"].get<double>() == doctest::Approx(14.0 / 9.0).epsilon(1e-12));
  CHECK(p["g_predicted"]["2"].get<double>() == doctest::Approx(14.0 / 9.0).epsilon(1e-14));
  CHECK(std::abs(p["difference"]["2"].get<double>()) < 1e-12);
}

TEST_CASE("config errors exit with 2 and point at the problem") {
  Scratch s;
  write_file(s / "typo.ini", "[input]\nkind = fock\nNN = 3\n");
  auto r = invoke({"scatter", "-c", (s / "typo.ini").string(), "-o", s.dir.string()});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("typo.ini:3") != std::string::npos);
  CHECK(r.err.find("input.NN") != std::string::npos);

  write_file(s / "broken.ini", "[input]\nkind = fock\n[scatter\n");
  r = invoke({"scatter", "-c", (s / "broken.ini").string()});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("broken.ini:3") != std::string::npos);

  r = invoke({"scatter", "--set", "scatter.M=abc", "-o", s.dir.string()});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("scatter.M") != std::string::npos);

  r = invoke({"scatter", "-o", s.dir.string()});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("scatter.M: required") != std::string::npos);

  CHECK(invoke({"scatter", "--set", "input.kind=laser", "--set", "scatter.M=2"}).code == kConfigError);
  CHECK(invoke({"scatter", "--set", "input.kind=coherent", "--set", "input.mean=-1", "--set", "scatter.M=2",
                "-o", s.dir.string()})
            .code == kConfigError);
  CHECK(invoke({"figure", "fig4"}).code == kConfigError);
  CHECK(invoke({}).code == kConfigError);
  CHECK(invoke({"--help"}).code == kOk);

  // the figure without a stated M refuses to guess one
  r = invoke({"figure", "fig2", "-o", s.dir.string()});
  CHECK(r.code == kConfigError);
  CHECK_FALSE(fs::exists(s / "fig2.csv"));
}

TEST_CASE("numeric and I/O failures have their own exit codes") {
  Scratch s;
  // g^(n) of vacuum is undefined
  CHECK(invoke({"gn", "--set", "scatter.M=3", "-o", s.dir.string()}).code == kNumericError);
  write_file(s / "blocker", "");
  CHECK(invoke({"scatter", "--set", "scatter.M=3", "-o", (s / "blocker").string()}).code == kIoError);
}

TEST_CASE("plimit for a single photon gives identical pmfs") {
  Scratch s;
  REQUIRE(invoke({"plimit", "--set", "input.N=1", "--set", "scatter.M=7", "-o", s.dir.string()}).code == kOk);
  const auto lines = csv_lines(s / "plimit.csv");
  REQUIRE(lines.size() == 3);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream is(lines[i]);
    std::string n, a, b, neg;
    std::getline(is, n, ',');
    std::getline(is, a, ',');
    std::getline(is, b, ',');
    std::getline(is, neg, ',');
    CHECK(std::stod(a) == doctest::Approx(std::stod(b)).epsilon(1e-15));
    CHECK(neg == "0");
  }
  CHECK(load_json(s / "plimit.json")["result"]["total_variation"].get<double>() < 1e-15);
}

TEST_CASE("plimit flags negative limit entries instead of clipping") {
  Scratch s;
  REQUIRE(invoke({"plimit", "--set", "input.N=20", "--set", "scatter.M=10", "-o", s.dir.string()}).code == kOk);
  const auto j = load_json(s / "plimit.json")["result"];
  CHECK(j["limit_has_negative"] == true);
  CHECK(j["limit_sums_to_one"] == true);
  CHECK(slurp(s / "plimit.csv").find(",1\n") != std::string::npos);
}

TEST_CASE("figure datasets") {
  Scratch s;
  REQUIRE(invoke({"figure", "fig5b", "-o", s.dir.string()}).code == kOk);
  CHECK(load_json(s / "fig5b.json")["result"]["total_variation"].get<double>() ==
        doctest::Approx(2.8167835711522037e-4).epsilon(1e-9));
  REQUIRE(invoke({"figure", "fig5a", "-o", s.dir.string()}).code == kOk);
  CHECK(load_json(s / "fig5a.json")["result"]["total_variation"].get<double>() ==
        doctest::Approx(2.794005390732441e-3).epsilon(1e-9));

  REQUIRE(invoke({"figure", "fig3c", "-o", s.dir.string()}).code == kOk);
  CHECK(csv_lines(s / "fig3c.csv").size() == 51);
  REQUIRE(invoke({"figure", "fig3b", "--set", "gn.values=1:20", "-o", s.dir.string()}).code == kOk);
  CHECK(csv_lines(s / "fig3b.csv").size() == 1 + 4 * 20);
  REQUIRE(invoke({"figure", "fig3a", "-o", s.dir.string()}).code == kOk);
  CHECK(csv_lines(s / "fig3a.csv")[0] == "n,exact,thermal");
  REQUIRE(invoke({"figure", "fig2", "--set", "scatter.M=50", "-o", s.dir.string()}).code == kOk);
  CHECK(csv_lines(s / "fig2.csv")[0] == "n,exact,thermal,approx");

  CHECK(invoke({"figure", "fig3d", "-o", s.dir.string()}).code == kConfigError);  // r is required
  REQUIRE(invoke({"figure", "fig3d", "--set", "input.r=0.4", "--set", "gn.theta_points=16", "-o", s.dir.string()})
              .code == kOk);
  const auto rows = csv_lines(s / "fig3d.csv");
  REQUIRE(rows.size() == 17);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream is(rows[i]);
    std::string theta, g_in, exact, predicted;
    std::getline(is, theta, ',');
    std::getline(is, g_in, ',');
    std::getline(is, exact, ',');
    std::getline(is, predicted, ',');
    CHECK(std::abs(std::stod(exact) - std::stod(predicted)) < 1e-9);
  }
}

TEST_CASE("gn sweeps") {
  Scratch s;
  REQUIRE(invoke({"gn", "--set", "input.kind=coherent", "--set", "input.mean=1", "--set", "scatter.M=1",
                  "--set", "gn.sweep=M", "--set", "gn.values=1,2,8", "-o", s.dir.string()})
              .code == kOk);
  const auto pts = load_json(s / "gn.json")["result"]["points"];
  REQUIRE(pts.size() == 3);
  CHECK(pts[2]["M"] == 8);
  CHECK(pts[2]["g_exact"]["2"].get<double>() == doctest::Approx(16.0 / 9.0).epsilon(1e-9));
  CHECK(invoke({"gn", "--set", "scatter.M=4", "--set", "gn.sweep=theta", "-o", s.dir.string()}).code ==
        kConfigError);
}

TEST_CASE("mc reruns are byte-identical") {
  Scratch s;
  const std::vector<std::string> args{"mc", "--set", "input.N=1", "--set", "scatter.M=8", "--set", "mc.frames=20000",
                                      "--set", "mc.seed=9"};
  auto a = args;
  a.insert(a.end(), {"-o", (s / "a").string()});
  auto b = args;
  b.insert(b.end(), {"-o", (s / "b").string()});
  REQUIRE(invoke(a).code == kOk);
  REQUIRE(invoke(b).code == kOk);
  CHECK(slurp(s / "a" / "mc_histogram.csv") == slurp(s / "b" / "mc_histogram.csv"));
  CHECK(slurp(s / "a" / "mc_report.json") == slurp(s / "b" / "mc_report.json"));

  // a single photon never bunches
  const auto j = load_json(s / "a" / "mc_report.json")["result"];
  CHECK(j["g_empirical"]["2"].get<double>() == 0.0);
  CHECK(j["g_exact"]["2"].get<double>() == 0.0);
}
