#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgg/rgg.hpp"

namespace rgg::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

json engine_json() { return {{"name", kEngineName}, {"version", kEngineVersion}}; }

json config_json(const Config& cfg) {
  json j = json::object();
  for (const auto& [key, value] : cfg.entries()) {
    const auto dot = key.find('.');
    j[key.substr(0, dot)][key.substr(dot + 1)] = value;
  }
  return j;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

fs::path write_text(const fs::path& dir, const std::string& name, const std::string& body) {
  ensure_dir(dir);
  const fs::path path = dir / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << body;
  f.flush();
  if (!f) throw IoError("write to '" + path.string() + "' failed");
  return path;
}

fs::path write_csv(const fs::path& dir, const std::string& stem, const std::string& command, const Config& cfg,
                   const Table& t) {
  std::ostringstream os;
  os << "# engine: " << kEngineName << " " << kEngineVersion << "\n";
  os << "# command: " << command << "\n";
  for (const auto& [key, value] : cfg.entries()) os << "# config: " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return write_text(dir, stem + ".csv", os.str());
}

fs::path write_json(const fs::path& dir, const std::string& stem, const std::string& command, const Config& cfg,
                    json result) {
  json j;
  j["engine"] = engine_json();
  j["command"] = command;
  j["config"] = config_json(cfg);
  j["result"] = std::move(result);
  return write_text(dir, stem + ".json", j.dump(2) + "\n");
}

SqueezedCoherent squeezed_spec(const Config& cfg) {
  const double r = cfg.real("input.r");
  double alpha = 0.0;
  if (cfg.has_value("input.alpha")) {
    alpha = cfg.real("input.alpha");
  } else {
    // split the requested mean between squeezing and displacement
    const double mean = cfg.real("input.mean");
    const double s2 = std::sinh(r) * std::sinh(r);
    if (s2 > mean) throw ConfigError("field input.mean: smaller than sinh^2(input.r) = " + fmt(s2));
    alpha = std::sqrt(mean - s2);
  }
  return SqueezedCoherent{alpha, cfg.real("input.alpha_phase"), r, cfg.real("input.theta")};
}

InputStateSpec input_spec(const Config& cfg) {
  const std::string& kind = cfg.require("input.kind");
  InputStateSpec spec;
  if (kind == "fock") {
    spec = Fock{cfg.count("input.N")};
  } else if (kind == "coherent") {
    spec = Coherent{cfg.real("input.mean")};
  } else if (kind == "thermal") {
    spec = Thermal{cfg.real("input.mean")};
  } else if (kind == "squeezed") {
    spec = squeezed_spec(cfg);
  } else if (kind == "custom") {
    spec = Custom{Pmf(cfg.real_list("input.pmf"))};
  } else {
    throw ConfigError("field input.kind: expected fock, coherent, thermal, squeezed or custom, got '" + kind + "'");
  }
  validate(spec);
  return spec;
}

std::uint64_t positive(const Config& cfg, const std::string& key) {
  const std::uint64_t v = cfg.count(key);
  if (v == 0) throw ConfigError("field " + key + ": must be >= 1");
  return v;
}

std::uint32_t stages_of(const Config& cfg) {
  const std::uint64_t k = positive(cfg, "scatter.stages");
  if (k > 64) throw ConfigError("field scatter.stages: at most 64 stages");
  return static_cast<std::uint32_t>(k);
}

int order_of(const Config& cfg) {
  const std::uint64_t order = cfg.count("gn.order");
  if (order < 2 || order > 12) throw ConfigError("field gn.order: expected 2..12");
  return static_cast<int>(order);
}

json by_order(const std::vector<double>& g) {
  json j = json::object();
  for (std::size_t i = 0; i < g.size(); ++i) j[std::to_string(i + 2)] = g[i];
  return j;
}

struct GnPoint {
  CorrelationReport in, out;
  std::vector<double> predicted;  // n = 2, 3 (finite-M laws)
  std::vector<double> limit;      // n = 2..order, many-diffuser limit
};

GnPoint gn_point(const Pmf& in, std::uint64_t M, std::uint32_t stages, int order) {
  GnPoint p;
  p.in = correlation_report(in, order);
  p.out = correlation_report(stages == 1 ? scatter_pmf(in, M) : cascade_pmf(in, M, stages), order);
  double g2 = p.in.gn(2);
  double g3 = order >= 3 ? p.in.gn(3) : 0.0;
  for (std::uint32_t s = 0; s < stages; ++s) {
    g2 = g2_out_predicted(g2, M);
    g3 = g3_out_predicted(g3, M);
  }
  p.predicted.push_back(g2);
  if (order >= 3) p.predicted.push_back(g3);
  for (int n = 2; n <= order; ++n) p.limit.push_back(gn_limit(p.in.gn(n), n, stages));
  return p;
}

json gn_point_json(const GnPoint& p, std::uint64_t M, std::uint32_t stages, const std::string& input) {
  json j;
  j["input"] = input;
  j["M"] = M;
  j["stages"] = stages;
  j["mean_in"] = p.in.mean;
  j["mean_out"] = p.out.mean;
  j["g_in"] = by_order(p.in.g);
  j["g_exact"] = by_order(p.out.g);
  j["g_predicted"] = by_order(p.predicted);
  j["g_limit"] = by_order(p.limit);
  std::vector<double> diff;
  for (std::size_t i = 0; i < p.predicted.size(); ++i) diff.push_back(p.out.g[i] - p.predicted[i]);
  j["difference"] = by_order(diff);
  return j;
}

std::vector<double> theta_grid(const Config& cfg) {
  const std::uint64_t points = positive(cfg, "gn.theta_points");
  std::vector<double> out;
  for (std::uint64_t i = 0; i < points; ++i)
    out.push_back(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(points));
  return out;
}

SqueezedCoherent require_squeezed(const Config& cfg, const char* what) {
  if (cfg.require("input.kind") != "squeezed")
    throw ConfigError(std::string(what) + " needs input.kind = squeezed");
  return squeezed_spec(cfg);
}

std::uint64_t require_fock(const Config& cfg, const char* what) {
  if (cfg.require("input.kind") != "fock") throw ConfigError(std::string(what) + " needs input.kind = fock");
  return cfg.count("input.N");
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig5a", "fig5b"};
  return names;
}

void apply_figure_recipe(const std::string& figure, Config& cfg) {
  if (figure == "fig2") {
    // M is a free parameter of this figure and must be given explicitly.
    cfg.set("input.kind", "fock");
    cfg.set("input.N", "200");
    cfg.set("scatter.approx", "true");
  } else if (figure == "fig3a") {
    cfg.set("input.kind", "coherent");
    cfg.set("input.mean", "8");
    cfg.set("scatter.M", "8");
  } else if (figure == "fig3b") {
    cfg.set("gn.sweep", "M");
    cfg.set("gn.values", "1:200");
  } else if (figure == "fig3c") {
    cfg.set("input.kind", "fock");
    cfg.set("gn.sweep", "N");
    cfg.set("gn.values", "1:50");
    cfg.set("scatter.M", "200");
  } else if (figure == "fig3d") {
    // r and the phase of alpha are free parameters; r must be given.
    cfg.set("input.kind", "squeezed");
    cfg.set("input.mean", "8");
    cfg.set("gn.sweep", "theta");
    cfg.set("scatter.M", "200");
  } else if (figure == "fig5a" || figure == "fig5b") {
    cfg.set("input.kind", "fock");
    cfg.set("input.N", "60");
    cfg.set("scatter.M", figure == "fig5a" ? "60" : "200");
  } else {
    throw ConfigError("unknown figure '" + figure + "'");
  }
}

std::vector<fs::path> cmd_scatter(const Config& cfg, const fs::path& out_dir, const std::string& stem) {
  const InputStateSpec spec = input_spec(cfg);
  const std::uint64_t M = positive(cfg, "scatter.M");
  const std::uint32_t stages = stages_of(cfg);
  const bool approx = cfg.flag("scatter.approx");
  if (approx && (!std::holds_alternative<Fock>(spec) || stages != 1))
    throw ConfigError("field scatter.approx: only available for fock input with scatter.stages = 1");

  const Pmf in = input_pmf(spec);
  const Pmf out = stages == 1 ? scatter_pmf(in, M) : cascade_pmf(in, M, stages);
  const double mean = pmf_mean(out);
  const double q = mean / (1.0 + mean);

  Table t;
  t.columns = {"n", "exact", "thermal"};
  Pmf approx_pmf;
  if (approx) {
    t.columns.push_back("approx");
    const std::uint64_t N = std::get<Fock>(spec).N;
    approx_pmf = approx_scatter_pmf(N, M, N);
  }
  for (std::size_t n = 0; n < out.size(); ++n) {
    std::vector<std::string> row{std::to_string(n), fmt(out[n]), fmt((1.0 - q) * std::pow(q, static_cast<double>(n)))};
    if (approx) row.push_back(fmt(approx_pmf[n]));
    t.rows.push_back(std::move(row));
  }
  return {write_csv(out_dir, stem, "scatter", cfg, t)};
}

std::vector<fs::path> cmd_gn(const Config& cfg, const fs::path& out_dir, const std::string& stem) {
  const std::uint64_t M = positive(cfg, "scatter.M");
  const std::uint32_t stages = stages_of(cfg);
  const int order = order_of(cfg);
  const std::string& sweep = cfg.require("gn.sweep");

  json result;
  result["sweep"] = sweep;
  if (sweep == "none") {
    const InputStateSpec spec = input_spec(cfg);
    result["point"] = gn_point_json(gn_point(input_pmf(spec), M, stages, order), M, stages, describe(spec));
  } else if (sweep == "N") {
    require_fock(cfg, "gn.sweep = N");
    json points = json::array();
    for (std::uint64_t N : cfg.count_list("gn.values")) {
      if (N == 0) throw ConfigError("field gn.values: N sweep needs N >= 1");
      json p = gn_point_json(gn_point(fock_pmf(N), M, stages, order), M, stages, describe(Fock{N}));
      p["N"] = N;
      points.push_back(std::move(p));
    }
    result["points"] = std::move(points);
  } else if (sweep == "M") {
    const InputStateSpec spec = input_spec(cfg);
    const Pmf in = input_pmf(spec);
    json points = json::array();
    for (std::uint64_t m : cfg.count_list("gn.values")) {
      if (m == 0) throw ConfigError("field gn.values: M sweep needs M >= 1");
      points.push_back(gn_point_json(gn_point(in, m, stages, order), m, stages, describe(spec)));
    }
    result["points"] = std::move(points);
  } else if (sweep == "theta") {
    SqueezedCoherent sq = require_squeezed(cfg, "gn.sweep = theta");
    json points = json::array();
    for (double theta : theta_grid(cfg)) {
      sq.theta = theta;
      json p = gn_point_json(gn_point(input_pmf(sq), M, stages, order), M, stages, describe(sq));
      p["theta"] = theta;
      points.push_back(std::move(p));
    }
    result["points"] = std::move(points);
  } else {
    throw ConfigError("field gn.sweep: expected none, N, M or theta, got '" + sweep + "'");
  }
  return {write_json(out_dir, stem, "gn", cfg, std::move(result))};
}

std::vector<fs::path> cmd_plimit(const Config& cfg, const fs::path& out_dir, const std::string& stem) {
  const std::uint64_t N = require_fock(cfg, "plimit");
  const std::uint64_t M = positive(cfg, "scatter.M");

  const Pmf counting = fock_scatter_pmf(N, M);
  const ExactPmf exact = fock_pn_limit_exact(N, M);
  const std::vector<double> limit = exact.to_doubles();

  Table t;
  t.columns = {"n", "counting", "limit", "negative"};
  double tv = 0.0, mean_counting = 0.0, mean_limit = 0.0;
  for (std::size_t n = 0; n < limit.size(); ++n) {
    t.rows.push_back({std::to_string(n), fmt(counting[n]), fmt(limit[n]), limit[n] < 0.0 ? "1" : "0"});
    tv += std::abs(counting[n] - limit[n]);
    mean_counting += static_cast<double>(n) * counting[n];
    mean_limit += static_cast<double>(n) * limit[n];
  }

  json result;
  result["N"] = N;
  result["M"] = M;
  result["total_variation"] = 0.5 * tv;
  result["mean_counting"] = mean_counting;
  result["mean_limit"] = mean_limit;
  result["limit_has_negative"] = exact.has_negative();
  result["limit_first_negative"] = exact.has_negative() ? json(exact.first_negative()) : json(nullptr);
  result["limit_sums_to_one"] = exact.sums_to_one();
  return {write_csv(out_dir, stem, "plimit", cfg, t), write_json(out_dir, stem, "plimit", cfg, std::move(result))};
}

std::vector<fs::path> cmd_mc(const Config& cfg, const fs::path& out_dir, const std::string& stem) {
  MCConfig mc;
  mc.input = input_spec(cfg);
  mc.M = positive(cfg, "scatter.M");
  mc.frames = positive(cfg, "mc.frames");
  mc.seed = cfg.count("mc.seed");
  const int order = order_of(cfg);

  const MCRunResult run = run_mc(mc);
  const EmpiricalReport emp = empirical_report(run, order);
  const Pmf exact = scatter_pmf(input_pmf(mc.input), mc.M);
  const CorrelationReport ref = correlation_report(exact, order);

  Table t;
  t.columns = {"n", "count", "empirical", "exact"};
  for (std::size_t n = 0; n < run.histogram.size(); ++n)
    t.rows.push_back({std::to_string(n), std::to_string(run.histogram[n]),
                      fmt(static_cast<double>(run.histogram[n]) / static_cast<double>(run.frames)), fmt(exact[n])});

  json z = json::object();
  for (int n = 2; n <= order; ++n) {
    const double se = emp.g_stderr[static_cast<std::size_t>(n - 2)];
    z[std::to_string(n)] = se > 0.0 ? json((emp.report.gn(n) - ref.gn(n)) / se) : json(nullptr);
  }
  json result;
  result["input"] = describe(mc.input);
  result["M"] = mc.M;
  result["frames"] = run.frames;
  result["seed"] = run.seed;
  result["blocks"] = emp.blocks;
  result["mean_empirical"] = emp.report.mean;
  result["mean_exact"] = ref.mean;
  result["g_empirical"] = by_order(emp.report.g);
  result["g_stderr"] = by_order(emp.g_stderr);
  result["g_exact"] = by_order(ref.g);
  result["z_score"] = std::move(z);
  return {write_csv(out_dir, stem + "_histogram", "mc", cfg, t),
          write_json(out_dir, stem + "_report", "mc", cfg, std::move(result))};
}

std::vector<fs::path> cmd_figure(const std::string& figure, const Config& cfg, const fs::path& out_dir) {
  const std::string command = "figure " + figure;
  if (figure == "fig2" || figure == "fig3a") return cmd_scatter(cfg, out_dir, figure);
  if (figure == "fig5a" || figure == "fig5b") return cmd_plimit(cfg, out_dir, figure);

  Table t;
  if (figure == "fig3b") {
    // g2 against M for the fixed input set of the figure
    const std::vector<std::pair<std::string, InputStateSpec>> series{
        {"fock2", Fock{2}}, {"fock5", Fock{5}}, {"fock10", Fock{10}}, {"coherent1", Coherent{1.0}}};
    t.columns = {"series", "M", "g2_in", "g2_exact", "g2_predicted"};
    for (const auto& [name, spec] : series) {
      const Pmf in = input_pmf(spec);
      for (std::uint64_t m : cfg.count_list("gn.values")) {
        if (m == 0) throw ConfigError("field gn.values: M sweep needs M >= 1");
        const GnPoint p = gn_point(in, m, 1, 2);
        t.rows.push_back({name, std::to_string(m), fmt(p.in.gn(2)), fmt(p.out.gn(2)), fmt(p.predicted[0])});
      }
    }
  } else if (figure == "fig3c") {
    const std::uint64_t M = positive(cfg, "scatter.M");
    t.columns = {"N", "g2_in", "g2_exact", "g2_predicted"};
    for (std::uint64_t N : cfg.count_list("gn.values")) {
      if (N == 0) throw ConfigError("field gn.values: N sweep needs N >= 1");
      const GnPoint p = gn_point(fock_pmf(N), M, 1, 2);
      t.rows.push_back({std::to_string(N), fmt(p.in.gn(2)), fmt(p.out.gn(2)), fmt(p.predicted[0])});
    }
  } else if (figure == "fig3d") {
    SqueezedCoherent sq = require_squeezed(cfg, "fig3d");
    const std::uint64_t M = positive(cfg, "scatter.M");
    t.columns = {"theta", "g2_in", "g2_exact", "g2_predicted"};
    for (double theta : theta_grid(cfg)) {
      sq.theta = theta;
      const GnPoint p = gn_point(input_pmf(sq), M, 1, 2);
      t.rows.push_back({fmt(theta), fmt(p.in.gn(2)), fmt(p.out.gn(2)), fmt(p.predicted[0])});
    }
  } else {
    throw ConfigError("unknown figure '" + figure + "'");
  }
  return {write_csv(out_dir, figure, command, cfg, t)};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-number statistics of light scattered by a multi-diffuser medium", "rgg"};
  app.set_version_flag("--version", std::string(kEngineName) + " " + kEngineVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  std::string figure;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "INI run configuration");
    sub->add_option("--set", overrides, "Override one field, section.key=value (repeatable)")->allow_extra_args(false);
    sub->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
  };
  CLI::App* scatter = app.add_subcommand("scatter", "Scattered pmf, thermal reference and optional approximation");
  CLI::App* gn = app.add_subcommand("gn", "Correlation report: exact, predicted and limit g^(n)");
  CLI::App* plimit = app.add_subcommand("plimit", "Counting pmf against the many-diffuser limit pmf");
  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo histogram and empirical report");
  CLI::App* fig = app.add_subcommand("figure", "Figure datasets");
  for (CLI::App* sub : {scatter, gn, plimit, mc, fig}) common(sub);
  fig->add_option("name", figure, "Figure recipe")->required()->check(CLI::IsMember(figure_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    Config cfg;
    if (fig->parsed()) apply_figure_recipe(figure, cfg);
    if (!config_path.empty()) cfg.load_file(config_path);
    for (const auto& o : overrides) cfg.assign(o);

    std::vector<fs::path> written;
    if (scatter->parsed()) written = cmd_scatter(cfg, out_dir);
    else if (gn->parsed()) written = cmd_gn(cfg, out_dir);
    else if (plimit->parsed()) written = cmd_plimit(cfg, out_dir);
    else if (mc->parsed()) written = cmd_mc(cfg, out_dir);
    else written = cmd_figure(figure, cfg, out_dir);
    for (const auto& p : written) out << p.string() << "\n";
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    const bool bad_input = e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::InvalidPmf;
    err << (bad_input ? "config error: " : "numeric failure: ") << e.what() << "\n";
    return bad_input ? kConfigError : kNumericError;
  }
}

}  // namespace rgg::cli
