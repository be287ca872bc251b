#include "dynpeak/cli.hpp"

#include "dynpeak/analysis.hpp"
#include "dynpeak/csv.hpp"
#include "dynpeak/error.hpp"
#include "dynpeak/generator_config.hpp"
#include "dynpeak/lh_model.hpp"
#include "dynpeak/result_document.hpp"
#include "dynpeak/service.hpp"
#include "dynpeak/svg_plot.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace dynpeak::cli {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush())
    throw InputError("cannot write '" + path.string() + "'");
}

struct GenerateArgs {
  std::string scenario;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string dense;
};

struct DetectArgs {
  std::string in;
  std::string out;
  std::string plots;
  DetectionParams params;
};

void generate(const GenerateArgs& a, std::ostream& log) {
  lh::Scenario sc = a.config.empty() ? lh::scenario(a.scenario) : io::load_scenario(a.config);
  if (a.seed)
    sc.sampling.seed = *a.seed;
  const lh::DenseSolution dense = lh::integrate_plasma(sc.generator);
  const TimeSeries series = lh::sample_series(dense, sc.sampling);

  std::ostringstream csv;
  io::write_series(csv, series);
  dump(a.out, csv.str());
  if (!a.dense.empty()) {
    std::ostringstream d;
    lh::write_dense_csv(d, dense);
    dump(a.dense, d.str());
  }
  log << "wrote " << series.size() << " samples to " << a.out << '\n';
}

void detect(const DetectArgs& a, std::ostream& log) {
  const std::string text = slurp(a.in);
  const TimeSeries series = io::parse_series(text);
  const DetectionResult result = analyze(series, a.params);

  io::Provenance prov;
  prov.input_sha256 = io::sha256_hex(text);
  dump(a.out, io::write_result(io::make_document(series, result, prov)));

  if (!a.plots.empty()) {
    std::error_code ec;
    fs::create_directories(a.plots, ec);
    if (ec)
      throw InputError("cannot create '" + a.plots + "': " + ec.message());
    const io::SvgPlots plots = io::render_plots(series, result);
    dump(fs::path(a.plots) / "series.svg", plots.series);
    dump(fs::path(a.plots) / "ipi.svg", plots.ipi);
  }
  log << result.pulses.size() << " pulses, " << result.outliers.upper.size() << " upper / "
      << result.outliers.lower.size() << " lower outliers\n";
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"LH pulse detection and synthetic series generation", "dynpeak"};
  app.set_version_flag("--version", std::string(io::kToolVersion));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "simulate and sample a reference LH series");
  auto* g_scenario = g->add_option("--scenario", gen.scenario, "reference scenario A..F")
                         ->check(CLI::IsMember({"A", "B", "C", "D", "E", "F"}));
  auto* g_config = g->add_option("--config", gen.config, "generator JSON file")->check(CLI::ExistingFile);
  g_scenario->excludes(g_config);
  g_config->excludes(g_scenario);
  g->add_option("--seed", gen.seed, "sampling seed (overrides the scenario's)");
  g->add_option("--out", gen.out, "sampled series CSV")->required();
  g->add_option("--dense", gen.dense, "also export the dense solution CSV");

  DetectArgs det;
  auto* d = app.add_subcommand("detect", "detect pulses and fit the IPI tunnel");
  d->add_option("--in", det.in, "series CSV")->required();
  d->add_option("--out", det.out, "result JSON")->required();
  d->add_option("--plots", det.plots, "directory for series.svg and ipi.svg");
  d->add_option("--tp", det.params.nominal_period, "nominal period T_p (min)")->capture_default_str();
  d->add_option("--lambda-r", det.params.relative_threshold, "relative magnitude threshold")
      ->capture_default_str();
  d->add_option("--lambda-a", det.params.absolute_threshold, "absolute magnitude threshold (ng/ml)")
      ->capture_default_str();
  d->add_option("--lambda-3p", det.params.three_point_threshold, "3-point peak threshold")
      ->capture_default_str();
  d->add_option("--alpha", det.params.tunnel_lower_ratio, "lower tunnel ratio")->capture_default_str();
  d->add_option("--beta", det.params.tunnel_upper_ratio, "upper tunnel ratio")->capture_default_str();

  int port = 8080;
  auto* s = app.add_subcommand("serve", "serve the HTTP API on 127.0.0.1");
  s->add_option("--port", port, "listening port (DYNPEAK_PORT overrides)")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << io::kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (g->parsed()) {
      if (gen.scenario.empty() && gen.config.empty())
        throw InputError("generate needs --scenario or --config");
      generate(gen, err);
    } else if (d->parsed()) {
      det.params.validate();
      detect(det, err);
    } else if (s->parsed()) {
      const int p = service::resolve_port(port);
      err << "listening on 127.0.0.1:" << p << '\n';
      if (!service::serve(p))
        throw InputError("cannot bind 127.0.0.1:" + std::to_string(p));
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitOk;
}

} // namespace dynpeak::cli
