// cycleforge: sustainability-adjusted long-cycle pipeline.
//
//   cycleforge validate  --config cfg.json --data panel.csv
//   cycleforge aggregate --config cfg.json
//   cycleforge fit       --config cfg.json
//   cycleforge cycle     --config cfg.json --out-dir out/
//   cycleforge report    --config cfg.json --out-dir out/ [--json]
//
// Exit codes: 0 success, 1 input or validation error, 2 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cycleforge/config.hpp"
#include "cycleforge/emit.hpp"
#include "cycleforge/error.hpp"
#include "cycleforge/format.hpp"
#include "cycleforge/ingest.hpp"
#include "cycleforge/pipeline.hpp"

namespace fs = std::filesystem;
using namespace cycleforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

struct Options {
  std::string config;
  std::string data;
  std::string out_dir = ".";
  bool json = false;
  bool quiet = false;
};

RunConfig resolve_config(const Options& opt) {
  std::string path = opt.config;
  if (path.empty()) {
    if (const char* env = std::getenv("CYCLEFORGE_CONFIG")) path = env;
  }
  if (path.empty()) {
    throw Error(ErrorCode::IoError,
                "no config given (use --config or set CYCLEFORGE_CONFIG)");
  }
  RunConfig cfg = load_config(path);
  if (!opt.data.empty()) cfg.data = opt.data;
  if (!cfg.data) {
    throw Error(ErrorCode::IoError, "no data file given (use --data or \"data\")");
  }
  return cfg;
}

void print_warnings(const std::vector<std::string>& warnings, const Options& opt) {
  if (opt.quiet) return;
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_validate(const Options& opt) {
  const RunConfig cfg = resolve_config(opt);
  const IngestResult in = parse_indicator_csv(read_text_file(*cfg.data),
                                              cfg.indicators, cfg.base_year);
  const auto violations = validate_panel(in.panel);
  if (opt.json) {
    nlohmann::ordered_json j;
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : violations) j["violations"].push_back(v.describe());
    j["warnings"] = in.warnings;
    std::cout << j.dump(2) << "\n";
  } else if (!opt.quiet) {
    for (const auto& w : in.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& v : violations) std::cout << "violation: " << v.describe() << "\n";
    std::cout << (violations.empty() ? "ok" : "invalid") << ": "
              << violations.size() << " violation(s)\n";
  }
  return violations.empty() ? kExitOk : kExitInput;
}

int cmd_aggregate(const Options& opt) {
  const RunConfig cfg = resolve_config(opt);
  const IngestResult in = ingest_csv(*cfg.data, cfg.indicators, cfg.base_year);
  print_warnings(in.warnings, opt);
  const SdfSeries s = sdf_series(in.panel);
  print_warnings(negative_pillar_warnings(s), opt);

  if (opt.json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
      rows.push_back({{"year", s.years[i]}, {"f1", s.f1[i]}, {"f2", s.f2[i]},
                      {"f3", s.f3[i]}, {"f_agg", s.f_agg[i]}});
    }
    std::cout << rows.dump(2) << "\n";
  } else {
    std::cout << "year,f1,f2,f3,f_agg\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::cout << s.years[i] << "," << format_double(s.f1[i]) << ","
                << format_double(s.f2[i]) << "," << format_double(s.f3[i]) << ","
                << format_double(s.f_agg[i]) << "\n";
    }
  }
  return kExitOk;
}

int cmd_fit(const Options& opt) {
  const RunConfig cfg = resolve_config(opt);
  const IngestResult in = ingest_csv(*cfg.data, cfg.indicators, cfg.base_year);
  print_warnings(in.warnings, opt);
  const SdfSeries s = sdf_series(in.panel);

  std::optional<FitDiagnostics> diag;
  LogisticModel model = [&] {
    if (cfg.logistic_source == LogisticSource::Explicit) {
      return LogisticModel::create(cfg.capacity, cfg.rate, cfg.y_init);
    }
    LogisticFit fit = fit_series(s, cfg.origin());
    diag = fit.diagnostics;
    return fit.model;
  }();

  nlohmann::ordered_json j;
  j["source"] = cfg.logistic_source == LogisticSource::Explicit ? "explicit" : "fit";
  j["capacity"] = model.capacity();
  j["rate"] = model.rate();
  j["y_init"] = model.y_init();
  j["c"] = model.c();
  j["inflection_time"] = inflection_time(model);
  if (diag) {
    j["fit"] = {{"converged", diag->converged},
                {"degenerate", diag->degenerate},
                {"iterations", diag->iterations},
                {"residual_norm", diag->residual_norm},
                {"message", diag->message}};
  }
  try {
    const RootCheck d = check_doubling_time(model, cfg.analysis.root_tol);
    j["t_2"] = {{"closed_form", d.closed_form}, {"oracle", d.oracle},
                {"residual", d.residual}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unreachable) throw;
    j["t_2"] = nullptr;
    print_warnings({e.what()}, opt);
  }
  try {
    const RootCheck f =
        check_time_to_fraction(model, cfg.analysis.fraction, cfg.analysis.root_tol);
    j["t_frac"] = {{"frac", cfg.analysis.fraction}, {"closed_form", f.closed_form},
                   {"oracle", f.oracle}, {"residual", f.residual}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAfterStart) throw;
    j["t_frac"] = nullptr;
    print_warnings({e.what()}, opt);
  }

  if (opt.json) {
    std::cout << j.dump(2) << "\n";
  } else if (!opt.quiet) {
    for (const auto& [key, value] : j.items()) {
      std::cout << key << " = " << value.dump() << "\n";
    }
  }
  if (diag && (!diag->converged || diag->degenerate)) {
    std::cerr << "error: logistic fit did not converge"
              << (diag->message.empty() ? "" : ": " + diag->message) << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct PipelineRun {
  RunConfig cfg;
  Report report;
};

PipelineRun run(const Options& opt) {
  RunConfig cfg = resolve_config(opt);
  IngestResult in = ingest_csv(*cfg.data, cfg.indicators, cfg.base_year);
  Report report = run_pipeline(cfg, in.panel, std::move(in.warnings));
  return {std::move(cfg), std::move(report)};
}

void write_curve_outputs(const PipelineRun& pr, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  emit_curve_csv(*pr.report.curve, out_dir / pr.cfg.outputs.curve_csv);
  emit_svg(*pr.report.curve, pr.report.inflections, out_dir / pr.cfg.outputs.svg);
}

int finish(const Report& report) {
  if (report.numerical_failure()) {
    std::cerr << "error: logistic fit did not converge\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_cycle(const Options& opt) {
  const PipelineRun pr = run(opt);
  const fs::path out_dir = opt.out_dir;
  write_curve_outputs(pr, out_dir);
  print_warnings(pr.report.warnings, opt);
  if (!opt.quiet) {
    std::cout << "samples: " << pr.report.curve->size() << "\n"
              << "inflections: " << pr.report.inflections.size() << "\n"
              << "phases: " << pr.report.phases.size() << "\n"
              << "wrote " << (out_dir / pr.cfg.outputs.curve_csv).string() << "\n"
              << "wrote " << (out_dir / pr.cfg.outputs.svg).string() << "\n";
  }
  return finish(pr.report);
}

int cmd_report(const Options& opt) {
  const PipelineRun pr = run(opt);
  const fs::path out_dir = opt.out_dir;
  write_curve_outputs(pr, out_dir);

  fs::path report_path = out_dir / pr.cfg.outputs.report;
  std::string body;
  if (opt.json) {
    report_path.replace_extension(".json");
    body = report_to_json(pr.report);
  } else {
    body = report_to_text(pr.report);
  }
  write_file_atomic(report_path, body);
  if (!opt.quiet) std::cout << body;
  return finish(pr.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sustainability-adjusted long-cycle modeling: aggregation, "
               "interpolation, periodic warp, logistic fit and cycle analysis"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config,
                 "JSON run configuration (default: $CYCLEFORGE_CONFIG)");
  app.add_option("--data", opt.data,
                 "Indicator CSV (year,indicator_id,value,weight)");
  app.add_option("--out-dir", opt.out_dir, "Directory for output files");
  app.add_flag("--json", opt.json, "Emit JSON instead of text");
  app.add_flag("--quiet", opt.quiet, "Suppress non-error console output");

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
  };
  const Command commands[] = {
      {"validate", "Check the indicator data against the configuration", cmd_validate},
      {"aggregate", "Print the sustainable-development series per year", cmd_aggregate},
      {"fit", "Fit or load the logistic model and report its timing", cmd_fit},
      {"cycle", "Sample the composed cycle curve to CSV and SVG", cmd_cycle},
      {"report", "Run the full pipeline and write the report", cmd_report},
  };
  int (*selected)(const Options&) = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    sub->callback([&selected, fn = c.fn] { selected = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return selected(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_numerical_failure(e.code()) ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
