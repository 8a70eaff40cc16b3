#include "cycleforge/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cycleforge/error.hpp"

namespace cycleforge {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::SchemaError, "'" + path + "': " + why);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) {
      std::string list;
      for (auto a : allowed) {
        if (!list.empty()) list += ", ";
        list += a;
      }
      schema_error(path.empty() ? key : path + "." + key,
                   "unknown key (allowed: " + list + ")");
    }
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  return j;
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<int>();
}

std::size_t get_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    schema_error(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

std::string join_path(const std::string& a, const std::string& b) {
  return a.empty() ? b : a + "." + b;
}

IndicatorDef parse_indicator(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"id", "pillar", "orientation", "scale_exponent",
                                "description"});
  IndicatorDef d;
  if (!j.contains("id")) schema_error(join_path(path, "id"), "required");
  d.id = get_string(j.at("id"), join_path(path, "id"));
  if (d.id.empty()) schema_error(join_path(path, "id"), "must be non-empty");
  if (!j.contains("pillar")) schema_error(join_path(path, "pillar"), "required");
  const std::string pillar = get_string(j.at("pillar"), join_path(path, "pillar"));
  const auto p = parse_pillar(pillar);
  if (!p) {
    schema_error(join_path(path, "pillar"),
                 "unknown pillar '" + pillar +
                     "' (allowed: economic, social, environmental)");
  }
  d.pillar = *p;
  if (j.contains("orientation")) {
    d.orientation = get_int(j.at("orientation"), join_path(path, "orientation"));
    if (d.orientation != 1 && d.orientation != -1) {
      schema_error(join_path(path, "orientation"), "must be 1 or -1");
    }
  }
  if (j.contains("scale_exponent")) {
    d.scale_exponent =
        get_int(j.at("scale_exponent"), join_path(path, "scale_exponent"));
    if (d.scale_exponent < kMinScaleExponent ||
        d.scale_exponent > kMaxScaleExponent) {
      schema_error(join_path(path, "scale_exponent"), "must lie in [-12, 12]");
    }
  }
  if (j.contains("description")) {
    d.description = get_string(j.at("description"), join_path(path, "description"));
  }
  return d;
}

void parse_logistic(const json& j, RunConfig& cfg) {
  const std::string path = "logistic";
  require_object(j, path);
  if (!j.contains("source")) schema_error(path + ".source", "required");
  const std::string source = get_string(j.at("source"), path + ".source");
  if (source == "fit") {
    reject_unknown_keys(j, path, {"source"});
    cfg.logistic_source = LogisticSource::Fit;
    return;
  }
  if (source != "explicit") {
    schema_error(path + ".source",
                 "unknown source '" + source + "' (allowed: fit, explicit)");
  }
  reject_unknown_keys(j, path, {"source", "capacity", "rate", "y_init"});
  cfg.logistic_source = LogisticSource::Explicit;
  for (const char* key : {"capacity", "rate", "y_init"}) {
    if (!j.contains(key)) schema_error(path + "." + key, "required for explicit");
  }
  cfg.capacity = get_number(j.at("capacity"), path + ".capacity");
  cfg.rate = get_number(j.at("rate"), path + ".rate");
  cfg.y_init = get_number(j.at("y_init"), path + ".y_init");
  if (!(cfg.capacity > 0.0)) schema_error(path + ".capacity", "must be positive");
  if (!(cfg.rate > 0.0)) schema_error(path + ".rate", "must be positive");
  if (!(cfg.y_init > 0.0 && cfg.y_init < cfg.capacity)) {
    schema_error(path + ".y_init", "must lie in (0, capacity)");
  }
}

void parse_warp(const json& j, RunConfig& cfg) {
  const std::string path = "warp";
  require_object(j, path);
  if (!j.contains("mode")) schema_error(path + ".mode", "required");
  const std::string mode = get_string(j.at("mode"), path + ".mode");
  if (mode == "affine") {
    reject_unknown_keys(j, path, {"mode", "scale", "offset"});
    cfg.warp_mode = WarpMode::Affine;
    if (j.contains("scale")) cfg.warp_scale = get_number(j.at("scale"), path + ".scale");
    if (j.contains("offset")) {
      cfg.warp_offset = get_number(j.at("offset"), path + ".offset");
    }
    if (cfg.warp_scale == 0.0) schema_error(path + ".scale", "must be non-zero");
  } else if (mode == "auto_window") {
    reject_unknown_keys(j, path, {"mode", "window"});
    cfg.warp_mode = WarpMode::AutoWindow;
    if (j.contains("window")) {
      const json& w = j.at("window");
      if (!w.is_array() || w.size() != 2) {
        schema_error(path + ".window", "expected [lo, hi]");
      }
      cfg.window_lo = get_number(w[0], path + ".window[0]");
      cfg.window_hi = get_number(w[1], path + ".window[1]");
      if (!(*cfg.window_lo < *cfg.window_hi)) {
        schema_error(path + ".window", "requires lo < hi");
      }
    }
  } else {
    schema_error(path + ".mode",
                 "unknown mode '" + mode + "' (allowed: affine, auto_window)");
  }
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) schema_error("$", "expected a JSON object");
  reject_unknown_keys(root, "",
                      {"base_year", "period", "indicators", "interpolant",
                       "max_lagrange_nodes", "logistic", "warp",
                       "calendar_origin", "sampling", "analysis", "outputs",
                       "data"});

  RunConfig cfg;
  if (root.contains("base_year")) cfg.base_year = get_int(root["base_year"], "base_year");
  if (root.contains("period")) {
    cfg.period = get_number(root["period"], "period");
    if (!(cfg.period > 0.0)) schema_error("period", "must be positive");
  }

  if (!root.contains("indicators")) schema_error("indicators", "required");
  const json& inds = root["indicators"];
  if (!inds.is_array() || inds.empty()) {
    schema_error("indicators", "expected a non-empty array");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < inds.size(); ++i) {
    const std::string path = "indicators[" + std::to_string(i) + "]";
    IndicatorDef d = parse_indicator(inds[i], path);
    if (!ids.insert(d.id).second) {
      schema_error(path + ".id", "duplicate id '" + d.id + "'");
    }
    cfg.indicators.push_back(std::move(d));
  }

  if (root.contains("interpolant")) {
    const std::string kind = get_string(root["interpolant"], "interpolant");
    if (kind == "lagrange") {
      cfg.interpolant = InterpolantKind::LagrangeBarycentric;
    } else if (kind == "piecewise_linear") {
      cfg.interpolant = InterpolantKind::PiecewiseLinear;
    } else {
      schema_error("interpolant", "unknown kind '" + kind +
                                      "' (allowed: lagrange, piecewise_linear)");
    }
  }
  if (root.contains("max_lagrange_nodes")) {
    cfg.max_lagrange_nodes = get_count(root["max_lagrange_nodes"], "max_lagrange_nodes");
    if (cfg.max_lagrange_nodes < 2) schema_error("max_lagrange_nodes", "must be >= 2");
  }
  if (root.contains("logistic")) parse_logistic(root["logistic"], cfg);
  if (root.contains("warp")) parse_warp(root["warp"], cfg);
  if (root.contains("calendar_origin")) {
    cfg.calendar_origin = get_number(root["calendar_origin"], "calendar_origin");
  }

  if (!root.contains("sampling")) schema_error("sampling", "required");
  {
    const json& s = require_object(root["sampling"], "sampling");
    reject_unknown_keys(s, "sampling", {"start", "end", "count"});
    for (const char* key : {"start", "end", "count"}) {
      if (!s.contains(key)) schema_error(std::string("sampling.") + key, "required");
    }
    cfg.sampling.start = get_number(s["start"], "sampling.start");
    cfg.sampling.end = get_number(s["end"], "sampling.end");
    cfg.sampling.count = get_count(s["count"], "sampling.count");
    if (!(cfg.sampling.start < cfg.sampling.end)) {
      schema_error("sampling", "requires start < end");
    }
    if (cfg.sampling.count < 2) schema_error("sampling.count", "must be >= 2");
  }

  if (root.contains("analysis")) {
    const json& a = require_object(root["analysis"], "analysis");
    reject_unknown_keys(a, "analysis", {"inflection_eps", "flat_eps",
                                        "periodicity_grid", "fraction", "root_tol"});
    if (a.contains("inflection_eps")) {
      cfg.analysis.inflection_eps = get_number(a["inflection_eps"], "analysis.inflection_eps");
      if (*cfg.analysis.inflection_eps < 0.0) {
        schema_error("analysis.inflection_eps", "must be non-negative");
      }
    }
    if (a.contains("flat_eps")) {
      cfg.analysis.flat_eps = get_number(a["flat_eps"], "analysis.flat_eps");
      if (*cfg.analysis.flat_eps < 0.0) schema_error("analysis.flat_eps", "must be non-negative");
    }
    if (a.contains("periodicity_grid")) {
      cfg.analysis.periodicity_grid = get_count(a["periodicity_grid"], "analysis.periodicity_grid");
      if (cfg.analysis.periodicity_grid < 2) {
        schema_error("analysis.periodicity_grid", "must be >= 2");
      }
    }
    if (a.contains("fraction")) {
      cfg.analysis.fraction = get_number(a["fraction"], "analysis.fraction");
      if (!(cfg.analysis.fraction > 0.0 && cfg.analysis.fraction < 1.0)) {
        schema_error("analysis.fraction", "must lie in (0, 1)");
      }
    }
    if (a.contains("root_tol")) {
      cfg.analysis.root_tol = get_number(a["root_tol"], "analysis.root_tol");
      if (!(cfg.analysis.root_tol > 0.0)) schema_error("analysis.root_tol", "must be positive");
    }
  }

  if (root.contains("outputs")) {
    const json& o = require_object(root["outputs"], "outputs");
    reject_unknown_keys(o, "outputs", {"report", "curve_csv", "svg"});
    if (o.contains("report")) cfg.outputs.report = get_string(o["report"], "outputs.report");
    if (o.contains("curve_csv")) {
      cfg.outputs.curve_csv = get_string(o["curve_csv"], "outputs.curve_csv");
    }
    if (o.contains("svg")) cfg.outputs.svg = get_string(o["svg"], "outputs.svg");
  }

  if (root.contains("data")) cfg.data = get_string(root["data"], "data");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config(ss.str());
  if (cfg.data && cfg.data->is_relative()) {
    cfg.data = path.parent_path() / *cfg.data;
  }
  return cfg;
}

}  // namespace cycleforge
