#include "cycleforge/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "cycleforge/error.hpp"
#include "cycleforge/format.hpp"
#include "cycleforge/numerics.hpp"

namespace cycleforge {

namespace {

RootCheck check_level(const LogisticModel& m, double level, double closed,
                      double root_tol) {
  auto f = [&](double t) { return logistic_eval(m, t) - level; };
  double hi = 1.0 / m.rate();
  while (f(hi) <= 0.0 && hi < 1e300) hi *= 2.0;
  RootCheck rc;
  rc.closed_form = closed;
  rc.oracle = f(0.0) >= 0.0 ? 0.0 : find_root(f, {0.0, hi}, root_tol);
  rc.residual = std::abs(rc.closed_form - rc.oracle);
  return rc;
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string("stage '") + name + "': " + e.what());
  }
}

}  // namespace

RootCheck check_doubling_time(const LogisticModel& m, double root_tol) {
  const double closed = doubling_time(m);
  return check_level(m, 2.0 * m.y_init(), closed, root_tol);
}

RootCheck check_time_to_fraction(const LogisticModel& m, double frac,
                                 double root_tol) {
  const double closed = time_to_fraction(m, frac);
  return check_level(m, frac * m.capacity(), closed, root_tol);
}

Interpolant build_base_interpolant(const RunConfig& cfg, const SdfSeries& sdf,
                                   std::vector<std::string>& warnings) {
  const double t0 = cfg.base_year;
  const double t1 = t0 + cfg.period;
  std::vector<double> nodes;
  std::vector<double> values;
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < sdf.size(); ++i) {
    const double y = sdf.years[i];
    if (y >= t0 && y <= t1) {
      nodes.push_back(y);
      values.push_back(sdf.f_agg[i]);
    } else {
      ++excluded;
    }
  }
  if (nodes.empty() || nodes.front() != t0 || nodes.back() != t1) {
    throw Error(ErrorCode::ValidationFailed,
                "data must contain the base interval endpoints " +
                    format_double(t0) + " and " + format_double(t1));
  }
  if (excluded > 0) {
    warnings.push_back(std::to_string(excluded) +
                       " year(s) outside the base interval are not used as "
                       "interpolation nodes");
  }

  NodeSet ns = NodeSet::create(std::move(nodes), std::move(values));
  if (cfg.interpolant == InterpolantKind::PiecewiseLinear) {
    return build_piecewise_linear(ns);
  }
  if (ns.size() > cfg.max_lagrange_nodes) {
    warnings.push_back(std::to_string(ns.size()) + " nodes exceed the Lagrange cap of " +
                       std::to_string(cfg.max_lagrange_nodes) +
                       "; using piecewise_linear instead");
    return build_piecewise_linear(ns);
  }
  Interpolant ip = build_lagrange(ns, cfg.max_lagrange_nodes);

  const auto vals = ns.values();
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  const PeriodicExtension probe(ip, t0, cfg.period);
  const WarpRange range = observed_range(probe);
  const double span = *hi - *lo;
  const double slack = 0.1 * std::max(span, 1e-12 * std::max(1.0, std::abs(*hi)));
  if (range.lo < *lo - slack || range.hi > *hi + slack) {
    warnings.push_back(
        "Lagrange interpolant overshoots the node values by more than 10% of "
        "their range (Runge oscillation); consider piecewise_linear");
  }
  return ip;
}

LogisticFit fit_series(const SdfSeries& sdf, double calendar_origin) {
  std::vector<double> ts(sdf.years.begin(), sdf.years.end());
  for (double& t : ts) t -= calendar_origin;
  return fit_logistic(ts, sdf.f_agg);
}

TimeWarp build_warp(const RunConfig& cfg, PeriodicExtension pe) {
  if (cfg.warp_mode == WarpMode::Affine) {
    return TimeWarp(std::move(pe), cfg.warp_scale, cfg.warp_offset);
  }
  const WarpRange range = observed_range(pe);
  return auto_window_warp(std::move(pe), range, cfg.window_lo.value_or(0.0),
                          cfg.window_hi.value_or(cfg.period), cfg.origin());
}

Report run_pipeline(const RunConfig& cfg, const IndicatorPanel& panel,
                    std::vector<std::string> ingest_warnings) {
  Report r;
  r.warnings = std::move(ingest_warnings);

  stage("validate", [&] {
    const auto violations = validate_panel(panel);
    if (!violations.empty()) {
      std::string msg = std::to_string(violations.size()) + " violation(s)";
      for (const auto& v : violations) msg += "; " + v.describe();
      throw Error(ErrorCode::ValidationFailed, msg);
    }
  });

  r.sdf = stage("aggregate", [&] { return sdf_series(panel); });
  for (auto& w : negative_pillar_warnings(r.sdf)) r.warnings.push_back(std::move(w));

  const Interpolant ip = stage("interpolate", [&] {
    return build_base_interpolant(cfg, r.sdf, r.warnings);
  });
  r.interpolant_kind = ip.kind();
  r.node_count = ip.nodes().size();

  PeriodicExtension pe = stage("periodic", [&] {
    return PeriodicExtension(ip, static_cast<double>(cfg.base_year), cfg.period);
  });
  r.base_start = pe.t0();
  r.period = pe.period();
  r.warp_range = observed_range(pe);

  r.calendar_origin = cfg.origin();
  const LogisticModel model = stage("logistic", [&] {
    if (cfg.logistic_source == LogisticSource::Explicit) {
      r.logistic_source = "explicit";
      return LogisticModel::create(cfg.capacity, cfg.rate, cfg.y_init);
    }
    r.logistic_source = "fit";
    LogisticFit fit = fit_series(r.sdf, r.calendar_origin);
    r.fit = fit.diagnostics;
    if (fit.diagnostics.degenerate) {
      r.warnings.push_back("logistic fit degenerate: " + fit.diagnostics.message);
    } else if (!fit.diagnostics.converged) {
      r.warnings.push_back("logistic fit: " + fit.diagnostics.message);
    }
    return fit.model;
  });
  r.logistic = model;
  r.inflection_time = inflection_time(model);

  stage("timing", [&] {
    try {
      r.doubling = check_doubling_time(model, cfg.analysis.root_tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unreachable) throw;
      r.warnings.push_back(std::string("doubling time: ") + e.what());
    }
    r.fraction = cfg.analysis.fraction;
    try {
      r.fraction_time =
          check_time_to_fraction(model, cfg.analysis.fraction, cfg.analysis.root_tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAfterStart) throw;
      r.warnings.push_back(std::string("time to fraction: ") + e.what());
    }
  });

  const CycleModel cm = stage("compose", [&] {
    TimeWarp warp = build_warp(cfg, pe);
    return compose(model, std::move(warp), r.calendar_origin);
  });
  r.warp_scale = cm.warp().scale();
  r.warp_offset = cm.warp().offset();

  r.curve = stage("sample", [&] {
    return sample_curve(cm, cfg.sampling.start, cfg.sampling.end,
                        cfg.sampling.count);
  });

  stage("analyze", [&] {
    if (r.curve->size() >= 5) {
      r.inflections = inflection_points(*r.curve, cfg.analysis.inflection_eps);
    } else {
      r.warnings.push_back("fewer than 5 samples; inflection detection skipped");
    }
    r.phases = phase_segments(
        *r.curve, cfg.analysis.flat_eps.value_or(default_flat_tolerance(model)));
    r.periodicity_deviation =
        periodicity_deviation(cm, cfg.period, cfg.analysis.periodicity_grid);
  });
  return r;
}

namespace {

std::string fd(double v) { return format_double(v); }

}  // namespace

std::string report_to_text(const Report& r) {
  std::string s;
  s += "cycleforge report\n";
  s += "=================\n\n";

  s += "[sdf]\n";
  s += "year,f1,f2,f3,f_agg\n";
  for (std::size_t i = 0; i < r.sdf.size(); ++i) {
    s += std::to_string(r.sdf.years[i]) + "," + fd(r.sdf.f1[i]) + "," +
         fd(r.sdf.f2[i]) + "," + fd(r.sdf.f3[i]) + "," + fd(r.sdf.f_agg[i]) + "\n";
  }

  s += "\n[interpolation]\n";
  s += "kind = " + std::string(to_string(r.interpolant_kind)) + "\n";
  s += "nodes = " + std::to_string(r.node_count) + "\n";
  s += "base_interval = [" + fd(r.base_start) + ", " + fd(r.base_start + r.period) + "]\n";
  s += "period = " + fd(r.period) + "\n";
  s += "g_range = [" + fd(r.warp_range.lo) + ", " + fd(r.warp_range.hi) + "]\n";

  s += "\n[logistic]\n";
  s += "source = " + r.logistic_source + "\n";
  if (r.logistic) {
    s += "capacity = " + fd(r.logistic->capacity()) + "\n";
    s += "rate = " + fd(r.logistic->rate()) + "\n";
    s += "y_init = " + fd(r.logistic->y_init()) + "\n";
    s += "c = " + fd(r.logistic->c()) + "\n";
  }
  if (r.fit) {
    s += "fit.converged = " + std::string(r.fit->converged ? "true" : "false") + "\n";
    s += "fit.degenerate = " + std::string(r.fit->degenerate ? "true" : "false") + "\n";
    s += "fit.iterations = " + std::to_string(r.fit->iterations) + "\n";
    s += "fit.residual_norm = " + fd(r.fit->residual_norm) + "\n";
  }
  s += "inflection_time = " + fd(r.inflection_time) + "\n";

  s += "\n[timing]\n";
  if (r.doubling) {
    s += "t_2 = " + fd(r.doubling->closed_form) + "\n";
    s += "t_2.oracle = " + fd(r.doubling->oracle) + "\n";
    s += "t_2.residual = " + fd(r.doubling->residual) + "\n";
  } else {
    s += "t_2 = unreachable\n";
  }
  s += "frac = " + fd(r.fraction) + "\n";
  if (r.fraction_time) {
    s += "t_frac = " + fd(r.fraction_time->closed_form) + "\n";
    s += "t_frac.oracle = " + fd(r.fraction_time->oracle) + "\n";
    s += "t_frac.residual = " + fd(r.fraction_time->residual) + "\n";
  } else {
    s += "t_frac = not after start\n";
  }

  s += "\n[warp]\n";
  s += "scale = " + fd(r.warp_scale) + "\n";
  s += "offset = " + fd(r.warp_offset) + "\n";
  s += "calendar_origin = " + fd(r.calendar_origin) + "\n";

  s += "\n[curve]\n";
  if (r.curve) {
    s += "samples = " + std::to_string(r.curve->size()) + "\n";
    s += "range = [" + fd(r.curve->ts.front()) + ", " + fd(r.curve->ts.back()) + "]\n";
  }

  s += "\n[inflections]\n";
  s += "count = " + std::to_string(r.inflections.size()) + "\n";
  for (const auto& p : r.inflections) {
    s += "t = " + fd(p.time) + ", y = " + fd(p.value) + "\n";
  }

  s += "\n[phases]\n";
  for (const auto& p : r.phases) {
    s += "[" + fd(p.start) + ", " + fd(p.end) + "] " +
         std::string(to_string(p.trend)) + "\n";
  }

  s += "\n[periodicity]\n";
  s += "max_deviation = " + fd(r.periodicity_deviation) + "\n";

  s += "\n[warnings]\n";
  if (r.warnings.empty()) s += "none\n";
  for (const auto& w : r.warnings) s += "- " + w + "\n";
  return s;
}

std::string report_to_json(const Report& r) {
  using nlohmann::ordered_json;
  auto num = [](double v) { return ordered_json(v); };

  ordered_json j;
  ordered_json sdf = ordered_json::array();
  for (std::size_t i = 0; i < r.sdf.size(); ++i) {
    sdf.push_back({{"year", r.sdf.years[i]},
                   {"f1", num(r.sdf.f1[i])},
                   {"f2", num(r.sdf.f2[i])},
                   {"f3", num(r.sdf.f3[i])},
                   {"f_agg", num(r.sdf.f_agg[i])}});
  }
  j["sdf"] = sdf;
  j["interpolation"] = {{"kind", std::string(to_string(r.interpolant_kind))},
                        {"nodes", r.node_count},
                        {"base_start", num(r.base_start)},
                        {"period", num(r.period)},
                        {"g_range", {num(r.warp_range.lo), num(r.warp_range.hi)}}};

  ordered_json lj = {{"source", r.logistic_source}};
  if (r.logistic) {
    lj["capacity"] = num(r.logistic->capacity());
    lj["rate"] = num(r.logistic->rate());
    lj["y_init"] = num(r.logistic->y_init());
    lj["c"] = num(r.logistic->c());
  }
  if (r.fit) {
    lj["fit"] = {{"converged", r.fit->converged},
                 {"degenerate", r.fit->degenerate},
                 {"iterations", r.fit->iterations},
                 {"residual_norm", num(r.fit->residual_norm)}};
  }
  lj["inflection_time"] = num(r.inflection_time);
  j["logistic"] = lj;

  auto root_json = [&](const std::optional<RootCheck>& rc) -> ordered_json {
    if (!rc) return nullptr;
    return {{"closed_form", num(rc->closed_form)},
            {"oracle", num(rc->oracle)},
            {"residual", num(rc->residual)}};
  };
  j["timing"] = {{"t_2", root_json(r.doubling)},
                 {"frac", num(r.fraction)},
                 {"t_frac", root_json(r.fraction_time)}};
  j["warp"] = {{"scale", num(r.warp_scale)},
               {"offset", num(r.warp_offset)},
               {"calendar_origin", num(r.calendar_origin)}};
  if (r.curve) {
    j["curve"] = {{"samples", r.curve->size()},
                  {"start", num(r.curve->ts.front())},
                  {"end", num(r.curve->ts.back())}};
  }
  ordered_json infl = ordered_json::array();
  for (const auto& p : r.inflections) {
    infl.push_back({{"t", num(p.time)}, {"y", num(p.value)}});
  }
  j["inflections"] = infl;
  ordered_json phases = ordered_json::array();
  for (const auto& p : r.phases) {
    phases.push_back({{"start", num(p.start)},
                      {"end", num(p.end)},
                      {"trend", std::string(to_string(p.trend))}});
  }
  j["phases"] = phases;
  j["periodicity_deviation"] = num(r.periodicity_deviation);
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

}  // namespace cycleforge
