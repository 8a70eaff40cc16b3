#include "cycleforge/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cycleforge/error.hpp"

namespace cycleforge {

std::string_view to_string(Pillar pillar) noexcept {
  switch (pillar) {
    case Pillar::Economic: return "economic";
    case Pillar::Social: return "social";
    case Pillar::Environmental: return "environmental";
  }
  return "unknown";
}

std::optional<Pillar> parse_pillar(std::string_view name) noexcept {
  for (Pillar p : kPillars) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

int suggest_scale_exponent(double max_value) {
  if (!(max_value > 0.0) || !std::isfinite(max_value)) return 0;
  const int e = -static_cast<int>(std::floor(std::log10(max_value)));
  return std::clamp(e, kMinScaleExponent, kMaxScaleExponent);
}

std::vector<IndicatorDef> indicator_catalog() {
  using P = Pillar;
  return {
      {"x1", P::Economic, +1, 0, "indicator of global settlement"},
      {"x2", P::Economic, +1, 0, "indicator of quick ratio"},
      {"x3", P::Economic, +1, 0, "profitability of the capital employed"},
      {"x4", P::Economic, +1, 0, "gross margin sales"},
      {"x5", P::Economic, +1, 0, "indicator of economic profitability"},
      {"x6", P::Economic, +1, 0, "efficiency of production costs"},
      {"x7", P::Economic, +1, 0, "share of wages in costs"},
      {"x8", P::Economic, +1, 0, "efficiency rate of the total costs"},
      {"x9", P::Economic, +1, 0, "efficiency of using production capacity"},
      {"s1", P::Social, +1, 0,
       "expenses with insurance and social protection"},
      {"s2", P::Social, +1, 0,
       "expenses for equipment and protective materials"},
      {"e_wind", P::Environmental, +1, 0, "renewable resources: wind"},
      {"e_solar", P::Environmental, +1, 0, "renewable resources: solar"},
      {"e_hydro", P::Environmental, +1, 0, "renewable resources: hydro"},
      {"e_biomass", P::Environmental, +1, 0, "renewable resources: biomass"},
      {"e_geothermal", P::Environmental, +1, 0,
       "renewable resources: geothermal"},
      {"e_noxious", P::Environmental, -1, 0,
       "frequency index of exposure to noxious agents"},
      {"e_pollutants", P::Environmental, -1, 0,
       "emissions of pollutants into the atmosphere"},
      {"e_emissions", P::Environmental, -1, 0,
       "quantity of emissions (ozone-depleting or greenhouse)"},
      {"e_workenv", P::Environmental, -1, 0,
       "work environment: noise, vibration, radiation, heat and light"},
  };
}

const IndicatorDef* IndicatorPanel::find_def(std::string_view id) const {
  for (const auto& d : defs) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

bool IndicatorPanel::has_year(int year) const {
  return std::binary_search(years.begin(), years.end(), year);
}

void IndicatorPanel::set(const std::string& id, int year, double value,
                         double weight) {
  if (!has_year(year)) {
    years.insert(std::upper_bound(years.begin(), years.end(), year), year);
  }
  values[{id, year}] = value;
  weights[{id, year}] = weight;
}

double PillarTriple::operator[](Pillar p) const {
  switch (p) {
    case Pillar::Economic: return economic;
    case Pillar::Social: return social;
    case Pillar::Environmental: return environmental;
  }
  return 0.0;
}

double pillar_value(const IndicatorPanel& panel, Pillar pillar, int year) {
  if (!panel.has_year(year)) {
    throw Error(ErrorCode::UnknownYear,
                "year " + std::to_string(year) + " is not in the panel");
  }

  // Summation order is fixed by id so results do not depend on def order.
  std::vector<const IndicatorDef*> members;
  for (const auto& d : panel.defs) {
    if (d.pillar == pillar) members.push_back(&d);
  }
  if (members.empty()) {
    throw Error(ErrorCode::EmptyPillar,
                std::string(to_string(pillar)) + " pillar has no indicators");
  }
  std::sort(members.begin(), members.end(),
            [](const IndicatorDef* a, const IndicatorDef* b) {
              return a->id < b->id;
            });

  double sum = 0.0;
  for (const IndicatorDef* d : members) {
    const IndicatorPanel::Key key{d->id, year};
    const auto v = panel.values.find(key);
    const auto w = panel.weights.find(key);
    if (v == panel.values.end() || w == panel.weights.end()) {
      throw Error(ErrorCode::MissingValue,
                  "no datum for indicator '" + d->id + "' in year " +
                      std::to_string(year));
    }
    const double scale = std::pow(10.0, d->scale_exponent);
    sum += d->orientation * w->second * v->second * scale;
  }
  return sum / static_cast<double>(members.size());
}

PillarTriple sdf_vector(const IndicatorPanel& panel, int year) {
  return {pillar_value(panel, Pillar::Economic, year),
          pillar_value(panel, Pillar::Social, year),
          pillar_value(panel, Pillar::Environmental, year)};
}

double sdf_aggregate(const IndicatorPanel& panel, int year) {
  return sdf_vector(panel, year).mean();
}

SdfSeries sdf_series(const IndicatorPanel& panel) {
  SdfSeries s;
  for (int year : panel.years) {
    PillarTriple v;
    try {
      v = sdf_vector(panel, year);
    } catch (const Error& e) {
      throw Error(e.code(),
                  "year " + std::to_string(year) + ": " + e.what());
    }
    s.years.push_back(year);
    s.f1.push_back(v.economic);
    s.f2.push_back(v.social);
    s.f3.push_back(v.environmental);
    s.f_agg.push_back(v.mean());
  }
  return s;
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::EmptyId: return "EmptyId";
    case ViolationKind::DuplicateId: return "DuplicateId";
    case ViolationKind::ExponentOutOfRange: return "ExponentOutOfRange";
    case ViolationKind::BadOrientation: return "BadOrientation";
    case ViolationKind::EmptyPillar: return "EmptyPillar";
    case ViolationKind::YearBeforeBase: return "YearBeforeBase";
    case ViolationKind::UnsortedYears: return "UnsortedYears";
    case ViolationKind::MissingValue: return "MissingValue";
    case ViolationKind::MissingWeight: return "MissingWeight";
    case ViolationKind::NegativeValue: return "NegativeValue";
    case ViolationKind::NegativeWeight: return "NegativeWeight";
    case ViolationKind::UnknownIndicator: return "UnknownIndicator";
  }
  return "Unknown";
}

std::string Violation::describe() const {
  std::string out(to_string(kind));
  if (pillar) out += "(" + std::string(to_string(*pillar)) + ")";
  if (!id.empty()) out += " id=" + id;
  if (year) out += " year=" + std::to_string(*year);
  return out;
}

std::vector<Violation> validate_panel(const IndicatorPanel& panel) {
  std::vector<Violation> out;

  std::set<std::string> seen;
  std::array<int, 3> per_pillar{};
  for (const auto& d : panel.defs) {
    if (d.id.empty()) out.push_back({ViolationKind::EmptyId, "", {}, {}});
    if (!seen.insert(d.id).second) {
      out.push_back({ViolationKind::DuplicateId, d.id, {}, {}});
    }
    if (d.scale_exponent < kMinScaleExponent ||
        d.scale_exponent > kMaxScaleExponent) {
      out.push_back({ViolationKind::ExponentOutOfRange, d.id, {}, {}});
    }
    if (d.orientation != 1 && d.orientation != -1) {
      out.push_back({ViolationKind::BadOrientation, d.id, {}, {}});
    }
    ++per_pillar[static_cast<std::size_t>(d.pillar)];
  }
  for (Pillar p : kPillars) {
    if (per_pillar[static_cast<std::size_t>(p)] == 0) {
      out.push_back({ViolationKind::EmptyPillar, "", {}, p});
    }
  }

  for (std::size_t i = 0; i < panel.years.size(); ++i) {
    if (panel.years[i] < panel.base_year) {
      out.push_back({ViolationKind::YearBeforeBase, "", panel.years[i], {}});
    }
    if (i > 0 && !(panel.years[i - 1] < panel.years[i])) {
      out.push_back({ViolationKind::UnsortedYears, "", panel.years[i], {}});
    }
  }

  for (const auto& d : panel.defs) {
    for (int year : panel.years) {
      const IndicatorPanel::Key key{d.id, year};
      const auto v = panel.values.find(key);
      const auto w = panel.weights.find(key);
      if (v == panel.values.end()) {
        out.push_back({ViolationKind::MissingValue, d.id, year, {}});
      } else if (!(v->second >= 0.0)) {
        out.push_back({ViolationKind::NegativeValue, d.id, year, {}});
      }
      if (w == panel.weights.end()) {
        out.push_back({ViolationKind::MissingWeight, d.id, year, {}});
      } else if (!(w->second >= 0.0)) {
        out.push_back({ViolationKind::NegativeWeight, d.id, year, {}});
      }
    }
  }

  for (const auto& [key, value] : panel.values) {
    if (!panel.find_def(key.first)) {
      out.push_back({ViolationKind::UnknownIndicator, key.first, key.second, {}});
    }
  }
  return out;
}

std::vector<std::string> negative_pillar_warnings(const SdfSeries& series) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::array<std::pair<Pillar, double>, 3> vals = {{
        {Pillar::Economic, series.f1[i]},
        {Pillar::Social, series.f2[i]},
        {Pillar::Environmental, series.f3[i]},
    }};
    for (const auto& [p, v] : vals) {
      if (v < 0.0) {
        out.push_back("negative " + std::string(to_string(p)) +
                      " pillar value in year " +
                      std::to_string(series.years[i]));
      }
    }
  }
  return out;
}

}  // namespace cycleforge
