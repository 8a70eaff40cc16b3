#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cycleforge {

enum class Pillar { Economic, Social, Environmental };

inline constexpr std::array<Pillar, 3> kPillars = {
    Pillar::Economic, Pillar::Social, Pillar::Environmental};

std::string_view to_string(Pillar pillar) noexcept;
std::optional<Pillar> parse_pillar(std::string_view name) noexcept;

struct IndicatorDef {
  std::string id;
  Pillar pillar = Pillar::Economic;
  int orientation = +1;  // +1 benefit, -1 harm
  int scale_exponent = 0;  // value is multiplied by 10^scale_exponent
  std::string description;
};

inline constexpr int kMinScaleExponent = -12;
inline constexpr int kMaxScaleExponent = 12;
inline constexpr int kDefaultBaseYear = 2010;

/// Exponent that brings `max_value` into [1, 10): -floor(log10(max_value)).
/// Returns 0 for non-positive input. Clamped to the allowed exponent range.
int suggest_scale_exponent(double max_value);

/// Documented presets for the economic, social and environmental indicators
/// of the sustainability index. Harmful quantities carry orientation -1.
std::vector<IndicatorDef> indicator_catalog();

/// Long-format indicator table keyed by (indicator id, year).
struct IndicatorPanel {
  using Key = std::pair<std::string, int>;

  int base_year = kDefaultBaseYear;
  std::vector<int> years;
  std::vector<IndicatorDef> defs;
  std::map<Key, double> values;
  std::map<Key, double> weights;

  const IndicatorDef* find_def(std::string_view id) const;
  bool has_year(int year) const;

  /// Stores a datum and registers the year if needed.
  void set(const std::string& id, int year, double value, double weight = 1.0);
};

struct PillarTriple {
  double economic = 0.0;
  double social = 0.0;
  double environmental = 0.0;

  double operator[](Pillar p) const;
  double mean() const { return (economic + social + environmental) / 3.0; }
};

double pillar_value(const IndicatorPanel& panel, Pillar pillar, int year);
PillarTriple sdf_vector(const IndicatorPanel& panel, int year);
double sdf_aggregate(const IndicatorPanel& panel, int year);

struct SdfSeries {
  std::vector<int> years;
  std::vector<double> f1;  // economic
  std::vector<double> f2;  // social
  std::vector<double> f3;  // environmental
  std::vector<double> f_agg;

  std::size_t size() const { return years.size(); }
};

SdfSeries sdf_series(const IndicatorPanel& panel);

enum class ViolationKind {
  EmptyId,
  DuplicateId,
  ExponentOutOfRange,
  BadOrientation,
  EmptyPillar,
  YearBeforeBase,
  UnsortedYears,
  MissingValue,
  MissingWeight,
  NegativeValue,
  NegativeWeight,
  UnknownIndicator,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string id;    // empty when not indicator-specific
  std::optional<int> year;
  std::optional<Pillar> pillar;

  std::string describe() const;
};

/// Empty iff the panel satisfies every structural invariant.
std::vector<Violation> validate_panel(const IndicatorPanel& panel);

/// Human-readable warnings for years where any pillar value is negative
/// (possible with -1 orientations).
std::vector<std::string> negative_pillar_warnings(const SdfSeries& series);

}  // namespace cycleforge
