#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cycleforge/sdf.hpp"

namespace cycleforge {

struct IngestResult {
  IndicatorPanel panel;
  std::vector<std::string> warnings;
};

/// Parses long-format indicator CSV with header `year,indicator_id,value` and
/// an optional trailing `weight` column (missing weights default to 1.0 with a
/// warning). Throws ParseError "line L, column C: ..." on malformed input or a
/// repeated (year, indicator_id) pair. Does not validate the panel.
IngestResult parse_indicator_csv(std::string_view text,
                                 const std::vector<IndicatorDef>& defs,
                                 int base_year);

/// Reads and parses `path`, then runs validate_panel; any violation throws
/// ValidationFailed listing them all.
IngestResult ingest_csv(const std::filesystem::path& path,
                        const std::vector<IndicatorDef>& defs, int base_year);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cycleforge
