#include "cycleforge/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "cycleforge/error.hpp"
#include "cycleforge/format.hpp"

namespace cycleforge {

namespace {

[[noreturn]] void parse_error(std::size_t line, std::size_t column,
                              const std::string& why) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) +
                                         ", column " + std::to_string(column) +
                                         ": " + why);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

IngestResult parse_indicator_csv(std::string_view text,
                                 const std::vector<IndicatorDef>& defs,
                                 int base_year) {
  IngestResult result;
  result.panel.base_year = base_year;
  result.panel.defs = defs;

  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::size_t line_no = 0;
  bool have_header = false;
  bool have_weight = false;
  std::size_t defaulted_weights = 0;
  std::set<IndicatorPanel::Key> seen;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    const auto fields = split_fields(line);
    if (!have_header) {
      const std::vector<std::string_view> expected = {"year", "indicator_id",
                                                      "value", "weight"};
      if (fields.size() < 3 || fields.size() > 4) {
        parse_error(line_no, 1,
                    "expected header year,indicator_id,value[,weight]");
      }
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (trim(fields[i]) != expected[i]) {
          parse_error(line_no, i + 1,
                      "expected column '" + std::string(expected[i]) + "'");
        }
      }
      have_weight = fields.size() == 4;
      if (!have_weight) {
        result.warnings.push_back("no weight column; all weights default to 1.0");
      }
      have_header = true;
      continue;
    }

    const std::size_t want = have_weight ? 4 : 3;
    if (fields.size() != want) {
      parse_error(line_no, std::min(fields.size(), want) + 1,
                  "expected " + std::to_string(want) + " fields, found " +
                      std::to_string(fields.size()));
    }
    int year = 0;
    if (!parse_int(trim(fields[0]), year)) {
      parse_error(line_no, 1, "invalid year '" + std::string(fields[0]) + "'");
    }
    const std::string id(trim(fields[1]));
    if (id.empty()) parse_error(line_no, 2, "empty indicator_id");
    double value = 0.0;
    if (!parse_double(trim(fields[2]), value)) {
      parse_error(line_no, 3, "invalid value '" + std::string(fields[2]) + "'");
    }
    double weight = 1.0;
    if (have_weight) {
      const std::string_view w = trim(fields[3]);
      if (w.empty()) {
        ++defaulted_weights;
      } else if (!parse_double(w, weight)) {
        parse_error(line_no, 4, "invalid weight '" + std::string(fields[3]) + "'");
      }
    }
    if (!seen.insert({id, year}).second) {
      parse_error(line_no, 1,
                  "duplicate row for year " + std::to_string(year) +
                      " and indicator '" + id + "'");
    }
    result.panel.set(id, year, value, weight);
  }

  if (!have_header) parse_error(1, 1, "missing header");
  if (defaulted_weights > 0) {
    result.warnings.push_back(std::to_string(defaulted_weights) +
                              " empty weight field(s) default to 1.0");
  }
  return result;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "error reading " + path.string());
  return ss.str();
}

IngestResult ingest_csv(const std::filesystem::path& path,
                        const std::vector<IndicatorDef>& defs, int base_year) {
  IngestResult result = parse_indicator_csv(read_text_file(path), defs, base_year);
  const auto violations = validate_panel(result.panel);
  if (!violations.empty()) {
    std::string msg = path.string() + ": " + std::to_string(violations.size()) +
                      " violation(s)";
    for (const auto& v : violations) msg += "\n  " + v.describe();
    throw Error(ErrorCode::ValidationFailed, msg);
  }
  return result;
}

}  // namespace cycleforge
