#include "cycleforge/emit.hpp"

#include <algorithm>
#include <fstream>

#include "cycleforge/error.hpp"
#include "cycleforge/format.hpp"
#include "cycleforge/ingest.hpp"

namespace cycleforge {

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "error writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot replace " + path.string());
  }
}

std::string curve_csv(const SampledCurve& sc) {
  std::string out = "t,y_dd\n";
  for (std::size_t i = 0; i < sc.size(); ++i) {
    out += format_double(sc.ts[i]);
    out += ',';
    out += format_double(sc.ys[i]);
    out += '\n';
  }
  return out;
}

void emit_curve_csv(const SampledCurve& sc, const std::filesystem::path& path) {
  write_file_atomic(path, curve_csv(sc));
}

SampledCurve parse_curve_csv(std::string_view text) {
  std::vector<double> ts;
  std::vector<double> ys;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header) {
      if (line != "t,y_dd") {
        throw Error(ErrorCode::ParseError, "line 1, column 1: expected header t,y_dd");
      }
      header = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    double t = 0.0;
    double y = 0.0;
    if (comma == std::string_view::npos || !parse_double(line.substr(0, comma), t)) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ", column 1: invalid t");
    }
    if (!parse_double(line.substr(comma + 1), y)) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ", column 2: invalid y_dd");
    }
    ts.push_back(t);
    ys.push_back(y);
  }
  return SampledCurve::create(std::move(ts), std::move(ys));
}

SampledCurve read_curve_csv(const std::filesystem::path& path) {
  return parse_curve_csv(read_text_file(path));
}

namespace {

constexpr double kMarginX = 0.1 * kSvgWidth;
constexpr double kMarginY = 0.1 * kSvgHeight;

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string curve_svg(const SampledCurve& sc,
                      std::span<const InflectionPoint> markers) {
  if (sc.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "an SVG curve needs 2 samples");
  }
  const double t_lo = sc.ts.front();
  const double t_hi = sc.ts.back();
  const auto [y_min_it, y_max_it] = std::minmax_element(sc.ys.begin(), sc.ys.end());
  double y_lo = *y_min_it;
  double y_hi = *y_max_it;
  if (y_hi - y_lo <= 1e-12 * std::max(1.0, std::abs(y_hi))) {
    const double pad = std::max(1.0, std::abs(y_hi)) * 0.5;
    y_lo -= pad;
    y_hi += pad;
  }

  const double plot_w = kSvgWidth - 2.0 * kMarginX;
  const double plot_h = kSvgHeight - 2.0 * kMarginY;
  auto px = [&](double t) { return kMarginX + (t - t_lo) / (t_hi - t_lo) * plot_w; };
  auto py = [&](double y) {
    return kSvgHeight - kMarginY - (y - y_lo) / (y_hi - y_lo) * plot_h;
  };
  auto fx = [](double v) { return format_fixed(v, 3); };

  const std::string left = fx(kMarginX);
  const std::string right = fx(kSvgWidth - kMarginX);
  const std::string top = fx(kMarginY);
  const std::string bottom = fx(kSvgHeight - kMarginY);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
       std::to_string(kSvgWidth) + "\" height=\"" + std::to_string(kSvgHeight) +
       "\" viewBox=\"0 0 " + std::to_string(kSvgWidth) + " " +
       std::to_string(kSvgHeight) + "\">\n";
  s += "  <title>" + escape_xml("y_dd(t), t in [" + format_double(t_lo) + ", " +
                                format_double(t_hi) + "]") +
       "</title>\n";
  s += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(kSvgWidth) +
       "\" height=\"" + std::to_string(kSvgHeight) + "\" fill=\"white\"/>\n";
  s += "  <g stroke=\"black\" stroke-width=\"1\">\n";
  s += "    <line x1=\"" + left + "\" y1=\"" + bottom + "\" x2=\"" + right +
       "\" y2=\"" + bottom + "\"/>\n";
  s += "    <line x1=\"" + left + "\" y1=\"" + top + "\" x2=\"" + left +
       "\" y2=\"" + bottom + "\"/>\n";
  s += "  </g>\n";
  s += "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  const std::string below = fx(kSvgHeight - kMarginY + 18.0);
  s += "    <text x=\"" + left + "\" y=\"" + below + "\" text-anchor=\"start\">" +
       escape_xml(format_double(t_lo)) + "</text>\n";
  s += "    <text x=\"" + right + "\" y=\"" + below + "\" text-anchor=\"end\">" +
       escape_xml(format_double(t_hi)) + "</text>\n";
  s += "    <text x=\"" + fx(kSvgWidth / 2.0) + "\" y=\"" +
       fx(kSvgHeight - kMarginY / 4.0) + "\" text-anchor=\"middle\">t</text>\n";
  const std::string beside = fx(kMarginX - 6.0);
  s += "    <text x=\"" + beside + "\" y=\"" + bottom + "\" text-anchor=\"end\">" +
       escape_xml(format_double(y_lo)) + "</text>\n";
  s += "    <text x=\"" + beside + "\" y=\"" + fx(kMarginY + 12.0) +
       "\" text-anchor=\"end\">" + escape_xml(format_double(y_hi)) + "</text>\n";
  s += "    <text x=\"" + fx(kMarginX / 4.0) + "\" y=\"" + fx(kSvgHeight / 2.0) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 " + fx(kMarginX / 4.0) +
       " " + fx(kSvgHeight / 2.0) + ")\">y_dd</text>\n";
  s += "  </g>\n";

  s += "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < sc.size(); ++i) {
    if (i > 0) s += ' ';
    s += fx(px(sc.ts[i]));
    s += ',';
    s += fx(py(sc.ys[i]));
  }
  s += "\"/>\n";

  for (const auto& m : markers) {
    s += "  <circle cx=\"" + fx(px(m.time)) + "\" cy=\"" + fx(py(m.value)) +
         "\" r=\"4\" fill=\"#d62728\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

void emit_svg(const SampledCurve& sc, std::span<const InflectionPoint> markers,
              const std::filesystem::path& path) {
  write_file_atomic(path, curve_svg(sc, markers));
}

}  // namespace cycleforge
