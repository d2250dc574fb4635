#include "dunbar/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <system_error>
#include <unistd.h>

namespace dunbar::output {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // avoid "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<Cell> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("csv row width does not match the header");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&out](const auto& cells, auto&& to_string) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ',';
      out += csv_field(to_string(cells[c]));
    }
    out += '\n';
  };
  emit(header_, [](const std::string& s) { return s; });
  for (const auto& row : rows_) emit(row, [](const Cell& cell) { return cell.value_or(""); });
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 170;
constexpr double kTop = 50;
constexpr double kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct AxisScale {
  double lo;
  double hi;
  double step;
};

AxisScale nice_scale(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double resid = raw / mag;
  const double step = (resid <= 1.0 ? 1.0 : resid <= 2.0 ? 2.0 : resid <= 5.0 ? 5.0 : 10.0) * mag;
  return {std::floor(lo / step + 1e-9) * step, std::ceil(hi / step - 1e-9) * step, step};
}

}  // namespace

LineChart::LineChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void LineChart::add_series(Series s) {
  if (s.x.size() != s.y.size()) throw std::invalid_argument("series x/y length mismatch");
  series_.push_back(std::move(s));
}

std::string LineChart::render() const {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series_) {
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      x_lo = std::min(x_lo, s.x[k]);
      x_hi = std::max(x_hi, s.x[k]);
      y_lo = std::min(y_lo, s.y[k]);
      y_hi = std::max(y_hi, s.y[k]);
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  const AxisScale xs = nice_scale(x_lo, x_hi);
  const AxisScale ys = nice_scale(std::min(0.0, y_lo), y_hi);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xs.lo) / (xs.hi - xs.lo) * plot_w; };
  auto py = [&](double y) { return kTop + (ys.hi - y) / (ys.hi - ys.lo) * plot_h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + coord(kWidth) +
         "\" height=\"" + coord(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + coord(kLeft + plot_w / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">" +
         xml_escape(title_) + "</text>\n";

  // Grid and ticks.
  for (double v = xs.lo; v <= xs.hi + xs.step * 1e-6; v += xs.step) {
    const std::string x = coord(px(v));
    out += "<line x1=\"" + x + "\" y1=\"" + coord(kTop) + "\" x2=\"" + x + "\" y2=\"" +
           coord(kTop + plot_h) + "\" stroke=\"#e0e0e0\"/>\n";
    out += "<text x=\"" + x + "\" y=\"" + coord(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + format_number(std::abs(v) < xs.step * 1e-9 ? 0.0 : v) +
           "</text>\n";
  }
  for (double v = ys.lo; v <= ys.hi + ys.step * 1e-6; v += ys.step) {
    const std::string y = coord(py(v));
    out += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + y + "\" x2=\"" + coord(kLeft + plot_w) +
           "\" y2=\"" + y + "\" stroke=\"#e0e0e0\"/>\n";
    out += "<text x=\"" + coord(kLeft - 8) + "\" y=\"" + coord(py(v) + 4) +
           "\" text-anchor=\"end\">" + format_number(std::abs(v) < ys.step * 1e-9 ? 0.0 : v) +
           "</text>\n";
  }
  out += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) + "\" width=\"" + coord(plot_w) +
         "\" height=\"" + coord(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"" + coord(kLeft + plot_w / 2) + "\" y=\"" + coord(kHeight - 15) +
         "\" text-anchor=\"middle\">" + xml_escape(x_label_) + "</text>\n";
  out += "<text x=\"20\" y=\"" + coord(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " + coord(kTop + plot_h / 2) +
         ")\">" + xml_escape(y_label_) + "</text>\n";

  for (std::size_t k = 0; k < series_.size(); ++k) {
    const auto& s = series_[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    std::string points;
    for (std::size_t p = 0; p < s.x.size(); ++p) {
      if (!std::isfinite(s.x[p]) || !std::isfinite(s.y[p])) continue;
      if (!points.empty()) points += ' ';
      points += coord(px(s.x[p])) + "," + coord(py(s.y[p]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";

    const double ly = kTop + 10 + 20 * static_cast<double>(k);
    const double lx = kLeft + plot_w + 15;
    out += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly) + "\" x2=\"" + coord(lx + 25) +
           "\" y2=\"" + coord(ly) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + coord(lx + 32) + "\" y=\"" + coord(ly + 4) + "\">" + xml_escape(s.name) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Files

void write_files_atomically(
    const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  namespace fs = std::filesystem;
  std::vector<fs::path> temps;
  auto cleanup = [&temps] {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
  };

  for (const auto& [path, contents] : files) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      cleanup();
      throw WriteError("cannot write " + path.string());
    }
    temps.push_back(tmp);
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    os.close();
    if (!os) {
      cleanup();
      throw WriteError("failed while writing " + path.string());
    }
  }
  for (std::size_t k = 0; k < files.size(); ++k) {
    std::error_code ec;
    fs::rename(temps[k], files[k].first, ec);
    if (ec) {
      cleanup();
      throw WriteError("cannot move output into place at " + files[k].first.string() + ": " +
                       ec.message());
    }
  }
}

}  // namespace dunbar::output
