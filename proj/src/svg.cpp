#include "birkhoff/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

std::string num(double v) {
  if (std::fabs(v) < 5e-4) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::fabs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

SvgDocument::SvgDocument(double width, double height, std::string title)
    : width_(width), height_(height), title_(std::move(title)) {}

double SvgDocument::px(const Panel& p, double x) const { return p.x + (x - p.x0) / (p.x1 - p.x0) * p.w; }
double SvgDocument::py(const Panel& p, double y) const { return p.y + p.h - (y - p.y0) / (p.y1 - p.y0) * p.h; }

std::size_t SvgDocument::add_panel(double x, double y, double w, double h, double x0, double x1, double y0,
                                   double y1, const std::string& caption) {
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  panels_.push_back({x, y, w, h, x0, x1, y0, y1});
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.5\"/>\n";
  if (y0 < 0 && y1 > 0) segment(panels_.size() - 1, x0, 0, x1, 0, "#bbb", 0.5);
  if (x0 < 0 && x1 > 0) segment(panels_.size() - 1, 0, y0, 0, y1, "#bbb", 0.5);
  text(x, y + h + 12, label(x0), 9);
  text(x + w - 24, y + h + 12, label(x1), 9);
  text(x - 34, y + h, label(y0), 9);
  text(x - 34, y + 9, label(y1), 9);
  text(x, y - 4, caption, 11);
  return panels_.size() - 1;
}

void SvgDocument::polyline(std::size_t panel, const std::vector<std::pair<double, double>>& pts,
                           const std::string& color, double stroke) {
  if (pts.empty()) return;
  const Panel& p = panels_.at(panel);
  body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) body_ += ' ';
    body_ += num(px(p, pts[k].first)) + "," + num(py(p, pts[k].second));
  }
  body_ += "\"/>\n";
}

void SvgDocument::steps(std::size_t panel, const std::vector<double>& breakpoints, const std::vector<double>& values,
                        const std::string& color, double stroke) {
  if (breakpoints.empty()) return;
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(breakpoints.front(), 0.0);
  for (std::size_t j = 0; j < values.size(); ++j) {
    pts.emplace_back(breakpoints[j], values[j]);
    pts.emplace_back(breakpoints[j + 1], values[j]);
  }
  pts.emplace_back(breakpoints.back(), 0.0);
  polyline(panel, pts, color, stroke);
}

void SvgDocument::segment(std::size_t panel, double xa, double ya, double xb, double yb, const std::string& color,
                          double stroke, bool dashed) {
  const Panel& p = panels_.at(panel);
  body_ += "<line x1=\"" + num(px(p, xa)) + "\" y1=\"" + num(py(p, ya)) + "\" x2=\"" + num(px(p, xb)) + "\" y2=\"" +
           num(py(p, yb)) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\"" +
           (dashed ? " stroke-dasharray=\"4 3\"" : "") + "/>\n";
}

void SvgDocument::dots(std::size_t panel, const std::vector<std::pair<double, double>>& pts, const std::string& color,
                       double radius) {
  const Panel& p = panels_.at(panel);
  for (const auto& [x, y] : pts) {
    body_ += "<circle cx=\"" + num(px(p, x)) + "\" cy=\"" + num(py(p, y)) + "\" r=\"" + num(radius) + "\" fill=\"" +
             color + "\"/>\n";
  }
}

void SvgDocument::text(double x, double y, const std::string& s, double size) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" + num(size) +
           "\">" + svg_escape(s) + "</text>\n";
}

void SvgDocument::metadata(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }

std::string SvgDocument::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
         "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
  out += "<title>" + svg_escape(title_) + "</title>\n";
  if (!meta_.empty()) {
    out += "<metadata>\n";
    for (const auto& [k, v] : meta_) out += "  <entry key=\"" + svg_escape(k) + "\">" + svg_escape(v) + "</entry>\n";
    out += "</metadata>\n";
  }
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

void SvgDocument::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << str();
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace birkhoff
