#pragma once

#include <string>
#include <utility>
#include <vector>

namespace birkhoff {

/// Deterministic SVG canvas made of panels with their own data ranges.
/// Coordinates are printed with fixed precision, so equal input gives
/// byte-identical output.
class SvgDocument {
 public:
  SvgDocument(double width, double height, std::string title);

  struct Panel {
    double x = 0, y = 0, w = 0, h = 0;          // pixel box
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;      // data range
  };

  /// Adds a panel and returns its index. Draws a frame and labelled axes.
  std::size_t add_panel(double x, double y, double w, double h, double x0, double x1, double y0, double y1,
                        const std::string& caption);

  void polyline(std::size_t panel, const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double stroke = 1.0);
  /// Right-continuous step function, zero outside [front, back].
  void steps(std::size_t panel, const std::vector<double>& breakpoints, const std::vector<double>& values,
             const std::string& color, double stroke = 1.0);
  void segment(std::size_t panel, double xa, double ya, double xb, double yb, const std::string& color,
               double stroke = 1.0, bool dashed = false);
  void dots(std::size_t panel, const std::vector<std::pair<double, double>>& pts, const std::string& color,
            double radius = 1.5);
  void text(double x, double y, const std::string& s, double size = 12.0);
  /// Free-form key/value written into <metadata>.
  void metadata(const std::string& key, const std::string& value);

  std::string str() const;
  /// Writes the document; throws IoError on failure.
  void save(const std::string& path) const;

 private:
  double px(const Panel& p, double x) const;
  double py(const Panel& p, double y) const;

  double width_, height_;
  std::string title_;
  std::vector<Panel> panels_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::string body_;
};

std::string svg_escape(const std::string& s);

}  // namespace birkhoff
