#pragma once

#include <string>
#include <vector>

namespace samcurve::svg {

/// One plotted series: a polyline, a scatter of dots, or histogram stairs.
struct Series {
    enum class Kind { Line, Scatter, Stairs };
    Kind kind = Kind::Line;
    std::vector<double> xs;  ///< for Stairs: bin edges (ys has one fewer entry)
    std::vector<double> ys;
    std::string color = "#000000";
    std::string label;
};

/// One axes box with its series and labels.
struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;

    void add_line(std::vector<double> xs, std::vector<double> ys, std::string color,
                  std::string label = "");
    void add_scatter(std::vector<double> xs, std::vector<double> ys, std::string color,
                     std::string label = "");
    void add_stairs(std::vector<double> edges, std::vector<double> heights, std::string color,
                    std::string label = "");
};

/// Vertically stacked panels rendered to a standalone SVG document. Output
/// is deterministic: fixed palette, fixed "%.6g" number formatting, series
/// drawn in insertion order.
class Figure {
  public:
    explicit Figure(int width = 640, int panel_height = 300);

    Panel& add_panel();
    const std::vector<Panel>& panels() const { return panels_; }

    std::string render() const;
    void write(const std::string& path) const;

  private:
    int width_;
    int panel_height_;
    std::vector<Panel> panels_;
};

}  // namespace samcurve::svg
