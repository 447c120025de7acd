#include "samcurve/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace samcurve::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finalize() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

}  // namespace

void Panel::add_line(std::vector<double> xs, std::vector<double> ys, std::string color,
                     std::string label) {
    series.push_back({Series::Kind::Line, std::move(xs), std::move(ys), std::move(color),
                      std::move(label)});
}

void Panel::add_scatter(std::vector<double> xs, std::vector<double> ys, std::string color,
                        std::string label) {
    series.push_back({Series::Kind::Scatter, std::move(xs), std::move(ys), std::move(color),
                      std::move(label)});
}

void Panel::add_stairs(std::vector<double> edges, std::vector<double> heights, std::string color,
                       std::string label) {
    if (edges.size() != heights.size() + 1) {
        throw std::invalid_argument("stairs need one more edge than heights");
    }
    series.push_back({Series::Kind::Stairs, std::move(edges), std::move(heights),
                      std::move(color), std::move(label)});
}

Figure::Figure(int width, int panel_height) : width_(width), panel_height_(panel_height) {}

Panel& Figure::add_panel() {
    panels_.emplace_back();
    return panels_.back();
}

std::string Figure::render() const {
    const int margin_l = 64, margin_r = 16, margin_t = 28, margin_b = 40;
    const int total_h = panel_height_ * std::max<int>(1, static_cast<int>(panels_.size()));

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << total_h << "\" viewBox=\"0 0 " << width_ << " " << total_h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    for (std::size_t p = 0; p < panels_.size(); ++p) {
        const Panel& panel = panels_[p];
        const double top = static_cast<double>(p) * panel_height_ + margin_t;
        const double left = margin_l;
        const double plot_w = width_ - margin_l - margin_r;
        const double plot_h = panel_height_ - margin_t - margin_b;

        Range rx, ry;
        for (const Series& s : panel.series) {
            for (double v : s.xs) rx.include(v);
            for (double v : s.ys) ry.include(v);
            if (s.kind == Series::Kind::Stairs) ry.include(0.0);
        }
        rx.finalize();
        ry.finalize();

        auto px = [&](double x) { return left + (x - rx.lo) / (rx.hi - rx.lo) * plot_w; };
        auto py = [&](double y) { return top + plot_h - (y - ry.lo) / (ry.hi - ry.lo) * plot_h; };

        out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
        out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
            << num(plot_w) << "\" height=\"" << num(plot_h)
            << "\" fill=\"none\" stroke=\"#444444\"/>\n";
        if (!panel.title.empty()) {
            out << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(top - 10)
                << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(panel.title)
                << "</text>\n";
        }
        // axis extremes
        out << "<text x=\"" << num(left) << "\" y=\"" << num(top + plot_h + 14)
            << "\" text-anchor=\"middle\">" << num(rx.lo) << "</text>\n";
        out << "<text x=\"" << num(left + plot_w) << "\" y=\"" << num(top + plot_h + 14)
            << "\" text-anchor=\"middle\">" << num(rx.hi) << "</text>\n";
        out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + plot_h)
            << "\" text-anchor=\"end\">" << num(ry.lo) << "</text>\n";
        out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + 10)
            << "\" text-anchor=\"end\">" << num(ry.hi) << "</text>\n";
        if (!panel.x_label.empty()) {
            out << "<text x=\"" << num(left + plot_w / 2) << "\" y=\""
                << num(top + plot_h + 30) << "\" text-anchor=\"middle\">"
                << escape(panel.x_label) << "</text>\n";
        }
        if (!panel.y_label.empty()) {
            out << "<text x=\"" << num(left - 48) << "\" y=\"" << num(top + plot_h / 2)
                << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << num(left - 48) << " "
                << num(top + plot_h / 2) << ")\">" << escape(panel.y_label) << "</text>\n";
        }

        int legend_row = 0;
        for (const Series& s : panel.series) {
            if (s.kind == Series::Kind::Line) {
                out << "<polyline fill=\"none\" stroke=\"" << s.color
                    << "\" stroke-width=\"1.5\" points=\"";
                for (std::size_t k = 0; k < s.xs.size(); ++k) {
                    if (k) out << " ";
                    out << num(px(s.xs[k])) << "," << num(py(s.ys[k]));
                }
                out << "\"/>\n";
            } else if (s.kind == Series::Kind::Scatter) {
                for (std::size_t k = 0; k < s.xs.size(); ++k) {
                    out << "<circle cx=\"" << num(px(s.xs[k])) << "\" cy=\"" << num(py(s.ys[k]))
                        << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
                }
            } else {
                for (std::size_t k = 0; k < s.ys.size(); ++k) {
                    const double x0 = px(s.xs[k]);
                    const double x1 = px(s.xs[k + 1]);
                    const double y0 = py(0.0);
                    const double y1 = py(s.ys[k]);
                    out << "<rect x=\"" << num(x0) << "\" y=\"" << num(std::min(y0, y1))
                        << "\" width=\"" << num(x1 - x0) << "\" height=\""
                        << num(std::fabs(y0 - y1)) << "\" fill=\"" << s.color
                        << "\" fill-opacity=\"0.25\" stroke=\"" << s.color << "\"/>\n";
                }
            }
            if (!s.label.empty()) {
                const double ly = top + 14 + 14 * legend_row++;
                out << "<line x1=\"" << num(left + plot_w - 120) << "\" y1=\"" << num(ly - 4)
                    << "\" x2=\"" << num(left + plot_w - 104) << "\" y2=\"" << num(ly - 4)
                    << "\" stroke=\"" << s.color << "\" stroke-width=\"3\"/>\n";
                out << "<text x=\"" << num(left + plot_w - 100) << "\" y=\"" << num(ly)
                    << "\">" << escape(s.label) << "</text>\n";
            }
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void Figure::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << render();
}

}  // namespace samcurve::svg
