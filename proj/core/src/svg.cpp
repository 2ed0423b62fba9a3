#include "champ/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "champ/errors.hpp"

namespace champ {

namespace {

const double kViridis[][3] = {
    {0.267, 0.005, 0.329}, {0.283, 0.131, 0.449}, {0.262, 0.242, 0.521},
    {0.220, 0.343, 0.549}, {0.177, 0.438, 0.558}, {0.143, 0.523, 0.556},
    {0.120, 0.607, 0.540}, {0.166, 0.691, 0.497}, {0.320, 0.771, 0.411},
    {0.526, 0.833, 0.288}, {0.762, 0.876, 0.137}, {0.993, 0.906, 0.144}};

std::string color_for(double t) {
    if (std::isnan(t)) {
        return "#b0b0b0";
    }
    t = std::clamp(t, 0.0, 1.0);
    constexpr int n = static_cast<int>(sizeof(kViridis) / sizeof(kViridis[0]));
    double x = t * (n - 1);
    int k = std::min(n - 2, static_cast<int>(x));
    double f = x - k;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(255 * (kViridis[k][0] + f * (kViridis[k + 1][0] - kViridis[k][0]))),
                  static_cast<int>(255 * (kViridis[k][1] + f * (kViridis[k + 1][1] - kViridis[k][1]))),
                  static_cast<int>(255 * (kViridis[k][2] + f * (kViridis[k + 1][2] - kViridis[k][2]))));
    return buf;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Frame {
    double x0, y0, x1, y1;  // data box
    double px0, py0, px1, py1;  // pixel box, py0 = top

    double px(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
    double py(double y) const { return py1 - (y - y0) / (y1 - y0) * (py1 - py0); }
};

class SvgWriter {
public:
    SvgWriter(const std::string& path, const SvgOptions& opt) : opt_(opt), out_(path) {
        if (!out_) {
            throw validation_error("cannot write " + path);
        }
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
             << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << " "
             << opt.height << "\">\n";
        out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }
    ~SvgWriter() { out_ << "</svg>\n"; }

    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill) {
        out_ << "<polygon points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k) {
            out_ << (k ? " " : "") << fmt(pts[k].first) << "," << fmt(pts[k].second);
        }
        out_ << "\" fill=\"" << fill << "\" stroke=\"#202020\" stroke-width=\"0.6\"/>\n";
    }

    void text(double x, double y, const std::string& s, int size = 12,
              const std::string& anchor = "start") {
        out_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\"" << size
             << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s
             << "</text>\n";
    }

    void frame_box(const Frame& f) {
        out_ << "<rect x=\"" << fmt(f.px0) << "\" y=\"" << fmt(f.py0) << "\" width=\""
             << fmt(f.px1 - f.px0) << "\" height=\"" << fmt(f.py1 - f.py0)
             << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }

    void legend(const Frame& f, double lo, double hi, const std::string& label) {
        double x = f.px1 + 18;
        double h = f.py1 - f.py0;
        const int steps = 24;
        for (int k = 0; k < steps; ++k) {
            double t = (k + 0.5) / steps;
            out_ << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(f.py1 - (k + 1) * h / steps)
                 << "\" width=\"14\" height=\"" << fmt(h / steps + 0.5) << "\" fill=\""
                 << color_for(t) << "\"/>\n";
        }
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.3g", lo);
        text(x + 18, f.py1, buf, 11);
        std::snprintf(buf, sizeof(buf), "%.3g", hi);
        text(x + 18, f.py0 + 10, buf, 11);
        text(x, f.py0 - 8, label, 11);
    }

private:
    SvgOptions opt_;
    std::ofstream out_;
};

std::pair<double, double> value_range(const std::vector<double>& values) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        if (!std::isnan(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo < hi)) {
        lo = std::isfinite(lo) ? lo - 0.5 : 0.0;
        hi = lo + 1.0;
    }
    return {lo, hi};
}

void axes(SvgWriter& svg, const Frame& f, const std::string& xlabel,
          const std::string& ylabel, const SvgOptions& opt) {
    svg.frame_box(f);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", f.x0);
    svg.text(f.px0, f.py1 + 16, buf, 11, "middle");
    std::snprintf(buf, sizeof(buf), "%.3g", f.x1);
    svg.text(f.px1, f.py1 + 16, buf, 11, "middle");
    std::snprintf(buf, sizeof(buf), "%.3g", f.y0);
    svg.text(f.px0 - 6, f.py1, buf, 11, "end");
    std::snprintf(buf, sizeof(buf), "%.3g", f.y1);
    svg.text(f.px0 - 6, f.py0 + 8, buf, 11, "end");
    svg.text((f.px0 + f.px1) / 2, f.py1 + 32, xlabel, 12, "middle");
    svg.text(f.px0 - 28, (f.py0 + f.py1) / 2, ylabel, 12, "middle");
    svg.text((f.px0 + f.px1) / 2, f.py0 - 12, opt.title, 14, "middle");
}

}  // namespace

void write_domain_map_svg(const std::string& path, const std::vector<Domain2D>& domains,
                          const Box2& box, const std::vector<double>& values,
                          const SvgOptions& options) {
    SvgWriter svg(path, options);
    Frame f{box.gamma_min, box.omega_min, box.gamma_max, box.omega_max,
            60.0, 40.0, options.width - 90.0, options.height - 50.0};
    auto [lo, hi] = value_range(values);
    for (std::size_t k = 0; k < domains.size(); ++k) {
        std::vector<std::pair<double, double>> pts;
        for (const Point2& p : domains[k].polygon) {
            pts.emplace_back(f.px(p.gamma), f.py(p.omega));
        }
        double v = k < values.size() ? values[k] : std::nan("");
        double t = std::isnan(v) ? v : (v - lo) / (hi - lo);
        svg.polygon(pts, color_for(t));
    }
    axes(svg, f, "gamma", "omega", options);
    svg.legend(f, lo, hi, options.color_label);
}

void write_domain_map_svg(const std::string& path, const std::vector<Domain1D>& domains,
                          double gamma_min, double gamma_max,
                          const std::vector<double>& values, const SvgOptions& options) {
    SvgWriter svg(path, options);
    Frame f{gamma_min, 0.0, gamma_max, 1.0, 60.0, 40.0, options.width - 90.0,
            options.height - 50.0};
    auto [lo, hi] = value_range(values);
    for (std::size_t k = 0; k < domains.size(); ++k) {
        std::vector<std::pair<double, double>> pts = {
            {f.px(domains[k].gamma_lo), f.py(0.0)},
            {f.px(domains[k].gamma_hi), f.py(0.0)},
            {f.px(domains[k].gamma_hi), f.py(1.0)},
            {f.px(domains[k].gamma_lo), f.py(1.0)}};
        double v = k < values.size() ? values[k] : std::nan("");
        double t = std::isnan(v) ? v : (v - lo) / (hi - lo);
        svg.polygon(pts, color_for(t));
    }
    axes(svg, f, "gamma", "", options);
    svg.legend(f, lo, hi, options.color_label);
}

}  // namespace champ
