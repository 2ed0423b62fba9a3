#pragma once

#include <string>
#include <vector>

#include "champ/envelope.hpp"

namespace champ {

struct SvgOptions {
    std::string title = "domains of optimality";
    std::string color_label = "communities";
    int width = 760;
    int height = 560;
};

// One filled convex polygon per domain, fill keyed by the per-domain scalar
// (NaN draws grey). Values must align with the domains.
void write_domain_map_svg(const std::string& path, const std::vector<Domain2D>& domains,
                          const Box2& box, const std::vector<double>& values,
                          const SvgOptions& options);

// 1d variant: one vertical strip per interval.
void write_domain_map_svg(const std::string& path, const std::vector<Domain1D>& domains,
                          double gamma_min, double gamma_max,
                          const std::vector<double>& values, const SvgOptions& options);

}  // namespace champ
