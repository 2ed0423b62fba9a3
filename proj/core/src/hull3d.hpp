#pragma once

#include <vector>

namespace champ::detail {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Indices of input points on the convex hull, by incremental insertion with
// tolerance-based visibility. Points within tolerance of the hull surface may
// be included or excluded; callers must treat the result as a candidate set.
// On degenerate input (affinely dependent point cloud) every index is
// returned.
std::vector<int> convex_hull_vertices(const std::vector<Vec3>& points);

}  // namespace champ::detail
