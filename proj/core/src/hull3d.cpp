#include "hull3d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace champ::detail {

namespace {

Vec3 sub(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

struct Face {
    int a = 0;
    int b = 0;
    int c = 0;
    Vec3 n;            // outward unit normal
    double off = 0.0;  // n . x = off on the face plane
    bool alive = false;
};

std::uint64_t edge_key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class HullBuilder {
public:
    explicit HullBuilder(const std::vector<Vec3>& pts) : pts_(pts) {
        scale_ = 1.0;
        for (const Vec3& p : pts_) {
            scale_ = std::max({scale_, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
        }
        eps_ = 1e-12 * scale_;
    }

    // Empty result means the input was degenerate.
    std::vector<int> run() {
        int n = static_cast<int>(pts_.size());
        if (n < 4 || !init_simplex()) {
            return {};
        }
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) {
            order[i] = i;
        }
        // Fixed-seed shuffle; insertion order is data-independent.
        for (int i = n - 1; i > 0; --i) {
            std::uint64_t r = splitmix64(0x5eedull + static_cast<std::uint64_t>(i));
            std::swap(order[i], order[r % static_cast<std::uint64_t>(i + 1)]);
        }
        for (int idx : order) {
            if (!used_[idx]) {
                insert_point(idx);
            }
        }
        std::vector<int> verts;
        std::unordered_set<int> seen;
        for (const Face& f : faces_) {
            if (!f.alive) {
                continue;
            }
            for (int v : {f.a, f.b, f.c}) {
                if (seen.insert(v).second) {
                    verts.push_back(v);
                }
            }
        }
        std::sort(verts.begin(), verts.end());
        return verts;
    }

private:
    bool init_simplex() {
        int n = static_cast<int>(pts_.size());
        used_.assign(n, false);
        int i0 = 0;
        for (int i = 1; i < n; ++i) {
            const Vec3 &p = pts_[i], &q = pts_[i0];
            if (p.x < q.x || (p.x == q.x && (p.y < q.y || (p.y == q.y && p.z < q.z)))) {
                i0 = i;
            }
        }
        int i1 = -1;
        double best = eps_;
        for (int i = 0; i < n; ++i) {
            double d = norm(sub(pts_[i], pts_[i0]));
            if (d > best) {
                best = d;
                i1 = i;
            }
        }
        if (i1 < 0) {
            return false;
        }
        Vec3 axis = sub(pts_[i1], pts_[i0]);
        int i2 = -1;
        best = eps_ * norm(axis);
        for (int i = 0; i < n; ++i) {
            double d = norm(cross(axis, sub(pts_[i], pts_[i0])));
            if (d > best) {
                best = d;
                i2 = i;
            }
        }
        if (i2 < 0) {
            return false;
        }
        Vec3 nrm = cross(axis, sub(pts_[i2], pts_[i0]));
        double nlen = norm(nrm);
        int i3 = -1;
        best = eps_ * nlen;
        for (int i = 0; i < n; ++i) {
            double d = std::abs(dot(nrm, sub(pts_[i], pts_[i0])));
            if (d > best) {
                best = d;
                i3 = i;
            }
        }
        if (i3 < 0) {
            return false;
        }
        inside_ = {(pts_[i0].x + pts_[i1].x + pts_[i2].x + pts_[i3].x) / 4.0,
                   (pts_[i0].y + pts_[i1].y + pts_[i2].y + pts_[i3].y) / 4.0,
                   (pts_[i0].z + pts_[i1].z + pts_[i2].z + pts_[i3].z) / 4.0};
        add_face(i0, i1, i2);
        add_face(i0, i1, i3);
        add_face(i0, i2, i3);
        add_face(i1, i2, i3);
        used_[i0] = used_[i1] = used_[i2] = used_[i3] = true;
        return true;
    }

    void add_face(int a, int b, int c) {
        Face f;
        f.a = a;
        f.b = b;
        f.c = c;
        Vec3 nrm = cross(sub(pts_[b], pts_[a]), sub(pts_[c], pts_[a]));
        double len = norm(nrm);
        if (len <= 0.0) {
            return;  // degenerate sliver, neighbors still close the surface
        }
        nrm = {nrm.x / len, nrm.y / len, nrm.z / len};
        double off = dot(nrm, pts_[a]);
        if (dot(nrm, inside_) > off) {
            nrm = {-nrm.x, -nrm.y, -nrm.z};
            off = -off;
            std::swap(f.b, f.c);
        }
        f.n = nrm;
        f.off = off;
        f.alive = true;
        int id = static_cast<int>(faces_.size());
        faces_.push_back(f);
        edge_face_[edge_key(f.a, f.b)] = id;
        edge_face_[edge_key(f.b, f.c)] = id;
        edge_face_[edge_key(f.c, f.a)] = id;
    }

    void drop_face(int id) {
        Face& f = faces_[id];
        f.alive = false;
        edge_face_.erase(edge_key(f.a, f.b));
        edge_face_.erase(edge_key(f.b, f.c));
        edge_face_.erase(edge_key(f.c, f.a));
    }

    void insert_point(int p) {
        std::vector<int> visible;
        for (int id = 0; id < static_cast<int>(faces_.size()); ++id) {
            const Face& f = faces_[id];
            if (f.alive && dot(f.n, pts_[p]) - f.off > eps_) {
                visible.push_back(id);
            }
        }
        if (visible.empty()) {
            return;
        }
        std::unordered_set<int> visible_set(visible.begin(), visible.end());
        // Horizon: directed edges of visible faces whose mirror lies on a
        // hidden face.
        std::vector<std::pair<int, int>> horizon;
        for (int id : visible) {
            const Face& f = faces_[id];
            const int e[3][2] = {{f.a, f.b}, {f.b, f.c}, {f.c, f.a}};
            for (const auto& uv : e) {
                auto it = edge_face_.find(edge_key(uv[1], uv[0]));
                if (it == edge_face_.end() || !visible_set.count(it->second)) {
                    horizon.emplace_back(uv[0], uv[1]);
                }
            }
        }
        for (int id : visible) {
            drop_face(id);
        }
        for (const auto& [u, v] : horizon) {
            add_face(u, v, p);
        }
        used_[p] = true;
    }

    const std::vector<Vec3>& pts_;
    std::vector<Face> faces_;
    std::unordered_map<std::uint64_t, int> edge_face_;
    std::vector<bool> used_;
    Vec3 inside_;
    double scale_ = 1.0;
    double eps_ = 1e-12;
};

}  // namespace

std::vector<int> convex_hull_vertices(const std::vector<Vec3>& points) {
    HullBuilder builder(points);
    std::vector<int> verts = builder.run();
    if (verts.empty()) {
        verts.resize(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            verts[i] = static_cast<int>(i);
        }
    }
    return verts;
}

}  // namespace champ::detail
