#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "specgeom/common.hpp"
#include "specgeom/linprog.hpp"

// Exact computational geometry for open convex polygons in the plane:
// construction, functionals, metrics, transformations.

namespace specgeom {

inline constexpr double kVertexMergeTol = 1e-12;   // max-norm
inline constexpr double kDegenerateArea = 1e-14;
inline constexpr double kContainsTol = 1e-12;
inline constexpr double kUnionMinGap = 1e-9;

struct GeometricSummary {
    double measure = 0.0;    // area
    double perimeter = 0.0;
    double moment = 0.0;     // second moment about the centroid
    double inradius = 0.0;
    double diameter = 0.0;
    Vec2 centroid{};
};

// Oriented edge of a convex polygon: interior is { p : normal*p <= offset }.
struct HalfPlane {
    Vec2 normal{};     // unit outward normal
    double offset = 0.0;
};

class ConvexBody {
public:
    const std::vector<Vec2>& vertices() const { return verts_; }
    const std::vector<HalfPlane>& edges() const { return edges_; }
    const GeometricSummary& summary() const { return summary_; }
    std::size_t size() const { return verts_.size(); }

    friend ConvexBody make_body(std::vector<Vec2> points);

private:
    ConvexBody() = default;
    std::vector<Vec2> verts_;       // counterclockwise, canonical start
    std::vector<HalfPlane> edges_;  // edge i runs verts_[i] -> verts_[i+1]
    GeometricSummary summary_;
};

namespace detail {

inline bool lex_less(Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) {
                              return std::abs(a.x - b.x) <= kVertexMergeTol &&
                                     std::abs(a.y - b.y) <= kVertexMergeTol;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

inline std::pair<Vec2, double> chebyshev_center(const std::vector<HalfPlane>& edges) {
    std::vector<LpConstraint<3>> cons;
    cons.reserve(edges.size() + 1);
    for (const auto& e : edges) {
        cons.push_back({{e.normal.x, e.normal.y, 1.0}, e.offset});
    }
    cons.push_back({{0.0, 0.0, -1.0}, 0.0});
    const auto sol = lp_solve_3d({0.0, 0.0, 1.0}, std::move(cons));
    if (!sol) throw DegenerateInput("chebyshev center: infeasible half-plane system");
    return {Vec2{(*sol)[0], (*sol)[1]}, (*sol)[2]};
}

}  // namespace detail

// Canonical convex polygon: convex hull of the input, counterclockwise,
// starting from the lexicographically smallest vertex. Collinear and
// near-duplicate input points are absorbed.
inline ConvexBody make_body(std::vector<Vec2> points) {
    if (points.size() < 3) throw DegenerateInput("make_body: need at least 3 points");
    std::vector<Vec2> hull = detail::convex_hull(std::move(points));
    if (hull.size() < 3) throw DegenerateInput("make_body: hull is degenerate");

    // merge any residual near-duplicate consecutive vertices
    std::vector<Vec2> verts;
    verts.reserve(hull.size());
    for (const Vec2 v : hull) {
        if (!verts.empty() && std::abs(v.x - verts.back().x) <= kVertexMergeTol &&
            std::abs(v.y - verts.back().y) <= kVertexMergeTol) {
            continue;
        }
        verts.push_back(v);
    }
    while (verts.size() > 1 && std::abs(verts.front().x - verts.back().x) <= kVertexMergeTol &&
           std::abs(verts.front().y - verts.back().y) <= kVertexMergeTol) {
        verts.pop_back();
    }
    if (verts.size() < 3) throw DegenerateInput("make_body: hull is degenerate");

    std::size_t start = 0;
    for (std::size_t i = 1; i < verts.size(); ++i) {
        if (detail::lex_less(verts[i], verts[start])) start = i;
    }
    std::rotate(verts.begin(), verts.begin() + static_cast<std::ptrdiff_t>(start), verts.end());

    const std::size_t n = verts.size();
    double twice_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        twice_area += cross(verts[i], verts[(i + 1) % n]);
    }
    if (twice_area * 0.5 < kDegenerateArea) throw DegenerateInput("make_body: area below threshold");

    ConvexBody body;
    body.verts_ = std::move(verts);

    auto& vs = body.verts_;
    body.edges_.reserve(n);
    Vec2 centroid{};
    double moment_origin = 0.0;
    double perimeter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vs[i], b = vs[(i + 1) % n];
        const double cr = cross(a, b);
        centroid = centroid + (a + b) * cr;
        moment_origin += cr * (norm_sq(a) + dot(a, b) + norm_sq(b));
        const Vec2 e = b - a;
        const double len = norm(e);
        perimeter += len;
        body.edges_.push_back({Vec2{e.y / len, -e.x / len}, 0.0});
        body.edges_.back().offset = dot(body.edges_.back().normal, a);
    }
    const double area = 0.5 * twice_area;
    centroid = (1.0 / (6.0 * area)) * centroid;

    auto& s = body.summary_;
    s.measure = area;
    s.perimeter = perimeter;
    s.centroid = centroid;
    s.moment = moment_origin / 12.0 - area * norm_sq(centroid);

    double diam_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            diam_sq = std::max(diam_sq, norm_sq(vs[i] - vs[j]));
        }
    }
    s.diameter = std::sqrt(diam_sq);
    s.inradius = detail::chebyshev_center(body.edges_).second;
    if (s.inradius <= 0.0) throw DegenerateInput("make_body: empty interior");
    return body;
}

inline ConvexBody make_rectangle_body(double width, double height, Vec2 center = {}) {
    const double hw = 0.5 * width, hh = 0.5 * height;
    return make_body({{center.x - hw, center.y - hh},
                      {center.x + hw, center.y - hh},
                      {center.x + hw, center.y + hh},
                      {center.x - hw, center.y + hh}});
}

inline ConvexBody make_regular_polygon(int n, double circumradius, Vec2 center = {}) {
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        pts.push_back({center.x + circumradius * std::cos(t), center.y + circumradius * std::sin(t)});
    }
    return make_body(std::move(pts));
}

// ---------------------------------------------------------------------------
// Transformations (all return fresh bodies; ConvexBody is immutable)
// ---------------------------------------------------------------------------

// Homothety about the centroid; measure scales as alpha^2, perimeter and
// every length as alpha, the moment as alpha^4.
inline ConvexBody scale(const ConvexBody& body, double alpha) {
    if (!(alpha > 0.0)) throw NonPositiveScale("scale: alpha must be positive");
    const Vec2 c = body.summary().centroid;
    std::vector<Vec2> pts;
    pts.reserve(body.size());
    for (const Vec2 v : body.vertices()) pts.push_back(c + alpha * (v - c));
    return make_body(std::move(pts));
}

inline ConvexBody translate(const ConvexBody& body, Vec2 t) {
    std::vector<Vec2> pts;
    pts.reserve(body.size());
    for (const Vec2 v : body.vertices()) pts.push_back(v + t);
    return make_body(std::move(pts));
}

inline ConvexBody rotate(const ConvexBody& body, double angle) {
    const Vec2 c = body.summary().centroid;
    std::vector<Vec2> pts;
    pts.reserve(body.size());
    for (const Vec2 v : body.vertices()) pts.push_back(c + rotated(v - c, angle));
    return make_body(std::move(pts));
}

// ---------------------------------------------------------------------------
// Predicates and metrics
// ---------------------------------------------------------------------------

inline bool contains(const ConvexBody& body, Vec2 p, double tol = kContainsTol) {
    for (const auto& e : body.edges()) {
        if (dot(e.normal, p) > e.offset + tol) return false;
    }
    return true;
}

inline bool nested(const ConvexBody& a, const ConvexBody& b, double tol = kContainsTol) {
    for (const Vec2 v : a.vertices()) {
        if (!contains(b, v, tol)) return false;
    }
    return true;
}

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 e = b - a;
    const double len_sq = norm_sq(e);
    double t = len_sq > 0.0 ? dot(p - a, e) / len_sq : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * e));
}

inline double distance(const ConvexBody& body, Vec2 p) {
    if (contains(body, p, 0.0)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const auto& vs = body.vertices();
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, point_segment_distance(p, vs[i], vs[(i + 1) % n]));
    }
    return best;
}

// Exact for convex polygons: the distance-to-the-other-set function is
// convex, so its maximum over a polygon is attained at a vertex.
inline double hausdorff_distance(const ConvexBody& a, const ConvexBody& b) {
    double d = 0.0;
    for (const Vec2 v : a.vertices()) d = std::max(d, distance(b, v));
    for (const Vec2 v : b.vertices()) d = std::max(d, distance(a, v));
    return d;
}

// Separation of two convex polygons; 0 when the interiors or boundaries meet.
inline double separation(const ConvexBody& a, const ConvexBody& b) {
    auto separated_by_edge = [](const ConvexBody& p, const ConvexBody& q) {
        for (const auto& e : p.edges()) {
            double lo = std::numeric_limits<double>::infinity();
            for (const Vec2 v : q.vertices()) lo = std::min(lo, dot(e.normal, v));
            if (lo > e.offset) return true;
        }
        return false;
    };
    if (!separated_by_edge(a, b) && !separated_by_edge(b, a)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2 v : a.vertices()) best = std::min(best, distance(b, v));
    for (const Vec2 v : b.vertices()) best = std::min(best, distance(a, v));
    return best;
}

// ---------------------------------------------------------------------------
// Outer parallel body
// ---------------------------------------------------------------------------

// Polygonal Minkowski sum with the eps-disc, corner arcs sampled with
// arc_segments chords. All sample points lie on the exact boundary of the
// parallel body, so the result contains the input and is contained in the
// true eps-neighborhood.
inline ConvexBody epsilon_neighborhood(const ConvexBody& body, double eps, int arc_segments) {
    if (!(eps > 0.0)) throw NonPositiveScale("epsilon_neighborhood: eps must be positive");
    if (arc_segments < 2) throw DegenerateInput("epsilon_neighborhood: need arc_segments >= 2");
    const auto& vs = body.vertices();
    const auto& es = body.edges();
    const std::size_t n = vs.size();
    std::vector<Vec2> pts;
    pts.reserve(n * static_cast<std::size_t>(arc_segments + 1));
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 n_in = es[(i + n - 1) % n].normal;   // incoming edge normal
        const Vec2 n_out = es[i].normal;                // outgoing edge normal
        const double t0 = std::atan2(n_in.y, n_in.x);
        double t1 = std::atan2(n_out.y, n_out.x);
        while (t1 < t0) t1 += 2.0 * kPi;
        for (int j = 0; j <= arc_segments; ++j) {
            const double t = t0 + (t1 - t0) * j / arc_segments;
            pts.push_back(vs[i] + eps * Vec2{std::cos(t), std::sin(t)});
        }
    }
    return make_body(std::move(pts));
}

// ---------------------------------------------------------------------------
// Disjoint unions
// ---------------------------------------------------------------------------

struct BodyUnion {
    std::vector<ConvexBody> components;
};

inline BodyUnion make_union(std::vector<ConvexBody> components) {
    if (components.empty()) throw DegenerateInput("make_union: empty union");
    for (std::size_t i = 0; i < components.size(); ++i) {
        for (std::size_t j = i + 1; j < components.size(); ++j) {
            if (separation(components[i], components[j]) <= kUnionMinGap) {
                throw DegenerateInput("make_union: components must have disjoint closures");
            }
        }
    }
    return BodyUnion{std::move(components)};
}

inline double union_measure(const BodyUnion& u) {
    double s = 0.0;
    for (const auto& b : u.components) s += b.summary().measure;
    return s;
}

inline double union_perimeter(const BodyUnion& u) {
    double s = 0.0;
    for (const auto& b : u.components) s += b.summary().perimeter;
    return s;
}

inline Vec2 union_centroid(const BodyUnion& u) {
    Vec2 c{};
    double m = 0.0;
    for (const auto& b : u.components) {
        c = c + b.summary().measure * b.summary().centroid;
        m += b.summary().measure;
    }
    return (1.0 / m) * c;
}

inline std::string body_digest(const ConvexBody& body) {
    Digest d;
    for (const Vec2 v : body.vertices()) d.add(v);
    return d.hex();
}

}  // namespace specgeom
