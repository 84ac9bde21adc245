#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "specgeom/common.hpp"

// Small dense linear programs in up to three variables, solved by Seidel's
// incremental algorithm. Used for the Chebyshev center of a convex polygon.

namespace specgeom::detail {

inline constexpr double kLpBox = 1e7;        // artificial bound, far outside any geometry we handle
inline constexpr double kLpEps = 1e-11;

template <int D>
struct LpConstraint {
    std::array<double, D> a{};
    double b = 0.0;
};

// maximize c*t subject to coef_i*t <= rhs_i; empty optional when infeasible.
inline std::optional<double> lp_solve_1d(double c, const std::vector<LpConstraint<1>>& cons) {
    double lo = -kLpBox, hi = kLpBox;
    for (const auto& k : cons) {
        const double a = k.a[0];
        if (std::abs(a) < 1e-300) {
            if (k.b < -kLpEps) return std::nullopt;
            continue;
        }
        const double t = k.b / a;
        if (a > 0.0) hi = std::min(hi, t);
        else lo = std::max(lo, t);
    }
    if (lo > hi + kLpEps) return std::nullopt;
    if (c > 0.0) return hi;
    if (c < 0.0) return lo;
    return std::min(std::max(0.0, lo), hi);
}

inline std::optional<std::array<double, 2>> lp_solve_2d(std::array<double, 2> c,
                                                        std::vector<LpConstraint<2>> cons,
                                                        Rng& rng) {
    // deterministic shuffle (fixed caller seed)
    for (std::size_t i = cons.size(); i > 1; --i) {
        std::swap(cons[i - 1], cons[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
    }
    // artificial box keeps every intermediate optimum finite
    cons.insert(cons.begin(), {LpConstraint<2>{{1, 0}, kLpBox}, LpConstraint<2>{{-1, 0}, kLpBox},
                               LpConstraint<2>{{0, 1}, kLpBox}, LpConstraint<2>{{0, -1}, kLpBox}});
    std::array<double, 2> x{c[0] > 0 ? kLpBox : (c[0] < 0 ? -kLpBox : 0.0),
                            c[1] > 0 ? kLpBox : (c[1] < 0 ? -kLpBox : 0.0)};
    for (std::size_t i = 4; i < cons.size(); ++i) {
        const auto& k = cons[i];
        const double val = k.a[0] * x[0] + k.a[1] * x[1];
        const double scale = std::max({1.0, std::abs(k.b), std::abs(val)});
        if (val <= k.b + kLpEps * scale) continue;
        // optimum moves onto the line a*x = b
        const double na = std::hypot(k.a[0], k.a[1]);
        if (na < 1e-300) return std::nullopt;
        const std::array<double, 2> ah{k.a[0] / na, k.a[1] / na};
        const std::array<double, 2> p0{ah[0] * k.b / na, ah[1] * k.b / na};
        const std::array<double, 2> dir{-ah[1], ah[0]};
        std::vector<LpConstraint<1>> reduced;
        reduced.reserve(i);
        for (std::size_t j = 0; j < i; ++j) {
            const auto& q = cons[j];
            reduced.push_back({{q.a[0] * dir[0] + q.a[1] * dir[1]},
                               q.b - (q.a[0] * p0[0] + q.a[1] * p0[1])});
        }
        const auto t = lp_solve_1d(c[0] * dir[0] + c[1] * dir[1], reduced);
        if (!t) return std::nullopt;
        x = {p0[0] + *t * dir[0], p0[1] + *t * dir[1]};
    }
    return x;
}

inline std::optional<std::array<double, 3>> lp_solve_3d(std::array<double, 3> c,
                                                        std::vector<LpConstraint<3>> cons,
                                                        std::uint64_t shuffle_seed = 0x5eed3d01u) {
    Rng rng(shuffle_seed);
    for (std::size_t i = cons.size(); i > 1; --i) {
        std::swap(cons[i - 1], cons[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
    }
    std::vector<LpConstraint<3>> all;
    all.reserve(cons.size() + 6);
    for (int d = 0; d < 3; ++d) {
        LpConstraint<3> hi{}, lo{};
        hi.a[static_cast<std::size_t>(d)] = 1.0;
        hi.b = kLpBox;
        lo.a[static_cast<std::size_t>(d)] = -1.0;
        lo.b = kLpBox;
        all.push_back(hi);
        all.push_back(lo);
    }
    all.insert(all.end(), cons.begin(), cons.end());

    std::array<double, 3> x{};
    for (int d = 0; d < 3; ++d) {
        x[static_cast<std::size_t>(d)] = c[static_cast<std::size_t>(d)] > 0 ? kLpBox
                                         : (c[static_cast<std::size_t>(d)] < 0 ? -kLpBox : 0.0);
    }
    for (std::size_t i = 6; i < all.size(); ++i) {
        const auto& k = all[i];
        const double val = k.a[0] * x[0] + k.a[1] * x[1] + k.a[2] * x[2];
        const double scale = std::max({1.0, std::abs(k.b), std::abs(val)});
        if (val <= k.b + kLpEps * scale) continue;
        // optimum moves onto the plane a*x = b; reduce to 2D in an
        // orthonormal in-plane frame (u, v)
        const double na = std::sqrt(k.a[0] * k.a[0] + k.a[1] * k.a[1] + k.a[2] * k.a[2]);
        if (na < 1e-300) return std::nullopt;
        const std::array<double, 3> ah{k.a[0] / na, k.a[1] / na, k.a[2] / na};
        const std::array<double, 3> p0{ah[0] * k.b / na, ah[1] * k.b / na, ah[2] * k.b / na};
        std::size_t least = 0;
        for (std::size_t d = 1; d < 3; ++d) {
            if (std::abs(ah[d]) < std::abs(ah[least])) least = d;
        }
        std::array<double, 3> u{};
        u[least] = 1.0;
        const double ua = u[0] * ah[0] + u[1] * ah[1] + u[2] * ah[2];
        for (std::size_t d = 0; d < 3; ++d) u[d] -= ua * ah[d];
        const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        for (std::size_t d = 0; d < 3; ++d) u[d] /= un;
        const std::array<double, 3> v{ah[1] * u[2] - ah[2] * u[1],
                                      ah[2] * u[0] - ah[0] * u[2],
                                      ah[0] * u[1] - ah[1] * u[0]};
        std::vector<LpConstraint<2>> reduced;
        reduced.reserve(i);
        for (std::size_t j = 0; j < i; ++j) {
            const auto& q = all[j];
            reduced.push_back({{q.a[0] * u[0] + q.a[1] * u[1] + q.a[2] * u[2],
                                q.a[0] * v[0] + q.a[1] * v[1] + q.a[2] * v[2]},
                               q.b - (q.a[0] * p0[0] + q.a[1] * p0[1] + q.a[2] * p0[2])});
        }
        Rng sub = rng.fork(i);
        const auto st = lp_solve_2d({c[0] * u[0] + c[1] * u[1] + c[2] * u[2],
                                     c[0] * v[0] + c[1] * v[1] + c[2] * v[2]},
                                    std::move(reduced), sub);
        if (!st) return std::nullopt;
        for (std::size_t d = 0; d < 3; ++d) x[d] = p0[d] + (*st)[0] * u[d] + (*st)[1] * v[d];
    }
    return x;
}

}  // namespace specgeom::detail
