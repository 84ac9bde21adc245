#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "specgeom/common.hpp"

// Closed-form reference bodies (ball, cube, rectangle) in dimension m with
// exact functionals and spectra. This is the oracle layer the numeric
// modules are checked against.

namespace specgeom {

enum class BodyKind { Ball, Cube, Rectangle };

struct AnalyticBody {
    BodyKind kind = BodyKind::Ball;
    int dim = 2;
    double radius = 1.0;              // balls
    std::vector<double> sides;        // cubes (one entry) and rectangles
};

struct DimensionConstants {
    int dim = 0;
    double omega = 0.0;   // volume of the unit ball
    double weyl = 0.0;    // 4 pi^2 omega^(-2/m)
};

struct AnalyticFunctionals {
    double measure = 0.0;
    double perimeter = 0.0;  // surface measure of the boundary
    double moment = 0.0;     // second moment about the center of mass
};

inline AnalyticBody make_ball(int dim, double radius) {
    if (dim < 1) throw UnsupportedDimension("make_ball: dim must be >= 1");
    if (!(radius > 0.0)) throw DegenerateInput("make_ball: radius must be positive");
    return {BodyKind::Ball, dim, radius, {}};
}

inline AnalyticBody make_cube(int dim, double side) {
    if (dim < 1) throw UnsupportedDimension("make_cube: dim must be >= 1");
    if (!(side > 0.0)) throw DegenerateInput("make_cube: side must be positive");
    return {BodyKind::Cube, dim, 0.0, {side}};
}

inline AnalyticBody make_rectangle(std::vector<double> sides) {
    if (sides.empty()) throw UnsupportedDimension("make_rectangle: need at least one side");
    for (double s : sides) {
        if (!(s > 0.0)) throw DegenerateInput("make_rectangle: sides must be positive");
    }
    return {BodyKind::Rectangle, static_cast<int>(sides.size()), 0.0, std::move(sides)};
}

inline DimensionConstants constants(int dim) {
    if (dim < 1 || dim > 10) throw UnsupportedDimension("constants: dim must be in [1, 10]");
    const double omega = std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
    return {dim, omega, 4.0 * kPi * kPi * std::pow(omega, -2.0 / dim)};
}

inline AnalyticFunctionals functionals(const AnalyticBody& body) {
    const int m = body.dim;
    AnalyticFunctionals f;
    switch (body.kind) {
        case BodyKind::Ball: {
            const double omega = constants(m).omega;
            const double r = body.radius;
            f.measure = omega * std::pow(r, m);
            f.perimeter = m * omega * std::pow(r, m - 1);
            f.moment = m * omega * std::pow(r, m + 2) / (m + 2);
            break;
        }
        case BodyKind::Cube: {
            const double a = body.sides[0];
            f.measure = std::pow(a, m);
            f.perimeter = 2.0 * m * std::pow(a, m - 1);
            f.moment = m * std::pow(a, m + 2) / 12.0;
            break;
        }
        case BodyKind::Rectangle: {
            double volume = 1.0;
            for (double s : body.sides) volume *= s;
            double area = 0.0, sumsq = 0.0;
            for (double s : body.sides) {
                area += 2.0 * volume / s;
                sumsq += s * s;
            }
            f.measure = volume;
            f.perimeter = area;
            f.moment = volume * sumsq / 12.0;
            break;
        }
    }
    return f;
}

inline double analytic_inradius(const AnalyticBody& body) {
    if (body.kind == BodyKind::Ball) return body.radius;
    return 0.5 * *std::min_element(body.sides.begin(), body.sides.end());
}

inline double analytic_diameter(const AnalyticBody& body) {
    if (body.kind == BodyKind::Ball) return 2.0 * body.radius;
    if (body.kind == BodyKind::Cube) return body.sides[0] * std::sqrt(static_cast<double>(body.dim));
    double s = 0.0;
    for (double a : body.sides) s += a * a;
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Bessel zeros
//
// Scanning plus bisection on the standard library Bessel evaluations; zeros
// of J_n (and of the spherical j_n) are simple and separated by more than
// the scan step, so a sign change brackets exactly one root.
// ---------------------------------------------------------------------------

namespace detail {

inline double bessel_j(int order, double x) { return std::cyl_bessel_j(static_cast<double>(order), x); }

inline double sph_bessel_j(int order, double x) { return std::sph_bessel(static_cast<unsigned>(order), x); }

template <typename F>
inline double bisect_root(const F& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All positive zeros of x -> f(order, x) below x_max, for f with simple,
// well-separated zeros and f > 0 just right of the origin branch point.
template <typename F>
inline std::vector<double> scan_zeros(const F& f, double start, double x_max) {
    std::vector<double> zeros;
    const double step = 0.5;
    double x = start;
    double fx = f(x);
    while (x < x_max) {
        const double x2 = x + step;
        const double fx2 = f(x2);
        if ((fx < 0.0) != (fx2 < 0.0)) {
            zeros.push_back(bisect_root(f, x, x2));
        }
        x = x2;
        fx = fx2;
    }
    return zeros;
}

// zeros of J_order below x_max (dim 2) or of the spherical j_order (dim 3)
inline const std::vector<double>& bessel_zero_table(int dim, int order, double x_max) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::pair<double, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& entry = cache[{dim, order}];
    if (entry.first < x_max) {
        const double start = std::max(0.25, static_cast<double>(order));
        if (dim == 2) {
            entry.second = scan_zeros([order](double x) { return bessel_j(order, x); }, start, x_max);
        } else {
            entry.second = scan_zeros([order](double x) { return sph_bessel_j(order, x); }, start, x_max);
        }
        entry.first = x_max;
    }
    return entry.second;
}

}  // namespace detail

// First `count` Dirichlet eigenvalues of the ball, nondecreasing, with the
// correct multiplicities (dim 2: 1 for the radial mode family, 2 otherwise;
// dim 3: 2n+1 for angular order n).
inline std::vector<double> ball_eigenvalues(int dim, double radius, int count) {
    if (dim != 2 && dim != 3) throw UnsupportedDimension("ball_eigenvalues: dim must be 2 or 3");
    if (count < 1 || count > 10000) throw DegenerateInput("ball_eigenvalues: count out of range");
    if (!(radius > 0.0)) throw DegenerateInput("ball_eigenvalues: radius must be positive");

    // grow the zero search window until enough modes are collected
    double x_max = 4.0 + 2.5 * std::pow(static_cast<double>(count), 1.0 / dim);
    std::vector<double> zeros_sq;
    for (;;) {
        zeros_sq.clear();
        for (int order = 0;; ++order) {
            const double first_zero_floor = std::max(0.25, static_cast<double>(order));
            if (first_zero_floor >= x_max) break;
            const auto& zs = detail::bessel_zero_table(dim, order, x_max);
            if (zs.empty()) break;
            const int mult = (dim == 2) ? (order == 0 ? 1 : 2) : (2 * order + 1);
            for (double z : zs) {
                for (int rep = 0; rep < mult; ++rep) zeros_sq.push_back(z * z);
            }
        }
        // only trust eigenvalues whose zero lies safely inside the window
        const double trusted = 0.95 * x_max * 0.95 * x_max;
        std::sort(zeros_sq.begin(), zeros_sq.end());
        std::size_t usable = 0;
        while (usable < zeros_sq.size() && zeros_sq[usable] <= trusted) ++usable;
        if (usable >= static_cast<std::size_t>(count)) break;
        x_max *= 1.4;
    }
    zeros_sq.resize(static_cast<std::size_t>(count));
    for (double& z : zeros_sq) z /= radius * radius;
    return zeros_sq;
}

// First `count` Dirichlet eigenvalues of a box, pi^2 * sum (k_i / a_i)^2
// over positive integer lattice points.
inline std::vector<double> box_eigenvalues(const std::vector<double>& sides, int count) {
    if (sides.empty()) throw UnsupportedDimension("box_eigenvalues: need at least one side");
    if (count < 1) throw DegenerateInput("box_eigenvalues: count must be positive");
    for (double s : sides) {
        if (!(s > 0.0)) throw DegenerateInput("box_eigenvalues: sides must be positive");
    }
    const std::size_t m = sides.size();
    double lambda_max = 0.0;
    for (double s : sides) lambda_max += 1.0 / (s * s);
    lambda_max *= kPi * kPi * 4.0 * std::pow(static_cast<double>(count), 2.0 / static_cast<double>(m));

    std::vector<double> vals;
    for (;;) {
        vals.clear();
        std::vector<int> k(m, 1);
        std::function<void(std::size_t, double)> enumerate = [&](std::size_t d, double partial) {
            if (d == m) {
                vals.push_back(partial);
                return;
            }
            for (int kd = 1;; ++kd) {
                const double term = kPi * kPi * kd * kd / (sides[d] * sides[d]);
                if (partial + term > lambda_max) break;
                enumerate(d + 1, partial + term);
            }
        };
        enumerate(0, 0.0);
        if (vals.size() >= static_cast<std::size_t>(count)) break;
        lambda_max *= 1.6;
    }
    std::sort(vals.begin(), vals.end());
    vals.resize(static_cast<std::size_t>(count));
    return vals;
}

// Leading Weyl term C_m (k / measure)^(2/m).
inline double weyl_prediction(int dim, double measure, int k) {
    if (k < 1) throw DegenerateInput("weyl_prediction: k must be >= 1");
    if (!(measure > 0.0)) throw DegenerateInput("weyl_prediction: measure must be positive");
    return constants(dim).weyl * std::pow(static_cast<double>(k) / measure, 2.0 / dim);
}

}  // namespace specgeom
