#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace specgeom {

inline constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : Error { using Error::Error; };
struct NonPositiveScale : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct UnknownFunctional : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct HypothesisFailed : Error { using Error::Error; };
struct ResolutionTooCoarse : Error { using Error::Error; };
struct SolverNoConvergence : Error { using Error::Error; };
struct MissingEstimate : Error { using Error::Error; };
struct MismatchedRuns : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// 2D vectors
// ---------------------------------------------------------------------------

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 rotated(Vec2 a, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

// ---------------------------------------------------------------------------
// Deterministic random numbers
//
// splitmix64 underneath; results depend only on the seed, never on the
// platform's distribution implementations.
// ---------------------------------------------------------------------------

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Vec2 in_unit_disc() {
        const double r = std::sqrt(uniform());
        const double t = uniform(0.0, 2.0 * kPi);
        return {r * std::cos(t), r * std::sin(t)};
    }

    // Independent substream; used to hand out per-item generators so that
    // results do not depend on evaluation order or thread count.
    Rng fork(std::uint64_t stream) const {
        std::uint64_t z = state_ ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
        return Rng(z ^ (z >> 33));
    }

private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Hashing (input digests for certificates and manifests)
// ---------------------------------------------------------------------------

class Digest {
public:
    void add_bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    void add(double v) { add_bytes(&v, sizeof v); }
    void add(std::uint64_t v) { add_bytes(&v, sizeof v); }
    void add(int v) { add_bytes(&v, sizeof v); }
    void add(const std::string& s) { add_bytes(s.data(), s.size()); }
    void add(Vec2 v) { add(v.x); add(v.y); }

    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
        return std::string(buf);
    }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;  // FNV-1a offset basis
};

// ---------------------------------------------------------------------------
// Formatting: 17 significant digits round-trips doubles exactly.
// ---------------------------------------------------------------------------

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// Deterministic parallel map: item i always lands in slot i, so the merged
// result is independent of the number of workers.
// ---------------------------------------------------------------------------

inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += nw) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace specgeom
