#pragma once

#include <cmath>
#include <stdexcept>

namespace s2b {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double norm(const Vec2& p) { return std::sqrt(p.x * p.x + p.y * p.y); }

inline double distance(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Uniform n x n partition of the box [-L,L]^2; nodes are cell centers.
/// With even n no node coincides with the origin, so singular central
/// potentials are never evaluated at their singular point.
struct Grid2D {
    double L = 0.0;  // half width
    int n = 0;       // nodes per axis

    static Grid2D make(double L, int n) {
        if (!(L > 0.0)) throw std::invalid_argument("Grid2D: L must be > 0");
        if (n < 8) throw std::invalid_argument("Grid2D: n must be >= 8");
        return Grid2D{L, n};
    }

    double h() const { return 2.0 * L / n; }
    double cell_weight() const { return h() * h(); }
    int size() const { return n * n; }

    Vec2 node(int i) const {
        const int ix = i % n;
        const int iy = i / n;
        const double step = h();
        return Vec2{-L + (ix + 0.5) * step, -L + (iy + 0.5) * step};
    }
};

}  // namespace s2b
