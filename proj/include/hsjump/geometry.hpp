#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace hsjump {

// Point of the upper half-space R^d_+, d in {1,2,3}; the last coordinate is
// the distance to the boundary and must be positive.
struct HPoint {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int d = 1;

    double xd() const { return c[d - 1]; }
    double& xd() { return c[d - 1]; }

    static HPoint of(int d, std::initializer_list<double> coords) {
        HPoint p;
        p.d = d;
        int i = 0;
        for (double v : coords) p.c[i++] = v;
        if (i != d) throw std::invalid_argument("coordinate count != d");
        if (!(p.xd() > 0.0)) throw std::domain_error("half-space point needs x_d > 0");
        return p;
    }
    HPoint scaled(double a) const {
        HPoint p = *this;
        for (int i = 0; i < d; ++i) p.c[i] *= a;
        return p;
    }
    // lateral distance |x~ - y~|
    double lat_dist(const HPoint& o) const {
        double s = 0.0;
        for (int i = 0; i + 1 < d; ++i) s += (c[i] - o.c[i]) * (c[i] - o.c[i]);
        return std::sqrt(s);
    }
};

inline double dist(const HPoint& a, const HPoint& b) {
    double s = 0.0;
    for (int i = 0; i < a.d; ++i) s += (a.c[i] - b.c[i]) * (a.c[i] - b.c[i]);
    return std::sqrt(s);
}

// Box D_w(a, b) = { |x~ - w~| < a, 0 < x_d < b }; interval (0, b) when d = 1.
struct BoxRegion {
    int d = 1;
    std::array<double, 2> center{0.0, 0.0};
    double a = 1.0;  // lateral half-width (unused when d = 1)
    double b = 1.0;  // height

    bool contains(const HPoint& x) const {
        if (!(x.xd() > 0.0 && x.xd() < b)) return false;
        if (d == 1) return true;
        double s = 0.0;
        for (int i = 0; i + 1 < d; ++i) s += (x.c[i] - center[i]) * (x.c[i] - center[i]);
        return s < a * a;
    }
    BoxRegion scaled(double t) const {
        BoxRegion r = *this;
        r.a *= t;
        r.b *= t;
        for (auto& v : r.center) v *= t;
        return r;
    }
    BoxRegion translated(const std::array<double, 2>& w) const {
        BoxRegion r = *this;
        for (int i = 0; i + 1 < d; ++i) r.center[i] += w[i];
        return r;
    }
    // distance from an interior point to the complement, ignoring the bottom
    double interior_gap(const HPoint& x) const {
        double g = b - x.xd();
        if (d > 1) {
            double s = 0.0;
            for (int i = 0; i + 1 < d; ++i) s += (x.c[i] - center[i]) * (x.c[i] - center[i]);
            g = std::min(g, a - std::sqrt(s));
        }
        return g;
    }
};

// U(r) = D_0(r/2, r/2)
inline BoxRegion box_U(int d, double r) { return BoxRegion{d, {0.0, 0.0}, r / 2.0, r / 2.0}; }
inline BoxRegion box_D(int d, double a, double b) { return BoxRegion{d, {0.0, 0.0}, a, b}; }

} // namespace hsjump
