#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "mcdemosaic/plane.hpp"

namespace fixtures {

using mcdemosaic::Plane;
using mcdemosaic::RgbImage;

inline Plane random_plane(int w, int h, std::uint32_t seed, double lo = 0.0, double hi = 255.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Plane p(w, h);
    for (double& v : p.samples()) v = dist(rng);
    return p;
}

inline RgbImage random_image(int w, int h, std::uint32_t seed) {
    return {random_plane(w, h, seed), random_plane(w, h, seed + 1), random_plane(w, h, seed + 2)};
}

/// Sum of a few random low-frequency cosines, roughly within [base - amp, base + amp].
inline Plane smooth_plane(int w, int h, std::uint32_t seed, double base = 128.0, double amp = 60.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> freq(0.01, 0.08);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    constexpr int kTerms = 4;
    double fx[kTerms], fy[kTerms], ph[kTerms];
    for (int t = 0; t < kTerms; ++t) {
        fx[t] = freq(rng);
        fy[t] = freq(rng);
        ph[t] = phase(rng);
    }
    Plane p(w, h);
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            double v = 0.0;
            for (int t = 0; t < kTerms; ++t) v += std::cos(fx[t] * i + fy[t] * j + ph[t]);
            p(i, j) = base + amp * v / kTerms;
        }
    }
    return p;
}

inline RgbImage gray_image(const Plane& p) { return {p, p, p}; }

/// Alternating +amp / -amp down one column: the classic zipper signature.
inline Plane add_zipper(Plane p, int column, double amp) {
    for (int j = 0; j < p.height(); ++j) p(column, j) += (j % 2 == 0) ? amp : -amp;
    return p;
}

/// Anti-aliased disc whose chroma differs strongly from the background; GBTF-style
/// interpolation leaves zipper artifacts along its rim.
inline RgbImage chroma_disc(int n, double radius) {
    RgbImage img(n, n, 0.0, 0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double d = std::hypot(i - n / 2.0 + 0.3, j - n / 2.0 + 0.7);
            const double t = std::clamp(radius - d + 0.5, 0.0, 1.0);
            img.r(i, j) = 40.0 + 160.0 * t;
            img.g(i, j) = 210.0 - 150.0 * t;
            img.b(i, j) = 50.0 + 70.0 * t;
        }
    }
    return img;
}

inline double max_abs_diff(const Plane& a, const Plane& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.samples()[k] - b.samples()[k]));
    return m;
}

inline double max_abs_diff(const RgbImage& a, const RgbImage& b) {
    return std::max({max_abs_diff(a.r, b.r), max_abs_diff(a.g, b.g), max_abs_diff(a.b, b.b)});
}

}  // namespace fixtures
