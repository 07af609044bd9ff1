#include "mcdemosaic/mc_linear.hpp"

#include <cmath>

namespace mcdemosaic {

namespace {

double west_magnitude(const Plane& g, int i, int j) {
    const double axial = g.reflected(i, j) - g.reflected(i - 1, j);
    const double transverse =
        g.reflected(i - 1, j + 1) + g.reflected(i, j + 1) - g.reflected(i - 1, j - 1) - g.reflected(i, j - 1);
    return std::sqrt(axial * axial + transverse * transverse / 16.0 + kDirectionalGuard);
}

double south_magnitude(const Plane& g, int i, int j) {
    const double axial = g.reflected(i, j) - g.reflected(i, j - 1);
    const double transverse =
        g.reflected(i + 1, j) + g.reflected(i + 1, j - 1) - g.reflected(i - 1, j) - g.reflected(i - 1, j - 1);
    return std::sqrt(axial * axial + transverse * transverse / 16.0 + kDirectionalGuard);
}

}  // namespace

DirectionalMagnitudes directional_magnitudes(const Plane& g) {
    const int w = g.width();
    const int h = g.height();
    DirectionalMagnitudes d{Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            d.d_w(i, j) = west_magnitude(g, i, j);
            d.d_s(i, j) = south_magnitude(g, i, j);
            d.d_e(i, j) = west_magnitude(g, i + 1, j);
            d.d_n(i, j) = south_magnitude(g, i, j + 1);
        }
    }
    return d;
}

CurvatureWeights curvature_weights(DirectionalMagnitudes d) {
    const int w = d.d_w.width();
    const int h = d.d_w.height();
    CurvatureWeights out{std::move(d), Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
    const std::size_t count = out.u_w.size();
    for (std::size_t k = 0; k < count; ++k) {
        const double dw = out.d.d_w.samples()[k];
        const double de = out.d.d_e.samples()[k];
        const double ds = out.d.d_s.samples()[k];
        const double dn = out.d.d_n.samples()[k];
        out.u_w.samples()[k] = 2.0 * de / (dw + de);
        out.u_e.samples()[k] = 2.0 * dw / (dw + de);
        out.u_s.samples()[k] = 2.0 * dn / (ds + dn);
        out.u_n.samples()[k] = 2.0 * ds / (ds + dn);
    }
    return out;
}

Plane linear_curvature(const Plane& g, const CurvatureWeights& w) {
    require_same_shape(g, w.u_w, "linear_curvature");
    Plane out(g.width(), g.height());
    for (int j = 0; j < g.height(); ++j) {
        for (int i = 0; i < g.width(); ++i) {
            out(i, j) = w.u_w(i, j) * g.reflected(i - 1, j) + w.u_e(i, j) * g.reflected(i + 1, j) +
                        w.u_s(i, j) * g.reflected(i, j - 1) + w.u_n(i, j) * g.reflected(i, j + 1) - 4.0 * g(i, j);
        }
    }
    return out;
}

}  // namespace mcdemosaic
