#pragma once

#include "mcdemosaic/plane.hpp"

namespace mcdemosaic {

/// Additive guard under the square root of the directional gradient magnitudes.
inline constexpr double kDirectionalGuard = 1e-8;

struct DirectionalMagnitudes {
    Plane d_w;
    Plane d_e;
    Plane d_s;
    Plane d_n;
};

/// Per-pixel weights of the linear curvature stencil.
/// u_w + u_e == 2 and u_s + u_n == 2 everywhere.
struct CurvatureWeights {
    DirectionalMagnitudes d;
    Plane u_w;
    Plane u_e;
    Plane u_s;
    Plane u_n;
};

/// Gradient magnitude estimates across the four pixel edges:
///   d_w(i,j) = sqrt((G(i,j) - G(i-1,j))^2
///                   + (G(i-1,j+1) + G(i,j+1) - G(i-1,j-1) - G(i,j-1))^2 / 16 + eps)
///   d_s(i,j) = sqrt((G(i,j) - G(i,j-1))^2
///                   + (G(i+1,j) + G(i+1,j-1) - G(i-1,j) - G(i-1,j-1))^2 / 16 + eps)
/// with d_e(i,j) = d_w(i+1,j) and d_n(i,j) = d_s(i,j+1).
///
/// The closed form as originally printed reads "d_E = d_W; d_N = d_S" at the same
/// pixel, which would pin every weight to 1; the east/north magnitudes are taken
/// from the neighbor instead.
DirectionalMagnitudes directional_magnitudes(const Plane& g);

/// u_w = 2 d_e / (d_w + d_e), u_e = 2 d_w / (d_w + d_e), likewise for s/n.
CurvatureWeights curvature_weights(DirectionalMagnitudes d);

inline CurvatureWeights curvature_weights(const Plane& g) { return curvature_weights(directional_magnitudes(g)); }

/// u_w G(i-1,j) + u_e G(i+1,j) + u_s G(i,j-1) + u_n G(i,j+1) - 4 G(i,j).
/// The printed form ends in "u_N G(i,j) - 4"; it is read as the weighted
/// five-point stencil above, which reduces to the Laplacian when all u are 1.
Plane linear_curvature(const Plane& g, const CurvatureWeights& w);

}  // namespace mcdemosaic
