#pragma once

#include <functional>

#include "mcdemosaic/cfa.hpp"

namespace mcdemosaic {

/// One-sided green predictions at chroma sites. At G sites every plane holds the
/// measured green sample.
struct DirectionalEstimates {
    Plane west;
    Plane east;
    Plane south;
    Plane north;
};

/// Fused green-minus-chroma differences. `delta_gr` is populated at R sites,
/// `delta_gb` at B sites; all other positions are zero.
struct ColorDiffField {
    Plane delta_gr;
    Plane delta_gb;
};

/// Horizontal and vertical green-minus-chroma maps, defined at every pixel.
struct DirectionalDifferences {
    Plane horizontal;
    Plane vertical;
};

/// Second-order one-sided predictions (Hamilton-Adams style), e.g. the west one is
/// G(i-1, j) + (C(i, j) - C(i-2, j)) / 2.
DirectionalEstimates directional_green_estimates(const BayerMosaic& m);

DirectionalDifferences directional_differences(const BayerMosaic& m);

/// Gradient-weighted fusion of the directional differences over 5x5 windows.
ColorDiffField color_differences(const BayerMosaic& m);

/// Full-resolution green: measured G kept as is, chroma sites get C + (G - C) estimate.
Plane interpolate_green(const BayerMosaic& m);

/// Any initializer that returns a full green plane and keeps measured G samples.
using GreenInitializer = std::function<Plane(const BayerMosaic&)>;

}  // namespace mcdemosaic
