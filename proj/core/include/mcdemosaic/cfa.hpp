#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mcdemosaic/plane.hpp"

namespace mcdemosaic {

enum class Channel { R = 0, G = 1, B = 2 };

/// 2x2 Bayer tile at the image origin, read row by row.
enum class CfaPattern { RGGB, GRBG, GBRG, BGGR };

std::string_view to_string(CfaPattern pattern);
/// Case-insensitive.
std::optional<CfaPattern> parse_pattern(std::string_view name);

/// Pattern obtained by exchanging the R and B sites (RGGB <-> BGGR, GRBG <-> GBRG).
CfaPattern swap_chroma(CfaPattern pattern);

Channel channel_at(CfaPattern pattern, int i, int j);

/// The chroma channel that is not `c` (R <-> B). G maps to itself.
inline Channel opposite_chroma(Channel c) {
    return c == Channel::R ? Channel::B : (c == Channel::B ? Channel::R : Channel::G);
}

struct BayerMosaic {
    Plane plane;
    CfaPattern pattern = CfaPattern::RGGB;

    int width() const { return plane.width(); }
    int height() const { return plane.height(); }
    Channel channel(int i, int j) const { return channel_at(pattern, i, j); }
};

BayerMosaic mosaic(const RgbImage& img, CfaPattern pattern);

/// Standard bilinear CFA interpolation; used as the comparison baseline.
RgbImage demosaic_bilinear(const BayerMosaic& m);

}  // namespace mcdemosaic
