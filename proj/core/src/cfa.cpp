#include "mcdemosaic/cfa.hpp"

#include <array>
#include <cctype>
#include <string>

namespace mcdemosaic {

namespace {

// Tile entries indexed by (j & 1) * 2 + (i & 1).
constexpr std::array<std::array<Channel, 4>, 4> kTiles = {{
    {Channel::R, Channel::G, Channel::G, Channel::B},  // RGGB
    {Channel::G, Channel::R, Channel::B, Channel::G},  // GRBG
    {Channel::G, Channel::B, Channel::R, Channel::G},  // GBRG
    {Channel::B, Channel::G, Channel::G, Channel::R},  // BGGR
}};

}  // namespace

std::string_view to_string(CfaPattern pattern) {
    switch (pattern) {
        case CfaPattern::RGGB: return "RGGB";
        case CfaPattern::GRBG: return "GRBG";
        case CfaPattern::GBRG: return "GBRG";
        case CfaPattern::BGGR: return "BGGR";
    }
    return "RGGB";
}

std::optional<CfaPattern> parse_pattern(std::string_view name) {
    if (name.size() != 4) return std::nullopt;
    std::string upper(name);
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (CfaPattern p : {CfaPattern::RGGB, CfaPattern::GRBG, CfaPattern::GBRG, CfaPattern::BGGR}) {
        if (to_string(p) == upper) return p;
    }
    return std::nullopt;
}

CfaPattern swap_chroma(CfaPattern pattern) {
    switch (pattern) {
        case CfaPattern::RGGB: return CfaPattern::BGGR;
        case CfaPattern::BGGR: return CfaPattern::RGGB;
        case CfaPattern::GRBG: return CfaPattern::GBRG;
        case CfaPattern::GBRG: return CfaPattern::GRBG;
    }
    return pattern;
}

Channel channel_at(CfaPattern pattern, int i, int j) {
    return kTiles[static_cast<std::size_t>(pattern)][static_cast<std::size_t>((j & 1) * 2 + (i & 1))];
}

BayerMosaic mosaic(const RgbImage& img, CfaPattern pattern) {
    Plane raw(img.width(), img.height());
    for (int j = 0; j < img.height(); ++j) {
        for (int i = 0; i < img.width(); ++i) {
            raw(i, j) = img.channel(static_cast<int>(channel_at(pattern, i, j)))(i, j);
        }
    }
    return {std::move(raw), pattern};
}

RgbImage demosaic_bilinear(const BayerMosaic& m) {
    const int w = m.width();
    const int h = m.height();
    RgbImage out(w, h, 0.0, 0.0, 0.0);
    const Plane& raw = m.plane;

    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const Channel here = m.channel(i, j);
            for (int c = 0; c < 3; ++c) {
                const auto want = static_cast<Channel>(c);
                double v;
                if (want == here) {
                    v = raw(i, j);
                } else if (want == Channel::G) {
                    v = 0.25 * (raw.reflected(i - 1, j) + raw.reflected(i + 1, j) + raw.reflected(i, j - 1) +
                                raw.reflected(i, j + 1));
                } else if (here == Channel::G) {
                    // the wanted chroma sits either left/right or above/below
                    if (m.channel(reflect_index(i - 1, w), j) == want) {
                        v = 0.5 * (raw.reflected(i - 1, j) + raw.reflected(i + 1, j));
                    } else {
                        v = 0.5 * (raw.reflected(i, j - 1) + raw.reflected(i, j + 1));
                    }
                } else {
                    v = 0.25 * (raw.reflected(i - 1, j - 1) + raw.reflected(i + 1, j - 1) +
                                raw.reflected(i - 1, j + 1) + raw.reflected(i + 1, j + 1));
                }
                out.channel(c)(i, j) = v;
            }
        }
    }
    return out;
}

}  // namespace mcdemosaic
