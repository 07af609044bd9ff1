#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "mcdemosaic/cfa.hpp"

namespace mcdemosaic {

/// Unreadable, corrupt or unwritable image files. The message carries path and reason.
class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& reason)
        : std::runtime_error(path.string() + ": " + reason) {}
};

/// Clamp to [0, 255] and round half away from zero. The only quantization step.
std::uint8_t quantize(double v);
Plane quantized(const Plane& p);
RgbImage quantized(const RgbImage& img);

/// Reads binary PPM (P6), PGM (P5, replicated to three channels) or 8-bit PNG.
RgbImage read_rgb(const std::filesystem::path& path);
/// Reads a single-channel PGM (P5) or grayscale PNG.
Plane read_gray(const std::filesystem::path& path);

/// Chooses PNG for a ".png" extension, binary PPM otherwise.
void write_rgb(const std::filesystem::path& path, const RgbImage& img);
void write_ppm(const std::filesystem::path& path, const RgbImage& img);
void write_png(const std::filesystem::path& path, const RgbImage& img);
void write_pgm(const std::filesystem::path& path, const Plane& plane);

/// `<mosaic path>.cfa`, a one-line text file "pattern=RGGB".
std::filesystem::path sidecar_path(const std::filesystem::path& mosaic_path);

/// Writes the mosaic as PGM plus its sidecar.
void write_mosaic(const std::filesystem::path& path, const BayerMosaic& m);
/// Reads a single-channel mosaic (PGM or grayscale PNG); the sidecar pattern wins over `fallback` when present.
BayerMosaic read_mosaic(const std::filesystem::path& path, CfaPattern fallback);

/// True for P5 PGM files and grayscale PNGs.
bool is_single_channel(const std::filesystem::path& path);

}  // namespace mcdemosaic
