#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "mcdemosaic/plane.hpp"

namespace mcdemosaic {

inline constexpr double kDefaultSamplesPerDegree = 23.0;
inline constexpr int kDefaultBorderCrop = 10;

/// 10 log10(255^2 / MSE), MSE pooled over all three channels of the cropped interior.
/// Identical images give +infinity.
double cpsnr(const RgbImage& reference, const RgbImage& test, int border_crop);

/// PSNR of a single plane over the cropped interior; +infinity when identical.
double psnr(const Plane& reference, const Plane& test, int border_crop);

/// Mean spatial-CIELAB Delta E*ab over the cropped interior. Both images are taken as
/// sRGB in [0, 255], D65 white.
double scielab(const RgbImage& reference, const RgbImage& test, double samples_per_degree, int border_crop);

namespace color {

using Vec3 = std::array<double, 3>;

/// sRGB in [0, 255] to CIE XYZ with Y(white) = 1.
Vec3 srgb_to_xyz(const Vec3& rgb);
Vec3 xyz_to_lab(const Vec3& xyz);
double delta_e76(const Vec3& lab1, const Vec3& lab2);

Vec3 xyz_to_opponent(const Vec3& xyz);
Vec3 opponent_to_xyz(const Vec3& opp);

/// Normalized 1-D taps of one sum-of-Gaussians opponent channel filter
/// (0 = luminance, 1 = red-green, 2 = blue-yellow), applied as a sum of
/// separable Gaussians.
struct SpatialFilter {
    std::vector<double> weights;
    std::vector<std::vector<double>> kernels;  ///< one normalized 1-D Gaussian per term
};
SpatialFilter opponent_filter(int channel, double samples_per_degree);

}  // namespace color

struct ImageScore {
    std::string image;
    double cpsnr_db = 0.0;
    double scielab_de = 0.0;
};

struct QualityReport {
    std::vector<ImageScore> per_image;
    int border_crop = kDefaultBorderCrop;

    double mean_cpsnr() const;
    double mean_scielab() const;

    /// Columns: image,cpsnr_db,scielab_de,border_crop. Last row holds the averages
    /// under the image name "average".
    std::string to_csv() const;
    std::string to_json() const;
};

/// "inf" for infinite values, otherwise fixed notation with `decimals` digits.
std::string format_db(double value, int decimals = 4);

}  // namespace mcdemosaic
