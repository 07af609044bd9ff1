#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace mcdemosaic {

/// Raised when operands disagree in shape or a grid is too small for the stencils.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pixel index pair. `i` is the column (x), `j` the row (y).
/// Neighbors: W = (i-1, j), E = (i+1, j), S = (i, j-1), N = (i, j+1).
struct PixelCoord {
    int i = 0;
    int j = 0;

    PixelCoord west() const { return {i - 1, j}; }
    PixelCoord east() const { return {i + 1, j}; }
    PixelCoord south() const { return {i, j - 1}; }
    PixelCoord north() const { return {i, j + 1}; }

    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Whole-sample symmetric reflection of an index into [0, n-1]:
/// reflect(-1) = 1, reflect(n) = n - 2. Works for any distance from the grid.
int reflect_index(int k, int n);

/// Real-valued 2-D sample grid stored row-major. Nominal range is [0, 255]
/// but values are never clamped here.
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, double fill = 0.0);
    Plane(int width, int height, std::vector<double> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    double& operator()(int i, int j) { return samples_[index(i, j)]; }
    double operator()(int i, int j) const { return samples_[index(i, j)]; }

    /// Sample with reflective boundary handling; (i, j) may be off-grid.
    double reflected(int i, int j) const {
        return samples_[index(reflect_index(i, width_), reflect_index(j, height_))];
    }

    bool contains(int i, int j) const { return i >= 0 && j >= 0 && i < width_ && j < height_; }
    bool same_shape(const Plane& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    std::span<double> samples() { return samples_; }
    std::span<const double> samples() const { return samples_; }

    bool all_finite() const;

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(i);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> samples_;
};

/// Three equally sized planes.
struct RgbImage {
    Plane r;
    Plane g;
    Plane b;

    RgbImage() = default;
    RgbImage(Plane red, Plane green, Plane blue);
    RgbImage(int width, int height, double rv, double gv, double bv);

    int width() const { return g.width(); }
    int height() const { return g.height(); }

    Plane& channel(int c) { return c == 0 ? r : (c == 1 ? g : b); }
    const Plane& channel(int c) const { return c == 0 ? r : (c == 1 ? g : b); }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

double sample_reflect(const Plane& p, int i, int j);

/// Pointwise combination of equally shaped planes. `f` receives one value per plane,
/// in the order the planes were given.
Plane map_planes(std::span<const Plane* const> planes, const std::function<double(std::span<const double>)>& f);

Plane map_planes(const Plane& a, const std::function<double(double)>& f);
Plane map_planes(const Plane& a, const Plane& b, const std::function<double(double, double)>& f);

double l2_norm(const Plane& a);

/// ||a - b||_2 / ||a||_2. Throws DimensionError on shape mismatch and
/// std::domain_error when `a` is identically zero.
double l2_relative_change(const Plane& a, const Plane& b);

void require_same_shape(const Plane& a, const Plane& b, const char* what);

}  // namespace mcdemosaic
