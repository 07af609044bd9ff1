#include "mcdemosaic/plane.hpp"

#include <cmath>
#include <string>

namespace mcdemosaic {

int reflect_index(int k, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    int m = k % period;
    if (m < 0) m += period;
    return m < n ? m : period - m;
}

Plane::Plane(int width, int height, double fill) : Plane(width, height, std::vector<double>(
    static_cast<std::size_t>(width > 0 ? width : 0) * static_cast<std::size_t>(height > 0 ? height : 0), fill)) {}

Plane::Plane(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 2 || height < 2) {
        throw DimensionError("plane must be at least 2x2, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
    if (samples_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw DimensionError("sample count does not match plane dimensions");
    }
}

bool Plane::all_finite() const {
    for (double v : samples_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

RgbImage::RgbImage(Plane red, Plane green, Plane blue)
    : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
    if (!r.same_shape(g) || !r.same_shape(b)) {
        throw DimensionError("RGB planes differ in size");
    }
}

RgbImage::RgbImage(int width, int height, double rv, double gv, double bv)
    : r(width, height, rv), g(width, height, gv), b(width, height, bv) {}

double sample_reflect(const Plane& p, int i, int j) { return p.reflected(i, j); }

void require_same_shape(const Plane& a, const Plane& b, const char* what) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.width()) + "x" +
                             std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()) + ")");
    }
}

Plane map_planes(std::span<const Plane* const> planes, const std::function<double(std::span<const double>)>& f) {
    if (planes.empty()) throw DimensionError("map_planes: no input planes");
    const Plane& first = *planes.front();
    for (const Plane* p : planes) require_same_shape(first, *p, "map_planes");

    Plane out(first.width(), first.height());
    std::vector<double> args(planes.size());
    auto dst = out.samples();
    for (std::size_t k = 0; k < dst.size(); ++k) {
        for (std::size_t c = 0; c < planes.size(); ++c) args[c] = planes[c]->samples()[k];
        dst[k] = f(args);
    }
    return out;
}

Plane map_planes(const Plane& a, const std::function<double(double)>& f) {
    Plane out(a.width(), a.height());
    auto src = a.samples();
    auto dst = out.samples();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = f(src[k]);
    return out;
}

Plane map_planes(const Plane& a, const Plane& b, const std::function<double(double, double)>& f) {
    require_same_shape(a, b, "map_planes");
    Plane out(a.width(), a.height());
    auto sa = a.samples();
    auto sb = b.samples();
    auto dst = out.samples();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = f(sa[k], sb[k]);
    return out;
}

double l2_norm(const Plane& a) {
    double sum = 0.0;
    for (double v : a.samples()) sum += v * v;
    return std::sqrt(sum);
}

double l2_relative_change(const Plane& a, const Plane& b) {
    require_same_shape(a, b, "l2_relative_change");
    double diff = 0.0;
    double norm = 0.0;
    auto sa = a.samples();
    auto sb = b.samples();
    for (std::size_t k = 0; k < sa.size(); ++k) {
        const double d = sa[k] - sb[k];
        diff += d * d;
        norm += sa[k] * sa[k];
    }
    if (norm == 0.0) throw std::domain_error("l2_relative_change: reference plane has zero norm");
    return std::sqrt(diff) / std::sqrt(norm);
}

}  // namespace mcdemosaic
