#include "mcdemosaic/quality.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace mcdemosaic {

namespace {

struct Crop {
    int i0, i1, j0, j1;  // half-open
};

Crop interior(const Plane& p, int border_crop) {
    if (border_crop < 0) throw std::invalid_argument("border_crop must be non-negative");
    Crop c{border_crop, p.width() - border_crop, border_crop, p.height() - border_crop};
    if (c.i0 >= c.i1 || c.j0 >= c.j1) throw DimensionError("border crop leaves an empty interior");
    return c;
}

void require_same_shape(const RgbImage& a, const RgbImage& b, const char* what) {
    mcdemosaic::require_same_shape(a.g, b.g, what);
}

double psnr_from_mse(double mse) {
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

// Convolve rows then columns with the same 1-D kernel, mirror boundaries.
Plane separable_blur(const Plane& src, const std::vector<double>& taps) {
    const int half = static_cast<int>(taps.size() / 2);
    Plane tmp(src.width(), src.height());
    for (int j = 0; j < src.height(); ++j) {
        for (int i = 0; i < src.width(); ++i) {
            double s = 0.0;
            for (int k = -half; k <= half; ++k) s += taps[static_cast<std::size_t>(k + half)] * src.reflected(i + k, j);
            tmp(i, j) = s;
        }
    }
    Plane out(src.width(), src.height());
    for (int j = 0; j < src.height(); ++j) {
        for (int i = 0; i < src.width(); ++i) {
            double s = 0.0;
            for (int k = -half; k <= half; ++k) s += taps[static_cast<std::size_t>(k + half)] * tmp.reflected(i, j + k);
            out(i, j) = s;
        }
    }
    return out;
}

Plane apply_filter(const Plane& src, const color::SpatialFilter& f) {
    Plane out(src.width(), src.height());
    for (std::size_t t = 0; t < f.weights.size(); ++t) {
        const Plane blurred = separable_blur(src, f.kernels[t]);
        auto dst = out.samples();
        auto b = blurred.samples();
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += f.weights[t] * b[k];
    }
    return out;
}

// Converts an image to three filtered opponent planes.
std::array<Plane, 3> filtered_opponent(const RgbImage& img, double spd) {
    const int w = img.width();
    const int h = img.height();
    std::array<Plane, 3> opp{Plane(w, h), Plane(w, h), Plane(w, h)};
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const color::Vec3 o = color::xyz_to_opponent(color::srgb_to_xyz({img.r(i, j), img.g(i, j), img.b(i, j)}));
            for (int c = 0; c < 3; ++c) opp[static_cast<std::size_t>(c)](i, j) = o[static_cast<std::size_t>(c)];
        }
    }
    for (int c = 0; c < 3; ++c) {
        auto& plane = opp[static_cast<std::size_t>(c)];
        plane = apply_filter(plane, color::opponent_filter(c, spd));
    }
    return opp;
}

}  // namespace

double psnr(const Plane& reference, const Plane& test, int border_crop) {
    mcdemosaic::require_same_shape(reference, test, "psnr");
    const Crop c = interior(reference, border_crop);
    double sum = 0.0;
    for (int j = c.j0; j < c.j1; ++j) {
        for (int i = c.i0; i < c.i1; ++i) {
            const double d = reference(i, j) - test(i, j);
            sum += d * d;
        }
    }
    const double count = static_cast<double>(c.i1 - c.i0) * static_cast<double>(c.j1 - c.j0);
    return psnr_from_mse(sum / count);
}

double cpsnr(const RgbImage& reference, const RgbImage& test, int border_crop) {
    require_same_shape(reference, test, "cpsnr");
    const Crop c = interior(reference.g, border_crop);
    double sum = 0.0;
    for (int ch = 0; ch < 3; ++ch) {
        const Plane& a = reference.channel(ch);
        const Plane& b = test.channel(ch);
        for (int j = c.j0; j < c.j1; ++j) {
            for (int i = c.i0; i < c.i1; ++i) {
                const double d = a(i, j) - b(i, j);
                sum += d * d;
            }
        }
    }
    const double count = 3.0 * static_cast<double>(c.i1 - c.i0) * static_cast<double>(c.j1 - c.j0);
    return psnr_from_mse(sum / count);
}

double scielab(const RgbImage& reference, const RgbImage& test, double samples_per_degree, int border_crop) {
    require_same_shape(reference, test, "scielab");
    if (!(samples_per_degree > 0.0)) throw std::invalid_argument("samples_per_degree must be positive");
    const Crop c = interior(reference.g, border_crop);
    const auto a = filtered_opponent(reference, samples_per_degree);
    const auto b = filtered_opponent(test, samples_per_degree);

    double sum = 0.0;
    for (int j = c.j0; j < c.j1; ++j) {
        for (int i = c.i0; i < c.i1; ++i) {
            const color::Vec3 la = color::xyz_to_lab(color::opponent_to_xyz({a[0](i, j), a[1](i, j), a[2](i, j)}));
            const color::Vec3 lb = color::xyz_to_lab(color::opponent_to_xyz({b[0](i, j), b[1](i, j), b[2](i, j)}));
            sum += color::delta_e76(la, lb);
        }
    }
    return sum / (static_cast<double>(c.i1 - c.i0) * static_cast<double>(c.j1 - c.j0));
}

namespace color {

namespace {

double linearize(double v) {
    const double c = std::clamp(v / 255.0, 0.0, 1.0);
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

constexpr double kSrgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Opponent transform of the spatial CIELAB model (XYZ -> luminance, red-green, blue-yellow).
constexpr double kXyzToOpp[3][3] = {
    {0.2787336, 0.7218031, -0.1065520},
    {-0.4487736, 0.2898056, -0.0771569},
    {0.0859513, -0.5899859, 0.5011089},
};

Vec3 multiply(const double m[3][3], const Vec3& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

struct Inverse3 {
    double m[3][3];
};

Inverse3 invert(const double a[3][3]) {
    const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    Inverse3 r{};
    r.m[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
    r.m[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
    r.m[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
    r.m[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
    r.m[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
    r.m[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
    r.m[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
    r.m[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
    r.m[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
    return r;
}

const Inverse3& opp_to_xyz_matrix() {
    static const Inverse3 inv = invert(kXyzToOpp);
    return inv;
}

const Vec3& white_point() {
    static const Vec3 white = srgb_to_xyz({255.0, 255.0, 255.0});
    return white;
}

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

std::vector<double> gaussian_taps(double spread_px, int half) {
    std::vector<double> taps(static_cast<std::size_t>(2 * half + 1));
    double sum = 0.0;
    for (int k = -half; k <= half; ++k) {
        const double x = static_cast<double>(k) / spread_px;
        const double v = std::exp(-x * x);
        taps[static_cast<std::size_t>(k + half)] = v;
        sum += v;
    }
    for (double& v : taps) v /= sum;
    return taps;
}

}  // namespace

Vec3 srgb_to_xyz(const Vec3& rgb) {
    return multiply(kSrgbToXyz, {linearize(rgb[0]), linearize(rgb[1]), linearize(rgb[2])});
}

Vec3 xyz_to_lab(const Vec3& xyz) {
    const Vec3& wp = white_point();
    const double fx = lab_f(xyz[0] / wp[0]);
    const double fy = lab_f(xyz[1] / wp[1]);
    const double fz = lab_f(xyz[2] / wp[2]);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double delta_e76(const Vec3& a, const Vec3& b) {
    const double dl = a[0] - b[0];
    const double da = a[1] - b[1];
    const double db = a[2] - b[2];
    return std::sqrt(dl * dl + da * da + db * db);
}

Vec3 xyz_to_opponent(const Vec3& xyz) { return multiply(kXyzToOpp, xyz); }

Vec3 opponent_to_xyz(const Vec3& opp) { return multiply(opp_to_xyz_matrix().m, opp); }

SpatialFilter opponent_filter(int channel, double samples_per_degree) {
    // (spread in degrees, weight) pairs per opponent channel.
    static const std::vector<std::pair<double, double>> kTerms[3] = {
        {{0.05, 1.00327}, {0.225, 0.114416}, {7.0, -0.117686}},
        {{0.0685, 0.616725}, {0.826, 0.383275}},
        {{0.0920, 0.567885}, {0.6451, 0.432115}},
    };
    if (channel < 0 || channel > 2) throw std::invalid_argument("opponent channel must be 0, 1 or 2");
    // One degree of visual field.
    const int half = std::max(1, static_cast<int>(std::ceil(samples_per_degree / 2.0)) - 1);
    SpatialFilter f;
    double total = 0.0;
    for (const auto& [spread, weight] : kTerms[channel]) {
        f.weights.push_back(weight);
        f.kernels.push_back(gaussian_taps(spread * samples_per_degree, half));
        total += weight;
    }
    for (double& w : f.weights) w /= total;
    return f;
}

}  // namespace color

double QualityReport::mean_cpsnr() const {
    if (per_image.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : per_image) s += r.cpsnr_db;
    return s / static_cast<double>(per_image.size());
}

double QualityReport::mean_scielab() const {
    if (per_image.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : per_image) s += r.scielab_de;
    return s / static_cast<double>(per_image.size());
}

std::string format_db(double value, int decimals) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << value;
    return os.str();
}

std::string QualityReport::to_csv() const {
    std::ostringstream os;
    os << "image,cpsnr_db,scielab_de,border_crop\n";
    for (const auto& r : per_image) {
        os << r.image << ',' << format_db(r.cpsnr_db, 6) << ',' << format_db(r.scielab_de, 6) << ',' << border_crop
           << '\n';
    }
    os << "average," << format_db(mean_cpsnr(), 6) << ',' << format_db(mean_scielab(), 6) << ',' << border_crop
       << '\n';
    return os.str();
}

std::string QualityReport::to_json() const {
    auto number = [](double v) -> nlohmann::json {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : per_image) {
        rows.push_back({{"image", r.image},
                        {"cpsnr_db", number(r.cpsnr_db)},
                        {"scielab_de", number(r.scielab_de)},
                        {"border_crop", border_crop}});
    }
    nlohmann::json doc = {
        {"per_image", rows},
        {"average", {{"cpsnr_db", number(mean_cpsnr())}, {"scielab_de", number(mean_scielab())}, {"border_crop", border_crop}}},
    };
    return doc.dump(2) + "\n";
}

}  // namespace mcdemosaic
