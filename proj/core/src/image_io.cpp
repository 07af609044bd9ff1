#include "mcdemosaic/image_io.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <png.h>

namespace mcdemosaic {

namespace fs = std::filesystem;

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

struct RawImage {
    int width = 0;
    int height = 0;
    int channels = 0;  // 1 or 3
    std::vector<double> samples;  // interleaved, scaled to [0, 255]
};

std::string read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_png_signature(const std::string& bytes) {
    return bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0;
}

// Parses one whitespace-delimited header integer, skipping '#' comments.
int netpbm_int(const fs::path& path, const std::string& bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        const char c = bytes[pos];
        if (c == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else {
            break;
        }
    }
    long value = 0;
    const std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1'000'000'000) throw IoError(path, "header value out of range");
        ++pos;
    }
    if (pos == start) throw IoError(path, "malformed netpbm header");
    return static_cast<int>(value);
}

RawImage decode_netpbm(const fs::path& path, const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
        throw IoError(path, "unsupported format (expected binary PPM/PGM or PNG)");
    }
    RawImage img;
    img.channels = bytes[1] == '6' ? 3 : 1;
    std::size_t pos = 2;
    img.width = netpbm_int(path, bytes, pos);
    img.height = netpbm_int(path, bytes, pos);
    const int maxval = netpbm_int(path, bytes, pos);
    if (img.width < 1 || img.height < 1) throw IoError(path, "empty image");
    if (maxval < 1 || maxval > 65535) throw IoError(path, "invalid maxval");
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        throw IoError(path, "malformed netpbm header");
    }
    ++pos;

    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t count = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) *
                              static_cast<std::size_t>(img.channels);
    if (bytes.size() - pos < count * bytes_per_sample) throw IoError(path, "truncated pixel data");

    img.samples.resize(count);
    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + pos);
    for (std::size_t k = 0; k < count; ++k) {
        const unsigned v = bytes_per_sample == 2 ? (static_cast<unsigned>(data[2 * k]) << 8) | data[2 * k + 1] : data[k];
        img.samples[k] = maxval == 255 ? static_cast<double>(v) : 255.0 * static_cast<double>(v) / maxval;
    }
    return img;
}

RawImage decode_png(const fs::path& path, const std::string& bytes, bool want_gray) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw IoError(path, std::string("invalid PNG: ") + image.message);
    }
    const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
    RawImage img;
    img.width = static_cast<int>(image.width);
    img.height = static_cast<int>(image.height);
    img.channels = (want_gray || gray) ? 1 : 3;
    // Alpha is composited onto black by libpng when dropped.
    image.format = img.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError(path, "PNG decode failed: " + msg);
    }
    img.samples.assign(buffer.begin(), buffer.end());
    return img;
}

RawImage decode(const fs::path& path, bool want_gray = false) {
    const std::string bytes = read_all(path);
    return has_png_signature(bytes) ? decode_png(path, bytes, want_gray) : decode_netpbm(path, bytes);
}

void write_bytes(const fs::path& path, const std::string& header, const std::vector<unsigned char>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << header;
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError(path, "write failed");
}

std::vector<unsigned char> interleave(const RgbImage& img) {
    std::vector<unsigned char> data;
    data.reserve(static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height()) * 3);
    for (int j = 0; j < img.height(); ++j) {
        for (int i = 0; i < img.width(); ++i) {
            data.push_back(quantize(img.r(i, j)));
            data.push_back(quantize(img.g(i, j)));
            data.push_back(quantize(img.b(i, j)));
        }
    }
    return data;
}

}  // namespace

std::uint8_t quantize(double v) {
    if (!(v > 0.0)) return 0;  // also maps NaN to 0
    if (v >= 255.0) return 255;
    return static_cast<std::uint8_t>(std::round(v));
}

Plane quantized(const Plane& p) {
    return map_planes(p, [](double v) { return static_cast<double>(quantize(v)); });
}

RgbImage quantized(const RgbImage& img) { return {quantized(img.r), quantized(img.g), quantized(img.b)}; }

RgbImage read_rgb(const fs::path& path) {
    const RawImage raw = decode(path);
    if (raw.width < 2 || raw.height < 2) throw IoError(path, "image must be at least 2x2");
    RgbImage img(raw.width, raw.height, 0.0, 0.0, 0.0);
    std::size_t k = 0;
    for (int j = 0; j < raw.height; ++j) {
        for (int i = 0; i < raw.width; ++i) {
            for (int c = 0; c < 3; ++c) {
                img.channel(c)(i, j) = raw.samples[raw.channels == 3 ? k + static_cast<std::size_t>(c) : k];
            }
            k += static_cast<std::size_t>(raw.channels);
        }
    }
    return img;
}

Plane read_gray(const fs::path& path) {
    const RawImage raw = decode(path, true);
    if (raw.channels != 1) throw IoError(path, "expected a single-channel image");
    if (raw.width < 2 || raw.height < 2) throw IoError(path, "image must be at least 2x2");
    return Plane(raw.width, raw.height, raw.samples);
}

void write_ppm(const fs::path& path, const RgbImage& img) {
    write_bytes(path, "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n",
                interleave(img));
}

void write_png(const fs::path& path, const RgbImage& img) {
    const std::vector<unsigned char> data = interleave(img);
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.c_str(), 0, data.data(), 0, nullptr)) {
        throw IoError(path, std::string("PNG encode failed: ") + image.message);
    }
}

void write_rgb(const fs::path& path, const RgbImage& img) {
    if (path.extension() == ".png" || path.extension() == ".PNG") {
        write_png(path, img);
    } else {
        write_ppm(path, img);
    }
}

void write_pgm(const fs::path& path, const Plane& plane) {
    std::vector<unsigned char> data;
    data.reserve(plane.size());
    for (double v : plane.samples()) data.push_back(quantize(v));
    write_bytes(path, "P5\n" + std::to_string(plane.width()) + " " + std::to_string(plane.height()) + "\n255\n", data);
}

fs::path sidecar_path(const fs::path& mosaic_path) {
    fs::path p = mosaic_path;
    p += ".cfa";
    return p;
}

void write_mosaic(const fs::path& path, const BayerMosaic& m) {
    write_pgm(path, m.plane);
    std::ofstream side(sidecar_path(path));
    if (!side) throw IoError(sidecar_path(path), "cannot open for writing");
    side << "pattern=" << to_string(m.pattern) << '\n';
}

BayerMosaic read_mosaic(const fs::path& path, CfaPattern fallback) {
    BayerMosaic m{read_gray(path), fallback};
    const fs::path side = sidecar_path(path);
    if (fs::exists(side)) {
        std::ifstream in(side);
        std::string line;
        std::getline(in, line);
        const std::string key = "pattern=";
        if (line.rfind(key, 0) != 0) throw IoError(side, "expected 'pattern=<RGGB|GRBG|GBRG|BGGR>'");
        std::string name = line.substr(key.size());
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        const auto pattern = parse_pattern(name);
        if (!pattern) throw IoError(side, "unknown CFA pattern '" + name + "'");
        m.pattern = *pattern;
    }
    return m;
}

bool is_single_channel(const fs::path& path) {
    const std::string bytes = read_all(path);
    if (has_png_signature(bytes)) {
        png_image image;
        std::memset(&image, 0, sizeof image);
        image.version = PNG_IMAGE_VERSION;
        if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
            throw IoError(path, std::string("invalid PNG: ") + image.message);
        }
        const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
        png_image_free(&image);
        return gray;
    }
    return bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5';
}

}  // namespace mcdemosaic
