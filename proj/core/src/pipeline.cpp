#include "mcdemosaic/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "mcdemosaic/image_io.hpp"

namespace mcdemosaic {

namespace fs = std::filesystem;

namespace {

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '-', '_');
    if (key.rfind("__", 0) == 0) key.erase(0, 2);
    return key;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) throw std::invalid_argument(key + ": not a number: '" + value + "'");
    return out;
}

int to_int(const std::string& key, const std::string& value) {
    int out = 0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) throw std::invalid_argument(key + ": not an integer: '" + value + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw std::invalid_argument(key + ": not a boolean: '" + value + "'");
}

}  // namespace

void PipelineConfig::validate() const {
    mc.validate();
    rb.validate();
    if (metrics.border_crop < 0) throw std::invalid_argument("border_crop must be non-negative");
    if (!(metrics.samples_per_degree > 0.0)) throw std::invalid_argument("spd must be positive");
}

void PipelineConfig::set(const std::string& raw_key, const std::string& raw_value) {
    const std::string key = normalize_key(trim(raw_key));
    const std::string value = trim(raw_value);
    if (key == "pattern") {
        const auto p = parse_pattern(value);
        if (!p) throw std::invalid_argument("pattern: expected RGGB, GRBG, GBRG or BGGR, got '" + value + "'");
        pattern = *p;
    } else if (key == "lambda") {
        mc.lambda = to_double(key, value);
    } else if (key == "h") {
        mc.h = to_double(key, value);
    } else if (key == "r1") {
        mc.r1 = to_double(key, value);
    } else if (key == "r2") {
        mc.r2 = to_double(key, value);
    } else if (key == "r3") {
        mc.r3 = to_double(key, value);
    } else if (key == "r4") {
        mc.r4 = to_double(key, value);
    } else if (key == "tol" || key == "outer_tol") {
        mc.outer_tol = to_double(key, value);
    } else if (key == "max_outer") {
        mc.max_outer = to_int(key, value);
    } else if (key == "min_outer") {
        mc.min_outer = to_int(key, value);
    } else if (key == "inner_sweeps") {
        mc.inner_sweeps = to_int(key, value);
    } else if (key == "delta") {
        rb.delta = to_double(key, value);
    } else if (key == "border_crop") {
        metrics.border_crop = to_int(key, value);
    } else if (key == "spd" || key == "samples_per_degree") {
        metrics.samples_per_degree = to_double(key, value);
    } else if (key == "skip_mc" || key == "skip_mc_refinement") {
        skip_mc_refinement = to_bool(key, value);
    } else {
        throw std::invalid_argument("unknown configuration key '" + raw_key + "'");
    }
}

PipelineConfig PipelineConfig::from_file(const fs::path& path, PipelineConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError(path, "cannot open configuration file");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        }
        base.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

PipelineConfig PipelineConfig::from_file(const fs::path& path) { return from_file(path, PipelineConfig{}); }

void restore_measured_green(const BayerMosaic& m, Plane& g) {
    for (int j = 0; j < m.height(); ++j) {
        for (int i = 0; i < m.width(); ++i) {
            if (m.channel(i, j) == Channel::G) g(i, j) = m.plane(i, j);
        }
    }
}

DemosaicResult demosaic_detailed(const BayerMosaic& m, const PipelineConfig& config, const GreenInitializer& green) {
    config.validate();
    DemosaicResult result;
    result.g_hat = green(m);
    if (config.skip_mc_refinement) {
        result.g_tilde = result.g_hat;
    } else {
        result.solver = solve_detailed(result.g_hat, config.mc);
        result.g_tilde = result.solver->g_tilde;
        restore_measured_green(m, result.g_tilde);
    }
    auto [r, b] = reconstruct_rb(m, result.g_tilde, config.rb);
    result.image = RgbImage(std::move(r), result.g_tilde, std::move(b));
    return result;
}

RgbImage demosaic(const BayerMosaic& m, const PipelineConfig& config) {
    return demosaic_detailed(m, config).image;
}

ImageScore score(const std::string& name, const RgbImage& reference, const RgbImage& test,
                 const MetricParams& metrics) {
    return {name, cpsnr(reference, test, metrics.border_crop),
            scielab(reference, test, metrics.samples_per_degree, metrics.border_crop)};
}

std::vector<fs::path> list_images(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError(dir, "not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".ppm" || ext == ".pnm" || ext == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return files;
}

BenchResult run_bench(const fs::path& dir, const PipelineConfig& config, int jobs) {
    config.validate();
    const std::vector<fs::path> files = list_images(dir);

    struct Slot {
        std::optional<ImageScore> proposed;
        std::optional<ImageScore> bilinear;
        std::optional<BenchFailure> failure;
    };
    std::vector<Slot> slots(files.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next++; k < files.size(); k = next++) {
            const std::string name = files[k].filename().string();
            try {
                const RgbImage source = read_rgb(files[k]);
                const BayerMosaic raw = mosaic(source, config.pattern);
                slots[k].proposed = score(name, source, quantized(demosaic(raw, config)), config.metrics);
                slots[k].bilinear = score(name, source, quantized(demosaic_bilinear(raw)), config.metrics);
            } catch (const SolverError& e) {
                slots[k].failure = BenchFailure{name, e.what(), true};
            } catch (const std::exception& e) {
                slots[k].failure = BenchFailure{name, e.what(), false};
            }
        }
    };

    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    BenchResult result;
    result.proposed.border_crop = config.metrics.border_crop;
    result.bilinear.border_crop = config.metrics.border_crop;
    for (auto& slot : slots) {
        if (slot.failure) {
            result.failures.push_back(*slot.failure);
            continue;
        }
        result.proposed.per_image.push_back(*slot.proposed);
        result.bilinear.per_image.push_back(*slot.bilinear);
    }
    return result;
}

}  // namespace mcdemosaic
