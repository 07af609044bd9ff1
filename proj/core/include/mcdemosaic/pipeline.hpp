#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcdemosaic/cfa.hpp"
#include "mcdemosaic/green_init.hpp"
#include "mcdemosaic/mc_variational.hpp"
#include "mcdemosaic/quality.hpp"
#include "mcdemosaic/rb_recon.hpp"

namespace mcdemosaic {

struct MetricParams {
    int border_crop = kDefaultBorderCrop;
    double samples_per_degree = kDefaultSamplesPerDegree;
};

/// Everything a run needs. Defaults reproduce the published configuration.
struct PipelineConfig {
    CfaPattern pattern = CfaPattern::RGGB;
    McParams mc;
    RbParams rb;
    MetricParams metrics;
    bool skip_mc_refinement = false;

    void validate() const;

    /// Applies one `key=value` setting. Keys are the field names used on the command
    /// line (lambda, h, r1..r4, tol, max_outer, min_outer, inner_sweeps, delta, border_crop, spd,
    /// skip_mc, pattern); '-' and '_' are interchangeable. Throws std::invalid_argument.
    void set(const std::string& key, const std::string& value);

    /// Reads `key=value` lines; blank lines and '#' comments are ignored.
    static PipelineConfig from_file(const std::filesystem::path& path, PipelineConfig base);
    static PipelineConfig from_file(const std::filesystem::path& path);
};

/// Intermediate and final planes of one demosaicking run, all unquantized.
struct DemosaicResult {
    Plane g_hat;    ///< color-difference initialization
    Plane g_tilde;  ///< after curvature refinement, measured G restored
    RgbImage image;
    std::optional<SolveReport> solver;
};

/// green initialization -> curvature refinement (unless skipped) -> R/B reconstruction.
DemosaicResult demosaic_detailed(const BayerMosaic& m, const PipelineConfig& config,
                                 const GreenInitializer& green = interpolate_green);
RgbImage demosaic(const BayerMosaic& m, const PipelineConfig& config);

/// Copies the measured G samples of `m` into `g`.
void restore_measured_green(const BayerMosaic& m, Plane& g);

ImageScore score(const std::string& name, const RgbImage& reference, const RgbImage& test,
                 const MetricParams& metrics);

struct BenchFailure {
    std::string image;
    std::string reason;
    bool numerical = false;
};

struct BenchResult {
    QualityReport proposed;
    QualityReport bilinear;
    std::vector<BenchFailure> failures;
};

/// Image files (.ppm, .pnm, .png) directly inside `dir`, sorted by filename.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

/// mosaic -> demosaic -> score for each image, plus the bilinear baseline. Each
/// image runs independently; failures are recorded and the run continues.
/// Rows are ordered by filename regardless of `jobs`.
BenchResult run_bench(const std::filesystem::path& dir, const PipelineConfig& config, int jobs = 1);

}  // namespace mcdemosaic
