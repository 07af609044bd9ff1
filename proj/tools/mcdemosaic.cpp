#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mcdemosaic/image_io.hpp"
#include "mcdemosaic/pipeline.hpp"

namespace fs = std::filesystem;
using namespace mcdemosaic;

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,      // bad flags, bad configuration values
    kIo = 2,         // unreadable or unwritable files
    kNumerical = 3,  // solver produced non-finite values
    kData = 4,       // size mismatch, failed bench images
};

// Flag values are collected as strings and applied through PipelineConfig::set after
// the configuration file, so a flag always wins over the file.
using Overrides = std::map<std::string, std::string>;

void add_setting(CLI::App* app, Overrides& out, const std::string& flag, const std::string& key,
                 const std::string& help) {
    app->add_option_function<std::string>(
        "--" + flag, [&out, key](const std::string& v) { out[key] = v; }, help);
}

void add_solver_flags(CLI::App* app, Overrides& out) {
    add_setting(app, out, "lambda", "lambda", "curvature regularization weight (default 2e-3)");
    add_setting(app, out, "h", "h", "grid spacing of the difference operators (default 5)");
    add_setting(app, out, "r1", "r1", "penalty on |p| - p.m (default 40)");
    add_setting(app, out, "r2", "r2", "penalty on p - [grad G, 1] (default 40)");
    add_setting(app, out, "r3", "r3", "penalty on q - div n (default 100)");
    add_setting(app, out, "r4", "r4", "penalty on n - m (default 100)");
    add_setting(app, out, "tol", "tol", "relative-change stopping threshold (default 1e-4)");
    add_setting(app, out, "max-outer", "max_outer", "outer iteration cap (default 200)");
    add_setting(app, out, "inner-sweeps", "inner_sweeps", "Gauss-Seidel sweeps per outer iteration (default 10)");
    add_setting(app, out, "delta", "delta", "R/B refinement blend (default 0.6)");
    app->add_flag_callback("--skip-mc", [&out] { out["skip_mc"] = "true"; }, "skip the curvature refinement of green");
}

void add_metric_flags(CLI::App* app, Overrides& out) {
    add_setting(app, out, "border-crop", "border_crop", "pixels excluded on each side when scoring (default 10)");
    add_setting(app, out, "spd", "spd", "S-CIELAB samples per degree of visual angle (default 23)");
}

PipelineConfig build_config(const std::optional<fs::path>& file, const Overrides& overrides) {
    PipelineConfig cfg = file ? PipelineConfig::from_file(*file) : PipelineConfig{};
    for (const auto& [key, value] : overrides) cfg.set(key, value);
    cfg.validate();
    return cfg;
}

std::string significant4(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%#.4g", v);
    return buf;
}

enum class ReportFormat { Csv, Json };

ReportFormat resolve_format(const std::string& flag, const std::optional<fs::path>& report) {
    if (flag == "json") return ReportFormat::Json;
    if (flag == "csv") return ReportFormat::Csv;
    if (report && report->extension() == ".json") return ReportFormat::Json;
    return ReportFormat::Csv;
}

std::string render(const QualityReport& report, ReportFormat format) {
    return format == ReportFormat::Json ? report.to_json() : report.to_csv();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open for writing");
    out << text;
    if (!out) throw IoError(path, "write failed");
}

// ---- subcommands -------------------------------------------------------------

int cmd_mosaic(const fs::path& input, const fs::path& output, const Overrides& overrides) {
    PipelineConfig cfg = build_config(std::nullopt, overrides);
    const RgbImage img = read_rgb(input);
    write_mosaic(output, mosaic(img, cfg.pattern));
    return kOk;
}

int cmd_demosaic(const fs::path& input, const fs::path& output, const std::optional<fs::path>& config,
                 const Overrides& overrides) {
    const PipelineConfig cfg = build_config(config, overrides);
    BayerMosaic raw;
    if (is_single_channel(input)) {
        raw = read_mosaic(input, cfg.pattern);
        // An explicit --pattern beats the sidecar.
        if (overrides.count("pattern")) raw.pattern = cfg.pattern;
    } else {
        raw = mosaic(read_rgb(input), cfg.pattern);
    }
    const DemosaicResult result = demosaic_detailed(raw, cfg);
    write_rgb(output, result.image);
    if (result.solver) {
        std::cerr << input.filename().string() << ": " << result.solver->outer_iterations
                  << " outer iterations, relative change " << result.solver->final_relative_change << '\n';
    }
    return kOk;
}

QualityReport evaluate_pairs(const fs::path& reference, const fs::path& test, const MetricParams& metrics) {
    QualityReport report;
    report.border_crop = metrics.border_crop;
    if (fs::is_directory(reference) != fs::is_directory(test)) {
        throw std::invalid_argument("eval needs two files or two directories");
    }
    if (!fs::is_directory(reference)) {
        report.per_image.push_back(score(test.filename().string(), read_rgb(reference), read_rgb(test), metrics));
        return report;
    }
    for (const fs::path& ref : list_images(reference)) {
        const fs::path candidate = test / ref.filename();
        if (!fs::exists(candidate)) throw IoError(candidate, "no test image matching the reference");
        report.per_image.push_back(score(ref.filename().string(), read_rgb(ref), read_rgb(candidate), metrics));
    }
    if (report.per_image.empty()) throw IoError(reference, "no images found");
    return report;
}

int cmd_eval(const fs::path& reference, const fs::path& test, const Overrides& overrides,
             const std::optional<fs::path>& report_path, const std::string& format_flag) {
    const PipelineConfig cfg = build_config(std::nullopt, overrides);
    const QualityReport report = evaluate_pairs(reference, test, cfg.metrics);
    for (const ImageScore& s : report.per_image) {
        std::cout << s.image << "  cpsnr_db " << significant4(s.cpsnr_db) << "  scielab_de "
                  << format_db(s.scielab_de, 4) << '\n';
    }
    if (report.per_image.size() > 1) {
        std::cout << "average  cpsnr_db " << significant4(report.mean_cpsnr()) << "  scielab_de "
                  << format_db(report.mean_scielab(), 4) << '\n';
    }
    if (report_path) write_text(*report_path, render(report, resolve_format(format_flag, report_path)));
    return kOk;
}

fs::path baseline_path(const fs::path& report) {
    fs::path p = report;
    p.replace_filename(report.stem().string() + "_bilinear" + report.extension().string());
    return p;
}

int cmd_bench(const fs::path& dir, const std::optional<fs::path>& config, const Overrides& overrides,
              const std::optional<fs::path>& report_path, const std::string& format_flag, int jobs) {
    const PipelineConfig cfg = build_config(config, overrides);
    const BenchResult result = run_bench(dir, cfg, jobs);

    for (std::size_t k = 0; k < result.proposed.per_image.size(); ++k) {
        const ImageScore& p = result.proposed.per_image[k];
        const ImageScore& b = result.bilinear.per_image[k];
        std::cerr << p.image << ": cpsnr " << format_db(p.cpsnr_db, 4) << " dB (bilinear "
                  << format_db(b.cpsnr_db, 4) << "), s-cielab " << format_db(p.scielab_de, 4) << '\n';
    }
    for (const BenchFailure& f : result.failures) std::cerr << f.image << ": FAILED: " << f.reason << '\n';

    const ReportFormat format = resolve_format(format_flag, report_path);
    if (report_path) {
        write_text(*report_path, render(result.proposed, format));
        write_text(baseline_path(*report_path), render(result.bilinear, format));
    } else {
        std::cout << render(result.proposed, format);
    }
    if (!result.proposed.per_image.empty()) {
        std::cerr << "average: cpsnr " << format_db(result.proposed.mean_cpsnr(), 4) << " dB (bilinear "
                  << format_db(result.bilinear.mean_cpsnr(), 4) << "), s-cielab "
                  << format_db(result.proposed.mean_scielab(), 4) << '\n';
    }

    if (result.failures.empty()) return kOk;
    for (const BenchFailure& f : result.failures) {
        if (f.numerical) return kNumerical;
    }
    return kData;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayer demosaicking with mean-curvature refinement"};
    // "--h" is the grid spacing, so help has no short alias; subcommands inherit this.
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", "mcdemosaic 0.1.0");

    std::string format_flag;
    std::optional<fs::path> report_path;
    std::optional<fs::path> config_path;
    int jobs = 1;

    Overrides mosaic_over;
    fs::path mosaic_in;
    fs::path mosaic_out;
    CLI::App* mosaic_cmd = app.add_subcommand("mosaic", "sample an RGB image through a Bayer CFA (PGM + sidecar)");
    mosaic_cmd->add_option("input", mosaic_in, "RGB image (PPM, PGM or PNG)")->required();
    mosaic_cmd->add_option("output", mosaic_out, "mosaic PGM; the pattern goes to <output>.cfa")->required();
    add_setting(mosaic_cmd, mosaic_over, "pattern", "pattern", "RGGB, GRBG, GBRG or BGGR (default RGGB)");

    Overrides demosaic_over;
    fs::path demosaic_in;
    fs::path demosaic_out;
    CLI::App* demosaic_cmd = app.add_subcommand("demosaic", "reconstruct an RGB image from a mosaic or an RGB source");
    demosaic_cmd->add_option("input", demosaic_in, "mosaic PGM/gray PNG, or an RGB image to mosaic first")->required();
    demosaic_cmd->add_option("output", demosaic_out, "output image (.png for PNG, otherwise PPM)")->required();
    demosaic_cmd->add_option("--config", config_path, "key=value configuration file");
    add_setting(demosaic_cmd, demosaic_over, "pattern", "pattern",
                "CFA phase; overrides the mosaic sidecar (default RGGB)");
    add_solver_flags(demosaic_cmd, demosaic_over);

    Overrides eval_over;
    fs::path eval_ref;
    fs::path eval_test;
    CLI::App* eval_cmd = app.add_subcommand("eval", "score a test image (or directory) against a reference");
    eval_cmd->add_option("reference", eval_ref, "reference image or directory")->required();
    eval_cmd->add_option("test", eval_test, "test image or directory (matched by filename)")->required();
    add_metric_flags(eval_cmd, eval_over);
    eval_cmd->add_option("--report", report_path, "write a CSV/JSON report");
    eval_cmd->add_option("--format", format_flag, "report format")->check(CLI::IsMember({"csv", "json"}));

    Overrides bench_over;
    fs::path bench_dir;
    CLI::App* bench_cmd = app.add_subcommand("bench", "mosaic, demosaic and score every image in a directory");
    bench_cmd->add_option("dataset", bench_dir, "directory of RGB images (.ppm, .pnm, .png)")->required();
    bench_cmd->add_option("--config", config_path, "key=value configuration file");
    add_setting(bench_cmd, bench_over, "pattern", "pattern", "CFA phase (default RGGB)");
    add_solver_flags(bench_cmd, bench_over);
    add_metric_flags(bench_cmd, bench_over);
    bench_cmd->add_option("--report", report_path,
                          "report path; the bilinear baseline goes to <stem>_bilinear<ext>");
    bench_cmd->add_option("--format", format_flag, "report format")->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_option("--jobs", jobs, "images processed concurrently")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*mosaic_cmd) return cmd_mosaic(mosaic_in, mosaic_out, mosaic_over);
        if (*demosaic_cmd) return cmd_demosaic(demosaic_in, demosaic_out, config_path, demosaic_over);
        if (*eval_cmd) return cmd_eval(eval_ref, eval_test, eval_over, report_path, format_flag);
        if (*bench_cmd) return cmd_bench(bench_dir, config_path, bench_over, report_path, format_flag, jobs);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const SolverError& e) {
        std::cerr << "error: solver failed in " << e.subproblem() << ": " << e.what() << '\n';
        return kNumerical;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
