#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "mcdemosaic/image_io.hpp"
#include "mcdemosaic/pipeline.hpp"

using namespace mcdemosaic;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("mcdemosaic_test_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    fs::path operator/(const std::string& name) const { return path_ / name; }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

RgbImage integer_image(int w, int h, std::uint32_t seed) { return quantized(fixtures::random_image(w, h, seed)); }

RgbImage crop(const RgbImage& img, int x0, int y0, int w, int h) {
    RgbImage out(w, h, 0, 0, 0);
    for (int c = 0; c < 3; ++c) {
        for (int j = 0; j < h; ++j) {
            for (int i = 0; i < w; ++i) out.channel(c)(i, j) = img.channel(c)(x0 + i, y0 + j);
        }
    }
    return out;
}

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

// ---- quantization and files -----------------------------------------------------

TEST(Quantize, ClampAndRoundHalfAwayFromZero) {
    EXPECT_EQ(quantize(-3.0), 0);
    EXPECT_EQ(quantize(300.0), 255);
    EXPECT_EQ(quantize(254.5), 255);
    EXPECT_EQ(quantize(2.5), 3);
    EXPECT_EQ(quantize(2.4999), 2);
    EXPECT_EQ(quantize(0.5), 1);
    EXPECT_EQ(quantize(-0.5), 0);
}

TEST(ImageIo, PpmRoundTrip) {
    TempDir dir;
    const RgbImage img = integer_image(7, 5, 1);
    write_ppm(dir / "a.ppm", img);
    EXPECT_EQ(read_rgb(dir / "a.ppm"), img);
    EXPECT_FALSE(is_single_channel(dir / "a.ppm"));
}

TEST(ImageIo, PngRoundTrip) {
    TempDir dir;
    const RgbImage img = integer_image(9, 6, 2);
    write_png(dir / "a.png", img);
    EXPECT_EQ(read_rgb(dir / "a.png"), img);
    write_rgb(dir / "b.png", img);
    EXPECT_EQ(read_rgb(dir / "b.png"), img);
}

TEST(ImageIo, PgmRoundTripAndGrayReplication) {
    TempDir dir;
    const Plane p = quantized(fixtures::random_plane(6, 4, 3));
    write_pgm(dir / "g.pgm", p);
    EXPECT_TRUE(is_single_channel(dir / "g.pgm"));
    EXPECT_EQ(read_gray(dir / "g.pgm"), p);
    EXPECT_EQ(read_rgb(dir / "g.pgm"), fixtures::gray_image(p));
}

TEST(ImageIo, WritesQuantizedValues) {
    TempDir dir;
    write_ppm(dir / "q.ppm", RgbImage(2, 2, -4.0, 127.5, 300.0));
    EXPECT_EQ(read_rgb(dir / "q.ppm"), RgbImage(2, 2, 0, 128, 255));
}

TEST(ImageIo, ErrorsCarryThePath) {
    TempDir dir;
    try {
        read_rgb(dir / "missing.ppm");
        FAIL();
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("missing.ppm"), std::string::npos);
    }
    write_text(dir / "bad.ppm", "P6\n4 4\n255\nxx");
    EXPECT_THROW(read_rgb(dir / "bad.ppm"), IoError);
    write_text(dir / "bad.png", "not a png at all");
    EXPECT_THROW(read_rgb(dir / "bad.png"), IoError);
}

TEST(ImageIo, MosaicSidecar) {
    TempDir dir;
    const BayerMosaic m = mosaic(integer_image(6, 6, 4), CfaPattern::GBRG);
    write_mosaic(dir / "m.pgm", m);
    EXPECT_EQ(sidecar_path(dir / "m.pgm"), dir / "m.pgm.cfa");
    EXPECT_TRUE(fs::exists(dir / "m.pgm.cfa"));

    const BayerMosaic back = read_mosaic(dir / "m.pgm", CfaPattern::RGGB);
    EXPECT_EQ(back.pattern, CfaPattern::GBRG);
    EXPECT_EQ(back.plane, m.plane);

    fs::remove(dir / "m.pgm.cfa");
    EXPECT_EQ(read_mosaic(dir / "m.pgm", CfaPattern::BGGR).pattern, CfaPattern::BGGR);
}

// ---- configuration ------------------------------------------------------------

TEST(PipelineConfig, DefaultsAndSetters) {
    PipelineConfig c;
    EXPECT_EQ(c.pattern, CfaPattern::RGGB);
    EXPECT_EQ(c.rb.delta, 0.6);
    EXPECT_EQ(c.metrics.border_crop, 10);
    EXPECT_FALSE(c.skip_mc_refinement);

    c.set("lambda", "0.5");
    c.set("max-outer", "12");
    c.set("inner_sweeps", "3");
    c.set("pattern", "bggr");
    c.set("skip_mc", "true");
    c.set("spd", "40");
    EXPECT_EQ(c.mc.lambda, 0.5);
    EXPECT_EQ(c.mc.max_outer, 12);
    EXPECT_EQ(c.mc.inner_sweeps, 3);
    EXPECT_EQ(c.pattern, CfaPattern::BGGR);
    EXPECT_TRUE(c.skip_mc_refinement);
    EXPECT_EQ(c.metrics.samples_per_degree, 40.0);

    EXPECT_THROW(c.set("bogus", "1"), std::invalid_argument);
    EXPECT_THROW(c.set("lambda", "abc"), std::invalid_argument);
    EXPECT_THROW(c.set("pattern", "XYZW"), std::invalid_argument);
}

TEST(PipelineConfig, FromFile) {
    TempDir dir;
    write_text(dir / "c.cfg", "# comment\n\nlambda = 0.01\nr3=50\ndelta=0.55\n");
    const PipelineConfig c = PipelineConfig::from_file(dir / "c.cfg");
    EXPECT_EQ(c.mc.lambda, 0.01);
    EXPECT_EQ(c.mc.r3, 50.0);
    EXPECT_EQ(c.rb.delta, 0.55);
    EXPECT_EQ(c.mc.r4, 100.0);

    write_text(dir / "bad.cfg", "lambda 0.01\n");
    EXPECT_THROW(PipelineConfig::from_file(dir / "bad.cfg"), std::invalid_argument);
    EXPECT_THROW(PipelineConfig::from_file(dir / "absent.cfg"), IoError);
}

// ---- demosaicking ---------------------------------------------------------------

TEST(Demosaic, ConstantColorExact) {
    for (CfaPattern p : {CfaPattern::RGGB, CfaPattern::GRBG, CfaPattern::GBRG, CfaPattern::BGGR}) {
        PipelineConfig c;
        c.pattern = p;
        const RgbImage out = demosaic(mosaic(RgbImage(16, 12, 25, 160, 240), p), c);
        EXPECT_LT(fixtures::max_abs_diff(out, RgbImage(16, 12, 25, 160, 240)), 1e-6);
    }
}

TEST(Demosaic, KnownSamplesBitExact) {
    const RgbImage img = integer_image(20, 18, 5);
    const BayerMosaic m = mosaic(img, CfaPattern::GRBG);
    PipelineConfig c;
    c.pattern = CfaPattern::GRBG;
    const RgbImage out = demosaic(m, c);
    for (int j = 0; j < 18; ++j) {
        for (int i = 0; i < 20; ++i) {
            EXPECT_EQ(out.channel(static_cast<int>(m.channel(i, j)))(i, j), m.plane(i, j));
        }
    }
}

TEST(Demosaic, SkipMcUsesInitialGreen) {
    const RgbImage img = crop(read_rgb(MCDEMOSAIC_TEST_DATA "/natural/02_coffee.png"), 100, 100, 64, 64);
    const BayerMosaic m = mosaic(img, CfaPattern::RGGB);
    PipelineConfig c;
    c.skip_mc_refinement = true;
    const DemosaicResult skipped = demosaic_detailed(m, c);
    EXPECT_FALSE(skipped.solver.has_value());
    EXPECT_EQ(skipped.g_tilde, skipped.g_hat);

    c.skip_mc_refinement = false;
    const DemosaicResult full = demosaic_detailed(m, c);
    ASSERT_TRUE(full.solver.has_value());
    EXPECT_TRUE(full.solver->converged);
    for (int j = 0; j < 64; ++j) {
        for (int i = 0; i < 64; ++i) {
            if (m.channel(i, j) == Channel::G) {
                EXPECT_EQ(full.g_tilde(i, j), m.plane(i, j));
            }
        }
    }
}

TEST(Demosaic, CustomGreenInitializer) {
    const BayerMosaic m = mosaic(fixtures::random_image(10, 10, 6), CfaPattern::RGGB);
    PipelineConfig c;
    c.skip_mc_refinement = true;
    const DemosaicResult r = demosaic_detailed(m, c, [](const BayerMosaic& mm) { return demosaic_bilinear(mm).g; });
    EXPECT_EQ(r.g_hat, demosaic_bilinear(m).g);
}

TEST(Demosaic, RestoreMeasuredGreen) {
    const BayerMosaic m = mosaic(fixtures::random_image(6, 6, 7), CfaPattern::BGGR);
    Plane g(6, 6, -1.0);
    restore_measured_green(m, g);
    for (int j = 0; j < 6; ++j) {
        for (int i = 0; i < 6; ++i) EXPECT_EQ(g(i, j), m.channel(i, j) == Channel::G ? m.plane(i, j) : -1.0);
    }
}

TEST(Demosaic, SmoothGrayAbove50dB) {
    for (std::uint32_t seed = 1; seed <= 4; ++seed) {
        const RgbImage img = fixtures::gray_image(fixtures::smooth_plane(64, 64, seed));
        const RgbImage out = demosaic(mosaic(img, CfaPattern::RGGB), PipelineConfig{});
        EXPECT_GE(cpsnr(img, out, 0), 50.0) << seed;
    }
}

TEST(Demosaic, SwappingChromaSwapsOutput) {
    const RgbImage img = crop(read_rgb(MCDEMOSAIC_TEST_DATA "/natural/00_astronaut.png"), 200, 60, 48, 48);
    PipelineConfig a, b;
    a.pattern = CfaPattern::RGGB;
    b.pattern = CfaPattern::BGGR;
    const RgbImage out_a = demosaic(mosaic(img, a.pattern), a);
    const RgbImage out_b = demosaic(mosaic(RgbImage(img.b, img.g, img.r), b.pattern), b);
    EXPECT_LT(fixtures::max_abs_diff(out_a.r, out_b.b), 1e-9);
    EXPECT_LT(fixtures::max_abs_diff(out_a.g, out_b.g), 1e-9);
}

TEST(Demosaic, NaturalCropBeatsBilinear) {
    const RgbImage img = crop(read_rgb(MCDEMOSAIC_TEST_DATA "/natural/01_chelsea.png"), 100, 80, 96, 96);
    const BayerMosaic m = mosaic(img, CfaPattern::RGGB);
    const double ours = cpsnr(img, quantized(demosaic(m, PipelineConfig{})), 10);
    const double base = cpsnr(img, quantized(demosaic_bilinear(m)), 10);
    EXPECT_GT(ours, base + 1.0);
}

// ---- bench ----------------------------------------------------------------------

TEST(Bench, ListsSortedImagesAndIsDeterministic) {
    TempDir dir;
    write_png(dir / "b.png", quantized(fixtures::gray_image(fixtures::smooth_plane(24, 24, 2))));
    write_ppm(dir / "a.ppm", integer_image(24, 24, 3));
    write_text(dir / "notes.txt", "skip me");
    const auto files = list_images(dir.path());
    ASSERT_EQ(files.size(), 2U);
    EXPECT_EQ(files[0].filename(), "a.ppm");
    EXPECT_EQ(files[1].filename(), "b.png");

    PipelineConfig c;
    c.metrics.border_crop = 2;
    const BenchResult r1 = run_bench(dir.path(), c, 1);
    const BenchResult r2 = run_bench(dir.path(), c, 2);
    ASSERT_EQ(r1.proposed.per_image.size(), 2U);
    EXPECT_TRUE(r1.failures.empty());
    EXPECT_EQ(r1.proposed.to_csv(), r2.proposed.to_csv());
    EXPECT_EQ(r1.bilinear.to_csv(), r2.bilinear.to_csv());
    EXPECT_EQ(r1.proposed.per_image[0].image, "a.ppm");
}

TEST(Bench, RecordsFailuresAndContinues) {
    TempDir dir;
    write_ppm(dir / "good.ppm", integer_image(16, 16, 8));
    write_text(dir / "broken.ppm", "P6\n16 16\n255\n");
    PipelineConfig c;
    c.metrics.border_crop = 2;
    const BenchResult r = run_bench(dir.path(), c);
    ASSERT_EQ(r.failures.size(), 1U);
    EXPECT_EQ(r.failures[0].image, "broken.ppm");
    EXPECT_FALSE(r.failures[0].numerical);
    ASSERT_EQ(r.proposed.per_image.size(), 1U);
    EXPECT_EQ(r.proposed.per_image[0].image, "good.ppm");
}
