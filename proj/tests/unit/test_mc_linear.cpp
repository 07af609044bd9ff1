#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mcdemosaic/mc_linear.hpp"
#include "mcdemosaic/mc_variational.hpp"

using namespace mcdemosaic;

namespace {

// Second transcription: materialize a padded copy first, then read the four edge
// magnitudes of every pixel straight off it.
struct Padded {
    int w, h;
    std::vector<double> v;
    explicit Padded(const Plane& g) : w(g.width() + 4), h(g.height() + 4), v(static_cast<std::size_t>(w * h)) {
        auto mirror = [](int x, int n) { return x < 0 ? -x : (x >= n ? 2 * n - 2 - x : x); };
        for (int b = 0; b < h; ++b) {
            for (int a = 0; a < w; ++a) {
                v[static_cast<std::size_t>(b * w + a)] = g(mirror(a - 2, g.width()), mirror(b - 2, g.height()));
            }
        }
    }
    double operator()(int i, int j) const { return v[static_cast<std::size_t>((j + 2) * w + (i + 2))]; }
};

double edge_x(const Padded& p, int left, int j) {
    const double a = p(left + 1, j) - p(left, j);
    const double t = (p(left, j + 1) + p(left + 1, j + 1)) - (p(left, j - 1) + p(left + 1, j - 1));
    return std::sqrt(a * a + (t / 4.0) * (t / 4.0) + 1e-8);
}

double edge_y(const Padded& p, int i, int below) {
    const double a = p(i, below + 1) - p(i, below);
    const double t = (p(i + 1, below + 1) + p(i + 1, below)) - (p(i - 1, below + 1) + p(i - 1, below));
    return std::sqrt(a * a + (t / 4.0) * (t / 4.0) + 1e-8);
}

Plane laplacian(const Plane& g) {
    Plane out(g.width(), g.height());
    for (int j = 0; j < g.height(); ++j) {
        for (int i = 0; i < g.width(); ++i) {
            out(i, j) = g.reflected(i - 1, j) + g.reflected(i + 1, j) + g.reflected(i, j - 1) + g.reflected(i, j + 1) -
                        4.0 * g(i, j);
        }
    }
    return out;
}

Plane gaussian_bump(int n, double sigma, double amp, double cx, double cy) {
    Plane p(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double r2 = (i - cx) * (i - cx) + (j - cy) * (j - cy);
            p(i, j) = 20.0 + amp * std::exp(-r2 / (2.0 * sigma * sigma));
        }
    }
    return p;
}

}  // namespace

TEST(DirectionalMagnitudes, ConstantIsGuardOnly) {
    const DirectionalMagnitudes d = directional_magnitudes(Plane(6, 6, 90.0));
    for (const Plane* p : {&d.d_w, &d.d_e, &d.d_s, &d.d_n}) {
        for (double v : p->samples()) EXPECT_DOUBLE_EQ(v, std::sqrt(1e-8));
    }
}

TEST(DirectionalMagnitudes, HorizontalRamp) {
    Plane g(10, 10);
    for (int j = 0; j < 10; ++j) {
        for (int i = 0; i < 10; ++i) g(i, j) = 3.0 * i;
    }
    const DirectionalMagnitudes d = directional_magnitudes(g);
    for (int j = 1; j < 9; ++j) {
        for (int i = 1; i < 9; ++i) {
            EXPECT_NEAR(d.d_w(i, j), 3.0, 1e-8);
            EXPECT_NEAR(d.d_s(i, j), 3.0, 1e-8);
        }
    }
}

TEST(DirectionalMagnitudes, MatchesSecondTranscription) {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        const Plane g = fixtures::random_plane(8, 8, seed);
        const Padded p(g);
        const DirectionalMagnitudes d = directional_magnitudes(g);
        for (int j = 0; j < 8; ++j) {
            for (int i = 0; i < 8; ++i) {
                EXPECT_NEAR(d.d_w(i, j), edge_x(p, i - 1, j), 1e-12);
                EXPECT_NEAR(d.d_e(i, j), edge_x(p, i, j), 1e-12);
                EXPECT_NEAR(d.d_s(i, j), edge_y(p, i, j - 1), 1e-12);
                EXPECT_NEAR(d.d_n(i, j), edge_y(p, i, j), 1e-12);
            }
        }
    }
}

TEST(CurvatureWeights, Examples) {
    DirectionalMagnitudes d{Plane(2, 2, 1.0), Plane(2, 2, 3.0), Plane(2, 2, 2.0), Plane(2, 2, 2.0)};
    const CurvatureWeights w = curvature_weights(d);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_DOUBLE_EQ(w.u_w.samples()[k], 1.5);
        EXPECT_DOUBLE_EQ(w.u_e.samples()[k], 0.5);
        EXPECT_DOUBLE_EQ(w.u_s.samples()[k], 1.0);
        EXPECT_DOUBLE_EQ(w.u_n.samples()[k], 1.0);
    }
}

TEST(CurvatureWeights, IdentitiesOnRandomPlanes) {
    for (std::uint32_t seed = 0; seed < 1000; ++seed) {
        const CurvatureWeights w = curvature_weights(fixtures::random_plane(6, 5, seed));
        for (std::size_t k = 0; k < w.u_w.size(); ++k) {
            ASSERT_NEAR(w.u_w.samples()[k] + w.u_e.samples()[k], 2.0, 1e-12);
            ASSERT_NEAR(w.u_s.samples()[k] + w.u_n.samples()[k], 2.0, 1e-12);
            for (const Plane* u : {&w.u_w, &w.u_e, &w.u_s, &w.u_n}) {
                ASSERT_GT(u->samples()[k], 0.0);
                ASSERT_LT(u->samples()[k], 2.0);
            }
            for (const Plane* d : {&w.d.d_w, &w.d.d_e, &w.d.d_s, &w.d.d_n}) ASSERT_GE(d->samples()[k], 0.0);
        }
    }
}

TEST(LinearCurvature, ConstantIsExactlyZero) {
    for (double c : {0.0, 1.0 / 3.0, 255.0}) {
        const Plane g(7, 9, c);
        const Plane k = linear_curvature(g, curvature_weights(g));
        for (double v : k.samples()) EXPECT_EQ(v, 0.0);
    }
}

TEST(LinearCurvature, UnitWeightsGiveLaplacian) {
    const Plane g = fixtures::random_plane(9, 8, 3);
    CurvatureWeights w = curvature_weights(g);
    for (Plane* u : {&w.u_w, &w.u_e, &w.u_s, &w.u_n}) *u = Plane(9, 8, 1.0);
    EXPECT_LT(fixtures::max_abs_diff(linear_curvature(g, w), laplacian(g)), 1e-12);

    Plane affine(9, 8);
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 9; ++i) affine(i, j) = 4.0 + 2.0 * i - 1.5 * j;
    }
    const Plane k = linear_curvature(affine, w);
    for (int j = 1; j < 7; ++j) {
        for (int i = 1; i < 8; ++i) EXPECT_NEAR(k(i, j), 0.0, 1e-12);
    }
}

TEST(LinearCurvature, SymmetricInputGivesLaplacian) {
    // A checkerboard has the same edge magnitude across every pixel edge.
    Plane g(8, 8);
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) g(i, j) = ((i + j) % 2) ? 60.0 : 10.0;
    }
    const CurvatureWeights w = curvature_weights(g);
    for (double u : w.u_w.samples()) EXPECT_NEAR(u, 1.0, 1e-12);
    EXPECT_LT(fixtures::max_abs_diff(linear_curvature(g, w), laplacian(g)), 1e-9);
}

// The weighted stencil is |grad g| times the level-set curvature. The graph curvature at
// h = 1 only approaches that where |grad g| dominates the unit lift, so the comparison
// with it is restricted to the steep part of each bump.
TEST(LinearCurvature, SignAgreesWithCurvatureOnBumps) {
    long agree_graph = 0, total_graph = 0, agree_level = 0, total_level = 0;
    for (double sigma : {3.0, 5.0, 8.0}) {
        for (double amp : {-80.0, 40.0, 150.0}) {
            const Plane g = gaussian_bump(40, sigma, amp, 19.3, 20.6);
            const Plane lin = linear_curvature(g, curvature_weights(g));
            const Plane mc = mean_curvature(g, 1.0);
            auto [gx, gy] = forward_gradient(g, 1.0);
            Plane nx = gx, ny = gy;
            for (std::size_t k = 0; k < nx.size(); ++k) {
                const double len = std::hypot(gx.samples()[k], gy.samples()[k]) + 1e-12;
                nx.samples()[k] /= len;
                ny.samples()[k] /= len;
            }
            const Plane level = backward_divergence(nx, ny, 1.0);
            for (int j = 2; j < 38; ++j) {
                for (int i = 2; i < 38; ++i) {
                    if (std::abs(lin(i, j)) <= 1e-3) continue;
                    const double slope = std::hypot(gx(i, j), gy(i, j));
                    const double graph = slope * mc(i, j);
                    if (std::abs(slope * level(i, j)) > 1e-3) {
                        ++total_level;
                        if ((level(i, j) > 0) == (lin(i, j) > 0)) ++agree_level;
                    }
                    if (slope >= 2.0 && std::abs(graph) > 1e-3) {
                        ++total_graph;
                        if ((graph > 0) == (lin(i, j) > 0)) ++agree_graph;
                    }
                }
            }
        }
    }
    ASSERT_GT(total_graph, 1000);
    EXPECT_GE(static_cast<double>(agree_graph) / static_cast<double>(total_graph), 0.95)
        << agree_graph << "/" << total_graph;
    EXPECT_GE(static_cast<double>(agree_level) / static_cast<double>(total_level), 0.99)
        << agree_level << "/" << total_level;
}
