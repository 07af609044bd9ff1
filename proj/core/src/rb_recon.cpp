#include "mcdemosaic/rb_recon.hpp"

#include <cmath>
#include <stdexcept>

namespace mcdemosaic {

namespace {

constexpr double kNuGuard = 1e-8;

// Diagonal offsets paired with the w, e, s, n weights.
constexpr std::array<std::array<int, 2>, 4> kDiagonal = {{{-1, -1}, {1, 1}, {1, -1}, {-1, 1}}};
constexpr std::array<std::array<int, 2>, 4> kAxial = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};

std::array<double, 4> weights_at(const CurvatureWeights& w, int i, int j) {
    return {w.u_w(i, j), w.u_e(i, j), w.u_s(i, j), w.u_n(i, j)};
}

void require_chroma(Channel c) {
    if (c == Channel::G) throw std::invalid_argument("chroma channel must be R or B");
}

}  // namespace

void RbParams::validate() const {
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
}

double NeighborhoodSample::weighted_difference() const {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        num += u[k] * zeta[k];
        den += u[k];
    }
    return num / den;
}

double refine(double r_hat, const std::array<double, 4>& neighbors, const RbParams& params) {
    double sum_nu = 0.0;
    double sum_mu = 0.0;
    double sum_weighted = 0.0;
    for (double rk : neighbors) {
        const double mu = rk - r_hat;
        const double nu = params.weight == NeighborWeight::Verbatim ? 1.0 / (std::abs(1.0 + mu) + kNuGuard)
                                                                    : 1.0 / (1.0 + std::abs(mu));
        sum_nu += nu;
        sum_mu += mu;
        sum_weighted += nu * rk;
    }
    const double pull = params.mode == RefineMode::WeightedMean ? sum_weighted / sum_nu : sum_mu / sum_nu;
    return params.delta * r_hat + (1.0 - params.delta) * pull;
}

Plane interpolate_chroma_at_opposite(const BayerMosaic& m, Channel chroma, const Plane& g_tilde,
                                     const CurvatureWeights& w) {
    require_chroma(chroma);
    require_same_shape(m.plane, g_tilde, "interpolate_chroma_at_opposite");
    const Channel opposite = opposite_chroma(chroma);
    Plane out(m.width(), m.height());
    for (int j = 0; j < m.height(); ++j) {
        for (int i = 0; i < m.width(); ++i) {
            const Channel here = m.channel(i, j);
            if (here == chroma) {
                out(i, j) = m.plane(i, j);
            } else if (here == opposite) {
                NeighborhoodSample s;
                s.u = weights_at(w, i, j);
                for (std::size_t k = 0; k < 4; ++k) {
                    const int a = i + kDiagonal[k][0];
                    const int b = j + kDiagonal[k][1];
                    s.zeta[k] = m.plane.reflected(a, b) - g_tilde.reflected(a, b);
                }
                out(i, j) = g_tilde(i, j) + s.weighted_difference();
            }
        }
    }
    return out;
}

Plane refine_opposite(const BayerMosaic& m, Channel chroma, const Plane& g_tilde, const Plane& partial,
                      const RbParams& params) {
    require_chroma(chroma);
    const Channel opposite = opposite_chroma(chroma);
    Plane out = partial;
    for (int j = 0; j < m.height(); ++j) {
        for (int i = 0; i < m.width(); ++i) {
            if (m.channel(i, j) != opposite) continue;
            std::array<double, 4> nb{};
            for (std::size_t k = 0; k < 4; ++k) {
                const int a = i + kDiagonal[k][0];
                const int b = j + kDiagonal[k][1];
                nb[k] = m.plane.reflected(a, b) - g_tilde.reflected(a, b);
            }
            out(i, j) = g_tilde(i, j) + refine(partial(i, j) - g_tilde(i, j), nb, params);
        }
    }
    return out;
}

Plane interpolate_chroma_at_green(const BayerMosaic& m, const Plane& g_tilde, const CurvatureWeights& w,
                                  const Plane& partial, const RbParams& params) {
    require_same_shape(m.plane, partial, "interpolate_chroma_at_green");
    Plane out = partial;
    for (int j = 0; j < m.height(); ++j) {
        for (int i = 0; i < m.width(); ++i) {
            if (m.channel(i, j) != Channel::G) continue;
            NeighborhoodSample s;
            s.u = weights_at(w, i, j);
            for (std::size_t k = 0; k < 4; ++k) {
                const int a = i + kAxial[k][0];
                const int b = j + kAxial[k][1];
                s.zeta[k] = partial.reflected(a, b) - g_tilde.reflected(a, b);
            }
            out(i, j) = g_tilde(i, j) + refine(s.weighted_difference(), s.zeta, params);
        }
    }
    return out;
}

Plane reconstruct_chroma(const BayerMosaic& m, Channel chroma, const Plane& g_tilde, const CurvatureWeights& w,
                         const RbParams& params) {
    const Plane initial = interpolate_chroma_at_opposite(m, chroma, g_tilde, w);
    const Plane refined = refine_opposite(m, chroma, g_tilde, initial, params);
    return interpolate_chroma_at_green(m, g_tilde, w, refined, params);
}

std::pair<Plane, Plane> reconstruct_rb(const BayerMosaic& m, const Plane& g_tilde, const RbParams& params) {
    params.validate();
    const CurvatureWeights w = curvature_weights(g_tilde);
    return {reconstruct_chroma(m, Channel::R, g_tilde, w, params),
            reconstruct_chroma(m, Channel::B, g_tilde, w, params)};
}

}  // namespace mcdemosaic
