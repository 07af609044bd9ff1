#pragma once

#include <array>
#include <utility>

#include "mcdemosaic/cfa.hpp"
#include "mcdemosaic/mc_linear.hpp"

namespace mcdemosaic {

/// How the refinement combines the estimate with its four same-channel neighbors.
enum class RefineMode {
    /// delta * r_hat + (1 - delta) * sum(nu_k R_k) / sum(nu_k)
    WeightedMean,
    /// delta * r_hat + (1 - delta) * sum(mu_k) / sum(nu_k), kept for comparison only.
    Literal,
};

/// Robustness weight applied to each neighbor.
enum class NeighborWeight {
    /// nu_k = 1 / (|1 + mu_k| + 1e-8)
    Verbatim,
    /// nu_k = 1 / (1 + |mu_k|)
    Symmetric,
};

struct RbParams {
    double delta = 0.6;  ///< refinement blend, expected in [0.5, 0.7]
    RefineMode mode = RefineMode::WeightedMean;
    NeighborWeight weight = NeighborWeight::Verbatim;

    /// Rejects delta outside [0, 1]. The [0.5, 0.7] band is advisory.
    void validate() const;
};

/// Four color differences and the stencil weights at one target pixel.
struct NeighborhoodSample {
    std::array<double, 4> zeta{};  ///< w, e, s, n
    std::array<double, 4> u{};     ///< w, e, s, n

    /// Weighted mean of zeta by u.
    double weighted_difference() const;
};

/// Blend of `r_hat` with a robust combination of its four neighbors. Both arguments
/// must be in the same domain (the reconstruction passes color differences).
double refine(double r_hat, const std::array<double, 4>& neighbors, const RbParams& params);

/// Chroma estimates at the opposite-chroma sites from the four diagonal neighbors:
///   C(i,j) = G(i,j) + sum u_k zeta_k / sum u_k, zeta_k = C_k - G_k,
/// with w = (i-1,j-1), e = (i+1,j+1), s = (i+1,j-1), n = (i-1,j+1) paired with the
/// axial weights of the same name. Returns a plane holding measured `chroma`
/// samples at its own sites, estimates at opposite-chroma sites and zero at G sites.
Plane interpolate_chroma_at_opposite(const BayerMosaic& m, Channel chroma, const Plane& g_tilde,
                                     const CurvatureWeights& w);

/// Refines every opposite-chroma estimate against its four diagonal measured samples,
/// using the unrefined estimate for all four mu_k. Refinement runs on color
/// differences (chroma minus g_tilde), so a constant difference passes through unchanged.
Plane refine_opposite(const BayerMosaic& m, Channel chroma, const Plane& g_tilde, const Plane& partial,
                      const RbParams& params);

/// Fills G sites from the four axial neighbors (measured or refined), then refines
/// each against those same neighbors, again on color differences.
Plane interpolate_chroma_at_green(const BayerMosaic& m, const Plane& g_tilde, const CurvatureWeights& w,
                                  const Plane& partial, const RbParams& params);

inline Plane interpolate_r_at_b(const BayerMosaic& m, const Plane& g_tilde, const CurvatureWeights& w) {
    return interpolate_chroma_at_opposite(m, Channel::R, g_tilde, w);
}

inline Plane interpolate_r_at_g(const BayerMosaic& m, const Plane& g_tilde, const CurvatureWeights& w,
                                const Plane& partial_r, const RbParams& params) {
    return interpolate_chroma_at_green(m, g_tilde, w, partial_r, params);
}

/// Full chroma reconstruction of one channel (R or B).
Plane reconstruct_chroma(const BayerMosaic& m, Channel chroma, const Plane& g_tilde, const CurvatureWeights& w,
                         const RbParams& params);

/// Computes the curvature weights of g_tilde once and reconstructs both R and B.
std::pair<Plane, Plane> reconstruct_rb(const BayerMosaic& m, const Plane& g_tilde, const RbParams& params);

}  // namespace mcdemosaic
