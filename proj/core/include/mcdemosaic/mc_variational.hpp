#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "mcdemosaic/plane.hpp"

namespace mcdemosaic {

/// Scalars of the L1 mean-curvature green refinement. Defaults are the published
/// experimental settings; inner_sweeps and max_outer are implementation choices.
struct McParams {
    double lambda = 2e-3;  ///< regularization weight
    double h = 5.0;        ///< grid spacing used by all difference operators
    double r1 = 40.0;
    double r2 = 40.0;
    double r3 = 100.0;
    double r4 = 100.0;
    int inner_sweeps = 10;   ///< Gauss-Seidel sweeps per outer iteration (G and n subproblems)
    double outer_tol = 1e-4; ///< relative-change stopping threshold on G
    int max_outer = 200;
    /// The stopping test is skipped before this iteration. From the initial state G is
    /// stationary for two outer iterations: a change in n reaches m, then p, then G.
    int min_outer = 3;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Three planes forming a vector in R^3 at every pixel.
struct VectorField3 {
    Plane x;
    Plane y;
    Plane z;

    VectorField3() = default;
    VectorField3(int width, int height, double vx = 0.0, double vy = 0.0, double vz = 0.0)
        : x(width, height, vx), y(width, height, vy), z(width, height, vz) {}
    VectorField3(Plane px, Plane py, Plane pz) : x(std::move(px)), y(std::move(py)), z(std::move(pz)) {}

    bool all_finite() const { return x.all_finite() && y.all_finite() && z.all_finite(); }
};

/// All unknowns and multipliers of the augmented Lagrangian. Confined to one solve.
struct SolverState {
    Plane g_tilde;
    Plane q;
    VectorField3 p;
    VectorField3 n;
    VectorField3 m;  ///< kept inside the closed unit ball
    Plane lam1;
    VectorField3 lam2;
    Plane lam3;
    VectorField3 lam4;

    /// G = g_hat, p = [grad g_hat, 1], n = m = p / |p|, q = div n, multipliers zero.
    static SolverState initialize(const Plane& g_hat, double h);

    /// Number of times update_p / update_m clamped a negative r1 + lam1 to zero.
    long clamped_multipliers = 0;
};

/// Raised when a subproblem produces NaN or Inf; `subproblem()` names the culprit.
class SolverError : public std::runtime_error {
public:
    SolverError(std::string subproblem, const std::string& what)
        : std::runtime_error(what), subproblem_(std::move(subproblem)) {}
    const std::string& subproblem() const { return subproblem_; }

private:
    std::string subproblem_;
};

/// L2 norms of the four splitting residuals: |p| - p.m, p - [grad G, 1], q - div n, n - m.
struct ConstraintResiduals {
    double curvature_direction = 0.0;
    double gradient_lift = 0.0;
    double divergence = 0.0;
    double normal_copy = 0.0;
};

struct SolveReport {
    Plane g_tilde;
    int outer_iterations = 0;
    double final_relative_change = 0.0;
    bool converged = false;
    long clamped_multipliers = 0;
    ConstraintResiduals first_residuals;  ///< after the first outer iteration
    ConstraintResiduals final_residuals;
};

// -- difference operators ---------------------------------------------------
//
// Solver pairing: forward differences with a zero last row/column for the
// gradient, and its exact negative adjoint for the divergence.

std::pair<Plane, Plane> forward_gradient(const Plane& u, double h);
Plane backward_divergence(const Plane& vx, const Plane& vy, double h);

/// Mean curvature div(grad I / sqrt(|grad I|^2 + 1)) with staggered central
/// differences: gradients live on cell faces (forward differences), the divergence
/// is their adjoint. Half-sample reflection at the border gives zero normal flux,
/// so this is the functional the solver descends.
Plane mean_curvature(const Plane& image, double h);

/// 1/2 sum (g_hat - g_tilde)^2 + lambda sum |mean_curvature(g_tilde, h)|.
double energy(const Plane& g_hat, const Plane& g_tilde, double lambda, double h);

/// Soft threshold: sign(x) max(|x| - t, 0).
inline double shrink(double x, double t) {
    const double a = (x < 0 ? -x : x) - t;
    if (a <= 0.0) return 0.0;
    return x < 0 ? -a : a;
}

// -- subproblems --------------------------------------------------------------

/// g_hat - div(r2 (p1, p2) + (lam2_1, lam2_2)): right-hand side of the G update.
Plane green_source(const SolverState& state, const Plane& g_hat, const McParams& params);

/// One lexicographic in-place sweep of (1 + k r2/h^2) G = source + r2/h^2 sum(neighbors),
/// k the number of in-grid neighbors (4 in the interior).
void gauss_seidel_sweep(SolverState& state, const Plane& source, const McParams& params);

void update_q(SolverState& state, const McParams& params);
void update_p(SolverState& state, const McParams& params);
void update_n(SolverState& state, const McParams& params);
void update_m(SolverState& state, const McParams& params);
void update_multipliers(SolverState& state, const McParams& params);

ConstraintResiduals constraint_residuals(const SolverState& state, const McParams& params);

/// Runs the full augmented Lagrangian loop starting from g_hat.
SolveReport solve_detailed(const Plane& g_hat, const McParams& params);
Plane solve(const Plane& g_hat, const McParams& params);

}  // namespace mcdemosaic
