#include "mcdemosaic/mc_variational.hpp"

#include <array>
#include <cmath>

namespace mcdemosaic {

namespace {

// Local value of backward_divergence at (i, j), matching it term by term.
double div_at(const Plane& vx, const Plane& vy, int i, int j, double h) {
    const int w = vx.width();
    const int ht = vx.height();
    double dx;
    if (i == 0) {
        dx = vx(0, j);
    } else if (i == w - 1) {
        dx = -vx(w - 2, j);
    } else {
        dx = vx(i, j) - vx(i - 1, j);
    }
    double dy;
    if (j == 0) {
        dy = vy(i, 0);
    } else if (j == ht - 1) {
        dy = -vy(i, ht - 2);
    } else {
        dy = vy(i, j) - vy(i, j - 1);
    }
    return (dx + dy) / h;
}

double effective_c(const SolverState& s, const McParams& params, std::size_t k, long& clamped) {
    const double c = params.r1 + s.lam1.samples()[k];
    if (c < 0.0) {
        ++clamped;
        return 0.0;
    }
    return c;
}

void require_finite(const Plane& p, const char* subproblem) {
    if (!p.all_finite()) {
        throw SolverError(subproblem, std::string("non-finite value produced by ") + subproblem);
    }
}

void require_finite(const VectorField3& v, const char* subproblem) {
    require_finite(v.x, subproblem);
    require_finite(v.y, subproblem);
    require_finite(v.z, subproblem);
}

}  // namespace

void McParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(lambda, "lambda");
    positive(h, "h");
    positive(r1, "r1");
    positive(r2, "r2");
    positive(r3, "r3");
    positive(r4, "r4");
    positive(outer_tol, "tol");
    if (inner_sweeps < 1) throw std::invalid_argument("inner_sweeps must be positive");
    if (max_outer < 1) throw std::invalid_argument("max_outer must be positive");
    if (min_outer < 1) throw std::invalid_argument("min_outer must be positive");
}

std::pair<Plane, Plane> forward_gradient(const Plane& u, double h) {
    const int w = u.width();
    const int ht = u.height();
    Plane gx(w, ht);
    Plane gy(w, ht);
    for (int j = 0; j < ht; ++j) {
        for (int i = 0; i < w; ++i) {
            gx(i, j) = i + 1 < w ? (u(i + 1, j) - u(i, j)) / h : 0.0;
            gy(i, j) = j + 1 < ht ? (u(i, j + 1) - u(i, j)) / h : 0.0;
        }
    }
    return {std::move(gx), std::move(gy)};
}

Plane backward_divergence(const Plane& vx, const Plane& vy, double h) {
    require_same_shape(vx, vy, "backward_divergence");
    Plane out(vx.width(), vx.height());
    for (int j = 0; j < vx.height(); ++j) {
        for (int i = 0; i < vx.width(); ++i) out(i, j) = div_at(vx, vy, i, j, h);
    }
    return out;
}

Plane mean_curvature(const Plane& image, double h) {
    auto [gx, gy] = forward_gradient(image, h);
    auto nx = gx.samples();
    auto ny = gy.samples();
    for (std::size_t k = 0; k < nx.size(); ++k) {
        const double inv = 1.0 / std::sqrt(nx[k] * nx[k] + ny[k] * ny[k] + 1.0);
        nx[k] *= inv;
        ny[k] *= inv;
    }
    return backward_divergence(gx, gy, h);
}

double energy(const Plane& g_hat, const Plane& g_tilde, double lambda, double h) {
    require_same_shape(g_hat, g_tilde, "energy");
    const Plane kappa = mean_curvature(g_tilde, h);
    double fidelity = 0.0;
    double regularizer = 0.0;
    auto a = g_hat.samples();
    auto b = g_tilde.samples();
    auto k = kappa.samples();
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        const double d = a[idx] - b[idx];
        fidelity += d * d;
        regularizer += std::abs(k[idx]);
    }
    return 0.5 * fidelity + lambda * regularizer;
}

SolverState SolverState::initialize(const Plane& g_hat, double h) {
    const int w = g_hat.width();
    const int ht = g_hat.height();
    SolverState s;
    s.g_tilde = g_hat;
    auto [gx, gy] = forward_gradient(g_hat, h);
    s.p = VectorField3(gx, gy, Plane(w, ht, 1.0));
    s.n = VectorField3(w, ht);
    for (std::size_t k = 0; k < g_hat.size(); ++k) {
        const double px = gx.samples()[k];
        const double py = gy.samples()[k];
        const double inv = 1.0 / std::sqrt(px * px + py * py + 1.0);
        s.n.x.samples()[k] = px * inv;
        s.n.y.samples()[k] = py * inv;
        s.n.z.samples()[k] = inv;
    }
    s.m = s.n;
    s.q = backward_divergence(s.n.x, s.n.y, h);
    s.lam1 = Plane(w, ht);
    s.lam2 = VectorField3(w, ht);
    s.lam3 = Plane(w, ht);
    s.lam4 = VectorField3(w, ht);
    return s;
}

Plane green_source(const SolverState& state, const Plane& g_hat, const McParams& params) {
    const Plane fx = map_planes(state.p.x, state.lam2.x, [&](double p, double l) { return params.r2 * p + l; });
    const Plane fy = map_planes(state.p.y, state.lam2.y, [&](double p, double l) { return params.r2 * p + l; });
    const Plane div = backward_divergence(fx, fy, params.h);
    return map_planes(g_hat, div, [](double g, double d) { return g - d; });
}

void gauss_seidel_sweep(SolverState& state, const Plane& source, const McParams& params) {
    Plane& g = state.g_tilde;
    require_same_shape(g, source, "gauss_seidel_sweep");
    const int w = g.width();
    const int ht = g.height();
    const double k = params.r2 / (params.h * params.h);
    for (int j = 0; j < ht; ++j) {
        for (int i = 0; i < w; ++i) {
            double sum = 0.0;
            int count = 0;
            // W and S already hold sweep k+1 values; E and N are still at k.
            if (i > 0) { sum += g(i - 1, j); ++count; }
            if (i + 1 < w) { sum += g(i + 1, j); ++count; }
            if (j > 0) { sum += g(i, j - 1); ++count; }
            if (j + 1 < ht) { sum += g(i, j + 1); ++count; }
            g(i, j) = (source(i, j) + k * sum) / (1.0 + k * count);
        }
    }
}

void update_q(SolverState& state, const McParams& params) {
    const Plane div = backward_divergence(state.n.x, state.n.y, params.h);
    auto q = state.q.samples();
    auto d = div.samples();
    auto l3 = state.lam3.samples();
    const double t = params.lambda / params.r3;
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = shrink(d[k] - l3[k] / params.r3, t);
    require_finite(state.q, "update_q");
}

void update_p(SolverState& state, const McParams& params) {
    auto [gx, gy] = forward_gradient(state.g_tilde, params.h);
    const std::size_t count = state.g_tilde.size();
    for (std::size_t k = 0; k < count; ++k) {
        const double c = effective_c(state, params, k, state.clamped_multipliers);
        const double wx = params.r2 * gx.samples()[k] - state.lam2.x.samples()[k] + c * state.m.x.samples()[k];
        const double wy = params.r2 * gy.samples()[k] - state.lam2.y.samples()[k] + c * state.m.y.samples()[k];
        const double wz = params.r2 - state.lam2.z.samples()[k] + c * state.m.z.samples()[k];
        const double norm = std::sqrt(wx * wx + wy * wy + wz * wz);
        double scale = 0.0;
        if (norm > c) scale = (norm - c) / (params.r2 * norm);
        state.p.x.samples()[k] = scale * wx;
        state.p.y.samples()[k] = scale * wy;
        state.p.z.samples()[k] = scale * wz;
    }
    require_finite(state.p, "update_p");
}

void update_m(SolverState& state, const McParams& params) {
    const std::size_t count = state.g_tilde.size();
    for (std::size_t k = 0; k < count; ++k) {
        const double c = effective_c(state, params, k, state.clamped_multipliers);
        double ax = state.n.x.samples()[k] + (state.lam4.x.samples()[k] + c * state.p.x.samples()[k]) / params.r4;
        double ay = state.n.y.samples()[k] + (state.lam4.y.samples()[k] + c * state.p.y.samples()[k]) / params.r4;
        double az = state.n.z.samples()[k] + (state.lam4.z.samples()[k] + c * state.p.z.samples()[k]) / params.r4;
        const double norm = std::sqrt(ax * ax + ay * ay + az * az);
        if (norm > 1.0) {
            ax /= norm;
            ay /= norm;
            az /= norm;
        }
        state.m.x.samples()[k] = ax;
        state.m.y.samples()[k] = ay;
        state.m.z.samples()[k] = az;
    }
    require_finite(state.m, "update_m");
}

void update_n(SolverState& state, const McParams& params) {
    // (r4 I + r3 D^T D) n = r4 m - lam4 + D^T (r3 q + lam3), D = backward_divergence,
    // D^T = -forward_gradient. The third component does not enter D.
    const double h = params.h;
    const Plane coupling = map_planes(state.q, state.lam3, [&](double q, double l) { return params.r3 * q + l; });
    auto [cx, cy] = forward_gradient(coupling, h);
    const Plane rhs_x = map_planes(
        std::array<const Plane*, 3>{&state.m.x, &state.lam4.x, &cx},
        [&](std::span<const double> v) { return params.r4 * v[0] - v[1] - v[2]; });
    const Plane rhs_y = map_planes(
        std::array<const Plane*, 3>{&state.m.y, &state.lam4.y, &cy},
        [&](std::span<const double> v) { return params.r4 * v[0] - v[1] - v[2]; });

    auto nz = state.n.z.samples();
    for (std::size_t k = 0; k < nz.size(); ++k) {
        nz[k] = state.m.z.samples()[k] - state.lam4.z.samples()[k] / params.r4;
    }

    Plane& nx = state.n.x;
    Plane& ny = state.n.y;
    const int w = nx.width();
    const int ht = nx.height();
    const double diag = params.r4 + params.r3 * 2.0 / (h * h);
    for (int sweep = 0; sweep < params.inner_sweeps; ++sweep) {
        for (int j = 0; j < ht; ++j) {
            for (int i = 0; i < w; ++i) {
                if (i + 1 < w) {
                    const double dtd = (div_at(nx, ny, i, j, h) - div_at(nx, ny, i + 1, j, h)) / h;
                    nx(i, j) += (rhs_x(i, j) - params.r4 * nx(i, j) - params.r3 * dtd) / diag;
                } else {
                    nx(i, j) = rhs_x(i, j) / params.r4;
                }
                if (j + 1 < ht) {
                    const double dtd = (div_at(nx, ny, i, j, h) - div_at(nx, ny, i, j + 1, h)) / h;
                    ny(i, j) += (rhs_y(i, j) - params.r4 * ny(i, j) - params.r3 * dtd) / diag;
                } else {
                    ny(i, j) = rhs_y(i, j) / params.r4;
                }
            }
        }
    }
    require_finite(state.n, "update_n");
}

void update_multipliers(SolverState& state, const McParams& params) {
    auto [gx, gy] = forward_gradient(state.g_tilde, params.h);
    const Plane div = backward_divergence(state.n.x, state.n.y, params.h);
    const std::size_t count = state.g_tilde.size();
    for (std::size_t k = 0; k < count; ++k) {
        const double px = state.p.x.samples()[k];
        const double py = state.p.y.samples()[k];
        const double pz = state.p.z.samples()[k];
        const double pnorm = std::sqrt(px * px + py * py + pz * pz);
        const double pm = px * state.m.x.samples()[k] + py * state.m.y.samples()[k] + pz * state.m.z.samples()[k];
        state.lam1.samples()[k] += params.r1 * (pnorm - pm);
        state.lam2.x.samples()[k] += params.r2 * (px - gx.samples()[k]);
        state.lam2.y.samples()[k] += params.r2 * (py - gy.samples()[k]);
        state.lam2.z.samples()[k] += params.r2 * (pz - 1.0);
        state.lam3.samples()[k] += params.r3 * (state.q.samples()[k] - div.samples()[k]);
        state.lam4.x.samples()[k] += params.r4 * (state.n.x.samples()[k] - state.m.x.samples()[k]);
        state.lam4.y.samples()[k] += params.r4 * (state.n.y.samples()[k] - state.m.y.samples()[k]);
        state.lam4.z.samples()[k] += params.r4 * (state.n.z.samples()[k] - state.m.z.samples()[k]);
    }
    require_finite(state.lam1, "update_multipliers");
    require_finite(state.lam2, "update_multipliers");
    require_finite(state.lam3, "update_multipliers");
    require_finite(state.lam4, "update_multipliers");
}

ConstraintResiduals constraint_residuals(const SolverState& state, const McParams& params) {
    auto [gx, gy] = forward_gradient(state.g_tilde, params.h);
    const Plane div = backward_divergence(state.n.x, state.n.y, params.h);
    ConstraintResiduals r;
    const std::size_t count = state.g_tilde.size();
    for (std::size_t k = 0; k < count; ++k) {
        const double px = state.p.x.samples()[k];
        const double py = state.p.y.samples()[k];
        const double pz = state.p.z.samples()[k];
        const double pm = px * state.m.x.samples()[k] + py * state.m.y.samples()[k] + pz * state.m.z.samples()[k];
        const double a = std::sqrt(px * px + py * py + pz * pz) - pm;
        r.curvature_direction += a * a;
        const double bx = px - gx.samples()[k];
        const double by = py - gy.samples()[k];
        const double bz = pz - 1.0;
        r.gradient_lift += bx * bx + by * by + bz * bz;
        const double c = state.q.samples()[k] - div.samples()[k];
        r.divergence += c * c;
        const double dx = state.n.x.samples()[k] - state.m.x.samples()[k];
        const double dy = state.n.y.samples()[k] - state.m.y.samples()[k];
        const double dz = state.n.z.samples()[k] - state.m.z.samples()[k];
        r.normal_copy += dx * dx + dy * dy + dz * dz;
    }
    r.curvature_direction = std::sqrt(r.curvature_direction);
    r.gradient_lift = std::sqrt(r.gradient_lift);
    r.divergence = std::sqrt(r.divergence);
    r.normal_copy = std::sqrt(r.normal_copy);
    return r;
}

SolveReport solve_detailed(const Plane& g_hat, const McParams& params) {
    params.validate();
    if (!g_hat.all_finite()) throw SolverError("input", "initial green plane contains non-finite values");

    SolverState state = SolverState::initialize(g_hat, params.h);
    SolveReport report;
    for (int outer = 1; outer <= params.max_outer; ++outer) {
        const Plane previous = state.g_tilde;
        update_p(state, params);
        update_m(state, params);
        update_q(state, params);
        update_n(state, params);
        const Plane source = green_source(state, g_hat, params);
        for (int sweep = 0; sweep < params.inner_sweeps; ++sweep) gauss_seidel_sweep(state, source, params);
        require_finite(state.g_tilde, "gauss_seidel_sweep");
        update_multipliers(state, params);

        report.outer_iterations = outer;
        if (outer == 1) report.first_residuals = constraint_residuals(state, params);
        // An all-zero plane has no meaningful relative change; treat it as settled.
        report.final_relative_change = l2_norm(state.g_tilde) > 0.0 ? l2_relative_change(state.g_tilde, previous) : 0.0;
        if (outer >= params.min_outer && report.final_relative_change <= params.outer_tol) {
            report.converged = true;
            break;
        }
    }
    report.final_residuals = constraint_residuals(state, params);
    report.clamped_multipliers = state.clamped_multipliers;
    report.g_tilde = std::move(state.g_tilde);
    return report;
}

Plane solve(const Plane& g_hat, const McParams& params) { return solve_detailed(g_hat, params).g_tilde; }

}  // namespace mcdemosaic
