#include "mcdemosaic/green_init.hpp"

#include <cmath>

namespace mcdemosaic {

namespace {

constexpr double kWeightGuard = 1e-10;
constexpr int kHalfWindow = 2;  // 5x5 gradient windows
constexpr int kReach = 4;       // one-sided averaging length minus one

// Estimate of the channel not sampled at (i, j), predicted from the neighbor at
// offset (di, dj) and corrected with the local second difference of the sampled channel.
double predict(const Plane& raw, int i, int j, int di, int dj) {
    return raw.reflected(i + di, j + dj) + 0.5 * (raw(i, j) - raw.reflected(i + 2 * di, j + 2 * dj));
}

}  // namespace

DirectionalEstimates directional_green_estimates(const BayerMosaic& m) {
    const Plane& raw = m.plane;
    DirectionalEstimates est{raw, raw, raw, raw};
    for (int j = 0; j < m.height(); ++j) {
        for (int i = 0; i < m.width(); ++i) {
            if (m.channel(i, j) == Channel::G) continue;
            est.west(i, j) = predict(raw, i, j, -1, 0);
            est.east(i, j) = predict(raw, i, j, 1, 0);
            est.south(i, j) = predict(raw, i, j, 0, -1);
            est.north(i, j) = predict(raw, i, j, 0, 1);
        }
    }
    return est;
}

DirectionalDifferences directional_differences(const BayerMosaic& m) {
    const Plane& raw = m.plane;
    const int w = m.width();
    const int h = m.height();
    DirectionalDifferences d{Plane(w, h), Plane(w, h)};
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const double hpred = 0.5 * (predict(raw, i, j, -1, 0) + predict(raw, i, j, 1, 0));
            const double vpred = 0.5 * (predict(raw, i, j, 0, -1) + predict(raw, i, j, 0, 1));
            // Always green minus chroma: at G sites the prediction is the chroma.
            if (m.channel(i, j) == Channel::G) {
                d.horizontal(i, j) = raw(i, j) - hpred;
                d.vertical(i, j) = raw(i, j) - vpred;
            } else {
                d.horizontal(i, j) = hpred - raw(i, j);
                d.vertical(i, j) = vpred - raw(i, j);
            }
        }
    }
    return d;
}

ColorDiffField color_differences(const BayerMosaic& m) {
    const int w = m.width();
    const int h = m.height();
    const DirectionalDifferences diff = directional_differences(m);

    Plane grad_h(w, h);
    Plane grad_v(w, h);
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            grad_h(i, j) = std::abs(diff.horizontal.reflected(i - 1, j) - diff.horizontal.reflected(i + 1, j));
            grad_v(i, j) = std::abs(diff.vertical.reflected(i, j - 1) - diff.vertical.reflected(i, j + 1));
        }
    }

    auto window_sum = [](const Plane& g, int i0, int i1, int j0, int j1) {
        double s = 0.0;
        for (int b = j0; b <= j1; ++b) {
            for (int a = i0; a <= i1; ++a) s += g.reflected(a, b);
        }
        return s;
    };
    auto weight = [](double s) { return 1.0 / ((s + kWeightGuard) * (s + kWeightGuard)); };
    auto run_mean = [](const Plane& d, int i, int j, int di, int dj) {
        double s = 0.0;
        for (int k = 0; k <= kReach; ++k) s += d.reflected(i + k * di, j + k * dj);
        return s / (kReach + 1);
    };

    ColorDiffField out{Plane(w, h), Plane(w, h)};
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const Channel c = m.channel(i, j);
            if (c == Channel::G) continue;

            const double ww = weight(window_sum(grad_h, i - kReach, i, j - kHalfWindow, j + kHalfWindow));
            const double we = weight(window_sum(grad_h, i, i + kReach, j - kHalfWindow, j + kHalfWindow));
            const double ws = weight(window_sum(grad_v, i - kHalfWindow, i + kHalfWindow, j - kReach, j));
            const double wn = weight(window_sum(grad_v, i - kHalfWindow, i + kHalfWindow, j, j + kReach));

            const double fused = (ww * run_mean(diff.horizontal, i, j, -1, 0) +
                                  we * run_mean(diff.horizontal, i, j, 1, 0) +
                                  ws * run_mean(diff.vertical, i, j, 0, -1) +
                                  wn * run_mean(diff.vertical, i, j, 0, 1)) /
                                 (ww + we + ws + wn);
            (c == Channel::R ? out.delta_gr : out.delta_gb)(i, j) = fused;
        }
    }
    return out;
}

Plane interpolate_green(const BayerMosaic& m) {
    const ColorDiffField diff = color_differences(m);
    Plane g = m.plane;
    for (int j = 0; j < m.height(); ++j) {
        for (int i = 0; i < m.width(); ++i) {
            switch (m.channel(i, j)) {
                case Channel::R: g(i, j) += diff.delta_gr(i, j); break;
                case Channel::B: g(i, j) += diff.delta_gb(i, j); break;
                case Channel::G: break;
            }
        }
    }
    return g;
}

}  // namespace mcdemosaic
