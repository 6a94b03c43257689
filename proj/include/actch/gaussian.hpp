#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace actch {

// Closed-form evaluation and optimization of the jointly Gaussian family
//   S = A + W,  Y = X + S + Z,
//   X = alpha*A + g*W + G,  U = delta*X + A + beta*W,
// with A ~ N(0, P_A), W ~ N(0, var_W), Z ~ N(0, var_Z) and
// G ~ N(0, P_G), P_G = P_X - (alpha^2 P_A + g^2 var_W), all independent.
// Rates are in bits; the reconstruction is the MMSE estimate of S from (U, A).

struct GaussPowers {
    double p_a = 1.0, p_x = 1.0, var_w = 1.0, var_z = 1.0;
    void validate() const;
};

/// The four search coefficients. `g` multiplies W inside X; it is a channel
/// coefficient, not the cost metric.
struct GaussParams {
    double alpha = 0.0, beta = 0.0, delta = 0.0, g = 0.0;
};

/// Variance of G implied by the power constraint on X; negative means the
/// parameters are infeasible.
double gauss_pg(const GaussParams& p, const GaussPowers& pw);

/// 4x4 covariance of (U, Y, S, A). Throws on infeasible parameters; a P_G
/// within -1e-12 of zero is accepted as the boundary.
using Cov4 = std::array<std::array<double, 4>, 4>;
Cov4 gauss_covariance(const GaussParams& p, const GaussPowers& pw);

/// I(U;Y) - I(U;S|A) in bits. Conditional variances are floored at 1e-12
/// before logs, so degenerate parameters stay finite.
double gauss_rate(const GaussParams& p, const GaussPowers& pw);

/// I(U;Y|A) - I(U;S|A): the rate when the action carries no message.
double gauss_rate_action_independent(const GaussParams& p, const GaussPowers& pw);

/// MMSE distortion var(S|U,A) = var_W - (E[W(U-A)|A])^2 / E[(U-A)^2|A].
/// Returns var_W when the denominator vanishes.
double gauss_distortion(const GaussParams& p, const GaussPowers& pw);

enum class GaussMode { Joint, MessageOnly, ActionIndependent };

std::string gauss_mode_name(GaussMode m);
GaussMode gauss_mode_from_name(const std::string& name);

struct GaussPoint {
    double rate = 0.0;  // bits, clamped at 0
    double distortion = 0.0;
    GaussParams params;
    bool feasible = true;  // distortion within the requested budget
};

struct GaussOptions {
    int restarts = 50;
    std::uint64_t seed = 1;
    int threads = 1;
    int nm_max_iters = 400;
    double box = 10.0;  // |alpha|, |beta|, |delta|, |g| bound
    double feas_tol = 1e-9;
};

/// Multi-start Nelder-Mead over (alpha, beta, delta, g) with feasibility
/// projection onto P_G >= 0; infeasible-distortion vertices are rejected
/// outright. Deterministic given the seed.
GaussPoint optimize_gauss(const GaussPowers& pw, double d_budget, GaussMode mode,
                          const GaussOptions& opts = {});

struct GaussSweepRow {
    double d_budget = 0.0;
    GaussMode mode = GaussMode::Joint;
    double rate = 0.0;      // after the cumulative-max pass
    double raw_rate = 0.0;  // per-point optimum before the pass
    GaussParams params;
    double achieved_distortion = 0.0;
    bool feasible = true;
    bool ascent_violation = false;
};

/// Sweeps the D grid per mode with warm starts, then applies a cumulative max
/// to the constrained modes (message-only ignores D and is solved once).
std::vector<GaussSweepRow> sweep_gauss(const GaussPowers& pw, const std::vector<double>& d_grid,
                                       const std::vector<GaussMode>& modes,
                                       const GaussOptions& opts = {});

}  // namespace actch
