#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "actch/channel_model.hpp"
#include "actch/pmf.hpp"

namespace actch {

// Capacity-cost region of the degraded broadcast action channel: rate pairs
//   R1 <= I(U1;Y1|U2),  R2 <= I(U2;Y2)
// over p(u1,u2) and deterministic maps a = f_a(u1,u2), x = f_x(u1,u2,s),
// subject to E[gamma(A,X)] <= Gamma. The boundary is traced by scalarization
// (maximize mu*R1 + (1-mu)*R2 on a mu grid) and closed by time sharing, i.e.
// the convex hull against the axes.

/// Axis layout of the assembled broadcast joint p(u1,u2,a,s,x,y1,y2).
struct BcAxes {
    static constexpr int u1 = 0, u2 = 1, a = 2, s = 3, x = 4, y1 = 5, y2 = 6;
};

struct BcDecisionVars {
    JointPmf pu;           // over (U1, U2), u1-major
    std::vector<int> f_a;  // (u1,u2) -> a, u1-major
    std::vector<int> f_x;  // (u1,u2,s) -> x, row-major (u1, u2, s)
    int u1_size = 0, u2_size = 0;
};

struct BcRates {
    double r1 = 0.0, r2 = 0.0, cost = 0.0;
};

struct RatePair {
    double r1 = 0.0, r2 = 0.0;
};

JointPmf bc_joint(const BcActionSpec& spec, const BcDecisionVars& vars);
BcRates bc_rates(const BcActionSpec& spec, const BcDecisionVars& vars);

struct BcRegionPoint {
    double param = 0.0;  // scalarization weight mu (or the alpha grid value
                         // for the closed-form binary boundary)
    RatePair rates;
    double cost = 0.0;
    std::optional<BcDecisionVars> vars;
};

struct RegionBoundary {
    std::vector<BcRegionPoint> points;  // raw scalarized optima
    std::vector<RatePair> hull;         // upper-right closure, R1 asc / R2 desc

    /// max over the hull of mu*R1 + (1-mu)*R2.
    double support(double mu) const;
    /// Whether the point lies inside the time-sharing closure within tol.
    bool contains(const RatePair& p, double tol) const;
};

/// Upper-right convex closure of the given points together with the axes.
std::vector<RatePair> upper_right_hull(const std::vector<RatePair>& pts);

struct BcRegionOptions {
    int u1_size = 0;  // 0 -> min(|A|*|X|^|S|, 4)
    int u2_size = 0;
    int mu_points = 33;
    int restarts = 10;  // pu-ascent restarts per candidate and mu
    std::uint64_t seed = 1;
    std::int64_t enum_cap = 1'000'000;  // max enumerated (f_a, f_x) pairs
    double step_init = 0.1;
    double step_floor = 1e-4;
    int threads = 1;
    double feas_tol = 1e-9;
    int fallback_rounds = 20;  // local-move rounds when enumeration is off
};

/// Traces the region boundary for cost budget `gamma`. Function pairs are
/// enumerated when their count fits under enum_cap, otherwise searched with
/// random-restart local moves. Deterministic given the seed.
RegionBoundary solve_bc_region(const BcActionSpec& spec, double gamma,
                               const BcRegionOptions& opts = {});

// ----- closed-form binary example -----
// State S = A xor B with B ~ Ber(b); Y1 = X xor S xor Z1, Z1 ~ Ber(n1);
// Y2 = Y1 xor Z2t, Z2t ~ Ber(n2_tilde); cost gamma(a,x) = x.

BcActionSpec binary_example_spec(double b, double n1, double n2_tilde);

/// The boundary traced in closed form over the alpha grid:
///   R1 = H(alpha*n1) - H(n1),  R2 = 1 - H(alpha*n2),  n2 = n1*n2_tilde.
RegionBoundary binary_example_region(double n1, double n2_tilde,
                                     const std::vector<double>& alpha_grid);

/// The achieving scheme: U2 ~ Ber(1/2), U1 = U2 xor Ber(alpha), A = U1 and
/// X = S xor A (which equals B, so the scheme costs exactly b).
struct BinaryScheme {
    BcDecisionVars vars;
    Pmf x_marginal;  // implied input distribution Ber(b)
};
BinaryScheme binary_scheme_vars(double b, double alpha);

/// Evenly spaced alpha grid over [0, 1/2].
std::vector<double> alpha_grid(int points);

}  // namespace actch
