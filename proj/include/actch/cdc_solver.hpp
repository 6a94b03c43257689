#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "actch/channel_model.hpp"
#include "actch/pmf.hpp"

namespace actch {

// Capacity-distortion-cost solver: maximizes I(U;Y) - I(U;S|A) over p(a),
// p(u|s,a), p(x|u,s) and the reconstruction map phi, subject to
// E[d(S,phi(U))] <= D and E[gamma_k(A,X)] <= Gamma_k.

/// Axis layout of the assembled point-to-point joint p(a,s,u,x,y).
struct CdcAxes {
    static constexpr int a = 0, s = 1, u = 2, x = 3, y = 4;
};

struct CdcDecisionVars {
    Pmf pa;               // over A
    CondPmf pu_given_sa;  // U | (S, A)
    CondPmf px_given_us;  // X | (U, S)
    std::vector<int> phi; // U -> Shat
    int u_size = 0;
};

struct CdcEvaluation {
    double rate = 0.0;      // max(raw_rate, 0); rate 0 is always achievable
    double raw_rate = 0.0;  // I(U;Y) - I(U;S|A)
    double distortion = 0.0;
    std::vector<double> costs;  // one per cost metric
};

/// Builds p(a,s,u,x,y) with the CdcAxes layout.
JointPmf cdc_joint(const PtpActionSpec& spec, const CdcDecisionVars& vars);

/// Evaluates rate, distortion and costs for the given decision variables.
CdcEvaluation cdc_objective(const PtpActionSpec& spec, const CdcDecisionVars& vars);

/// Distortion-minimizing deterministic reconstruction: for each u,
/// phi(u) = argmin_shat sum_s p(s|u) d(s,shat), ties to the lowest index.
std::vector<int> optimal_phi(const Table& distortion, const JointPmf& j, int axis_s,
                             int axis_u, int shat_size);

struct CdcConstraints {
    double distortion_budget = 0.0;
    std::vector<double> cost_budgets;  // one per spec cost metric

    CdcConstraints() = default;
    CdcConstraints(double d, std::vector<double> gammas)
        : distortion_budget(d), cost_budgets(std::move(gammas)) {}
    CdcConstraints(const ConstraintPair& p)  // NOLINT: intentional conversion
        : distortion_budget(p.distortion_budget), cost_budgets{p.cost_budget} {}
};

struct CdcOptions {
    int u_size = 0;          // 0 -> min(|A||S||X| + 2, 6)
    int restarts = 20;
    std::uint64_t seed = 1;
    double step_init = 0.1;
    double step_floor = 1e-4;
    double polish_floor = 1e-7;  // one extra ascent from the best restart
    int max_cycles = 40;
    bool deterministic_px = false;  // restrict p(x|u,s) rows to point masses
    int threads = 1;
    double feas_tol = 1e-9;
};

struct CdcTraceEntry {
    int restart = 0;
    bool feasible = false;
    double rate = 0.0;
    int cycles = 0;
};

struct CdcResult {
    double rate = 0.0;  // bits, clamped at 0
    CdcDecisionVars vars;
    double achieved_distortion = 0.0;
    std::vector<double> achieved_costs;
    int restarts_used = 0;  // restarts that reached a feasible point
    std::vector<CdcTraceEntry> trace;
};

/// Multi-start alternating coordinate ascent; deterministic given the seed.
/// Throws InfeasibleError when no restart finds a feasible point.
CdcResult solve_cdc(const PtpActionSpec& spec, const CdcConstraints& constraints,
                    const CdcOptions& opts = {});

/// solve_cdc with an extra deterministic warm start candidate.
CdcResult solve_cdc_warm(const PtpActionSpec& spec, const CdcConstraints& constraints,
                         const CdcOptions& opts,
                         const std::optional<CdcDecisionVars>& warm);

struct CdcSweepPoint {
    double d_budget = 0.0;
    double gamma = 0.0;
    double rate = 0.0;      // after the cumulative-max pass
    double raw_rate = 0.0;  // per-point solve before the pass
    double achieved_distortion = 0.0;
    double achieved_cost = 0.0;
    int restarts_used = 0;
    bool ascent_violation = false;  // raw curve dipped here before cummax
};

/// Solves left to right over an ascending D grid with warm starts, then
/// enforces monotonicity with a cumulative max (carrying the achieving
/// variables forward, which stays feasible because the budgets are nested).
std::vector<CdcSweepPoint> sweep_cdc(const PtpActionSpec& spec,
                                     const std::vector<double>& d_grid, double gamma,
                                     const CdcOptions& opts = {});

}  // namespace actch
