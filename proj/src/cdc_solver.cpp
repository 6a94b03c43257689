#include "actch/cdc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "actch/assemble.hpp"
#include "actch/errors.hpp"
#include "actch/info.hpp"
#include "actch/parallel.hpp"
#include "actch/rng.hpp"

namespace actch {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kImproveEps = 1e-12;

void validate_vars(const PtpActionSpec& spec, const CdcDecisionVars& vars) {
    if (vars.pa.size() != spec.a.size())
        throw std::invalid_argument("cdc: pa size does not match action alphabet");
    const auto& cu = vars.pu_given_sa.cond_sizes();
    if (cu.size() != 2 || cu[0] != spec.s.size() || cu[1] != spec.a.size())
        throw std::invalid_argument("cdc: pu_given_sa conditioning mismatch");
    if (vars.pu_given_sa.out_size() != vars.u_size)
        throw std::invalid_argument("cdc: pu_given_sa output size != u_size");
    const auto& cx = vars.px_given_us.cond_sizes();
    if (cx.size() != 2 || cx[0] != vars.u_size || cx[1] != spec.s.size())
        throw std::invalid_argument("cdc: px_given_us conditioning mismatch");
    if (vars.px_given_us.out_size() != spec.x.size())
        throw std::invalid_argument("cdc: px_given_us output mismatch");
    if (static_cast<int>(vars.phi.size()) != vars.u_size)
        throw std::invalid_argument("cdc: phi not total on U");
    for (int v : vars.phi)
        if (v < 0 || v >= spec.shat.size())
            throw std::invalid_argument("cdc: phi value outside Shat");
    const int bound = spec.a.size() * spec.s.size() * spec.x.size() + 2;
    if (vars.u_size < 1 || vars.u_size > bound)
        throw std::invalid_argument("cdc: u_size outside cardinality bound");
}

// ------------------------------------------------------------------
// Internal fast evaluator used by the coordinate-ascent search. The public
// cdc_objective goes through the generic assembler; equality of the two
// paths is covered by tests.
// ------------------------------------------------------------------

struct Work {
    std::vector<double> pa;
    std::vector<std::vector<double>> pu;  // (s,a) rows, s-major
    std::vector<std::vector<double>> px;  // (u,s) rows, u-major
};

struct FastEval {
    double raw_rate = 0.0;
    double distortion = 0.0;
    double violation = 0.0;
    std::vector<double> costs;
    std::vector<int> phi;
};

class Evaluator {
public:
    Evaluator(const PtpActionSpec& spec, int u_size, const CdcConstraints& c)
        : spec_(spec), na_(spec.a.size()), ns_(spec.s.size()), nu_(u_size),
          nx_(spec.x.size()), ny_(spec.y.size()), nshat_(spec.shat.size()), cons_(c) {}

    FastEval eval(const Work& w) const {
        FastEval out;
        std::vector<double> p_usa(static_cast<std::size_t>(nu_ * ns_ * na_), 0.0);
        std::vector<double> p_uy(static_cast<std::size_t>(nu_ * ny_), 0.0);
        std::vector<double> p_ax(static_cast<std::size_t>(na_ * nx_), 0.0);

        for (int a = 0; a < na_; ++a) {
            const double wa = w.pa[static_cast<std::size_t>(a)];
            if (wa == 0.0) continue;
            const auto ps = spec_.state_channel.row(static_cast<std::size_t>(a));
            for (int s = 0; s < ns_; ++s) {
                const double ws = wa * ps[static_cast<std::size_t>(s)];
                if (ws == 0.0) continue;
                const auto& pu_row = w.pu[static_cast<std::size_t>(s * na_ + a)];
                for (int u = 0; u < nu_; ++u) {
                    const double wu = ws * pu_row[static_cast<std::size_t>(u)];
                    if (wu == 0.0) continue;
                    p_usa[static_cast<std::size_t>((u * ns_ + s) * na_ + a)] += wu;
                    const auto& px_row = w.px[static_cast<std::size_t>(u * ns_ + s)];
                    for (int x = 0; x < nx_; ++x) {
                        const double wx = wu * px_row[static_cast<std::size_t>(x)];
                        if (wx == 0.0) continue;
                        p_ax[static_cast<std::size_t>(a * nx_ + x)] += wx;
                        const auto py = spec_.transmission_channel.row(
                            static_cast<std::size_t>((x * ns_ + s) * na_ + a));
                        double* uy = p_uy.data() + static_cast<std::size_t>(u * ny_);
                        for (int y = 0; y < ny_; ++y) uy[y] += wx * py[static_cast<std::size_t>(y)];
                    }
                }
            }
        }

        // I(U;Y) = H(U) + H(Y) - H(U,Y)
        std::vector<double> p_u(static_cast<std::size_t>(nu_), 0.0);
        std::vector<double> p_y(static_cast<std::size_t>(ny_), 0.0);
        for (int u = 0; u < nu_; ++u)
            for (int y = 0; y < ny_; ++y) {
                const double p = p_uy[static_cast<std::size_t>(u * ny_ + y)];
                p_u[static_cast<std::size_t>(u)] += p;
                p_y[static_cast<std::size_t>(y)] += p;
            }
        const double i_uy = entropy_bits(p_u) + entropy_bits(p_y) - entropy_bits(p_uy);

        // I(U;S|A) = H(U,A) + H(S,A) - H(U,S,A) - H(A)
        std::vector<double> p_ua(static_cast<std::size_t>(nu_ * na_), 0.0);
        std::vector<double> p_sa(static_cast<std::size_t>(ns_ * na_), 0.0);
        std::vector<double> p_a(static_cast<std::size_t>(na_), 0.0);
        std::vector<double> p_su(static_cast<std::size_t>(ns_ * nu_), 0.0);
        for (int u = 0; u < nu_; ++u)
            for (int s = 0; s < ns_; ++s)
                for (int a = 0; a < na_; ++a) {
                    const double p = p_usa[static_cast<std::size_t>((u * ns_ + s) * na_ + a)];
                    p_ua[static_cast<std::size_t>(u * na_ + a)] += p;
                    p_sa[static_cast<std::size_t>(s * na_ + a)] += p;
                    p_a[static_cast<std::size_t>(a)] += p;
                    p_su[static_cast<std::size_t>(s * nu_ + u)] += p;
                }
        const double i_usa = entropy_bits(p_ua) + entropy_bits(p_sa) - entropy_bits(p_usa) -
                             entropy_bits(p_a);

        out.raw_rate = i_uy - i_usa;

        // Reconstruction map: best deterministic phi for the current joint.
        out.phi.assign(static_cast<std::size_t>(nu_), 0);
        for (int u = 0; u < nu_; ++u) {
            double best = std::numeric_limits<double>::infinity();
            int best_shat = 0;
            for (int sh = 0; sh < nshat_; ++sh) {
                double d = 0.0;
                for (int s = 0; s < ns_; ++s)
                    d += p_su[static_cast<std::size_t>(s * nu_ + u)] * spec_.distortion.at2(s, sh);
                if (d < best - kImproveEps) {
                    best = d;
                    best_shat = sh;
                }
            }
            out.phi[static_cast<std::size_t>(u)] = best_shat;
        }
        double dist = 0.0;
        for (int s = 0; s < ns_; ++s)
            for (int u = 0; u < nu_; ++u)
                dist += p_su[static_cast<std::size_t>(s * nu_ + u)] *
                        spec_.distortion.at2(s, out.phi[static_cast<std::size_t>(u)]);
        out.distortion = dist;

        out.costs.resize(spec_.costs.size());
        for (std::size_t k = 0; k < spec_.costs.size(); ++k) {
            double c = 0.0;
            for (int a = 0; a < na_; ++a)
                for (int x = 0; x < nx_; ++x)
                    c += p_ax[static_cast<std::size_t>(a * nx_ + x)] * spec_.costs[k].table.at2(a, x);
            out.costs[k] = c;
        }

        double viol = std::max(0.0, out.distortion - cons_.distortion_budget);
        for (std::size_t k = 0; k < out.costs.size(); ++k)
            viol += std::max(0.0, out.costs[k] - cons_.cost_budgets[k]);
        out.violation = viol;
        return out;
    }

private:
    const PtpActionSpec& spec_;
    int na_, ns_, nu_, nx_, ny_, nshat_;
    const CdcConstraints& cons_;
};

// ------------------------------------------------------------------
// Projected local search on simplex rows: pairwise mass moves with a
// shrinking step, halved when no move improves.
// ------------------------------------------------------------------

template <typename ScoreFn>
bool ascend_row(std::vector<double>& row, ScoreFn&& score, double step_init, double step_floor) {
    bool improved_any = false;
    double cur = score();
    const int n = static_cast<int>(row.size());
    if (n < 2) return false;
    std::vector<double> saved;
    double step = step_init;
    while (step >= step_floor) {
        saved = row;
        double best = cur;
        int bi = -1, bj = -1;
        double bdelta = 0.0;
        for (int j = 0; j < n; ++j) {
            if (saved[static_cast<std::size_t>(j)] <= 0.0) continue;
            const double delta = std::min(step, saved[static_cast<std::size_t>(j)]);
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                row[static_cast<std::size_t>(i)] += delta;
                row[static_cast<std::size_t>(j)] -= delta;
                const double sc = score();
                row = saved;
                if (sc > best + kImproveEps) {
                    best = sc;
                    bi = i;
                    bj = j;
                    bdelta = delta;
                }
            }
        }
        if (bi >= 0) {
            row[static_cast<std::size_t>(bi)] += bdelta;
            row[static_cast<std::size_t>(bj)] -= bdelta;
            cur = best;
            improved_any = true;
        } else {
            step *= 0.5;
        }
    }
    return improved_any;
}

/// Vertex-only variant: jump to the best point mass.
template <typename ScoreFn>
bool jump_row_to_vertex(std::vector<double>& row, ScoreFn&& score) {
    const double cur = score();
    const int n = static_cast<int>(row.size());
    const std::vector<double> saved = row;
    double best = cur;
    int best_v = -1;
    for (int v = 0; v < n; ++v) {
        std::fill(row.begin(), row.end(), 0.0);
        row[static_cast<std::size_t>(v)] = 1.0;
        const double sc = score();
        row = saved;
        if (sc > best + kImproveEps) {
            best = sc;
            best_v = v;
        }
    }
    if (best_v >= 0) {
        std::fill(row.begin(), row.end(), 0.0);
        row[static_cast<std::size_t>(best_v)] = 1.0;
        return true;
    }
    return false;
}

struct RestartOutcome {
    bool feasible = false;
    double raw_rate = kNegInf;
    Work work;
    int cycles = 0;
};

struct SolveSetup {
    const PtpActionSpec& spec;
    const CdcConstraints& cons;
    const CdcOptions& opts;
    int u_size;
};

template <typename ScoreFn>
int block_cycles(const SolveSetup& st, Work& w, ScoreFn&& score, double step_init,
                 double step_floor) {
    int cycles = 0;
    for (; cycles < st.opts.max_cycles; ++cycles) {
        bool improved = false;
        improved |= ascend_row(w.pa, score, step_init, step_floor);
        for (auto& row : w.pu) improved |= ascend_row(row, score, step_init, step_floor);
        for (auto& row : w.px) {
            if (st.opts.deterministic_px)
                improved |= jump_row_to_vertex(row, score);
            else
                improved |= ascend_row(row, score, step_init, step_floor);
        }
        if (!improved) break;
    }
    return cycles;
}

std::vector<double> random_simplex(Xoshiro256pp& rng, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& e : v) {
        e = -std::log(1.0 - rng.next_unit()) + 1e-12;
        sum += e;
    }
    for (auto& e : v) e /= sum;
    return v;
}

/// Cheapest-cost, lowest-distortion corner: point-mass action and input at
/// the cheapest cost cell, U copying S. Feasible whenever anything is.
Work make_anchor(const SolveSetup& st) {
    const int na = st.spec.a.size(), ns = st.spec.s.size(), nx = st.spec.x.size();
    const int nu = st.u_size;
    int best_a = 0, best_x = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int a = 0; a < na; ++a)
        for (int x = 0; x < nx; ++x) {
            double c = 0.0;
            for (const auto& m : st.spec.costs) c += m.table.at2(a, x);
            if (c < best_cost - kImproveEps) {
                best_cost = c;
                best_a = a;
                best_x = x;
            }
        }
    Work w;
    w.pa.assign(static_cast<std::size_t>(na), 0.0);
    w.pa[static_cast<std::size_t>(best_a)] = 1.0;
    w.pu.assign(static_cast<std::size_t>(ns * na),
                std::vector<double>(static_cast<std::size_t>(nu), 0.0));
    for (int s = 0; s < ns; ++s)
        for (int a = 0; a < na; ++a)
            w.pu[static_cast<std::size_t>(s * na + a)][static_cast<std::size_t>(s % nu)] = 1.0;
    w.px.assign(static_cast<std::size_t>(nu * ns),
                std::vector<double>(static_cast<std::size_t>(nx), 0.0));
    for (auto& row : w.px) row[static_cast<std::size_t>(best_x)] = 1.0;
    return w;
}

Work blend_work(const Work& a, const Work& b, double t) {
    Work w = a;
    for (std::size_t i = 0; i < w.pa.size(); ++i) w.pa[i] = (1 - t) * a.pa[i] + t * b.pa[i];
    for (std::size_t r = 0; r < w.pu.size(); ++r)
        for (std::size_t i = 0; i < w.pu[r].size(); ++i)
            w.pu[r][i] = (1 - t) * a.pu[r][i] + t * b.pu[r][i];
    for (std::size_t r = 0; r < w.px.size(); ++r)
        for (std::size_t i = 0; i < w.px[r].size(); ++i)
            w.px[r][i] = (1 - t) * a.px[r][i] + t * b.px[r][i];
    return w;
}

Work make_init(const SolveSetup& st, int restart) {
    const int na = st.spec.a.size(), ns = st.spec.s.size(), nx = st.spec.x.size();
    const int nu = st.u_size;
    Work w;
    if (restart == 0) {
        w.pa.assign(static_cast<std::size_t>(na), 1.0 / na);
        w.pu.assign(static_cast<std::size_t>(ns * na),
                    std::vector<double>(static_cast<std::size_t>(nu), 1.0 / nu));
        w.px.assign(static_cast<std::size_t>(nu * ns),
                    std::vector<double>(static_cast<std::size_t>(nx), 1.0 / nx));
    } else {
        Xoshiro256pp rng(derive_seed(st.opts.seed, static_cast<std::uint64_t>(restart)));
        w.pa = random_simplex(rng, na);
        w.pu.reserve(static_cast<std::size_t>(ns * na));
        if (restart % 3 == 2) {
            // structured start: auxiliary kernel that ignores the action,
            // i.e. a point of the classic no-action family
            std::vector<std::vector<double>> per_s;
            for (int s = 0; s < ns; ++s) per_s.push_back(random_simplex(rng, nu));
            for (int r = 0; r < ns * na; ++r)
                w.pu.push_back(per_s[static_cast<std::size_t>(r / na)]);
        } else {
            for (int r = 0; r < ns * na; ++r) w.pu.push_back(random_simplex(rng, nu));
        }
        w.px.reserve(static_cast<std::size_t>(nu * ns));
        for (int r = 0; r < nu * ns; ++r) w.px.push_back(random_simplex(rng, nx));
    }
    if (st.opts.deterministic_px) {
        for (int r = 0; r < nu * ns; ++r) {
            auto& row = w.px[static_cast<std::size_t>(r)];
            const int v = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
            std::fill(row.begin(), row.end(), 0.0);
            row[static_cast<std::size_t>(v)] = 1.0;
        }
    }
    return w;
}

RestartOutcome run_restart(const SolveSetup& st, const Evaluator& ev, Work w) {
    RestartOutcome out;
    FastEval e = ev.eval(w);
    int cycles = 0;
    if (e.violation > st.opts.feas_tol) {
        // Pull the start toward a feasible anchor first: the bisected blend
        // keeps the restart's diversity instead of descending into a corner.
        const Work anchor = make_anchor(st);
        if (ev.eval(anchor).violation <= st.opts.feas_tol) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 30; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (ev.eval(blend_work(w, anchor, mid)).violation <= st.opts.feas_tol)
                    hi = mid;
                else
                    lo = mid;
            }
            w = blend_work(w, anchor, hi);
        } else {
            auto feas_score = [&] { return -ev.eval(w).violation; };
            cycles += block_cycles(st, w, feas_score, st.opts.step_init, st.opts.step_floor);
        }
        e = ev.eval(w);
        if (e.violation > st.opts.feas_tol) {
            out.cycles = cycles;
            return out;  // this restart never reached the feasible set
        }
    }
    auto rate_score = [&] {
        const FastEval fe = ev.eval(w);
        return fe.violation <= st.opts.feas_tol ? fe.raw_rate : kNegInf;
    };
    cycles += block_cycles(st, w, rate_score, st.opts.step_init, st.opts.step_floor);

    // Penalty continuation: budget-active optima need coordinated moves along
    // the constraint boundary that the filtered ascent rejects one at a time.
    Work fallback = w;
    double fallback_rate = ev.eval(w).raw_rate;
    for (const double lambda : {1.0, 3.0, 10.0, 30.0, 100.0, 1000.0}) {
        auto penalized = [&] {
            const FastEval fe = ev.eval(w);
            return fe.raw_rate - lambda * fe.violation;
        };
        cycles += block_cycles(st, w, penalized, st.opts.step_init * 0.25, st.opts.step_floor);
    }
    if (ev.eval(w).violation > st.opts.feas_tol) {
        double lo = 0.0, hi = 1.0;  // blend back toward the feasible snapshot
        for (int it = 0; it < 30; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (ev.eval(blend_work(w, fallback, mid)).violation <= st.opts.feas_tol)
                hi = mid;
            else
                lo = mid;
        }
        w = blend_work(w, fallback, hi);
    }
    cycles += block_cycles(st, w, rate_score, st.opts.step_init, st.opts.step_floor);
    if (ev.eval(w).violation > st.opts.feas_tol || ev.eval(w).raw_rate < fallback_rate) {
        w = std::move(fallback);
    }

    out.feasible = true;
    out.raw_rate = ev.eval(w).raw_rate;
    out.work = std::move(w);
    out.cycles = cycles;
    return out;
}

Work work_from_vars(const CdcDecisionVars& vars) {
    Work w;
    w.pa = vars.pa.probs();
    const int rows_u = vars.pu_given_sa.rows();
    for (int r = 0; r < rows_u; ++r) {
        auto row = vars.pu_given_sa.row(static_cast<std::size_t>(r));
        w.pu.emplace_back(row.begin(), row.end());
    }
    const int rows_x = vars.px_given_us.rows();
    for (int r = 0; r < rows_x; ++r) {
        auto row = vars.px_given_us.row(static_cast<std::size_t>(r));
        w.px.emplace_back(row.begin(), row.end());
    }
    return w;
}

CdcDecisionVars vars_from_work(const SolveSetup& st, const Work& w, std::vector<int> phi) {
    std::vector<double> pu_table;
    for (const auto& r : w.pu) pu_table.insert(pu_table.end(), r.begin(), r.end());
    std::vector<double> px_table;
    for (const auto& r : w.px) px_table.insert(px_table.end(), r.begin(), r.end());
    return CdcDecisionVars{
        Pmf(w.pa),
        CondPmf({st.spec.s.size(), st.spec.a.size()}, st.u_size, std::move(pu_table)),
        CondPmf({st.u_size, st.spec.s.size()}, st.spec.x.size(), std::move(px_table)),
        std::move(phi), st.u_size};
}

int resolve_u_size(const PtpActionSpec& spec, const CdcOptions& opts) {
    const int bound = spec.a.size() * spec.s.size() * spec.x.size() + 2;
    if (opts.u_size == 0) return std::min(bound, 6);
    if (opts.u_size < 1 || opts.u_size > bound)
        throw std::invalid_argument("cdc: u_size outside cardinality bound");
    return opts.u_size;
}

}  // namespace

JointPmf cdc_joint(const PtpActionSpec& spec, const CdcDecisionVars& vars) {
    validate_vars(spec, vars);
    JointAssembler jb;
    const int a = jb.add_marginal(vars.pa);
    const int s = jb.add_kernel(spec.state_channel, {a});
    const int u = jb.add_kernel(vars.pu_given_sa, {s, a});
    const int x = jb.add_kernel(vars.px_given_us, {u, s});
    jb.add_kernel(spec.transmission_channel, {x, s, a});
    return jb.assemble();
}

CdcEvaluation cdc_objective(const PtpActionSpec& spec, const CdcDecisionVars& vars) {
    const JointPmf j = cdc_joint(spec, vars);
    const int ax_u[] = {CdcAxes::u};
    const int ax_y[] = {CdcAxes::y};
    const int ax_s[] = {CdcAxes::s};
    const int ax_a[] = {CdcAxes::a};
    CdcEvaluation out;
    out.raw_rate = mutual_information(j, ax_u, ax_y) -
                   conditional_mutual_information(j, ax_u, ax_s, ax_a);
    out.rate = std::max(0.0, out.raw_rate);
    out.distortion = expected_distortion(j, CdcAxes::s, CdcAxes::u, vars.phi, spec.distortion);
    out.costs.reserve(spec.costs.size());
    for (const auto& c : spec.costs)
        out.costs.push_back(expected_cost(j, CdcAxes::a, CdcAxes::x, c.table));
    return out;
}

std::vector<int> optimal_phi(const Table& distortion, const JointPmf& j, int axis_s,
                             int axis_u, int shat_size) {
    const int ns = j.dim(axis_s);
    const int nu = j.dim(axis_u);
    const int axes[] = {axis_s, axis_u};
    const JointPmf p_su = j.marginal(axes);
    std::vector<int> phi(static_cast<std::size_t>(nu), 0);
    for (int u = 0; u < nu; ++u) {
        double best = std::numeric_limits<double>::infinity();
        int best_shat = 0;
        for (int sh = 0; sh < shat_size; ++sh) {
            double d = 0.0;
            for (int s = 0; s < ns; ++s) {
                const int idx[] = {s, u};
                d += p_su.prob(idx) * distortion.at2(s, sh);
            }
            if (d < best - kImproveEps) {
                best = d;
                best_shat = sh;
            }
        }
        phi[static_cast<std::size_t>(u)] = best_shat;
    }
    return phi;
}

CdcResult solve_cdc_warm(const PtpActionSpec& spec, const CdcConstraints& constraints,
                         const CdcOptions& opts,
                         const std::optional<CdcDecisionVars>& warm) {
    if (constraints.cost_budgets.size() != spec.costs.size())
        throw std::invalid_argument("cdc: one cost budget per cost metric required");
    if (!(constraints.distortion_budget >= 0.0))
        throw std::invalid_argument("cdc: distortion budget must be >= 0");
    for (std::size_t k = 0; k < spec.costs.size(); ++k) {
        if (!(constraints.cost_budgets[k] >= 0.0))
            throw std::invalid_argument("cdc: cost budget must be >= 0");
        if (spec.costs[k].table.min() > constraints.cost_budgets[k] + opts.feas_tol)
            throw InfeasibleError("cdc: cost budget for metric '" + spec.costs[k].name +
                                  "' is below the smallest attainable cost");
    }

    SolveSetup st{spec, constraints, opts, resolve_u_size(spec, opts)};
    const Evaluator ev(spec, st.u_size, constraints);

    // restarts + the deterministic anchor + an optional warm start
    const int n_units = opts.restarts + 1 + (warm.has_value() ? 1 : 0);
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(n_units));
    parallel_for(n_units, opts.threads, [&](int i) {
        Work w = (i < opts.restarts)    ? make_init(st, i)
                 : (i == opts.restarts) ? make_anchor(st)
                                        : work_from_vars(*warm);
        outcomes[static_cast<std::size_t>(i)] = run_restart(st, ev, std::move(w));
    });

    int best = -1;
    int feasible_count = 0;
    std::vector<CdcTraceEntry> trace;
    trace.reserve(outcomes.size());
    for (int i = 0; i < n_units; ++i) {
        const auto& o = outcomes[static_cast<std::size_t>(i)];
        trace.push_back({i, o.feasible, std::max(0.0, o.raw_rate), o.cycles});
        if (!o.feasible) continue;
        ++feasible_count;
        if (best < 0 || o.raw_rate > outcomes[static_cast<std::size_t>(best)].raw_rate + kImproveEps)
            best = i;
    }
    if (best < 0)
        throw InfeasibleError("cdc: no feasible point found for the given budgets");

    Work w = outcomes[static_cast<std::size_t>(best)].work;
    if (opts.polish_floor > 0.0 && opts.polish_floor < opts.step_floor) {
        auto rate_score = [&] {
            const FastEval fe = ev.eval(w);
            return fe.violation <= opts.feas_tol ? fe.raw_rate : kNegInf;
        };
        block_cycles(st, w, rate_score, opts.step_floor, opts.polish_floor);
    }

    const FastEval fe = ev.eval(w);
    CdcResult res;
    res.vars = vars_from_work(st, w, fe.phi);
    const CdcEvaluation final_eval = cdc_objective(spec, res.vars);
    res.rate = final_eval.rate;
    res.achieved_distortion = final_eval.distortion;
    res.achieved_costs = final_eval.costs;
    res.restarts_used = feasible_count;
    res.trace = std::move(trace);
    return res;
}

CdcResult solve_cdc(const PtpActionSpec& spec, const CdcConstraints& constraints,
                    const CdcOptions& opts) {
    return solve_cdc_warm(spec, constraints, opts, std::nullopt);
}

std::vector<CdcSweepPoint> sweep_cdc(const PtpActionSpec& spec,
                                     const std::vector<double>& d_grid, double gamma,
                                     const CdcOptions& opts) {
    if (d_grid.empty()) throw std::invalid_argument("cdc sweep: empty D grid");
    if (!std::is_sorted(d_grid.begin(), d_grid.end()))
        throw std::invalid_argument("cdc sweep: D grid must be ascending");
    if (spec.costs.size() != 1)
        throw std::invalid_argument("cdc sweep: single cost metric expected");

    std::vector<CdcSweepPoint> points;
    points.reserve(d_grid.size());
    std::optional<CdcDecisionVars> warm;
    for (double d : d_grid) {
        const CdcResult r = solve_cdc_warm(spec, CdcConstraints(d, {gamma}), opts, warm);
        warm = r.vars;
        CdcSweepPoint p;
        p.d_budget = d;
        p.gamma = gamma;
        p.raw_rate = r.rate;
        p.rate = r.rate;
        p.achieved_distortion = r.achieved_distortion;
        p.achieved_cost = r.achieved_costs.front();
        p.restarts_used = r.restarts_used;
        points.push_back(p);
    }
    // Rates are non-decreasing in D by feasible-set nesting; enforce it on the
    // reported curve and flag every raw violation. The better earlier point is
    // carried forward wholesale (its variables stay feasible at larger D).
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].raw_rate < points[i - 1].rate - 1e-9) points[i].ascent_violation = true;
        if (points[i].rate < points[i - 1].rate) {
            points[i].rate = points[i - 1].rate;
            points[i].achieved_distortion = points[i - 1].achieved_distortion;
            points[i].achieved_cost = points[i - 1].achieved_cost;
        }
    }
    return points;
}

}  // namespace actch
