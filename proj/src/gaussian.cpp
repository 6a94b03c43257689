#include "actch/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "actch/errors.hpp"
#include "actch/parallel.hpp"
#include "actch/rng.hpp"

namespace actch {

namespace {

constexpr double kVarFloor = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// I(A;B) for a Gaussian pair: 0.5*log2(va / var(A|B)), floored conditional.
double gauss_mi2(double va, double vb, double cov) {
    if (va <= kVarFloor || vb <= kVarFloor) return 0.0;
    double cond = va - cov * cov / vb;
    cond = std::max(cond, kVarFloor);
    return 0.5 * std::log2(va / cond);
}

struct Moments {
    double var_u, var_y, cov_uy;
    double var_u_a, var_y_a, cov_uy_a;  // conditioned on A
    double cov_us_a;                    // cov(U,S|A); var(S|A) = var_w
};

Moments moments(const GaussParams& p, const GaussPowers& pw, double pg) {
    // Coefficients over the independent basis (A, W, G, Z). Conditioning on A
    // just drops the A component, so the conditional moments are assembled
    // from the remaining components directly; subtracting the A projection
    // instead would cancel catastrophically near the P_G = 0 boundary.
    const double cu[4] = {p.delta * p.alpha + 1.0, p.delta * p.g + p.beta, p.delta, 0.0};
    const double cy[4] = {1.0 + p.alpha, 1.0 + p.g, 1.0, 1.0};
    const double var[4] = {pw.p_a, pw.var_w, pg, pw.var_z};
    Moments m{};
    m.var_u = m.var_y = m.cov_uy = 0.0;
    m.var_u_a = m.var_y_a = m.cov_uy_a = 0.0;
    for (int k = 0; k < 4; ++k) {
        m.var_u += cu[k] * cu[k] * var[k];
        m.var_y += cy[k] * cy[k] * var[k];
        m.cov_uy += cu[k] * cy[k] * var[k];
        if (k > 0) {
            m.var_u_a += cu[k] * cu[k] * var[k];
            m.var_y_a += cy[k] * cy[k] * var[k];
            m.cov_uy_a += cu[k] * cy[k] * var[k];
        }
    }
    m.cov_us_a = cu[1] * pw.var_w;  // only the W component is shared with S given A
    return m;
}

/// var(S|U,A) on the same stable expression gauss_distortion uses, so the
/// rate and the distortion can never disagree about the conditional law.
double mmse_s_given_ua(const GaussParams& p, const GaussPowers& pw, double pg) {
    const double cw = p.delta * p.g + p.beta;
    const double den = p.delta * p.delta * pg + cw * cw * pw.var_w;
    if (den <= kVarFloor) return pw.var_w;
    const double d = pw.var_w - (cw * pw.var_w) * (cw * pw.var_w) / den;
    return std::clamp(d, 0.0, pw.var_w);
}

double checked_pg(const GaussParams& p, const GaussPowers& pw) {
    const double pg = gauss_pg(p, pw);
    if (pg < -1e-12)
        throw std::invalid_argument("gauss: infeasible parameters (P_G < 0)");
    return std::max(pg, 0.0);
}

}  // namespace

void GaussPowers::validate() const {
    if (!(p_a > 0.0 && p_x > 0.0 && var_w > 0.0 && var_z > 0.0))
        throw std::invalid_argument("GaussPowers: all powers/variances must be > 0");
}

double gauss_pg(const GaussParams& p, const GaussPowers& pw) {
    return pw.p_x - (p.alpha * p.alpha * pw.p_a + p.g * p.g * pw.var_w);
}

Cov4 gauss_covariance(const GaussParams& p, const GaussPowers& pw) {
    pw.validate();
    const double pg = checked_pg(p, pw);
    const double cu[4] = {p.delta * p.alpha + 1.0, p.delta * p.g + p.beta, p.delta, 0.0};
    const double cy[4] = {1.0 + p.alpha, 1.0 + p.g, 1.0, 1.0};
    const double cs[4] = {1.0, 1.0, 0.0, 0.0};
    const double ca[4] = {1.0, 0.0, 0.0, 0.0};
    const double* coef[4] = {cu, cy, cs, ca};
    const double var[4] = {pw.p_a, pw.var_w, pg, pw.var_z};
    Cov4 cov{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double v = 0.0;
            for (int k = 0; k < 4; ++k) v += coef[i][k] * coef[j][k] * var[k];
            cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        }
    return cov;
}

double gauss_rate(const GaussParams& p, const GaussPowers& pw) {
    pw.validate();
    const double pg = checked_pg(p, pw);
    const Moments m = moments(p, pw, pg);
    const double i_uy = gauss_mi2(m.var_u, m.var_y, m.cov_uy);
    const double mmse = mmse_s_given_ua(p, pw, pg);
    const double i_us_a = 0.5 * std::log2(pw.var_w / std::max(mmse, kVarFloor));
    return i_uy - i_us_a;
}

double gauss_rate_action_independent(const GaussParams& p, const GaussPowers& pw) {
    pw.validate();
    const double pg = checked_pg(p, pw);
    const Moments m = moments(p, pw, pg);
    const double i_uy_a = gauss_mi2(m.var_u_a, m.var_y_a, m.cov_uy_a);
    const double mmse = mmse_s_given_ua(p, pw, pg);
    const double i_us_a = 0.5 * std::log2(pw.var_w / std::max(mmse, kVarFloor));
    return i_uy_a - i_us_a;
}

double gauss_distortion(const GaussParams& p, const GaussPowers& pw) {
    pw.validate();
    return mmse_s_given_ua(p, pw, checked_pg(p, pw));
}

std::string gauss_mode_name(GaussMode m) {
    switch (m) {
        case GaussMode::Joint: return "joint";
        case GaussMode::MessageOnly: return "message_only";
        case GaussMode::ActionIndependent: return "action_independent";
    }
    return "joint";
}

GaussMode gauss_mode_from_name(const std::string& name) {
    if (name == "joint") return GaussMode::Joint;
    if (name == "message_only") return GaussMode::MessageOnly;
    if (name == "action_independent") return GaussMode::ActionIndependent;
    throw ConfigError("unknown gaussian mode '" + name + "'");
}

namespace {

using Vec4 = std::array<double, 4>;

GaussParams to_params(const Vec4& v) { return GaussParams{v[0], v[1], v[2], v[3]}; }

/// Clamp to the box, then scale (alpha, g) onto the P_G >= 0 boundary if the
/// power constraint is violated.
Vec4 project(Vec4 v, const GaussPowers& pw, double box) {
    for (auto& c : v) c = std::clamp(c, -box, box);
    const double used = v[0] * v[0] * pw.p_a + v[3] * v[3] * pw.var_w;
    if (used > pw.p_x) {
        const double t = std::sqrt(pw.p_x / used);
        v[0] *= t;
        v[3] *= t;
    }
    return v;
}

struct GaussProblem {
    const GaussPowers& pw;
    double d_budget;
    GaussMode mode;
    double feas_tol;
    double box;

    double objective(const Vec4& v) const {
        const GaussParams p = to_params(v);
        if (mode != GaussMode::MessageOnly) {
            if (gauss_distortion(p, pw) > d_budget + feas_tol) return kNegInf;
        }
        return mode == GaussMode::ActionIndependent ? gauss_rate_action_independent(p, pw)
                                                    : gauss_rate(p, pw);
    }
};

/// Standard Nelder-Mead on the projected box; vertices are kept projected so
/// the simplex cannot wander outside the feasible power region.
Vec4 nelder_mead(const GaussProblem& prob, const Vec4& start, int max_iters) {
    constexpr int n = 4;
    std::array<Vec4, n + 1> pts;
    std::array<double, n + 1> f;
    pts[0] = project(start, prob.pw, prob.box);
    for (int i = 0; i < n; ++i) {
        Vec4 v = pts[0];
        v[static_cast<std::size_t>(i)] += 0.25;
        pts[static_cast<std::size_t>(i + 1)] = project(v, prob.pw, prob.box);
    }
    for (int i = 0; i <= n; ++i) f[static_cast<std::size_t>(i)] = prob.objective(pts[static_cast<std::size_t>(i)]);

    auto order = [&] {
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (f[static_cast<std::size_t>(j)] > f[static_cast<std::size_t>(i)]) {
                    std::swap(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
                    std::swap(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
                }
    };
    order();

    for (int it = 0; it < max_iters; ++it) {
        // centroid of the best n vertices
        Vec4 c{};
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < 4; ++k) c[static_cast<std::size_t>(k)] += pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / n;
        auto blend = [&](double t) {
            Vec4 v;
            for (int k = 0; k < 4; ++k)
                v[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] +
                    t * (c[static_cast<std::size_t>(k)] - pts[n][static_cast<std::size_t>(k)]);
            return project(v, prob.pw, prob.box);
        };
        const Vec4 xr = blend(1.0);
        const double fr = prob.objective(xr);
        if (fr > f[0]) {
            const Vec4 xe = blend(2.0);
            const double fe = prob.objective(xe);
            if (fe > fr) {
                pts[n] = xe;
                f[n] = fe;
            } else {
                pts[n] = xr;
                f[n] = fr;
            }
        } else if (fr > f[n - 1]) {
            pts[n] = xr;
            f[n] = fr;
        } else {
            const Vec4 xc = blend(fr > f[n] ? 0.5 : -0.5);
            const double fc = prob.objective(xc);
            if (fc > std::max(fr, f[n])) {
                pts[n] = xc;
                f[n] = fc;
            } else {
                // shrink toward the best vertex
                for (int i = 1; i <= n; ++i) {
                    for (int k = 0; k < 4; ++k)
                        pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                            pts[0][static_cast<std::size_t>(k)] +
                            0.5 * (pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -
                                   pts[0][static_cast<std::size_t>(k)]);
                    pts[static_cast<std::size_t>(i)] = project(pts[static_cast<std::size_t>(i)], prob.pw, prob.box);
                    f[static_cast<std::size_t>(i)] = prob.objective(pts[static_cast<std::size_t>(i)]);
                }
            }
        }
        order();
        double spread = 0.0;
        for (int k = 0; k < 4; ++k)
            spread = std::max(spread, std::abs(pts[0][static_cast<std::size_t>(k)] - pts[n][static_cast<std::size_t>(k)]));
        if (std::isfinite(f[0]) && std::isfinite(f[n]) && f[0] - f[n] < 1e-13 && spread < 1e-10)
            break;
    }
    return pts[0];
}

/// Coordinate pattern search with shrinking steps; rejects infeasible moves.
Vec4 pattern_polish(const GaussProblem& prob, Vec4 v) {
    double cur = prob.objective(v);
    for (double step = 0.1; step >= 1e-7; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int k = 0; k < 4; ++k)
                for (double sgn : {1.0, -1.0}) {
                    Vec4 cand = v;
                    cand[static_cast<std::size_t>(k)] += sgn * step;
                    cand = project(cand, prob.pw, prob.box);
                    const double fc = prob.objective(cand);
                    if (fc > cur + 1e-14) {
                        v = cand;
                        cur = fc;
                        improved = true;
                    }
                }
        }
    }
    return v;
}

std::vector<Vec4> start_points(const GaussProblem& prob, const GaussOptions& opts,
                               const std::vector<Vec4>& extra) {
    std::vector<Vec4> starts = {
        {0.0, 1.0, 0.0, 0.0},    // delta = 0: zero distortion, always feasible
        {0.0, 0.0, 0.0, 0.0},    // U = A
        {0.0, 0.5, 0.5, 0.0},
        {1.0, 0.0, 0.5, 0.0},
        {-1.0, 0.5, 0.5, 0.5},
        {0.5, 0.5, 1.0, 0.5},
    };
    for (const auto& e : extra) starts.push_back(e);
    const int want = std::max(opts.restarts, static_cast<int>(starts.size()));
    int idx = 0;
    while (static_cast<int>(starts.size()) < want) {
        Xoshiro256pp rng(derive_seed(opts.seed, static_cast<std::uint64_t>(1000 + idx++)));
        Vec4 v;
        for (auto& c : v) c = -2.0 + 4.0 * rng.next_unit();
        starts.push_back(v);
    }
    // Any start outside the distortion budget falls back to its delta = 0
    // companion, which has zero distortion.
    if (prob.mode != GaussMode::MessageOnly) {
        for (auto& s : starts) {
            const Vec4 p = project(s, prob.pw, prob.box);
            if (gauss_distortion(to_params(p), prob.pw) > prob.d_budget + prob.feas_tol) {
                s[2] = 0.0;
                s[1] = std::max(0.25, std::abs(s[1]));
            }
        }
    }
    return starts;
}

GaussPoint run_optimize(const GaussPowers& pw, double d_budget, GaussMode mode,
                        const GaussOptions& opts, const std::vector<Vec4>& extra_starts) {
    pw.validate();
    if (!(d_budget >= 0.0) && mode != GaussMode::MessageOnly)
        throw std::invalid_argument("gauss: distortion budget must be >= 0");
    const GaussProblem prob{pw, d_budget, mode, opts.feas_tol, opts.box};
    const auto starts = start_points(prob, opts, extra_starts);
    const int n = static_cast<int>(starts.size());
    std::vector<std::pair<double, Vec4>> results(static_cast<std::size_t>(n),
                                                 {kNegInf, Vec4{}});
    parallel_for(n, opts.threads, [&](int i) {
        Vec4 v = nelder_mead(prob, starts[static_cast<std::size_t>(i)], opts.nm_max_iters);
        v = pattern_polish(prob, v);
        results[static_cast<std::size_t>(i)] = {prob.objective(v), v};
    });
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (results[static_cast<std::size_t>(i)].first >
            results[static_cast<std::size_t>(best)].first + 1e-12)
            best = i;

    const Vec4 v = results[static_cast<std::size_t>(best)].second;
    const GaussParams p = to_params(v);
    GaussPoint point;
    point.params = p;
    point.distortion = gauss_distortion(p, pw);
    const double raw = (mode == GaussMode::ActionIndependent)
                           ? gauss_rate_action_independent(p, pw)
                           : gauss_rate(p, pw);
    point.rate = std::max(0.0, raw);
    point.feasible = point.distortion <= d_budget + opts.feas_tol;
    return point;
}

}  // namespace

GaussPoint optimize_gauss(const GaussPowers& pw, double d_budget, GaussMode mode,
                          const GaussOptions& opts) {
    return run_optimize(pw, d_budget, mode, opts, {});
}

std::vector<GaussSweepRow> sweep_gauss(const GaussPowers& pw, const std::vector<double>& d_grid,
                                       const std::vector<GaussMode>& modes,
                                       const GaussOptions& opts) {
    if (d_grid.empty()) throw std::invalid_argument("gauss sweep: empty D grid");
    if (!std::is_sorted(d_grid.begin(), d_grid.end()))
        throw std::invalid_argument("gauss sweep: D grid must be ascending");
    std::vector<GaussSweepRow> rows;
    for (GaussMode mode : modes) {
        if (mode == GaussMode::MessageOnly) {
            // D plays no role in the optimization; solve once and report the
            // resulting distortion against each budget.
            const GaussPoint pt = optimize_gauss(pw, 0.0, mode, opts);
            for (double d : d_grid) {
                GaussSweepRow r;
                r.d_budget = d;
                r.mode = mode;
                r.rate = r.raw_rate = pt.rate;
                r.params = pt.params;
                r.achieved_distortion = pt.distortion;
                r.feasible = pt.distortion <= d + opts.feas_tol;
                rows.push_back(r);
            }
            continue;
        }
        std::vector<GaussSweepRow> mode_rows;
        std::vector<Vec4> warm;
        for (double d : d_grid) {
            const GaussPoint pt = run_optimize(pw, d, mode, opts, warm);
            warm = {{pt.params.alpha, pt.params.beta, pt.params.delta, pt.params.g}};
            GaussSweepRow r;
            r.d_budget = d;
            r.mode = mode;
            r.rate = r.raw_rate = pt.rate;
            r.params = pt.params;
            r.achieved_distortion = pt.distortion;
            r.feasible = pt.feasible;
            mode_rows.push_back(r);
        }
        for (std::size_t i = 1; i < mode_rows.size(); ++i) {
            if (mode_rows[i].raw_rate < mode_rows[i - 1].rate - 1e-9)
                mode_rows[i].ascent_violation = true;
            if (mode_rows[i].rate < mode_rows[i - 1].rate) {
                mode_rows[i].rate = mode_rows[i - 1].rate;
                mode_rows[i].params = mode_rows[i - 1].params;
                mode_rows[i].achieved_distortion = mode_rows[i - 1].achieved_distortion;
            }
        }
        rows.insert(rows.end(), mode_rows.begin(), mode_rows.end());
    }
    return rows;
}

}  // namespace actch
