#include "actch/bc_region.hpp"

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

void validate_vars(const BcActionSpec& spec, const BcDecisionVars& vars) {
    if (vars.pu.rank() != 2 || vars.pu.dim(0) != vars.u1_size || vars.pu.dim(1) != vars.u2_size)
        throw std::invalid_argument("bc: pu must be a (u1, u2) joint of the stated sizes");
    const std::size_t cells = static_cast<std::size_t>(vars.u1_size * vars.u2_size);
    if (vars.f_a.size() != cells) throw std::invalid_argument("bc: f_a table size mismatch");
    if (vars.f_x.size() != cells * static_cast<std::size_t>(spec.s.size()))
        throw std::invalid_argument("bc: f_x table size mismatch");
    for (int v : vars.f_a)
        if (v < 0 || v >= spec.a.size()) throw std::invalid_argument("bc: f_a value outside A");
    for (int v : vars.f_x)
        if (v < 0 || v >= spec.x.size()) throw std::invalid_argument("bc: f_x value outside X");
}

double neg_plog(double p) { return p > kProbFloor ? -p * std::log2(p) : 0.0; }

/// m * H(mix / m) without normalizing, for m the total mass of `mix`.
double weighted_entropy(std::span<const double> mix, double m) {
    if (m <= kProbFloor) return 0.0;
    double h = 0.0;
    for (double v : mix) h += neg_plog(v);
    return h + m * std::log2(m);
}

/// Per-(f_a, f_x) tables that make the scalarized objective cheap in pu.
struct CompiledBc {
    int nu1 = 0, nu2 = 0, ny1 = 0, ny2 = 0;
    std::vector<double> t1;    // [u1][u2][y1] = p(y1 | u1, u2)
    std::vector<double> t2;    // [u1][u2][y2]
    std::vector<double> h1;    // [u1][u2] = H(Y1 | u1, u2)
    std::vector<double> cost;  // [u1][u2] = E[gamma | u1, u2]
    mutable std::vector<double> mix1_, mix2_, py2_;  // eval scratch

    void compile(const BcActionSpec& spec, int u1_size, int u2_size,
                 std::span<const int> fa, std::span<const int> fx) {
        nu1 = u1_size;
        nu2 = u2_size;
        ny1 = spec.y1.size();
        ny2 = spec.y2.size();
        const int ns = spec.s.size();
        t1.assign(static_cast<std::size_t>(nu1 * nu2 * ny1), 0.0);
        t2.assign(static_cast<std::size_t>(nu1 * nu2 * ny2), 0.0);
        h1.assign(static_cast<std::size_t>(nu1 * nu2), 0.0);
        cost.assign(static_cast<std::size_t>(nu1 * nu2), 0.0);
        for (int u1 = 0; u1 < nu1; ++u1)
            for (int u2 = 0; u2 < nu2; ++u2) {
                const int cell = u1 * nu2 + u2;
                const int a = fa[static_cast<std::size_t>(cell)];
                const auto ps = spec.state_channel.row(static_cast<std::size_t>(a));
                double* row1 = t1.data() + static_cast<std::size_t>(cell * ny1);
                double* row2 = t2.data() + static_cast<std::size_t>(cell * ny2);
                double c = 0.0;
                for (int s = 0; s < ns; ++s) {
                    const double w = ps[static_cast<std::size_t>(s)];
                    if (w == 0.0) continue;
                    const int x = fx[static_cast<std::size_t>(cell * ns + s)];
                    const auto py1 = spec.channel1.row(
                        static_cast<std::size_t>((x * ns + s) * spec.a.size() + a));
                    for (int y = 0; y < ny1; ++y) row1[y] += w * py1[static_cast<std::size_t>(y)];
                    c += w * spec.cost.at2(a, x);
                }
                for (int y = 0; y < ny1; ++y) {
                    const double w = row1[y];
                    if (w == 0.0) continue;
                    const auto py2 = spec.degrading_channel.row(static_cast<std::size_t>(y));
                    for (int k = 0; k < ny2; ++k) row2[k] += w * py2[static_cast<std::size_t>(k)];
                }
                h1[static_cast<std::size_t>(cell)] =
                    entropy_bits({row1, static_cast<std::size_t>(ny1)});
                cost[static_cast<std::size_t>(cell)] = c;
            }
        mix1_.assign(static_cast<std::size_t>(ny1), 0.0);
        mix2_.assign(static_cast<std::size_t>(ny2), 0.0);
        py2_.assign(static_cast<std::size_t>(ny2), 0.0);
    }

    BcRates eval(std::span<const double> pu) const {
        BcRates out;
        std::vector<double>& mix1 = mix1_;
        std::vector<double>& mix2 = mix2_;
        std::vector<double>& py2 = py2_;
        std::fill(py2.begin(), py2.end(), 0.0);
        double r1 = 0.0, h_y2_given_u2 = 0.0, c = 0.0;
        for (int u2 = 0; u2 < nu2; ++u2) {
            double m = 0.0;
            std::fill(mix1.begin(), mix1.end(), 0.0);
            std::fill(mix2.begin(), mix2.end(), 0.0);
            double cond1 = 0.0;
            for (int u1 = 0; u1 < nu1; ++u1) {
                const int cell = u1 * nu2 + u2;
                const double w = pu[static_cast<std::size_t>(cell)];
                if (w == 0.0) continue;
                m += w;
                const double* row1 = t1.data() + static_cast<std::size_t>(cell * ny1);
                for (int y = 0; y < ny1; ++y) mix1[static_cast<std::size_t>(y)] += w * row1[y];
                const double* row2 = t2.data() + static_cast<std::size_t>(cell * ny2);
                for (int y = 0; y < ny2; ++y) mix2[static_cast<std::size_t>(y)] += w * row2[y];
                cond1 += w * h1[static_cast<std::size_t>(cell)];
                c += w * cost[static_cast<std::size_t>(cell)];
            }
            if (m <= kProbFloor) continue;
            r1 += weighted_entropy(mix1, m) - cond1;
            h_y2_given_u2 += weighted_entropy(mix2, m);
            for (int y = 0; y < ny2; ++y) py2[static_cast<std::size_t>(y)] += mix2[static_cast<std::size_t>(y)];
        }
        out.r1 = std::max(0.0, r1);
        out.r2 = std::max(0.0, entropy_bits(py2) - h_y2_given_u2);
        out.cost = c;
        return out;
    }
};

// Projected local search on the pu simplex (single block).
template <typename ScoreFn>
bool ascend_simplex(std::vector<double>& v, ScoreFn&& score, double step_init,
                    double step_floor) {
    bool improved_any = false;
    double cur = score();
    const int n = static_cast<int>(v.size());
    std::vector<double> saved;
    double step = step_init;
    while (step >= step_floor) {
        saved = v;
        double best = cur;
        int bi = -1, bj = -1;
        double bdelta = 0.0;
        for (int j = 0; j < n; ++j) {
            if (saved[static_cast<std::size_t>(j)] <= 0.0) continue;
            const double delta = std::min(step, saved[static_cast<std::size_t>(j)]);
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                v[static_cast<std::size_t>(i)] += delta;
                v[static_cast<std::size_t>(j)] -= delta;
                const double sc = score();
                v = saved;
                if (sc > best + kImproveEps) {
                    best = sc;
                    bi = i;
                    bj = j;
                    bdelta = delta;
                }
            }
        }
        if (bi >= 0) {
            v[static_cast<std::size_t>(bi)] += bdelta;
            v[static_cast<std::size_t>(bj)] -= bdelta;
            cur = best;
            improved_any = true;
        } else {
            step *= 0.5;
        }
    }
    return improved_any;
}

std::vector<double> random_simplex_vec(Xoshiro256pp& rng, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& e : v) {
        e = -std::log(1.0 - rng.next_unit()) + 1e-12;
        sum += e;
    }
    for (auto& e : v) e /= sum;
    return v;
}

struct PuOptResult {
    double value = kNegInf;
    std::vector<double> pu;
};

/// Maximize mu*R1 + (1-mu)*R2 over the pu simplex for one compiled candidate.
PuOptResult optimize_pu(const CompiledBc& cb, double mu, double gamma,
                        const BcRegionOptions& opts, std::uint64_t cand_seed,
                        const std::vector<double>* warm) {
    const int n = cb.nu1 * cb.nu2;
    const double min_cost = *std::min_element(cb.cost.begin(), cb.cost.end());
    PuOptResult best;
    if (min_cost > gamma + opts.feas_tol) return best;  // no feasible pu at all

    auto run = [&](std::vector<double> pu) {
        auto cost_of = [&] {
            double c = 0.0;
            for (int i = 0; i < n; ++i)
                c += pu[static_cast<std::size_t>(i)] * cb.cost[static_cast<std::size_t>(i)];
            return c;
        };
        if (cost_of() > gamma + opts.feas_tol) {
            auto feas_score = [&] { return -std::max(0.0, cost_of() - gamma); };
            ascend_simplex(pu, feas_score, opts.step_init, opts.step_floor);
            if (cost_of() > gamma + opts.feas_tol) return;  // could not reach the budget
        }
        auto score = [&] {
            if (cost_of() > gamma + opts.feas_tol) return kNegInf;
            const BcRates r = cb.eval(pu);
            return mu * r.r1 + (1.0 - mu) * r.r2;
        };
        ascend_simplex(pu, score, opts.step_init, opts.step_floor);
        const double val = score();
        if (val > best.value + kImproveEps) {
            best.value = val;
            best.pu = std::move(pu);
        }
    };

    run(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
    if (warm && !warm->empty()) run(*warm);
    for (int r = 0; r < opts.restarts; ++r) {
        Xoshiro256pp rng(derive_seed(cand_seed, static_cast<std::uint64_t>(r)));
        run(random_simplex_vec(rng, n));
    }
    return best;
}

std::int64_t pow_capped(int base, int exp, std::int64_t cap) {
    std::int64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        v *= base;
        if (v > cap) return cap + 1;
    }
    return v;
}

/// Decodes so that increasing codes enumerate tables in lexicographic order
/// (entry 0 is the most significant digit); ties in the scalarized reduction
/// keep the first candidate, i.e. the lexicographically smallest table.
std::vector<int> decode_table(std::int64_t code, int entries, int base) {
    std::vector<int> t(static_cast<std::size_t>(entries));
    for (int i = entries - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(code % base);
        code /= base;
    }
    return t;
}

int resolve_u_size(const BcActionSpec& spec, int requested) {
    if (requested > 0) return requested;
    const std::int64_t fn_count = pow_capped(spec.x.size(), spec.s.size(), 64) *
                                  static_cast<std::int64_t>(spec.a.size());
    return static_cast<int>(std::min<std::int64_t>(fn_count, 4));
}

}  // namespace

JointPmf bc_joint(const BcActionSpec& spec, const BcDecisionVars& vars) {
    validate_vars(spec, vars);
    JointAssembler jb;
    const int u1 = jb.add_block(vars.pu);
    const int u2 = u1 + 1;
    const int a = jb.add_map(vars.f_a, spec.a.size(), {u1, u2});
    const int s = jb.add_kernel(spec.state_channel, {a});
    const int x = jb.add_map(vars.f_x, spec.x.size(), {u1, u2, s});
    const int y1 = jb.add_kernel(spec.channel1, {x, s, a});
    jb.add_kernel(spec.degrading_channel, {y1});
    return jb.assemble();
}

BcRates bc_rates(const BcActionSpec& spec, const BcDecisionVars& vars) {
    const JointPmf j = bc_joint(spec, vars);
    const int ax_u1[] = {BcAxes::u1};
    const int ax_u2[] = {BcAxes::u2};
    const int ax_y1[] = {BcAxes::y1};
    const int ax_y2[] = {BcAxes::y2};
    BcRates out;
    out.r1 = conditional_mutual_information(j, ax_u1, ax_y1, ax_u2);
    out.r2 = mutual_information(j, ax_u2, ax_y2);
    out.cost = expected_cost(j, BcAxes::a, BcAxes::x, spec.cost);
    return out;
}

std::vector<RatePair> upper_right_hull(const std::vector<RatePair>& pts) {
    std::vector<RatePair> cand;
    cand.push_back({0.0, 0.0});
    for (const auto& p : pts) {
        cand.push_back(p);
        cand.push_back({p.r1, 0.0});
        cand.push_back({0.0, p.r2});
    }
    // Pareto-maximal subset, R1 ascending.
    std::sort(cand.begin(), cand.end(), [](const RatePair& a, const RatePair& b) {
        return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
    });
    std::vector<RatePair> pareto;
    double best_r2 = -1.0;
    for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
        if (it->r2 > best_r2 + 1e-15) {
            pareto.push_back(*it);
            best_r2 = it->r2;
        }
    }
    std::reverse(pareto.begin(), pareto.end());  // R1 asc, R2 desc
    // Concave envelope: drop points under a chord of their neighbours.
    std::vector<RatePair> hull;
    for (const auto& p : pareto) {
        while (hull.size() >= 2) {
            const RatePair& a = hull[hull.size() - 2];
            const RatePair& b = hull[hull.size() - 1];
            const double cross = (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
            if (cross >= -1e-15)
                hull.pop_back();  // b lies on or below the chord a->p
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

double RegionBoundary::support(double mu) const {
    double best = 0.0;
    for (const auto& p : hull) best = std::max(best, mu * p.r1 + (1.0 - mu) * p.r2);
    return best;
}

bool RegionBoundary::contains(const RatePair& p, double tol) const {
    if (p.r1 < -tol || p.r2 < -tol) return false;
    constexpr int kProbes = 1001;
    for (int k = 0; k < kProbes; ++k) {
        const double mu = static_cast<double>(k) / (kProbes - 1);
        if (mu * p.r1 + (1.0 - mu) * p.r2 > support(mu) + tol) return false;
    }
    return true;
}

RegionBoundary solve_bc_region(const BcActionSpec& spec, double gamma,
                               const BcRegionOptions& opts) {
    const int nu1 = resolve_u_size(spec, opts.u1_size);
    const int nu2 = resolve_u_size(spec, opts.u2_size);
    if (opts.mu_points < 2) throw std::invalid_argument("bc: need at least 2 mu points");

    // Cheapest attainable cost: best action with its cheapest input per state.
    double min_cost = std::numeric_limits<double>::infinity();
    for (int a = 0; a < spec.a.size(); ++a) {
        const auto ps = spec.state_channel.row(static_cast<std::size_t>(a));
        double c = 0.0;
        for (int s = 0; s < spec.s.size(); ++s) {
            double cx = std::numeric_limits<double>::infinity();
            for (int x = 0; x < spec.x.size(); ++x) cx = std::min(cx, spec.cost.at2(a, x));
            c += ps[static_cast<std::size_t>(s)] * cx;
        }
        min_cost = std::min(min_cost, c);
    }
    if (min_cost > gamma + opts.feas_tol)
        throw InfeasibleError("bc: cost budget below the cheapest attainable cost");

    const int ns = spec.s.size();
    const int fa_entries = nu1 * nu2;
    const int fx_entries = nu1 * nu2 * ns;
    const std::int64_t n_fa = pow_capped(spec.a.size(), fa_entries, opts.enum_cap);
    const std::int64_t n_fx = pow_capped(spec.x.size(), fx_entries, opts.enum_cap);
    const bool enumerable = n_fa <= opts.enum_cap && n_fx <= opts.enum_cap &&
                            n_fa * n_fx <= opts.enum_cap;

    std::vector<double> mu_grid(static_cast<std::size_t>(opts.mu_points));
    for (int k = 0; k < opts.mu_points; ++k)
        mu_grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (opts.mu_points - 1);

    struct MuBest {
        double value = kNegInf;
        std::vector<double> pu;
        std::vector<int> fa, fx;
    };
    std::vector<MuBest> winners(mu_grid.size());

    if (enumerable) {
        const std::int64_t total = n_fa * n_fx;
        struct CandResult {
            std::vector<PuOptResult> per_mu;
            std::vector<int> fa, fx;
        };
        std::vector<CandResult> results(static_cast<std::size_t>(total));
        parallel_for(static_cast<int>(total), opts.threads, [&](int c) {
            CandResult& out = results[static_cast<std::size_t>(c)];
            out.fa = decode_table(c / n_fx, fa_entries, spec.a.size());
            out.fx = decode_table(c % n_fx, fx_entries, spec.x.size());
            CompiledBc cb;
            cb.compile(spec, nu1, nu2, out.fa, out.fx);
            out.per_mu.resize(mu_grid.size());
            const std::vector<double>* warm = nullptr;
            for (std::size_t k = 0; k < mu_grid.size(); ++k) {
                const std::uint64_t cand_seed =
                    derive_seed(opts.seed, static_cast<std::uint64_t>(c) * 1000003ULL + k);
                out.per_mu[k] = optimize_pu(cb, mu_grid[k], gamma, opts, cand_seed, warm);
                if (!out.per_mu[k].pu.empty()) warm = &out.per_mu[k].pu;
            }
        });
        for (std::size_t c = 0; c < results.size(); ++c) {
            for (std::size_t k = 0; k < mu_grid.size(); ++k) {
                const auto& r = results[c].per_mu[k];
                if (r.value > winners[k].value + kImproveEps) {
                    winners[k] = {r.value, r.pu, results[c].fa, results[c].fx};
                }
            }
        }
    } else {
        // Random-restart local moves over the function tables.
        struct UnitResult {
            std::vector<MuBest> per_mu;
        };
        const int units = std::max(opts.restarts, 1);
        std::vector<UnitResult> results(static_cast<std::size_t>(units));
        parallel_for(units, opts.threads, [&](int r) {
            Xoshiro256pp rng(derive_seed(opts.seed, 777000ULL + static_cast<std::uint64_t>(r)));
            std::vector<int> fa(static_cast<std::size_t>(fa_entries));
            std::vector<int> fx(static_cast<std::size_t>(fx_entries));
            for (auto& v : fa) v = rng.next_below(spec.a.size());
            for (auto& v : fx) v = rng.next_below(spec.x.size());
            UnitResult& out = results[static_cast<std::size_t>(r)];
            out.per_mu.resize(mu_grid.size());
            for (std::size_t k = 0; k < mu_grid.size(); ++k) {
                const double mu = mu_grid[k];
                CompiledBc cb;
                cb.compile(spec, nu1, nu2, fa, fx);
                const std::uint64_t seed_base =
                    derive_seed(opts.seed, 888000ULL + static_cast<std::uint64_t>(r) * 1000ULL + k);
                PuOptResult cur = optimize_pu(cb, mu, gamma, opts, seed_base, nullptr);
                for (int round = 0; round < opts.fallback_rounds; ++round) {
                    bool changed = false;
                    auto try_tables = [&](std::vector<int>& table, int base) {
                        for (std::size_t e = 0; e < table.size(); ++e) {
                            const int orig = table[e];
                            int best_v = orig;
                            double best_val = cur.value;
                            std::vector<double> best_pu = cur.pu;
                            for (int v = 0; v < base; ++v) {
                                if (v == orig) continue;
                                table[e] = v;
                                CompiledBc cb2;
                                cb2.compile(spec, nu1, nu2, fa, fx);
                                PuOptResult cand = optimize_pu(
                                    cb2, mu, gamma, opts,
                                    derive_seed(seed_base, e * 131ULL + static_cast<std::uint64_t>(v)),
                                    cur.pu.empty() ? nullptr : &cur.pu);
                                if (cand.value > best_val + 1e-9) {
                                    best_val = cand.value;
                                    best_v = v;
                                    best_pu = cand.pu;
                                }
                            }
                            table[e] = best_v;
                            if (best_v != orig) {
                                changed = true;
                                cur.value = best_val;
                                cur.pu = best_pu;
                            }
                        }
                    };
                    try_tables(fa, spec.a.size());
                    try_tables(fx, spec.x.size());
                    if (!changed) break;
                }
                out.per_mu[k] = {cur.value, cur.pu, fa, fx};
            }
        });
        for (const auto& unit : results)
            for (std::size_t k = 0; k < mu_grid.size(); ++k)
                if (unit.per_mu[k].value > winners[k].value + kImproveEps)
                    winners[k] = unit.per_mu[k];
    }

    RegionBoundary region;
    std::vector<RatePair> rate_points;
    for (std::size_t k = 0; k < mu_grid.size(); ++k) {
        const auto& w = winners[k];
        if (!std::isfinite(w.value) || w.pu.empty()) continue;
        BcDecisionVars vars{JointPmf({nu1, nu2}, w.pu), w.fa, w.fx, nu1, nu2};
        const BcRates r = bc_rates(spec, vars);
        region.points.push_back({mu_grid[k], {r.r1, r.r2}, r.cost, std::move(vars)});
        rate_points.push_back({r.r1, r.r2});
    }
    if (region.points.empty())
        throw InfeasibleError("bc: no feasible rate point found under the cost budget");
    region.hull = upper_right_hull(rate_points);
    return region;
}

BcActionSpec binary_example_spec(double b, double n1, double n2_tilde) {
    if (!(b >= 0.0 && b <= 0.5) || !(n1 >= 0.0 && n1 <= 0.5) ||
        !(n2_tilde >= 0.0 && n2_tilde <= 0.5))
        throw std::invalid_argument("binary example: parameters must lie in [0, 1/2]");
    const Alphabet bin(2);
    // y1 = x xor s xor Z1: rows over (x, s, a); a does not enter the channel.
    std::vector<double> ch1;
    for (int x = 0; x < 2; ++x)
        for (int s = 0; s < 2; ++s)
            for (int a = 0; a < 2; ++a) {
                (void)a;
                const int flip = x ^ s;
                ch1.push_back(flip == 0 ? 1.0 - n1 : n1);
                ch1.push_back(flip == 0 ? n1 : 1.0 - n1);
            }
    Table cost({2, 2}, {0.0, 1.0, 0.0, 1.0});  // gamma(a, x) = x
    return BcActionSpec(bin, bin, bin, bin, bin, CondPmf::bsc(b),
                        CondPmf({2, 2, 2}, 2, std::move(ch1)), CondPmf::bsc(n2_tilde),
                        std::move(cost));
}

RegionBoundary binary_example_region(double n1, double n2_tilde,
                                     const std::vector<double>& alpha_grid_in) {
    if (!(n1 >= 0.0 && n1 <= 0.5) || !(n2_tilde >= 0.0 && n2_tilde <= 0.5))
        throw std::invalid_argument("binary example: noise parameters must lie in [0, 1/2]");
    const double n2 = binary_convolve(n1, n2_tilde);
    RegionBoundary region;
    std::vector<RatePair> rate_points;
    for (double alpha : alpha_grid_in) {
        if (!(alpha >= 0.0 && alpha <= 0.5))
            throw std::invalid_argument("binary example: alpha must lie in [0, 1/2]");
        RatePair p;
        p.r1 = binary_entropy(binary_convolve(alpha, n1)) - binary_entropy(n1);
        p.r2 = 1.0 - binary_entropy(binary_convolve(alpha, n2));
        region.points.push_back({alpha, p, 0.0, std::nullopt});
        rate_points.push_back(p);
    }
    region.hull = upper_right_hull(rate_points);
    return region;
}

BinaryScheme binary_scheme_vars(double b, double alpha) {
    if (!(b >= 0.0 && b <= 0.5) || !(alpha >= 0.0 && alpha <= 0.5))
        throw std::invalid_argument("binary scheme: parameters must lie in [0, 1/2]");
    // p(u1, u2) = 1/2 * Ber(alpha) on u1 xor u2.
    std::vector<double> pu = {0.5 * (1.0 - alpha), 0.5 * alpha,
                              0.5 * alpha, 0.5 * (1.0 - alpha)};
    std::vector<int> fa = {0, 0, 1, 1};  // A = U1
    std::vector<int> fx(8);
    for (int u1 = 0; u1 < 2; ++u1)
        for (int u2 = 0; u2 < 2; ++u2)
            for (int s = 0; s < 2; ++s) fx[static_cast<std::size_t>((u1 * 2 + u2) * 2 + s)] = s ^ u1;
    BcDecisionVars vars{JointPmf({2, 2}, std::move(pu)), std::move(fa), std::move(fx), 2, 2};
    return BinaryScheme{std::move(vars), Pmf({1.0 - b, b})};
}

std::vector<double> alpha_grid(int points) {
    if (points < 2) throw std::invalid_argument("alpha_grid: need at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = 0.5 * static_cast<double>(i) / (points - 1);
    return g;
}

}  // namespace actch
