#include "actch/cli.hpp"

#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "actch/bc_region.hpp"
#include "actch/cdc_solver.hpp"
#include "actch/config.hpp"
#include "actch/csv.hpp"
#include "actch/errors.hpp"
#include "actch/gaussian.hpp"
#include "actch/manifest.hpp"
#include "actch/mc.hpp"
#include "actch/probing.hpp"

namespace actch {

namespace {

using nlohmann::json;

struct GlobalOpts {
    int threads = 1;
    std::string log_level = "info";
};

void log_warnings(const GlobalOpts& g, const std::vector<std::string>& warnings) {
    if (g.log_level == "quiet") return;
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

/// "a:b:n" -> n evenly spaced points from a to b inclusive.
std::vector<double> parse_grid(const std::string& s) {
    const auto p1 = s.find(':');
    const auto p2 = s.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw ConfigError("grid '" + s + "': expected start:stop:count");
    double a = 0.0, b = 0.0;
    long n = 0;
    try {
        a = std::stod(s.substr(0, p1));
        b = std::stod(s.substr(p1 + 1, p2 - p1 - 1));
        n = std::stol(s.substr(p2 + 1));
    } catch (...) {
        throw ConfigError("grid '" + s + "': expected start:stop:count");
    }
    if (n < 1 || n > 100000) throw ConfigError("grid '" + s + "': bad point count");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
    return g;
}

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void finish_run(const std::string& subcommand, const std::string& digest,
                std::uint64_t seed, const Timer& timer, const CsvTable& table,
                const std::string& out_path) {
    emit_csv(table, out_path);
    RunManifest m;
    m.subcommand = subcommand;
    m.config_digest = digest;
    m.seed = seed;
    m.wall_ms = timer.ms();
    m.outputs = {out_path};
    write_manifest(m, out_path);
}

std::string args_digest(const json& j) { return digest_hex(j.dump()); }

// ---------------- subcommand runners ----------------

struct CdcArgs {
    std::string spec_path, out_path, sweep;
    double dist = 0.0, cost = 0.0;
    int u_size = 0, restarts = 20;
    std::uint64_t seed = 1;
};

int run_cdc(const CdcArgs& a, const GlobalOpts& g) {
    Timer timer;
    ParsedConfig cfg = parse_config(a.spec_path);
    log_warnings(g, cfg.warnings);
    if (!cfg.ptp) throw ConfigError(a.spec_path + ": cdc expects a 'ptp' spec");
    CdcOptions opts;
    opts.u_size = a.u_size;
    opts.restarts = a.restarts;
    opts.seed = a.seed;
    opts.threads = g.threads;

    CsvTable table;
    table.header = {"D", "Gamma", "rate_bits", "achieved_D", "achieved_cost", "restarts_used"};
    if (!a.sweep.empty()) {
        const auto grid = parse_grid(a.sweep);
        const auto points = sweep_cdc(*cfg.ptp, grid, a.cost, opts);
        for (const auto& p : points) {
            if (p.ascent_violation && g.log_level != "quiet")
                std::cerr << "warning: rate dipped before the cumulative-max pass at D="
                          << p.d_budget << " (raw " << p.raw_rate << ")\n";
            table.add_row({p.d_budget, p.gamma, p.rate, p.achieved_distortion, p.achieved_cost,
                           static_cast<long long>(p.restarts_used)});
        }
    } else {
        const CdcResult r = solve_cdc(*cfg.ptp, ConstraintPair{a.dist, a.cost}, opts);
        table.add_row({a.dist, a.cost, r.rate, r.achieved_distortion, r.achieved_costs.front(),
                       static_cast<long long>(r.restarts_used)});
    }
    finish_run("cdc", cfg.digest, a.seed, timer, table, a.out_path);
    return 0;
}

struct GaussArgs {
    double pa = 1.0, px = 1.0, vw = 1.0, vz = 1.0;
    std::string d_grid = "0:1:41";
    std::string modes = "joint,message_only,action_independent";
    int restarts = 50;
    std::uint64_t seed = 1;
    std::string out_path;
};

int run_gaussian(const GaussArgs& a, const GlobalOpts& g) {
    Timer timer;
    GaussPowers pw{a.pa, a.px, a.vw, a.vz};
    pw.validate();
    std::vector<GaussMode> modes;
    for (const auto& name : split_csv_list(a.modes)) modes.push_back(gauss_mode_from_name(name));
    GaussOptions opts;
    opts.restarts = a.restarts;
    opts.seed = a.seed;
    opts.threads = g.threads;
    const auto rows = sweep_gauss(pw, parse_grid(a.d_grid), modes, opts);

    CsvTable table;
    table.header = {"D", "mode", "rate_bits", "alpha", "beta", "delta", "g",
                    "achieved_distortion", "feasible"};
    for (const auto& r : rows) {
        if (r.ascent_violation && g.log_level != "quiet")
            std::cerr << "warning: " << gauss_mode_name(r.mode)
                      << " rate dipped before the cumulative-max pass at D=" << r.d_budget
                      << " (raw " << r.raw_rate << ")\n";
        table.add_row({r.d_budget, gauss_mode_name(r.mode), r.rate, r.params.alpha,
                       r.params.beta, r.params.delta, r.params.g, r.achieved_distortion,
                       static_cast<long long>(r.feasible ? 1 : 0)});
    }
    const json desc = {{"pa", a.pa},     {"px", a.px},     {"vw", a.vw},
                       {"vz", a.vz},     {"d_grid", a.d_grid}, {"modes", a.modes},
                       {"restarts", a.restarts}};
    finish_run("gaussian", args_digest(desc), a.seed, timer, table, a.out_path);
    return 0;
}

void region_to_table(const RegionBoundary& region, double cost_override, bool use_override,
                     CsvTable& table) {
    for (const auto& p : region.points) {
        long long on_hull = 0;
        for (const auto& h : region.hull)
            if (std::abs(h.r1 - p.rates.r1) <= 1e-9 && std::abs(h.r2 - p.rates.r2) <= 1e-9) {
                on_hull = 1;
                break;
            }
        table.add_row({p.param, p.rates.r1, p.rates.r2,
                       use_override ? cost_override : p.cost, on_hull});
    }
}

struct BcArgs {
    std::string spec_path, out_path;
    double cost = 0.0;
    int u1 = 0, u2 = 0, mu_grid = 33, restarts = 10;
    std::uint64_t seed = 1;
};

int run_bc_region(const BcArgs& a, const GlobalOpts& g, bool probing) {
    Timer timer;
    ParsedConfig cfg = parse_config(a.spec_path);
    log_warnings(g, cfg.warnings);
    BcRegionOptions opts;
    opts.u1_size = a.u1;
    opts.u2_size = a.u2;
    opts.mu_points = a.mu_grid;
    opts.restarts = a.restarts;
    opts.seed = a.seed;
    opts.threads = g.threads;

    RegionBoundary region = [&] {
        if (probing) {
            if (!cfg.probing) throw ConfigError(a.spec_path + ": probing expects a 'probing' spec");
            return probing_region(*cfg.probing, a.cost, opts);
        }
        if (!cfg.bc) throw ConfigError(a.spec_path + ": bc-region expects a 'bc' spec");
        return solve_bc_region(*cfg.bc, a.cost, opts);
    }();

    CsvTable table;
    table.header = {"mu", "R1_bits", "R2_bits", "cost", "hull"};
    region_to_table(region, 0.0, false, table);
    finish_run(probing ? "probing" : "bc-region", cfg.digest, a.seed, timer, table, a.out_path);
    return 0;
}

struct BinExArgs {
    double n1 = 0.1, n2t = 0.1, b = 0.1;
    int alpha_points = 51;
    std::string out_path;
};

int run_binary_example(const BinExArgs& a) {
    Timer timer;
    const auto grid = alpha_grid(a.alpha_points);
    const RegionBoundary region = binary_example_region(a.n1, a.n2t, grid);
    CsvTable table;
    // The mu column carries the alpha grid value; the scheme achieving each
    // point costs exactly b.
    table.header = {"mu", "R1_bits", "R2_bits", "cost", "hull"};
    region_to_table(region, a.b, true, table);
    const json desc = {{"n1", a.n1}, {"n2t", a.n2t}, {"b", a.b}, {"alpha_grid", a.alpha_points}};
    finish_run("binary-example", args_digest(desc), 0, timer, table, a.out_path);
    return 0;
}

struct VerifyArgs {
    std::string spec_path, vars_path, out_path;
    long long n = 1000000;
    std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& a, const GlobalOpts& g) {
    Timer timer;
    ParsedConfig cfg = parse_config(a.spec_path);
    log_warnings(g, cfg.warnings);
    const ParsedVars vars = parse_vars(a.vars_path);
    if (a.n < 1) throw ConfigError("verify: --n must be >= 1");
    const auto n = static_cast<std::size_t>(a.n);

    CsvTable table;
    table.header = {"quantity", "analytic", "estimate", "abs_error", "n", "seed"};
    auto row = [&](const std::string& name, double analytic, double estimate) {
        table.add_row({name, analytic, estimate, std::abs(estimate - analytic),
                       static_cast<long long>(n), static_cast<long long>(a.seed)});
    };

    if (cfg.ptp && vars.kind == VarsKind::Ptp) {
        const PtpActionSpec& spec = *cfg.ptp;
        const CdcDecisionVars& dv = *vars.ptp;
        const CdcEvaluation analytic = cdc_objective(spec, dv);
        const JointPmf j = cdc_joint(spec, dv);
        const SampleBatch batch = sample_joint_sharded(j, n, a.seed, g.threads);
        const EmpiricalEstimates est = empirical_estimates(batch, spec, dv.phi);
        for (std::size_t k = 0; k < spec.costs.size(); ++k)
            row("cost:" + spec.costs[k].name, analytic.costs[k], est.cost_hats[k]);
        row("distortion", analytic.distortion, est.dist_hat);
        row("rate_bits", analytic.raw_rate, est.rate_hat);
    } else if (cfg.bc && vars.kind == VarsKind::Bc) {
        const BcActionSpec& spec = *cfg.bc;
        const BcDecisionVars& dv = *vars.bc;
        const BcRates analytic = bc_rates(spec, dv);
        const JointPmf j = bc_joint(spec, dv);
        const SampleBatch batch = sample_joint_sharded(j, n, a.seed, g.threads);
        const int ax_cost[] = {BcAxes::a, BcAxes::x};
        const int ax_u1[] = {BcAxes::u1};
        const int ax_u2[] = {BcAxes::u2};
        const int ax_y1[] = {BcAxes::y1};
        const int ax_y2[] = {BcAxes::y2};
        row("cost", analytic.cost, empirical_mean(batch, ax_cost, spec.cost));
        row("R1_bits", analytic.r1, empirical_cmi(batch, ax_u1, ax_y1, ax_u2));
        row("R2_bits", analytic.r2, empirical_mi(batch, ax_u2, ax_y2));
    } else if (cfg.probing && vars.kind == VarsKind::Bc) {
        const ReducedSpec red = reduce_probing(*cfg.probing);
        const BcDecisionVars& dv = *vars.bc;
        const BcRates analytic = bc_rates(red.bc, dv);
        const JointPmf j = bc_joint(red.bc, dv);
        const SampleBatch batch = sample_joint_sharded(j, n, a.seed, g.threads);
        const int ax_cost[] = {BcAxes::a, BcAxes::x};
        const int ax_u1[] = {BcAxes::u1};
        const int ax_u2[] = {BcAxes::u2};
        const int ax_y1[] = {BcAxes::y1};
        const int ax_y2[] = {BcAxes::y2};
        row("cost", analytic.cost, empirical_mean(batch, ax_cost, red.bc.cost));
        row("R1_bits", analytic.r1, empirical_cmi(batch, ax_u1, ax_y1, ax_u2));
        row("R2_bits", analytic.r2, empirical_mi(batch, ax_u2, ax_y2));
    } else {
        throw ConfigError("verify: spec kind and vars kind do not match");
    }
    finish_run("verify", cfg.digest, a.seed, timer, table, a.out_path);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"actch: capacity tools for channels with action-dependent states"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--threads", g.threads, "Worker-count hint for solvers")
        ->check(CLI::Range(1, 256));
    app.add_option("--log-level", g.log_level, "quiet|info|debug")
        ->check(CLI::IsMember({"quiet", "info", "debug"}));

    CdcArgs cdc;
    auto* cdc_cmd = app.add_subcommand("cdc", "Capacity-distortion-cost function");
    cdc_cmd->add_option("--spec", cdc.spec_path, "Point-to-point spec config")->required();
    cdc_cmd->add_option("--dist", cdc.dist, "Distortion budget D");
    cdc_cmd->add_option("--cost", cdc.cost, "Cost budget Gamma")->required();
    cdc_cmd->add_option("--u-size", cdc.u_size, "Auxiliary alphabet size (0 = default)");
    cdc_cmd->add_option("--restarts", cdc.restarts, "Optimizer restarts");
    cdc_cmd->add_option("--seed", cdc.seed, "Random seed");
    cdc_cmd->add_option("--sweep", cdc.sweep, "D grid start:stop:count");
    cdc_cmd->add_option("--out", cdc.out_path, "Output CSV")->required();

    GaussArgs ga;
    auto* gauss_cmd = app.add_subcommand("gaussian", "Gaussian rate-distortion curves");
    gauss_cmd->add_option("--pa", ga.pa, "Action power P_A");
    gauss_cmd->add_option("--px", ga.px, "Input power P_X");
    gauss_cmd->add_option("--vw", ga.vw, "State noise variance");
    gauss_cmd->add_option("--vz", ga.vz, "Channel noise variance");
    gauss_cmd->add_option("--d-grid", ga.d_grid, "D grid start:stop:count");
    gauss_cmd->add_option("--modes", ga.modes, "Comma list of joint|message_only|action_independent");
    gauss_cmd->add_option("--restarts", ga.restarts, "Optimizer restarts");
    gauss_cmd->add_option("--seed", ga.seed, "Random seed");
    gauss_cmd->add_option("--out", ga.out_path, "Output CSV")->required();

    BcArgs bc;
    auto* bc_cmd = app.add_subcommand("bc-region", "Degraded broadcast capacity-cost region");
    bc_cmd->add_option("--spec", bc.spec_path, "Broadcast spec config")->required();
    bc_cmd->add_option("--cost", bc.cost, "Cost budget Gamma")->required();
    bc_cmd->add_option("--u1", bc.u1, "U1 alphabet size (0 = default)");
    bc_cmd->add_option("--u2", bc.u2, "U2 alphabet size (0 = default)");
    bc_cmd->add_option("--mu-grid", bc.mu_grid, "Scalarization grid points");
    bc_cmd->add_option("--restarts", bc.restarts, "pu-ascent restarts");
    bc_cmd->add_option("--seed", bc.seed, "Random seed");
    bc_cmd->add_option("--out", bc.out_path, "Output CSV")->required();

    BinExArgs be;
    auto* bin_cmd = app.add_subcommand("binary-example", "Closed-form binary broadcast boundary");
    bin_cmd->add_option("--n1", be.n1, "Z1 crossover");
    bin_cmd->add_option("--n2t", be.n2t, "Z2 tilde crossover");
    bin_cmd->add_option("--b", be.b, "State noise Ber(b)");
    bin_cmd->add_option("--alpha-grid", be.alpha_points, "Alpha grid points");
    bin_cmd->add_option("--out", be.out_path, "Output CSV")->required();

    BcArgs pr;
    auto* pr_cmd = app.add_subcommand("probing", "Probing-encoder broadcast region");
    pr_cmd->add_option("--spec", pr.spec_path, "Probing spec config")->required();
    pr_cmd->add_option("--cost", pr.cost, "Cost budget Gamma")->required();
    pr_cmd->add_option("--u1", pr.u1, "U1 alphabet size (0 = default)");
    pr_cmd->add_option("--u2", pr.u2, "U2 alphabet size (0 = default)");
    pr_cmd->add_option("--mu-grid", pr.mu_grid, "Scalarization grid points");
    pr_cmd->add_option("--restarts", pr.restarts, "pu-ascent restarts");
    pr_cmd->add_option("--seed", pr.seed, "Random seed");
    pr_cmd->add_option("--out", pr.out_path, "Output CSV")->required();

    VerifyArgs ve;
    auto* ver_cmd = app.add_subcommand("verify", "Monte Carlo check of analytic quantities");
    ver_cmd->add_option("--spec", ve.spec_path, "Spec config")->required();
    ver_cmd->add_option("--vars", ve.vars_path, "Decision-variables file")->required();
    ver_cmd->add_option("--n", ve.n, "Sample count");
    ver_cmd->add_option("--seed", ve.seed, "Random seed");
    ver_cmd->add_option("--out", ve.out_path, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cdc_cmd->parsed()) return run_cdc(cdc, g);
        if (gauss_cmd->parsed()) return run_gaussian(ga, g);
        if (bc_cmd->parsed()) return run_bc_region(bc, g, false);
        if (bin_cmd->parsed()) return run_binary_example(be);
        if (pr_cmd->parsed()) return run_bc_region(pr, g, true);
        if (ver_cmd->parsed()) return run_verify(ve, g);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("actch");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace actch
