#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "actch/cli.hpp"
#include "actch/config.hpp"
#include "actch/csv.hpp"
#include "actch/errors.hpp"
#include "actch/info.hpp"
#include "actch/manifest.hpp"
#include "actch/rng.hpp"

using namespace actch;

namespace {

const std::string kConfigs = std::string(ACTCH_SOURCE_DIR) + "/configs/";

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& name) { return "cli_test_" + name; }

}  // namespace

TEST_CASE("parse_config: shipped binary example matches its construction") {
    const ParsedConfig cfg = parse_config(kConfigs + "binary_example.json");
    REQUIRE(cfg.kind == SpecKind::Bc);
    REQUIRE(cfg.bc.has_value());
    const BcActionSpec& spec = *cfg.bc;
    // state channel is the BSC(0.1) of S = A xor Ber(0.1)
    CHECK(spec.state_channel.at({{0}}, 0) == doctest::Approx(0.9));
    CHECK(spec.state_channel.at({{1}}, 0) == doctest::Approx(0.1));
    // y1 = x xor s xor Ber(0.1), independent of a
    for (int x = 0; x < 2; ++x)
        for (int s = 0; s < 2; ++s)
            for (int a = 0; a < 2; ++a) {
                const int cond[] = {x, s, a};
                CHECK(spec.channel1.at(cond, x ^ s) == doctest::Approx(0.9));
            }
    CHECK(spec.degrading_channel.at({{0}}, 1) == doctest::Approx(0.1));
    CHECK(spec.cost.at2(0, 1) == doctest::Approx(1.0));
    CHECK(cfg.warnings.empty());
}

TEST_CASE("parse_config: empty file names the missing root key") {
    const std::string path = temp_path("empty.json");
    std::ofstream(path).close();
    try {
        parse_config(path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("kind") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("parse_config: row-sum tolerance band") {
    const std::string good = R"({
      "kind": "bc",
      "alphabets": {"a": 2, "s": 2, "x": 2, "y1": 2, "y2": 2},
      "state_channel": [[0.90000005, 0.1], [0.1, 0.9]],
      "channel1": [
        [[[0.9, 0.1], [0.9, 0.1]], [[0.1, 0.9], [0.1, 0.9]]],
        [[[0.1, 0.9], [0.1, 0.9]], [[0.9, 0.1], [0.9, 0.1]]]
      ],
      "degrading_channel": [[0.9, 0.1], [0.1, 0.9]],
      "cost": [[0.0, 1.0], [0.0, 1.0]]
    })";
    const ParsedConfig cfg = parse_config_text(good, "inline");
    REQUIRE(cfg.warnings.size() == 1);
    CHECK(cfg.warnings[0].find("state_channel[0]") != std::string::npos);
    // renormalized row still sums to one
    double sum = 0.0;
    for (int s = 0; s < 2; ++s) sum += cfg.bc->state_channel.at({{0}}, s);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

    const std::string bad = R"({
      "kind": "bc",
      "alphabets": {"a": 2, "s": 2, "x": 2, "y1": 2, "y2": 2},
      "state_channel": [[0.903, 0.1], [0.1, 0.9]],
      "channel1": [
        [[[0.9, 0.1], [0.9, 0.1]], [[0.1, 0.9], [0.1, 0.9]]],
        [[[0.1, 0.9], [0.1, 0.9]], [[0.9, 0.1], [0.9, 0.1]]]
      ],
      "degrading_channel": [[0.9, 0.1], [0.1, 0.9]],
      "cost": [[0.0, 1.0], [0.0, 1.0]]
    })";
    try {
        parse_config_text(bad, "inline");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("state_channel[0]") != std::string::npos);
    }
}

TEST_CASE("parse_config: digest is stable under key reordering") {
    const std::string a = R"({"kind": "gauss", "pa": 1.0, "px": 2.0, "var_w": 1.0, "var_z": 1.0})";
    const std::string b = R"({"var_z": 1.0, "px": 2.0, "kind": "gauss", "var_w": 1.0, "pa": 1.0})";
    CHECK(parse_config_text(a, "a").digest == parse_config_text(b, "b").digest);
    const std::string c = R"({"kind": "gauss", "pa": 1.5, "px": 2.0, "var_w": 1.0, "var_z": 1.0})";
    CHECK(parse_config_text(a, "a").digest != parse_config_text(c, "c").digest);
}

TEST_CASE("csv: header-only, column count, and parse-back round trip") {
    CsvTable empty;
    empty.header = {"a", "b"};
    CHECK(empty.to_string() == "a,b\n");

    CsvTable g;
    g.header = {"D", "mode", "rate_bits", "alpha", "beta", "delta", "g",
                "achieved_distortion", "feasible"};
    g.add_row({0.5, std::string("joint"), 0.123456789012, 1.0, -2.0, 0.25, 0.0, 0.5,
               static_cast<long long>(1)});
    const std::string text = g.to_string();
    CHECK(text.substr(text.find('\n') + 1).find("joint") != std::string::npos);

    Xoshiro256pp rng(61);
    CsvTable t;
    t.header = {"x"};
    std::vector<double> vals;
    for (int i = 0; i < 200; ++i) {
        const double v = (rng.next_unit() - 0.5) * std::pow(10.0, rng.next_below(12) - 6);
        vals.push_back(v);
        t.add_row({v});
    }
    const CsvTable back = parse_csv(t.to_string());
    REQUIRE(back.rows.size() == vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double v = std::get<double>(back.rows[i][0]);
        CHECK(std::abs(v - vals[i]) <=
              std::abs(vals[i]) * 1e-11 + 1e-300);  // 12 significant digits
    }
}

TEST_CASE("cli: binary-example runs are byte-identical and write manifests") {
    const std::string out1 = temp_path("binex1.csv");
    const std::string out2 = temp_path("binex2.csv");
    const std::vector<std::string> args = {"binary-example", "--n1", "0.1", "--n2t", "0.1",
                                           "--b", "0.1", "--alpha-grid", "11", "--out"};
    auto with_out = [&](const std::string& o) {
        auto a = args;
        a.push_back(o);
        return a;
    };
    CHECK(run_cli(with_out(out1)) == 0);
    CHECK(run_cli(with_out(out2)) == 0);
    CHECK(slurp(out1) == slurp(out2));
    const CsvTable parsed = parse_csv(slurp(out1));
    CHECK(parsed.header ==
          std::vector<std::string>{"mu", "R1_bits", "R2_bits", "cost", "hull"});
    REQUIRE(parsed.rows.size() == 11);
    // closed-form endpoint alpha = 0.5 -> R1 = 1 - H(0.1)
    CHECK(std::get<double>(parsed.rows.back()[1]) ==
          doctest::Approx(1.0 - binary_entropy(0.1)).epsilon(1e-9));
    // every row carries the scheme cost b
    for (const auto& row : parsed.rows)
        CHECK(std::get<double>(row[3]) == doctest::Approx(0.1));
    CHECK(slurp(out1 + ".manifest.json").find("binary-example") != std::string::npos);
    for (const auto& p : {out1, out2})
        for (const auto& suffix : {"", ".manifest.json"})
            std::remove((p + suffix).c_str());
}

TEST_CASE("cli: cdc run on the shipped spec is deterministic") {
    const std::string out1 = temp_path("cdc1.csv");
    const std::string out2 = temp_path("cdc2.csv");
    const std::vector<std::string> base = {
        "cdc",   "--spec",     kConfigs + "ptp_dirty_bsc.json",
        "--cost", "0.5",       "--sweep", "0.2:1.0:3",
        "--u-size", "2",       "--restarts", "3",
        "--seed", "7"};
    auto with_out = [&](const std::string& o) {
        auto a = base;
        a.push_back("--out");
        a.push_back(o);
        return a;
    };
    CHECK(run_cli(with_out(out1)) == 0);
    CHECK(run_cli(with_out(out2)) == 0);
    CHECK(slurp(out1) == slurp(out2));
    const CsvTable parsed = parse_csv(slurp(out1));
    CHECK(parsed.header ==
          std::vector<std::string>{"D", "Gamma", "rate_bits", "achieved_D", "achieved_cost",
                                   "restarts_used"});
    REQUIRE(parsed.rows.size() == 3);
    CHECK(std::get<double>(parsed.rows[0][2]) <= std::get<double>(parsed.rows[2][2]) + 1e-9);
    for (const auto& p : {out1, out2})
        for (const auto& suffix : {"", ".manifest.json"})
            std::remove((p + suffix).c_str());
}

TEST_CASE("cli: verify on the shipped binary scheme") {
    const std::string out = temp_path("verify.csv");
    const int rc = run_cli({"verify", "--spec", kConfigs + "binary_example.json", "--vars",
                            kConfigs + "binary_scheme_vars.json", "--n", "200000", "--seed",
                            "3", "--out", out});
    CHECK(rc == 0);
    const CsvTable parsed = parse_csv(slurp(out));
    REQUIRE(parsed.rows.size() == 3);
    for (const auto& row : parsed.rows) CHECK(std::get<double>(row[3]) <= 1e-2);
    // analytic cost column equals b = 0.1
    CHECK(std::get<double>(parsed.rows[0][1]) == doctest::Approx(0.1).epsilon(1e-12));
    for (const auto& suffix : {"", ".manifest.json"}) std::remove((out + suffix).c_str());
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli({"cdc", "--spec", "no_such_file.json", "--cost", "1", "--out",
                   temp_path("x.csv")}) == 2);
    // cost budget below the cheapest attainable cost
    const std::string cfg = temp_path("infeasible.json");
    {
        std::ofstream f(cfg);
        f << R"({
          "kind": "ptp",
          "alphabets": {"a": 2, "s": 2, "x": 2, "y": 2, "shat": 2},
          "state_channel": [[0.8, 0.2], [0.3, 0.7]],
          "transmission_channel": [
            [[[0.95, 0.05], [0.85, 0.15]], [[0.05, 0.95], [0.15, 0.85]]],
            [[[0.05, 0.95], [0.15, 0.85]], [[0.95, 0.05], [0.85, 0.15]]]
          ],
          "cost": [[0.5, 1.0], [0.5, 1.0]],
          "distortion": [[0.0, 1.0], [1.0, 0.0]]
        })";
    }
    CHECK(run_cli({"cdc", "--spec", cfg, "--cost", "0.1", "--dist", "1", "--out",
                   temp_path("y.csv")}) == 3);
    std::remove(cfg.c_str());
    // bad mode string
    CHECK(run_cli({"gaussian", "--modes", "bogus", "--out", temp_path("z.csv")}) == 2);
}

TEST_CASE("parse_config: labels and joint_output ingestion") {
    const std::string labeled = R"({
      "kind": "gauss", "pa": 1.0, "px": 1.0, "var_w": 1.0, "var_z": 1.0
    })";
    CHECK(parse_config_text(labeled, "inline").gauss.has_value());

    // factored form recovered from a general two-output kernel
    const std::string joint_form = R"({
      "kind": "bc",
      "alphabets": {"a": 2, "s": 2, "x": 2, "y1": 2, "y2": 2},
      "labels": {"a": ["idle", "act"]},
      "state_channel": [[0.9, 0.1], [0.1, 0.9]],
      "joint_output": [
        [[[0.81, 0.09, 0.09, 0.01], [0.81, 0.09, 0.09, 0.01]],
         [[0.09, 0.01, 0.81, 0.09], [0.09, 0.01, 0.81, 0.09]]],
        [[[0.09, 0.01, 0.81, 0.09], [0.09, 0.01, 0.81, 0.09]],
         [[0.81, 0.09, 0.09, 0.01], [0.81, 0.09, 0.09, 0.01]]]
      ],
      "cost": [[0.0, 1.0], [0.0, 1.0]]
    })";
    const ParsedConfig cfg = parse_config_text(joint_form, "inline");
    REQUIRE(cfg.bc.has_value());
    CHECK(cfg.bc->a.label(1) == "act");
    // p(y1|x,s,a) = BSC(0.1) on x xor s; p(y2|y1) = BSC(0.1)
    const int cond[] = {0, 0, 0};
    CHECK(cfg.bc->channel1.at(cond, 0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(cfg.bc->degrading_channel.at({{0}}, 1) == doctest::Approx(0.1).epsilon(1e-12));

    // y2 tracking x instead of y1 is not physically degraded
    const std::string bad = R"({
      "kind": "bc",
      "alphabets": {"a": 2, "s": 2, "x": 2, "y1": 2, "y2": 2},
      "state_channel": [[0.9, 0.1], [0.1, 0.9]],
      "joint_output": [
        [[[0.5, 0.0, 0.5, 0.0], [0.5, 0.0, 0.5, 0.0]],
         [[0.5, 0.0, 0.5, 0.0], [0.5, 0.0, 0.5, 0.0]]],
        [[[0.0, 0.5, 0.0, 0.5], [0.0, 0.5, 0.0, 0.5]],
         [[0.0, 0.5, 0.0, 0.5], [0.0, 0.5, 0.0, 0.5]]]
      ],
      "cost": [[0.0, 1.0], [0.0, 1.0]]
    })";
    CHECK_THROWS_AS(parse_config_text(bad, "inline"), ConfigError);
}

TEST_CASE("cli: verify with point-to-point variables and threads") {
    const std::string out = temp_path("verify_ptp.csv");
    const int rc = run_cli({"--threads", "2", "verify", "--spec",
                            kConfigs + "ptp_dirty_bsc.json", "--vars",
                            kConfigs + "ptp_dirty_vars.json", "--n", "150000", "--seed", "4",
                            "--out", out});
    CHECK(rc == 0);
    const CsvTable parsed = parse_csv(slurp(out));
    REQUIRE(parsed.rows.size() == 3);  // cost, distortion, rate
    for (const auto& row : parsed.rows) CHECK(std::get<double>(row[3]) <= 2e-2);
    for (const auto& suffix : {"", ".manifest.json"}) std::remove((out + suffix).c_str());
}

TEST_CASE("cli: probing subcommand smoke run") {
    // trivial input alphabet keeps the enumerated function space tiny
    const std::string cfg = temp_path("probing_tiny.json");
    {
        std::ofstream f(cfg);
        f << R"({
          "kind": "probing",
          "alphabets": {"s": 2, "x": 1, "y1": 2, "y2": 2, "sd1": 2, "sd2": 2},
          "state_prior": [0.7, 0.3],
          "b_d1": [[0, 0], [0, 1]],
          "b_d2": [0, 1],
          "channel1": [
            [[[0.9, 0.1], [0.9, 0.1]], [[0.2, 0.8], [0.2, 0.8]]]
          ],
          "degrading_channel": [[0.85, 0.15], [0.15, 0.85]],
          "cost": [[0.0], [1.0]]
        })";
    }
    const std::string out = temp_path("probing.csv");
    const int rc = run_cli({"probing", "--spec", cfg, "--cost", "0.5", "--mu-grid", "5",
                            "--restarts", "2", "--u1", "2", "--u2", "2", "--seed", "2",
                            "--out", out});
    CHECK(rc == 0);
    const CsvTable parsed = parse_csv(slurp(out));
    CHECK(parsed.rows.size() == 5);
    std::remove(cfg.c_str());
    for (const auto& suffix : {"", ".manifest.json"}) std::remove((out + suffix).c_str());
}

TEST_CASE("parse_config: named multi-metric costs on a ptp spec") {
    const std::string text = R"({
      "kind": "ptp",
      "alphabets": {"a": 2, "s": 2, "x": 2, "y": 2, "shat": 2},
      "state_channel": [[0.8, 0.2], [0.3, 0.7]],
      "transmission_channel": [
        [[[0.95, 0.05], [0.85, 0.15]], [[0.05, 0.95], [0.15, 0.85]]],
        [[[0.05, 0.95], [0.15, 0.85]], [[0.95, 0.05], [0.85, 0.15]]]
      ],
      "costs": [
        {"name": "input", "table": [[0.0, 1.0], [0.0, 1.0]]},
        {"name": "action", "table": [[0.0, 0.0], [1.0, 1.0]]}
      ],
      "distortion": [[0.0, 1.0], [1.0, 0.0]]
    })";
    const ParsedConfig cfg = parse_config_text(text, "inline");
    REQUIRE(cfg.ptp.has_value());
    REQUIRE(cfg.ptp->costs.size() == 2);
    CHECK(cfg.ptp->costs[0].name == "input");
    CHECK(cfg.ptp->costs[1].name == "action");
    CHECK(cfg.ptp->costs[1].table.at2(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("parse_vars: malformed file is a config error") {
    const std::string path = temp_path("bad_vars.json");
    {
        std::ofstream f(path);
        f << R"({"kind": "ptp_vars", "u_size": 2, "pa": [0.5, 0.5],
                 "pu_given_sa": "oops", "px_given_us": [], "phi": [0, 0]})";
    }
    CHECK_THROWS_AS(parse_vars(path), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("cli: bc-region smoke run on the shipped binary spec") {
    const std::string out = temp_path("bcregion.csv");
    const int rc = run_cli({"--threads", "2", "bc-region", "--spec",
                            kConfigs + "binary_example.json", "--cost", "0.5", "--u1", "2",
                            "--u2", "2", "--mu-grid", "3", "--restarts", "1", "--seed", "1",
                            "--out", out});
    CHECK(rc == 0);
    const CsvTable parsed = parse_csv(slurp(out));
    CHECK(parsed.header ==
          std::vector<std::string>{"mu", "R1_bits", "R2_bits", "cost", "hull"});
    REQUIRE(parsed.rows.size() == 3);
    for (const auto& row : parsed.rows) CHECK(std::get<double>(row[3]) <= 0.5 + 1e-9);
    for (const auto& suffix : {"", ".manifest.json"}) std::remove((out + suffix).c_str());
}

TEST_CASE("cli: verify against a probing spec uses the reduced layout") {
    // f_x rows run over S_e = S + {*} (three symbols)
    const std::string vars = temp_path("probing_vars.json");
    {
        std::ofstream f(vars);
        f << R"({
          "kind": "bc_vars",
          "u1_size": 2, "u2_size": 2,
          "pu": [[0.25, 0.25], [0.25, 0.25]],
          "f_a": [[0, 1], [1, 0]],
          "f_x": [[[0, 1, 0], [1, 0, 1]], [[0, 0, 1], [1, 1, 0]]]
        })";
    }
    const std::string out = temp_path("probing_verify.csv");
    const int rc = run_cli({"verify", "--spec", kConfigs + "probing_example.json", "--vars",
                            vars, "--n", "120000", "--seed", "6", "--out", out});
    CHECK(rc == 0);
    const CsvTable parsed = parse_csv(slurp(out));
    REQUIRE(parsed.rows.size() == 3);
    for (const auto& row : parsed.rows) CHECK(std::get<double>(row[3]) <= 2e-2);
    std::remove(vars.c_str());
    for (const auto& suffix : {"", ".manifest.json"}) std::remove((out + suffix).c_str());
}
