#include "actch/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "actch/errors.hpp"
#include "actch/manifest.hpp"

namespace actch {

namespace {

using nlohmann::json;

constexpr double kRejectTol = 1e-6;  // rows further from 1 than this are rejected

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& origin) {
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty())
        throw ConfigError(origin + ": missing root key 'kind' (file is empty)");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(path + ": missing key '" + key + "'");
    return j.at(key);
}

int need_int(const json& j, const std::string& key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ConfigError(path + "." + key + ": expected a positive integer");
    return v.get<int>();
}

double need_real(const json& j, const std::string& key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return v.get<double>();
}

std::vector<double> real_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            throw ConfigError(path + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::vector<int> int_array(const json& v, const std::string& path, int bound) {
    if (!v.is_array()) throw ConfigError(path + ": expected an array");
    std::vector<int> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer())
            throw ConfigError(path + "[" + std::to_string(i) + "]: expected an integer");
        const int val = v[i].get<int>();
        if (val < 0 || val >= bound)
            throw ConfigError(path + "[" + std::to_string(i) + "]: value " +
                              std::to_string(val) + " outside [0, " + std::to_string(bound) + ")");
        out.push_back(val);
    }
    return out;
}

/// Validates and renormalizes a pmf row per the tolerance band.
void normalize_row(std::vector<double>& row, const std::string& path,
                   std::vector<std::string>& warnings) {
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (!(row[i] >= 0.0))
            throw ConfigError(path + "[" + std::to_string(i) + "]: negative probability");
        sum += row[i];
    }
    const double err = std::abs(sum - 1.0);
    if (err > kRejectTol)
        throw ConfigError(path + ": row sums to " + std::to_string(sum) +
                          ", outside tolerance 1e-6");
    if (err > kMassTol)
        warnings.push_back(path + ": row sum off by " + std::to_string(err) +
                           "; renormalized");
    for (auto& v : row) v /= sum;
}

/// Reads a nested-array kernel: dims over the conditioning tuple, innermost
/// arrays are pmfs over `out_size`.
CondPmf read_kernel(const json& v, const std::vector<int>& cond_sizes, int out_size,
                    const std::string& path, std::vector<std::string>& warnings) {
    std::vector<double> table;
    table.reserve(product(cond_sizes) * static_cast<std::size_t>(out_size));
    // Walk the nesting levels with an explicit index vector.
    std::vector<int> idx(cond_sizes.size(), 0);
    const std::size_t rows = product(cond_sizes);
    for (std::size_t r = 0; r < rows; ++r) {
        const json* node = &v;
        std::string where = path;
        for (std::size_t level = 0; level < cond_sizes.size(); ++level) {
            if (!node->is_array() ||
                node->size() != static_cast<std::size_t>(cond_sizes[level]))
                throw ConfigError(where + ": expected an array of length " +
                                  std::to_string(cond_sizes[level]));
            node = &(*node)[static_cast<std::size_t>(idx[level])];
            where += "[" + std::to_string(idx[level]) + "]";
        }
        std::vector<double> row = real_array(*node, where);
        if (row.size() != static_cast<std::size_t>(out_size))
            throw ConfigError(where + ": expected a pmf of length " + std::to_string(out_size));
        normalize_row(row, where, warnings);
        table.insert(table.end(), row.begin(), row.end());
        for (int level = static_cast<int>(cond_sizes.size()) - 1; level >= 0; --level) {
            if (++idx[static_cast<std::size_t>(level)] < cond_sizes[static_cast<std::size_t>(level)])
                break;
            idx[static_cast<std::size_t>(level)] = 0;
        }
    }
    return CondPmf(cond_sizes, out_size, std::move(table));
}

Table read_table(const json& v, const std::vector<int>& sizes, const std::string& path) {
    std::vector<double> values;
    values.reserve(product(sizes));
    std::vector<int> idx(sizes.size(), 0);
    const std::size_t cells = product(sizes);
    for (std::size_t c = 0; c < cells; ++c) {
        const json* node = &v;
        std::string where = path;
        for (std::size_t level = 0; level + 1 < sizes.size(); ++level) {
            if (!node->is_array() || node->size() != static_cast<std::size_t>(sizes[level]))
                throw ConfigError(where + ": expected an array of length " +
                                  std::to_string(sizes[level]));
            node = &(*node)[static_cast<std::size_t>(idx[level])];
            where += "[" + std::to_string(idx[level]) + "]";
        }
        const std::size_t last = sizes.size() - 1;
        if (!node->is_array() || node->size() != static_cast<std::size_t>(sizes[last]))
            throw ConfigError(where + ": expected an array of length " +
                              std::to_string(sizes[last]));
        const json& cell = (*node)[static_cast<std::size_t>(idx[last])];
        if (!cell.is_number())
            throw ConfigError(where + "[" + std::to_string(idx[last]) + "]: expected a number");
        values.push_back(cell.get<double>());
        for (int level = static_cast<int>(sizes.size()) - 1; level >= 0; --level) {
            if (++idx[static_cast<std::size_t>(level)] < sizes[static_cast<std::size_t>(level)])
                break;
            idx[static_cast<std::size_t>(level)] = 0;
        }
    }
    return Table(sizes, std::move(values));
}

Alphabet read_alphabet(const json& alph, const std::string& key, const json& labels_node,
                       const std::string& path) {
    const int size = need_int(alph, key, path + ".alphabets");
    if (labels_node.is_object() && labels_node.contains(key)) {
        const json& l = labels_node.at(key);
        if (!l.is_array()) throw ConfigError(path + ".labels." + key + ": expected an array");
        std::vector<std::string> labels;
        for (const auto& e : l) {
            if (!e.is_string())
                throw ConfigError(path + ".labels." + key + ": expected strings");
            labels.push_back(e.get<std::string>());
        }
        return Alphabet(size, std::move(labels));
    }
    return Alphabet(size);
}

PtpActionSpec read_ptp(const json& j, std::vector<std::string>& warnings) {
    const json& alph = need(j, "alphabets", "config");
    const json labels = j.value("labels", json::object());
    const Alphabet a = read_alphabet(alph, "a", labels, "config");
    const Alphabet s = read_alphabet(alph, "s", labels, "config");
    const Alphabet x = read_alphabet(alph, "x", labels, "config");
    const Alphabet y = read_alphabet(alph, "y", labels, "config");
    const Alphabet shat = read_alphabet(alph, "shat", labels, "config");
    CondPmf state = read_kernel(need(j, "state_channel", "config"), {a.size()}, s.size(),
                                "state_channel", warnings);
    CondPmf trans = read_kernel(need(j, "transmission_channel", "config"),
                                {x.size(), s.size(), a.size()}, y.size(),
                                "transmission_channel", warnings);
    std::vector<CostMetric> costs;
    if (j.contains("costs")) {
        const json& arr = j.at("costs");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("costs: expected a non-empty array of cost tables");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const json& entry = arr[k];
            const std::string name =
                entry.is_object() ? entry.value("name", "cost" + std::to_string(k))
                                  : "cost" + std::to_string(k);
            const json& tbl = entry.is_object() ? need(entry, "table", "costs[" + std::to_string(k) + "]")
                                                : entry;
            costs.push_back({name, read_table(tbl, {a.size(), x.size()},
                                              "costs[" + std::to_string(k) + "]")});
        }
    } else {
        costs.push_back({"cost", read_table(need(j, "cost", "config"), {a.size(), x.size()},
                                            "cost")});
    }
    Table dist = read_table(need(j, "distortion", "config"), {s.size(), shat.size()},
                            "distortion");
    return PtpActionSpec(a, s, x, y, shat, std::move(state), std::move(trans),
                         std::move(costs), std::move(dist));
}

BcActionSpec read_bc(const json& j, std::vector<std::string>& warnings) {
    const json& alph = need(j, "alphabets", "config");
    const json labels = j.value("labels", json::object());
    const Alphabet a = read_alphabet(alph, "a", labels, "config");
    const Alphabet s = read_alphabet(alph, "s", labels, "config");
    const Alphabet x = read_alphabet(alph, "x", labels, "config");
    const Alphabet y1 = read_alphabet(alph, "y1", labels, "config");
    const Alphabet y2 = read_alphabet(alph, "y2", labels, "config");
    CondPmf state = read_kernel(need(j, "state_channel", "config"), {a.size()}, s.size(),
                                "state_channel", warnings);
    Table cost = read_table(need(j, "cost", "config"), {a.size(), x.size()}, "cost");
    if (j.contains("joint_output")) {
        // General two-output kernel: the degradedness factorization must hold.
        CondPmf joint = read_kernel(j.at("joint_output"), {x.size(), s.size(), a.size()},
                                    y1.size() * y2.size(), "joint_output", warnings);
        BcRawSpec raw{a, s, x, y1, y2, std::move(state), std::move(joint), std::move(cost)};
        auto factored = check_degraded(raw);
        if (!factored)
            throw ConfigError(
                "joint_output: kernel is not physically degraded (no p(y2|y1) factorization)");
        return std::move(*factored);
    }
    CondPmf ch1 = read_kernel(need(j, "channel1", "config"), {x.size(), s.size(), a.size()},
                              y1.size(), "channel1", warnings);
    CondPmf deg = read_kernel(need(j, "degrading_channel", "config"), {y1.size()}, y2.size(),
                              "degrading_channel", warnings);
    return BcActionSpec(a, s, x, y1, y2, std::move(state), std::move(ch1), std::move(deg),
                        std::move(cost));
}

ProbingSpec read_probing(const json& j, std::vector<std::string>& warnings) {
    const json& alph = need(j, "alphabets", "config");
    const json labels = j.value("labels", json::object());
    const Alphabet s = read_alphabet(alph, "s", labels, "config");
    const Alphabet x = read_alphabet(alph, "x", labels, "config");
    const Alphabet y1 = read_alphabet(alph, "y1", labels, "config");
    const Alphabet y2 = read_alphabet(alph, "y2", labels, "config");
    const Alphabet sd1 = read_alphabet(alph, "sd1", labels, "config");
    const Alphabet sd2 = read_alphabet(alph, "sd2", labels, "config");
    std::vector<double> prior = real_array(need(j, "state_prior", "config"), "state_prior");
    normalize_row(prior, "state_prior", warnings);
    // b_d1 rows over s, one array of a-indexed values each.
    const json& bd1_json = need(j, "b_d1", "config");
    if (!bd1_json.is_array() || bd1_json.size() != static_cast<std::size_t>(s.size()))
        throw ConfigError("b_d1: expected one row per state symbol");
    std::vector<int> b_d1;
    for (std::size_t r = 0; r < bd1_json.size(); ++r) {
        const auto row = int_array(bd1_json[r], "b_d1[" + std::to_string(r) + "]", sd1.size());
        if (row.size() != 2)
            throw ConfigError("b_d1[" + std::to_string(r) + "]: expected [a=0, a=1] pair");
        b_d1.insert(b_d1.end(), row.begin(), row.end());
    }
    std::vector<int> b_d2 = int_array(need(j, "b_d2", "config"), "b_d2", sd2.size());
    if (b_d2.size() != static_cast<std::size_t>(sd1.size()))
        throw ConfigError("b_d2: expected one value per S_d1 symbol");
    CondPmf ch1 = read_kernel(need(j, "channel1", "config"), {x.size(), s.size(), 2},
                              y1.size(), "channel1", warnings);
    CondPmf deg = read_kernel(need(j, "degrading_channel", "config"), {y1.size()}, y2.size(),
                              "degrading_channel", warnings);
    Table cost = read_table(need(j, "cost", "config"), {2, x.size()}, "cost");
    ProbingSpec spec{Alphabet(2), s, x, y1, y2, sd1, sd2, Pmf(std::move(prior)),
                     std::move(b_d1), std::move(b_d2), std::move(ch1), std::move(deg),
                     std::move(cost)};
    spec.validate();
    return spec;
}

GaussPowers read_gauss(const json& j) {
    GaussPowers pw;
    pw.p_a = need_real(j, "pa", "config");
    pw.p_x = need_real(j, "px", "config");
    pw.var_w = need_real(j, "var_w", "config");
    pw.var_z = need_real(j, "var_z", "config");
    pw.validate();
    return pw;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
    const json j = parse_json(text, origin);
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError(origin + ": missing root key 'kind'");
    const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    ParsedConfig out;
    out.digest = digest_hex(j.dump());  // nlohmann objects are key-sorted
    if (kind == "ptp") {
        out.kind = SpecKind::Ptp;
        out.ptp = read_ptp(j, out.warnings);
    } else if (kind == "bc") {
        out.kind = SpecKind::Bc;
        out.bc = read_bc(j, out.warnings);
    } else if (kind == "probing") {
        out.kind = SpecKind::Probing;
        out.probing = read_probing(j, out.warnings);
    } else if (kind == "gauss") {
        out.kind = SpecKind::Gauss;
        out.gauss = read_gauss(j);
    } else {
        throw ConfigError(origin + ".kind: expected one of ptp|bc|probing|gauss, got '" +
                          kind + "'");
    }
    return out;
}

ParsedConfig parse_config(const std::string& path) {
    return parse_config_text(read_file(path), path);
}

namespace {
ParsedVars parse_vars_impl(const std::string& path);
}  // namespace

ParsedVars parse_vars(const std::string& path) {
    try {
        return parse_vars_impl(path);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": malformed variables file (" + e.what() + ")");
    }
}

namespace {
ParsedVars parse_vars_impl(const std::string& path) {
    const std::string text = read_file(path);
    const json j = parse_json(text, path);
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError(path + ": missing root key 'kind'");
    if (!j.at("kind").is_string()) throw ConfigError(path + ".kind: expected a string");
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<std::string> warnings;
    ParsedVars out;
    if (kind == "ptp_vars") {
        out.kind = VarsKind::Ptp;
        const int u_size = need_int(j, "u_size", "vars");
        std::vector<double> pa = real_array(need(j, "pa", "vars"), "pa");
        normalize_row(pa, "pa", warnings);
        const int na = static_cast<int>(pa.size());
        const json& pu_json = need(j, "pu_given_sa", "vars");
        if (!pu_json.is_array() || pu_json.empty())
            throw ConfigError("pu_given_sa: expected nested arrays over (s, a)");
        const int ns = static_cast<int>(pu_json.size());
        CondPmf pu = read_kernel(pu_json, {ns, na}, u_size, "pu_given_sa", warnings);
        const json& px_json = need(j, "px_given_us", "vars");
        CondPmf px_probe = read_kernel(px_json, {u_size, ns},
                                       static_cast<int>(px_json[0][0].size()), "px_given_us",
                                       warnings);
        std::vector<int> phi = int_array(need(j, "phi", "vars"), "phi",
                                         j.value("shat_size", 1 << 20));
        if (static_cast<int>(phi.size()) != u_size)
            throw ConfigError("phi: expected one entry per U symbol");
        out.ptp = CdcDecisionVars{Pmf(std::move(pa)), std::move(pu), std::move(px_probe),
                                  std::move(phi), u_size};
    } else if (kind == "bc_vars") {
        out.kind = VarsKind::Bc;
        const int u1 = need_int(j, "u1_size", "vars");
        const int u2 = need_int(j, "u2_size", "vars");
        const json& pu_json = need(j, "pu", "vars");
        if (!pu_json.is_array() || pu_json.size() != static_cast<std::size_t>(u1))
            throw ConfigError("pu: expected one row per U1 symbol");
        std::vector<double> pu_flat;
        for (std::size_t r = 0; r < pu_json.size(); ++r) {
            const auto row = real_array(pu_json[r], "pu[" + std::to_string(r) + "]");
            if (row.size() != static_cast<std::size_t>(u2))
                throw ConfigError("pu[" + std::to_string(r) + "]: expected " +
                                  std::to_string(u2) + " entries");
            pu_flat.insert(pu_flat.end(), row.begin(), row.end());
        }
        normalize_row(pu_flat, "pu", warnings);
        const json& fa_json = need(j, "f_a", "vars");
        if (!fa_json.is_array() || fa_json.size() != static_cast<std::size_t>(u1))
            throw ConfigError("f_a: expected one row per U1 symbol");
        std::vector<int> fa;
        for (std::size_t r = 0; r < fa_json.size(); ++r) {
            const auto row = int_array(fa_json[r], "f_a[" + std::to_string(r) + "]", 1 << 20);
            fa.insert(fa.end(), row.begin(), row.end());
        }
        const json& fx_json = need(j, "f_x", "vars");
        std::vector<int> fx;
        for (std::size_t r1 = 0; r1 < fx_json.size(); ++r1)
            for (std::size_t r2 = 0; r2 < fx_json[r1].size(); ++r2) {
                const auto row = int_array(fx_json[r1][r2],
                                           "f_x[" + std::to_string(r1) + "][" +
                                               std::to_string(r2) + "]",
                                           1 << 20);
                fx.insert(fx.end(), row.begin(), row.end());
            }
        out.bc = BcDecisionVars{JointPmf({u1, u2}, std::move(pu_flat)), std::move(fa),
                                std::move(fx), u1, u2};
    } else {
        throw ConfigError(path + ".kind: expected ptp_vars|bc_vars, got '" + kind + "'");
    }
    return out;
}
}  // namespace

}  // namespace actch
