#include "actch/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace actch {

Table::Table(std::vector<int> sizes, std::vector<double> values)
    : sizes_(std::move(sizes)), values_(std::move(values)) {
    for (int s : sizes_)
        if (s < 1) throw std::invalid_argument("Table: axis size must be >= 1");
    if (values_.size() != product(sizes_)) throw std::invalid_argument("Table: size mismatch");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("Table: non-finite entry");
}

double Table::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Table::max() const { return *std::max_element(values_.begin(), values_.end()); }

namespace {

void check_kernel_shape(const CondPmf& k, std::span<const int> cond, int out, const char* what) {
    if (k.out_size() != out) throw std::invalid_argument(std::string(what) + ": output size mismatch");
    if (k.cond_sizes().size() != cond.size())
        throw std::invalid_argument(std::string(what) + ": conditioning arity mismatch");
    for (std::size_t i = 0; i < cond.size(); ++i)
        if (k.cond_sizes()[i] != cond[i])
            throw std::invalid_argument(std::string(what) + ": conditioning size mismatch");
}

void check_table_shape(const Table& t, std::span<const int> sizes, const char* what) {
    if (t.sizes().size() != sizes.size())
        throw std::invalid_argument(std::string(what) + ": rank mismatch");
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (t.sizes()[i] != sizes[i])
            throw std::invalid_argument(std::string(what) + ": size mismatch");
}

}  // namespace

PtpActionSpec::PtpActionSpec(Alphabet a_, Alphabet s_, Alphabet x_, Alphabet y_, Alphabet shat_,
                             CondPmf state, CondPmf transmission, std::vector<CostMetric> costs_,
                             Table distortion_)
    : a(a_), s(s_), x(x_), y(y_), shat(shat_),
      state_channel(std::move(state)), transmission_channel(std::move(transmission)),
      costs(std::move(costs_)), distortion(std::move(distortion_)) {
    const int ca[] = {a.size()};
    check_kernel_shape(state_channel, ca, s.size(), "PtpActionSpec state_channel");
    const int ct[] = {x.size(), s.size(), a.size()};
    check_kernel_shape(transmission_channel, ct, y.size(), "PtpActionSpec transmission_channel");
    if (costs.empty()) throw std::invalid_argument("PtpActionSpec: at least one cost metric");
    const int cc[] = {a.size(), x.size()};
    for (const auto& c : costs) {
        check_table_shape(c.table, cc, "PtpActionSpec cost");
        if (c.table.min() < 0.0) throw std::invalid_argument("PtpActionSpec: negative cost");
    }
    const int cd[] = {s.size(), shat.size()};
    check_table_shape(distortion, cd, "PtpActionSpec distortion");
    if (distortion.min() < 0.0) throw std::invalid_argument("PtpActionSpec: negative distortion");
    if (!(distortion.max() > 0.0))
        throw std::invalid_argument("PtpActionSpec: distortion must have positive maximum");
}

BcActionSpec::BcActionSpec(Alphabet a_, Alphabet s_, Alphabet x_, Alphabet y1_, Alphabet y2_,
                           CondPmf state, CondPmf ch1, CondPmf degrading, Table cost_)
    : a(a_), s(s_), x(x_), y1(y1_), y2(y2_),
      state_channel(std::move(state)), channel1(std::move(ch1)),
      degrading_channel(std::move(degrading)), cost(std::move(cost_)) {
    const int ca[] = {a.size()};
    check_kernel_shape(state_channel, ca, s.size(), "BcActionSpec state_channel");
    const int c1[] = {x.size(), s.size(), a.size()};
    check_kernel_shape(channel1, c1, y1.size(), "BcActionSpec channel1");
    const int cd[] = {y1.size()};
    check_kernel_shape(degrading_channel, cd, y2.size(), "BcActionSpec degrading_channel");
    const int cc[] = {a.size(), x.size()};
    check_table_shape(cost, cc, "BcActionSpec cost");
    if (cost.min() < 0.0) throw std::invalid_argument("BcActionSpec: negative cost");
}

double expected_cost(const JointPmf& j, int axis_a, int axis_x, const Table& cost) {
    const int axes[] = {axis_a, axis_x};
    return j.expectation(axes, cost.values(), cost.sizes());
}

double expected_distortion(const JointPmf& j, int axis_s, int axis_u,
                           std::span<const int> phi, const Table& distortion) {
    const int n_s = distortion.sizes()[0];
    const int n_u = j.dim(axis_u);
    if (static_cast<int>(phi.size()) != n_u)
        throw std::invalid_argument("expected_distortion: phi not total on U");
    // Fold phi into a (s, u) table so the expectation runs over joint axes.
    std::vector<double> d_su(static_cast<std::size_t>(n_s) * static_cast<std::size_t>(n_u));
    for (int s = 0; s < n_s; ++s)
        for (int u = 0; u < n_u; ++u)
            d_su[static_cast<std::size_t>(s * n_u + u)] = distortion.at2(s, phi[static_cast<std::size_t>(u)]);
    const int axes[] = {axis_s, axis_u};
    const int sizes[] = {n_s, n_u};
    return j.expectation(axes, d_su, sizes);
}

std::optional<BcActionSpec> check_degraded(const BcRawSpec& raw, double tol) {
    const int n1 = raw.y1.size();
    const int n2 = raw.y2.size();
    const int rows = raw.joint_output.rows();
    if (raw.joint_output.out_size() != n1 * n2)
        throw std::invalid_argument("check_degraded: joint output size mismatch");

    // Least-squares fit of q(y2|y1) over all conditioning rows:
    //   q(y2|y1) = sum_r m_r(y1) J_r(y1,y2) / sum_r m_r(y1)^2,
    // with m_r(y1) the Y1 marginal of row r. Rows sum to m_r, so each fitted
    // q row sums to 1 automatically wherever the denominator is positive.
    std::vector<double> num(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2), 0.0);
    std::vector<double> den(static_cast<std::size_t>(n1), 0.0);
    std::vector<double> marg(static_cast<std::size_t>(n1));
    for (int r = 0; r < rows; ++r) {
        const auto row = raw.joint_output.row(static_cast<std::size_t>(r));
        for (int i = 0; i < n1; ++i) {
            double m = 0.0;
            for (int k = 0; k < n2; ++k) m += row[static_cast<std::size_t>(i * n2 + k)];
            marg[static_cast<std::size_t>(i)] = m;
            den[static_cast<std::size_t>(i)] += m * m;
            for (int k = 0; k < n2; ++k)
                num[static_cast<std::size_t>(i * n2 + k)] += m * row[static_cast<std::size_t>(i * n2 + k)];
        }
    }
    std::vector<double> q(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));
    for (int i = 0; i < n1; ++i) {
        if (den[static_cast<std::size_t>(i)] > 0.0) {
            for (int k = 0; k < n2; ++k)
                q[static_cast<std::size_t>(i * n2 + k)] =
                    num[static_cast<std::size_t>(i * n2 + k)] / den[static_cast<std::size_t>(i)];
        } else {
            for (int k = 0; k < n2; ++k) q[static_cast<std::size_t>(i * n2 + k)] = 1.0 / n2;
        }
    }

    // Residual check across every conditioning row.
    std::vector<double> ch1_table;
    ch1_table.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(n1));
    for (int r = 0; r < rows; ++r) {
        const auto row = raw.joint_output.row(static_cast<std::size_t>(r));
        for (int i = 0; i < n1; ++i) {
            double m = 0.0;
            for (int k = 0; k < n2; ++k) m += row[static_cast<std::size_t>(i * n2 + k)];
            ch1_table.push_back(m);
            for (int k = 0; k < n2; ++k) {
                const double resid = row[static_cast<std::size_t>(i * n2 + k)] -
                                     m * q[static_cast<std::size_t>(i * n2 + k)];
                if (std::abs(resid) > tol) return std::nullopt;
            }
        }
    }

    CondPmf channel1({raw.x.size(), raw.s.size(), raw.a.size()}, n1, std::move(ch1_table));
    CondPmf degrading({n1}, n2, std::move(q));
    return BcActionSpec(raw.a, raw.s, raw.x, raw.y1, raw.y2, raw.state_channel,
                        std::move(channel1), std::move(degrading), raw.cost);
}

BcRawSpec compose_joint_output(const BcActionSpec& spec) {
    const int n1 = spec.y1.size();
    const int n2 = spec.y2.size();
    const int rows = spec.channel1.rows();
    std::vector<double> joint;
    joint.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(n1 * n2));
    for (int r = 0; r < rows; ++r) {
        const auto row1 = spec.channel1.row(static_cast<std::size_t>(r));
        for (int i = 0; i < n1; ++i) {
            const auto row2 = spec.degrading_channel.row(static_cast<std::size_t>(i));
            for (int k = 0; k < n2; ++k)
                joint.push_back(row1[static_cast<std::size_t>(i)] * row2[static_cast<std::size_t>(k)]);
        }
    }
    CondPmf joint_output({spec.x.size(), spec.s.size(), spec.a.size()}, n1 * n2,
                         std::move(joint));
    return BcRawSpec{spec.a, spec.s, spec.x, spec.y1, spec.y2, spec.state_channel,
                     std::move(joint_output), spec.cost};
}

}  // namespace actch
