#include "actch/probing.hpp"

#include <stdexcept>

namespace actch {

void ProbingSpec::validate() const {
    if (a.size() != 2) throw std::invalid_argument("probing: action alphabet must be binary");
    if (state_prior.size() != s.size())
        throw std::invalid_argument("probing: state prior size mismatch");
    if (b_d1.size() != static_cast<std::size_t>(s.size() * 2))
        throw std::invalid_argument("probing: b_d1 table must cover (s, a)");
    for (int v : b_d1)
        if (v < 0 || v >= sd1.size())
            throw std::invalid_argument("probing: b_d1 value outside S_d1");
    if (b_d2.size() != static_cast<std::size_t>(sd1.size()))
        throw std::invalid_argument("probing: b_d2 table must cover S_d1");
    for (int v : b_d2)
        if (v < 0 || v >= sd2.size())
            throw std::invalid_argument("probing: b_d2 value outside S_d2");
    const auto& c1 = channel1.cond_sizes();
    if (c1.size() != 3 || c1[0] != x.size() || c1[1] != s.size() || c1[2] != 2)
        throw std::invalid_argument("probing: channel1 conditioning mismatch");
    if (channel1.out_size() != y1.size())
        throw std::invalid_argument("probing: channel1 output mismatch");
    if (degrading_channel.cond_sizes() != std::vector<int>{y1.size()} ||
        degrading_channel.out_size() != y2.size())
        throw std::invalid_argument("probing: degrading channel mismatch");
    if (cost.sizes() != std::vector<int>{2, x.size()})
        throw std::invalid_argument("probing: cost table must cover (a, x)");
}

ReducedSpec reduce_probing(const ProbingSpec& spec) {
    spec.validate();
    const int ns = spec.s.size();
    const int nx = spec.x.size();
    const int ny1 = spec.y1.size();
    const int ny2 = spec.y2.size();
    const int nd1 = spec.sd1.size();
    const int nd2 = spec.sd2.size();
    const int nse = ns + 1;  // * appended as the last index
    const int star = ns;
    const int nc1 = ny1 * nd1;
    const int nc2 = ny2 * nd2;

    // State kernel p(s_e | a).
    std::vector<double> state(static_cast<std::size_t>(2 * nse), 0.0);
    state[static_cast<std::size_t>(star)] = 1.0;  // a = 0: no state information
    for (int s = 0; s < ns; ++s)
        state[static_cast<std::size_t>(nse + s)] = spec.state_prior[s];  // a = 1

    // The a = 0 rows marginalize the true state out; precompute per x.
    auto averaged_row = [&](int x, int a) {
        std::vector<double> row(static_cast<std::size_t>(nc1), 0.0);
        for (int s = 0; s < ns; ++s) {
            const double w = spec.state_prior[s];
            if (w == 0.0) continue;
            const int sd1 = spec.b_d1[static_cast<std::size_t>(s * 2 + a)];
            const auto py1 = spec.channel1.row(static_cast<std::size_t>((x * ns + s) * 2 + a));
            for (int y = 0; y < ny1; ++y)
                row[static_cast<std::size_t>(y * nd1 + sd1)] += w * py1[static_cast<std::size_t>(y)];
        }
        return row;
    };

    // Composite first channel p(y1, s_d1 | x, s_e, a), rows (x, s_e, a).
    std::vector<double> ch1;
    ch1.reserve(static_cast<std::size_t>(nx * nse * 2 * nc1));
    for (int x = 0; x < nx; ++x) {
        const auto row_a0 = averaged_row(x, 0);
        const auto row_a1_star = averaged_row(x, 1);  // unreachable (a=1, s_e=*)
        for (int se = 0; se < nse; ++se)
            for (int a = 0; a < 2; ++a) {
                if (a == 0) {
                    ch1.insert(ch1.end(), row_a0.begin(), row_a0.end());
                } else if (se == star) {
                    ch1.insert(ch1.end(), row_a1_star.begin(), row_a1_star.end());
                } else {
                    std::vector<double> row(static_cast<std::size_t>(nc1), 0.0);
                    const int sd1 = spec.b_d1[static_cast<std::size_t>(se * 2 + 1)];
                    const auto py1 =
                        spec.channel1.row(static_cast<std::size_t>((x * ns + se) * 2 + 1));
                    for (int y = 0; y < ny1; ++y)
                        row[static_cast<std::size_t>(y * nd1 + sd1)] = py1[static_cast<std::size_t>(y)];
                    ch1.insert(ch1.end(), row.begin(), row.end());
                }
            }
    }

    // Composite degrading channel p(y2, s_d2 | y1, s_d1).
    std::vector<double> deg(static_cast<std::size_t>(nc1 * nc2), 0.0);
    for (int y1 = 0; y1 < ny1; ++y1)
        for (int sd1 = 0; sd1 < nd1; ++sd1) {
            const int row = y1 * nd1 + sd1;
            const int sd2 = spec.b_d2[static_cast<std::size_t>(sd1)];
            const auto py2 = spec.degrading_channel.row(static_cast<std::size_t>(y1));
            for (int y2 = 0; y2 < ny2; ++y2)
                deg[static_cast<std::size_t>(row * nc2 + y2 * nd2 + sd2)] =
                    py2[static_cast<std::size_t>(y2)];
        }

    ReducedSpec red{
        BcActionSpec(spec.a, Alphabet(nse), spec.x, Alphabet(nc1), Alphabet(nc2),
                     CondPmf({2}, nse, std::move(state)),
                     CondPmf({nx, nse, 2}, nc1, std::move(ch1)),
                     CondPmf({nc1}, nc2, std::move(deg)), spec.cost),
        star, ny1, nd1, ny2, nd2};
    return red;
}

RegionBoundary probing_region(const ProbingSpec& spec, double gamma,
                              const BcRegionOptions& opts) {
    const ReducedSpec red = reduce_probing(spec);
    return solve_bc_region(red.bc, gamma, opts);
}

}  // namespace actch
