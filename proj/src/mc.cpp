#include "actch/mc.hpp"

#include <algorithm>
#include <stdexcept>

#include "actch/cdc_solver.hpp"
#include "actch/info.hpp"
#include "actch/parallel.hpp"
#include "actch/rng.hpp"

namespace actch {

namespace {

std::vector<double> build_cdf(const JointPmf& j) {
    std::vector<double> cdf(j.cells());
    double acc = 0.0;
    for (std::size_t i = 0; i < j.cells(); ++i) {
        acc += j.flat(i);
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

}  // namespace

SampleBatch sample_joint(const JointPmf& j, std::size_t n, std::uint64_t seed) {
    return sample_joint_sharded(j, n, seed, 1);
}

SampleBatch sample_joint_sharded(const JointPmf& j, std::size_t n, std::uint64_t seed,
                                 int shards) {
    if (n == 0) throw std::invalid_argument("sample_joint: n must be >= 1");
    const std::vector<double> cdf = build_cdf(j);
    SampleBatch batch;
    batch.dims = j.dims();
    batch.seed = seed;
    batch.draws.resize(n);
    const int workers = std::max(1, shards);
    const std::size_t chunk = (n + static_cast<std::size_t>(workers) - 1) /
                              static_cast<std::size_t>(workers);
    parallel_for(workers, workers, [&](int w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            const double u = counter_unit(seed, i);
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            batch.draws[i] = static_cast<std::uint32_t>(it - cdf.begin());
        }
    });
    return batch;
}

JointPmf empirical_joint(const SampleBatch& batch) {
    std::vector<double> p(product(batch.dims), 0.0);
    const double w = 1.0 / static_cast<double>(batch.size());
    for (const std::uint32_t d : batch.draws) p[d] += w;
    return JointPmf(batch.dims, std::move(p));
}

namespace {

/// Empirical distribution projected onto the listed axes (in that order).
JointPmf projected_counts(const SampleBatch& batch, std::span<const int> axes) {
    std::vector<int> out_dims(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i)
        out_dims[i] = batch.dims[static_cast<std::size_t>(axes[i])];
    std::vector<double> p(product(out_dims), 0.0);
    std::vector<int> idx(batch.dims.size());
    std::vector<int> sub(axes.size());
    const double w = 1.0 / static_cast<double>(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        batch.tuple(i, idx);
        for (std::size_t k = 0; k < axes.size(); ++k)
            sub[k] = idx[static_cast<std::size_t>(axes[k])];
        p[flat_index(out_dims, sub)] += w;
    }
    return JointPmf(std::move(out_dims), std::move(p));
}

}  // namespace

double empirical_mean(const SampleBatch& batch, std::span<const int> axes, const Table& table) {
    const JointPmf counts = projected_counts(batch, axes);
    std::vector<int> all(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) all[i] = static_cast<int>(i);
    return counts.expectation(all, table.values(), table.sizes());
}

double empirical_distortion(const SampleBatch& batch, int axis_s, int axis_u,
                            std::span<const int> phi, const Table& distortion) {
    const int n_s = distortion.sizes()[0];
    const int n_u = batch.dims[static_cast<std::size_t>(axis_u)];
    if (static_cast<int>(phi.size()) != n_u)
        throw std::invalid_argument("empirical_distortion: phi not total on U");
    std::vector<double> d_su(static_cast<std::size_t>(n_s) * static_cast<std::size_t>(n_u));
    for (int s = 0; s < n_s; ++s)
        for (int u = 0; u < n_u; ++u)
            d_su[static_cast<std::size_t>(s * n_u + u)] =
                distortion.at2(s, phi[static_cast<std::size_t>(u)]);
    const int axes[] = {axis_s, axis_u};
    return empirical_mean(batch, axes, Table({n_s, n_u}, std::move(d_su)));
}

double empirical_mi(const SampleBatch& batch, std::span<const int> axes_a,
                    std::span<const int> axes_b) {
    std::vector<int> all(axes_a.begin(), axes_a.end());
    all.insert(all.end(), axes_b.begin(), axes_b.end());
    const JointPmf counts = projected_counts(batch, all);
    std::vector<int> ia(axes_a.size()), ib(axes_b.size());
    for (std::size_t i = 0; i < axes_a.size(); ++i) ia[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < axes_b.size(); ++i) ib[i] = static_cast<int>(axes_a.size() + i);
    return mutual_information(counts, ia, ib);
}

double empirical_cmi(const SampleBatch& batch, std::span<const int> axes_a,
                     std::span<const int> axes_b, std::span<const int> axes_c) {
    std::vector<int> all(axes_a.begin(), axes_a.end());
    all.insert(all.end(), axes_b.begin(), axes_b.end());
    all.insert(all.end(), axes_c.begin(), axes_c.end());
    const JointPmf counts = projected_counts(batch, all);
    std::vector<int> ia(axes_a.size()), ib(axes_b.size()), ic(axes_c.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < axes_a.size(); ++i) ia[i] = static_cast<int>(off++);
    for (std::size_t i = 0; i < axes_b.size(); ++i) ib[i] = static_cast<int>(off++);
    for (std::size_t i = 0; i < axes_c.size(); ++i) ic[i] = static_cast<int>(off++);
    return conditional_mutual_information(counts, ia, ib, ic);
}

EmpiricalEstimates empirical_estimates(const SampleBatch& batch, const PtpActionSpec& spec,
                                       std::span<const int> phi) {
    if (batch.dims.size() != 5)
        throw std::invalid_argument("empirical_estimates: batch is not a point-to-point joint");
    EmpiricalEstimates out;
    const int ax_cost[] = {CdcAxes::a, CdcAxes::x};
    out.cost_hats.reserve(spec.costs.size());
    for (const auto& c : spec.costs)
        out.cost_hats.push_back(empirical_mean(batch, ax_cost, c.table));
    out.dist_hat = empirical_distortion(batch, CdcAxes::s, CdcAxes::u, phi, spec.distortion);
    const int ax_u[] = {CdcAxes::u};
    const int ax_y[] = {CdcAxes::y};
    const int ax_s[] = {CdcAxes::s};
    const int ax_a[] = {CdcAxes::a};
    out.rate_hat = empirical_mi(batch, ax_u, ax_y) - empirical_cmi(batch, ax_u, ax_s, ax_a);
    return out;
}

}  // namespace actch
