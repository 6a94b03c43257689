#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "actch/channel_model.hpp"
#include "actch/pmf.hpp"

namespace actch {

// Monte Carlo verification of single-letter quantities: i.i.d. sampling from
// an assembled joint, sample-mean cost/distortion, and plug-in mutual
// informations from empirical counts.
//
// Sampling is counter-based (splitmix64): draw i depends only on (seed, i),
// so a fixed seed gives a bit-identical batch on every platform and for any
// shard split. Inverse-CDF inversion over the flattened joint; after the CDF
// table is built the draw path is integer compares only.

struct SampleBatch {
    std::vector<int> dims;
    std::vector<std::uint32_t> draws;  // flat cell indices
    std::uint64_t seed = 0;

    std::size_t size() const { return draws.size(); }
    void tuple(std::size_t i, std::span<int> out) const {
        unflatten(dims, draws[i], out);
    }
};

SampleBatch sample_joint(const JointPmf& j, std::size_t n, std::uint64_t seed);

/// Identical output to sample_joint for every shard count; shards only split
/// the index range across threads.
SampleBatch sample_joint_sharded(const JointPmf& j, std::size_t n, std::uint64_t seed,
                                 int shards);

/// Empirical distribution of the batch (counts / n).
JointPmf empirical_joint(const SampleBatch& batch);

/// Sample mean of table(idx[axes...]).
double empirical_mean(const SampleBatch& batch, std::span<const int> axes, const Table& table);

double empirical_distortion(const SampleBatch& batch, int axis_s, int axis_u,
                            std::span<const int> phi, const Table& distortion);

/// Plug-in mutual information from empirical counts over the listed axes.
double empirical_mi(const SampleBatch& batch, std::span<const int> axes_a,
                    std::span<const int> axes_b);

double empirical_cmi(const SampleBatch& batch, std::span<const int> axes_a,
                     std::span<const int> axes_b, std::span<const int> axes_c);

struct EmpiricalEstimates {
    std::vector<double> cost_hats;  // one per spec cost metric
    double dist_hat = 0.0;
    double rate_hat = 0.0;  // plug-in I(U;Y) - I(U;S|A)
};

/// Estimates against a batch drawn from the point-to-point joint
/// p(a,s,u,x,y) in the CdcAxes layout.
EmpiricalEstimates empirical_estimates(const SampleBatch& batch, const PtpActionSpec& spec,
                                       std::span<const int> phi);

}  // namespace actch
