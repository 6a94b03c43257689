#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "actch/alphabet.hpp"
#include "actch/pmf.hpp"

namespace actch {

/// Dense real-valued table over a tuple of alphabets (cost metrics,
/// distortion metrics).
class Table {
public:
    Table() = default;
    Table(std::vector<int> sizes, std::vector<double> values);

    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<double>& values() const { return values_; }
    double at(std::span<const int> idx) const { return values_[flat_index(sizes_, idx)]; }
    double at2(int i, int j) const {
        const int idx[2] = {i, j};
        return at(idx);
    }
    double min() const;
    double max() const;

private:
    std::vector<int> sizes_;
    std::vector<double> values_;
};

/// Named cost metric gamma(a, x) >= 0.
struct CostMetric {
    std::string name;
    Table table;  // over (a, x)
};

/// Point-to-point action channel: the encoder picks an action A, the state S
/// comes out of p(s|a), the input X is sent through p(y|x,s,a), and the
/// decoder reconstructs S over the alphabet Shat against a distortion metric.
struct PtpActionSpec {
    Alphabet a, s, x, y, shat;
    CondPmf state_channel;         // p(s|a), conditioning (a)
    CondPmf transmission_channel;  // p(y|x,s,a), conditioning (x, s, a)
    std::vector<CostMetric> costs; // each over (a, x); usually one
    Table distortion;              // d(s, shat) in [0, d_max]

    PtpActionSpec(Alphabet a_, Alphabet s_, Alphabet x_, Alphabet y_, Alphabet shat_,
                  CondPmf state, CondPmf transmission, std::vector<CostMetric> costs_,
                  Table distortion_);

    double d_max() const { return distortion.max(); }
};

/// Physically degraded broadcast action channel: Y2 is a stochastic function
/// of Y1 through the degrading channel, so p(y1,y2|x,s,a) factors as
/// p(y1|x,s,a) p(y2|y1).
struct BcActionSpec {
    Alphabet a, s, x, y1, y2;
    CondPmf state_channel;      // p(s|a)
    CondPmf channel1;           // p(y1|x,s,a), conditioning (x, s, a)
    CondPmf degrading_channel;  // p(y2|y1)
    Table cost;                 // gamma(a, x)

    BcActionSpec(Alphabet a_, Alphabet s_, Alphabet x_, Alphabet y1_, Alphabet y2_,
                 CondPmf state, CondPmf ch1, CondPmf degrading, Table cost_);
};

/// A broadcast instance given as a general two-output kernel, before the
/// degradedness factorization has been established.
struct BcRawSpec {
    Alphabet a, s, x, y1, y2;
    CondPmf state_channel;  // p(s|a)
    CondPmf joint_output;   // p(y1,y2|x,s,a), output flattened y1-major
    Table cost;
};

/// Distortion and cost budgets (D, Gamma).
struct ConstraintPair {
    double distortion_budget = 0.0;
    double cost_budget = 0.0;
};

/// E[gamma(A, X)] under the joint, reading A and X off the given axes.
double expected_cost(const JointPmf& j, int axis_a, int axis_x, const Table& cost);

/// E[d(S, phi(U))] under the joint; phi maps U indices to Shat indices.
double expected_distortion(const JointPmf& j, int axis_s, int axis_u,
                           std::span<const int> phi, const Table& distortion);

/// Tests whether p(y1,y2|x,s,a) factors as p(y1|x,s,a) p(y2|y1) with a single
/// degrading channel, within `tol` on every kernel entry. The candidate
/// p(y2|y1) is the least-squares fit against all conditioning rows; on
/// success the factored BcActionSpec is returned.
std::optional<BcActionSpec> check_degraded(const BcRawSpec& raw, double tol = 1e-9);

/// The two-output kernel p(y1,y2|x,s,a) = p(y1|x,s,a) p(y2|y1) implied by a
/// factored spec (the round trip partner of check_degraded).
BcRawSpec compose_joint_output(const BcActionSpec& spec);

}  // namespace actch
