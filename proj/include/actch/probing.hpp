#pragma once

#include <vector>

#include "actch/bc_region.hpp"
#include "actch/channel_model.hpp"

namespace actch {

// Probing encoder over a degraded broadcast channel: the state is i.i.d.
// p(s), and the binary action only decides whether the encoder observes the
// state symbol (S_e = S when A = 1, the null symbol * when A = 0). Decoders
// get partial state information S_d1 = b_d1(S, A) and S_d2 = b_d2(S_d1).
// The instance reduces to an ordinary broadcast action channel by replacing
// S with S_e and each output Y_j with the pair (Y_j, S_dj).

struct ProbingSpec {
    Alphabet a;  // must be binary: 0 = don't probe, 1 = probe
    Alphabet s, x, y1, y2, sd1, sd2;
    Pmf state_prior;            // p(s)
    std::vector<int> b_d1;      // (s, a) s-major -> sd1
    std::vector<int> b_d2;      // sd1 -> sd2
    CondPmf channel1;           // p(y1|x,s,a), conditioning (x, s, a)
    CondPmf degrading_channel;  // p(y2|y1)
    Table cost;                 // gamma(a, x)

    void validate() const;
};

struct ReducedSpec {
    BcActionSpec bc;  // state alphabet S_e = S + {*}; outputs are composite
    int star_index = 0;
    int y1_size = 0, sd1_size = 0, y2_size = 0, sd2_size = 0;

    int composite1(int y1, int sd1) const { return y1 * sd1_size + sd1; }
    int composite2(int y2, int sd2) const { return y2 * sd2_size + sd2; }
};

/// Builds the reduced broadcast spec:
///   p(s_e|a=1) = p(s) on S, p(s_e|a=0) = point mass on *;
///   p(y1, s_d1 | x, s_e, a=0) = sum_s p(s) [s_d1 = b_d1(s,0)] p(y1|x,s,0);
///   p(y1, s_d1 | x, s_e, a=1) = [s_d1 = b_d1(s_e,1)] p(y1|x,s_e,1);
/// with the composite degrading channel p(y2|y1) [s_d2 = b_d2(s_d1)].
/// Unreachable conditioning rows carry the a-appropriate averaged row so
/// every row stays a valid pmf. Composite alphabets keep the full Cartesian
/// product; unreachable symbols simply carry zero probability.
ReducedSpec reduce_probing(const ProbingSpec& spec);

/// Region of the probing instance: reduce, then trace the broadcast region
/// on the reduced spec.
RegionBoundary probing_region(const ProbingSpec& spec, double gamma,
                              const BcRegionOptions& opts = {});

}  // namespace actch
