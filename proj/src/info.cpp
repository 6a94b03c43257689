#include "actch/info.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace actch {

namespace {

void require_disjoint(std::span<const int> a, std::span<const int> b, const char* what) {
    for (int i : a)
        for (int j : b)
            if (i == j) throw std::invalid_argument(std::string(what) + ": overlapping axis sets");
    if (a.empty() || b.empty()) throw std::invalid_argument(std::string(what) + ": empty axis set");
}

double clamp_mi(double v) {
    if (v < 0.0) {
        if (v < -1e-12) return v;  // a real violation would trip property tests
        return 0.0;
    }
    return v;
}

}  // namespace

double entropy_bits(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > kProbFloor) h -= p * std::log2(p);
    return h;
}

double entropy(const Pmf& p) { return entropy_bits(p.probs()); }
double entropy(const JointPmf& j) { return entropy_bits(j.probs()); }

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("binary_entropy: q outside [0,1]");
    double h = 0.0;
    if (q > kProbFloor) h -= q * std::log2(q);
    if (1.0 - q > kProbFloor) h -= (1.0 - q) * std::log2(1.0 - q);
    return h;
}

double binary_convolve(double a, double b) {
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
        throw std::invalid_argument("binary_convolve: argument outside [0,1]");
    return a * (1.0 - b) + b * (1.0 - a);
}

double mutual_information(const JointPmf& j, std::span<const int> axes_a,
                          std::span<const int> axes_b) {
    require_disjoint(axes_a, axes_b, "mutual_information");
    std::vector<int> ab(axes_a.begin(), axes_a.end());
    ab.insert(ab.end(), axes_b.begin(), axes_b.end());
    const double ha = entropy(j.marginal(axes_a));
    const double hb = entropy(j.marginal(axes_b));
    const double hab = entropy(j.marginal(ab));
    return clamp_mi(ha + hb - hab);
}

double conditional_mutual_information(const JointPmf& j, std::span<const int> axes_a,
                                      std::span<const int> axes_b,
                                      std::span<const int> axes_c) {
    require_disjoint(axes_a, axes_b, "conditional_mutual_information");
    require_disjoint(axes_a, axes_c, "conditional_mutual_information");
    require_disjoint(axes_b, axes_c, "conditional_mutual_information");
    std::vector<int> ac(axes_a.begin(), axes_a.end());
    ac.insert(ac.end(), axes_c.begin(), axes_c.end());
    std::vector<int> bc(axes_b.begin(), axes_b.end());
    bc.insert(bc.end(), axes_c.begin(), axes_c.end());
    std::vector<int> abc(axes_a.begin(), axes_a.end());
    abc.insert(abc.end(), axes_b.begin(), axes_b.end());
    abc.insert(abc.end(), axes_c.begin(), axes_c.end());
    const double hac = entropy(j.marginal(ac));
    const double hbc = entropy(j.marginal(bc));
    const double habc = entropy(j.marginal(abc));
    const double hc = entropy(j.marginal(axes_c));
    return clamp_mi(hac + hbc - habc - hc);
}

}  // namespace actch
