#pragma once

#include <span>

#include "actch/pmf.hpp"

namespace actch {

// Information measures in bits (log base 2), 0*log(0) = 0.

double entropy_bits(std::span<const double> probs);
double entropy(const Pmf& p);
double entropy(const JointPmf& j);

/// H(q) = -q log2 q - (1-q) log2(1-q).
double binary_entropy(double q);

/// a*b = a(1-b) + b(1-a): crossover of two cascaded binary symmetric flips.
double binary_convolve(double a, double b);

/// I(A;B) = H(A) + H(B) - H(A,B), computed from marginals of `j`.
/// Clamped to 0 from numerical noise above -1e-12.
double mutual_information(const JointPmf& j, std::span<const int> axes_a,
                          std::span<const int> axes_b);

/// I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C).
double conditional_mutual_information(const JointPmf& j, std::span<const int> axes_a,
                                      std::span<const int> axes_b,
                                      std::span<const int> axes_c);

}  // namespace actch
