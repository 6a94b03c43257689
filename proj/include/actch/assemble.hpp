#pragma once

#include <vector>

#include "actch/pmf.hpp"

namespace actch {

/// Builds a joint distribution as an ordered product of factors, one or more
/// axes per factor. Each factor may only condition on axes added before it,
/// which keeps the wiring acyclic by construction. Deterministic maps
/// contribute Kronecker-delta factors.
///
///   JointAssembler jb;
///   int a = jb.add_marginal(pa);
///   int s = jb.add_kernel(p_s_given_a, {a});
///   int x = jb.add_map(f_x_table, x_size, {s, a});
///   JointPmf j = jb.assemble();
class JointAssembler {
public:
    /// New axis carrying an unconditioned pmf. Returns the axis id.
    int add_marginal(Pmf p);

    /// Several new axes carrying a joint block (e.g. p(u1,u2)).
    /// Returns the id of the first new axis; the rest follow contiguously.
    int add_block(JointPmf block);

    /// New axis distributed as kernel given the listed earlier axes.
    /// `given` must match the kernel's conditioning order and sizes.
    int add_kernel(CondPmf kernel, std::vector<int> given);

    /// New deterministic axis: value = table[flat(args)], table values in
    /// [0, out_size). `table` is row-major over the arg axes.
    int add_map(std::vector<int> table, int out_size, std::vector<int> args);

    int rank() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }

    JointPmf assemble() const;

private:
    struct Factor {
        enum class Kind { Marginal, Block, Kernel, Map } kind;
        int first_axis = 0;
        int n_axes = 1;
        Pmf marginal;
        std::vector<double> block;  // flattened over the factor's own axes
        CondPmf kernel;
        std::vector<int> given;
        std::vector<int> map_table;
        std::vector<int> given_sizes;
    };

    void check_given(const std::vector<int>& given) const;

    std::vector<int> dims_;
    std::vector<Factor> factors_;
};

}  // namespace actch
