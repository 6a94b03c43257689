#include "actch/assemble.hpp"

#include <stdexcept>

namespace actch {

void JointAssembler::check_given(const std::vector<int>& given) const {
    for (int g : given)
        if (g < 0 || g >= rank())
            throw std::invalid_argument("JointAssembler: factor conditions on axis " +
                                        std::to_string(g) + " which is not added yet");
}

int JointAssembler::add_marginal(Pmf p) {
    Factor f;
    f.kind = Factor::Kind::Marginal;
    f.first_axis = rank();
    f.marginal = p;
    dims_.push_back(p.size());
    factors_.push_back(std::move(f));
    return factors_.back().first_axis;
}

int JointAssembler::add_block(JointPmf block) {
    Factor f;
    f.kind = Factor::Kind::Block;
    f.first_axis = rank();
    f.n_axes = block.rank();
    f.block = block.probs();
    for (int d : block.dims()) dims_.push_back(d);
    factors_.push_back(std::move(f));
    return factors_.back().first_axis;
}

int JointAssembler::add_kernel(CondPmf kernel, std::vector<int> given) {
    check_given(given);
    if (given.size() != kernel.cond_sizes().size())
        throw std::invalid_argument("JointAssembler: kernel conditioning arity mismatch");
    for (std::size_t i = 0; i < given.size(); ++i)
        if (dims_[static_cast<std::size_t>(given[i])] != kernel.cond_sizes()[i])
            throw std::invalid_argument("JointAssembler: kernel conditioning size mismatch");
    Factor f;
    f.kind = Factor::Kind::Kernel;
    f.first_axis = rank();
    f.kernel = kernel;
    f.given = std::move(given);
    dims_.push_back(kernel.out_size());
    factors_.push_back(std::move(f));
    return factors_.back().first_axis;
}

int JointAssembler::add_map(std::vector<int> table, int out_size, std::vector<int> args) {
    check_given(args);
    if (out_size < 1) throw std::invalid_argument("JointAssembler: map out_size must be >= 1");
    std::vector<int> arg_sizes;
    arg_sizes.reserve(args.size());
    for (int a : args) arg_sizes.push_back(dims_[static_cast<std::size_t>(a)]);
    if (table.size() != product(arg_sizes))
        throw std::invalid_argument("JointAssembler: map table size mismatch");
    for (int v : table)
        if (v < 0 || v >= out_size)
            throw std::invalid_argument("JointAssembler: map value outside output alphabet");
    Factor f;
    f.kind = Factor::Kind::Map;
    f.first_axis = rank();
    f.map_table = std::move(table);
    f.given = std::move(args);
    f.given_sizes = std::move(arg_sizes);
    dims_.push_back(out_size);
    factors_.push_back(std::move(f));
    return factors_.back().first_axis;
}

JointPmf JointAssembler::assemble() const {
    if (factors_.empty()) throw std::invalid_argument("JointAssembler: nothing to assemble");
    // Build incrementally: extend the prefix joint one factor at a time.
    std::vector<double> acc{1.0};
    std::vector<int> acc_dims;
    std::vector<int> idx;
    std::vector<int> cond;
    for (const auto& f : factors_) {
        const std::size_t old_cells = acc.size();
        std::size_t new_per_cell = 1;
        for (int k = 0; k < f.n_axes; ++k)
            new_per_cell *= static_cast<std::size_t>(
                dims_[static_cast<std::size_t>(f.first_axis + k)]);
        std::vector<double> next(old_cells * new_per_cell, 0.0);
        idx.assign(acc_dims.size(), 0);
        for (std::size_t cell = 0; cell < old_cells; ++cell) {
            const double base = acc[cell];
            double* out = next.data() + cell * new_per_cell;
            if (base != 0.0) {
                switch (f.kind) {
                    case Factor::Kind::Marginal:
                        for (std::size_t v = 0; v < new_per_cell; ++v)
                            out[v] = base * f.marginal[static_cast<int>(v)];
                        break;
                    case Factor::Kind::Block:
                        for (std::size_t v = 0; v < new_per_cell; ++v)
                            out[v] = base * f.block[v];
                        break;
                    case Factor::Kind::Kernel: {
                        cond.assign(f.given.size(), 0);
                        for (std::size_t i = 0; i < f.given.size(); ++i)
                            cond[i] = idx[static_cast<std::size_t>(f.given[i])];
                        const auto row = f.kernel.row(cond);
                        for (std::size_t v = 0; v < new_per_cell; ++v) out[v] = base * row[v];
                        break;
                    }
                    case Factor::Kind::Map: {
                        cond.assign(f.given.size(), 0);
                        for (std::size_t i = 0; i < f.given.size(); ++i)
                            cond[i] = idx[static_cast<std::size_t>(f.given[i])];
                        const int v = f.map_table[flat_index(f.given_sizes, cond)];
                        out[static_cast<std::size_t>(v)] = base;
                        break;
                    }
                }
            }
            // advance the odometer over the prefix axes
            for (int ax = static_cast<int>(acc_dims.size()) - 1; ax >= 0; --ax) {
                if (++idx[static_cast<std::size_t>(ax)] < acc_dims[static_cast<std::size_t>(ax)])
                    break;
                idx[static_cast<std::size_t>(ax)] = 0;
            }
        }
        acc = std::move(next);
        for (int k = 0; k < f.n_axes; ++k)
            acc_dims.push_back(dims_[static_cast<std::size_t>(f.first_axis + k)]);
    }
    return JointPmf(acc_dims, std::move(acc));
}

}  // namespace actch
