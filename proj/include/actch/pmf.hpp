#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace actch {

// Dense finite-alphabet probability arithmetic. All values are validated at
// construction (non-negative, total mass 1 within kMassTol) and renormalized,
// so downstream code can treat them as exact. Everything is immutable after
// construction and safe to share across threads.

constexpr double kMassTol = 1e-9;
/// Probabilities below this are treated as exact zeros before taking logs.
constexpr double kProbFloor = 1e-15;

/// Multi-index helpers for row-major dense tables (last axis fastest).
std::size_t flat_index(std::span<const int> sizes, std::span<const int> idx);
void unflatten(std::span<const int> sizes, std::size_t flat, std::span<int> idx_out);
std::size_t product(std::span<const int> sizes);

/// Probability mass function over one alphabet.
class Pmf {
public:
    Pmf() : p_{1.0} {}  // point mass on a 1-symbol alphabet
    explicit Pmf(std::vector<double> probs);

    static Pmf uniform(int n);
    static Pmf point_mass(int n, int index);

    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& probs() const { return p_; }

private:
    std::vector<double> p_;
};

/// Conditional kernel: a Pmf over the output alphabet for every value of a
/// (possibly multi-alphabet) conditioning tuple. Rows are stored row-major in
/// the conditioning tuple, first conditioning alphabet slowest.
class CondPmf {
public:
    CondPmf() : cond_sizes_{1}, out_size_(1), table_{1.0} {}
    CondPmf(std::vector<int> cond_sizes, int out_size, std::vector<double> table);

    static CondPmf from_rows(std::vector<int> cond_sizes, const std::vector<Pmf>& rows);
    /// Binary symmetric channel: out = in xor Ber(crossover).
    static CondPmf bsc(double crossover);
    static CondPmf identity(int n);

    const std::vector<int>& cond_sizes() const { return cond_sizes_; }
    int out_size() const { return out_size_; }
    int rows() const { return static_cast<int>(table_.size()) / out_size_; }

    std::span<const double> row(std::size_t flat_cond) const {
        return {table_.data() + flat_cond * static_cast<std::size_t>(out_size_),
                static_cast<std::size_t>(out_size_)};
    }
    std::span<const double> row(std::span<const int> cond) const {
        return row(flat_index(cond_sizes_, cond));
    }
    double at(std::span<const int> cond, int out) const {
        return row(cond)[static_cast<std::size_t>(out)];
    }
    const std::vector<double>& table() const { return table_; }

private:
    std::vector<int> cond_sizes_;
    int out_size_ = 0;
    std::vector<double> table_;
};

/// Dense joint distribution over an ordered list of axes.
class JointPmf {
public:
    JointPmf() : dims_{1}, p_{1.0} {}
    JointPmf(std::vector<int> dims, std::vector<double> probs);

    int rank() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int axis) const { return dims_[static_cast<std::size_t>(axis)]; }
    std::size_t cells() const { return p_.size(); }

    double flat(std::size_t i) const { return p_[i]; }
    double prob(std::span<const int> idx) const { return p_[flat_index(dims_, idx)]; }
    const std::vector<double>& probs() const { return p_; }

    /// Marginal over the listed axes, kept in the order given.
    JointPmf marginal(std::span<const int> axes) const;

    /// Sum of the distortion-style table t(idx[axes...]) under this joint.
    double expectation(std::span<const int> axes, std::span<const double> table,
                       std::span<const int> table_sizes) const;

private:
    std::vector<int> dims_;
    std::vector<double> p_;
};

/// Visit every cell of a product space; fn(flat, idx).
template <typename Fn>
void for_each_index(std::span<const int> sizes, Fn&& fn) {
    std::vector<int> idx(sizes.size(), 0);
    const std::size_t n = product(sizes);
    for (std::size_t flat = 0; flat < n; ++flat) {
        fn(flat, std::span<const int>(idx));
        for (int ax = static_cast<int>(sizes.size()) - 1; ax >= 0; --ax) {
            if (++idx[static_cast<std::size_t>(ax)] < sizes[static_cast<std::size_t>(ax)]) break;
            idx[static_cast<std::size_t>(ax)] = 0;
        }
    }
}

}  // namespace actch
