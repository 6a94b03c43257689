#include "actch/pmf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace actch {

std::size_t flat_index(std::span<const int> sizes, std::span<const int> idx) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        flat = flat * static_cast<std::size_t>(sizes[i]) + static_cast<std::size_t>(idx[i]);
    return flat;
}

void unflatten(std::span<const int> sizes, std::size_t flat, std::span<int> idx_out) {
    for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
        const auto d = static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]);
        idx_out[static_cast<std::size_t>(i)] = static_cast<int>(flat % d);
        flat /= d;
    }
}

std::size_t product(std::span<const int> sizes) {
    std::size_t n = 1;
    for (int s : sizes) n *= static_cast<std::size_t>(s);
    return n;
}

namespace {

// Validates non-negativity and total mass, then renormalizes in place.
void validate_mass(std::vector<double>& p, const char* what) {
    if (p.empty()) throw std::invalid_argument(std::string(what) + ": empty");
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0))
            throw std::invalid_argument(std::string(what) + ": negative or NaN entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kMassTol)
        throw std::invalid_argument(std::string(what) + ": mass " + std::to_string(sum) +
                                    " not within tolerance of 1");
    for (double& v : p) v /= sum;
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : p_(std::move(probs)) { validate_mass(p_, "Pmf"); }

Pmf Pmf::uniform(int n) {
    return Pmf(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

Pmf Pmf::point_mass(int n, int index) {
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    p.at(static_cast<std::size_t>(index)) = 1.0;
    return Pmf(std::move(p));
}

CondPmf::CondPmf(std::vector<int> cond_sizes, int out_size, std::vector<double> table)
    : cond_sizes_(std::move(cond_sizes)), out_size_(out_size), table_(std::move(table)) {
    if (out_size_ < 1) throw std::invalid_argument("CondPmf: out_size must be >= 1");
    for (int s : cond_sizes_)
        if (s < 1) throw std::invalid_argument("CondPmf: conditioning size must be >= 1");
    const std::size_t nrows = product(cond_sizes_);
    if (table_.size() != nrows * static_cast<std::size_t>(out_size_))
        throw std::invalid_argument("CondPmf: table size mismatch");
    for (std::size_t r = 0; r < nrows; ++r) {
        std::vector<double> row(table_.begin() + static_cast<std::ptrdiff_t>(r * out_size_),
                                table_.begin() + static_cast<std::ptrdiff_t>((r + 1) * out_size_));
        validate_mass(row, "CondPmf row");
        for (int k = 0; k < out_size_; ++k)
            table_[r * static_cast<std::size_t>(out_size_) + static_cast<std::size_t>(k)] =
                row[static_cast<std::size_t>(k)];
    }
}

CondPmf CondPmf::from_rows(std::vector<int> cond_sizes, const std::vector<Pmf>& rows) {
    if (rows.empty()) throw std::invalid_argument("CondPmf::from_rows: no rows");
    const int out = rows.front().size();
    std::vector<double> table;
    table.reserve(rows.size() * static_cast<std::size_t>(out));
    for (const auto& r : rows) {
        if (r.size() != out) throw std::invalid_argument("CondPmf::from_rows: row size mismatch");
        table.insert(table.end(), r.probs().begin(), r.probs().end());
    }
    return CondPmf(std::move(cond_sizes), out, std::move(table));
}

CondPmf CondPmf::bsc(double crossover) {
    if (!(crossover >= 0.0 && crossover <= 1.0))
        throw std::invalid_argument("CondPmf::bsc: crossover outside [0,1]");
    return CondPmf({2}, 2,
                   {1.0 - crossover, crossover,
                    crossover, 1.0 - crossover});
}

CondPmf CondPmf::identity(int n) {
    std::vector<double> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        table[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(i)] = 1.0;
    return CondPmf({n}, n, std::move(table));
}

JointPmf::JointPmf(std::vector<int> dims, std::vector<double> probs)
    : dims_(std::move(dims)), p_(std::move(probs)) {
    if (dims_.empty()) throw std::invalid_argument("JointPmf: no axes");
    for (int d : dims_)
        if (d < 1) throw std::invalid_argument("JointPmf: axis size must be >= 1");
    if (p_.size() != product(dims_)) throw std::invalid_argument("JointPmf: size mismatch");
    validate_mass(p_, "JointPmf");
}

JointPmf JointPmf::marginal(std::span<const int> axes) const {
    std::vector<int> out_dims(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const int ax = axes[i];
        if (ax < 0 || ax >= rank()) throw std::invalid_argument("marginal: axis out of range");
        out_dims[i] = dims_[static_cast<std::size_t>(ax)];
    }
    std::vector<double> out(product(out_dims), 0.0);
    std::vector<int> sub(axes.size());
    for_each_index(dims_, [&](std::size_t flat, std::span<const int> idx) {
        for (std::size_t i = 0; i < axes.size(); ++i) sub[i] = idx[static_cast<std::size_t>(axes[i])];
        out[flat_index(out_dims, sub)] += p_[flat];
    });
    return JointPmf(std::move(out_dims), std::move(out));
}

double JointPmf::expectation(std::span<const int> axes, std::span<const double> table,
                             std::span<const int> table_sizes) const {
    if (axes.size() != table_sizes.size())
        throw std::invalid_argument("expectation: axis/table rank mismatch");
    for (std::size_t i = 0; i < axes.size(); ++i)
        if (dims_[static_cast<std::size_t>(axes[i])] != table_sizes[i])
            throw std::invalid_argument("expectation: axis size mismatch");
    double total = 0.0;
    std::vector<int> sub(axes.size());
    for_each_index(dims_, [&](std::size_t flat, std::span<const int> idx) {
        const double p = p_[flat];
        if (p == 0.0) return;
        for (std::size_t i = 0; i < axes.size(); ++i) sub[i] = idx[static_cast<std::size_t>(axes[i])];
        total += p * table[flat_index(table_sizes, sub)];
    });
    return total;
}

}  // namespace actch
