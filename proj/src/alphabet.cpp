#include "actch/alphabet.hpp"

#include <stdexcept>
#include <unordered_set>

namespace actch {

Alphabet::Alphabet(int size) : size_(size) {
    if (size < 1) throw std::invalid_argument("Alphabet: size must be >= 1");
}

Alphabet::Alphabet(int size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
    if (size < 1) throw std::invalid_argument("Alphabet: size must be >= 1");
    if (!labels_.empty()) {
        if (static_cast<int>(labels_.size()) != size)
            throw std::invalid_argument("Alphabet: labels length must equal size");
        std::unordered_set<std::string> seen;
        for (const auto& l : labels_)
            if (!seen.insert(l).second)
                throw std::invalid_argument("Alphabet: duplicate label '" + l + "'");
    }
}

}  // namespace actch
