#pragma once

#include <string>
#include <vector>

namespace actch {

/// A finite indexed alphabet, optionally with display labels.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(int size);
    Alphabet(int size, std::vector<std::string> labels);

    int size() const { return size_; }
    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }

private:
    int size_ = 0;
    std::vector<std::string> labels_;
};

}  // namespace actch
