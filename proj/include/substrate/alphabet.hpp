#pragma once

#include "substrate/exact.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace substrate::patterns {

// Ordered finite label set S. Letters are handled as dense indices; the order
// of `letters` is the canonical tie-breaking order.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
        if (letters_.empty()) fail("EmptyAlphabet", "alphabet needs at least one letter");
        for (int i = 0; i < size(); ++i) {
            if (!index_.emplace(letters_[i], i).second)
                fail("DuplicateLetter", "letter '" + letters_[i] + "' repeated");
        }
    }

    int size() const { return static_cast<int>(letters_.size()); }
    const std::string& name(int i) const { return letters_.at(static_cast<size_t>(i)); }
    int index(const std::string& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) fail("UnknownLetter", "letter '" + s + "' not in alphabet");
        return it->second;
    }
    bool has(const std::string& s) const { return index_.count(s) != 0; }
    const std::vector<std::string>& letters() const { return letters_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }

private:
    std::vector<std::string> letters_;
    std::map<std::string, int> index_;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

inline AlphabetRef make_alphabet(std::vector<std::string> letters) {
    return std::make_shared<const Alphabet>(std::move(letters));
}

}  // namespace substrate::patterns
