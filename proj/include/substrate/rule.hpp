#pragma once

#include "substrate/alphabet.hpp"
#include "substrate/patch.hpp"
#include "substrate/vec.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace substrate::subst {

using patterns::Alphabet;
using patterns::AlphabetRef;
using patterns::Box;
using patterns::Patch;

// Word rule (d=1, images are nonempty words, possibly of different lengths)
// or block rule (images are k-shaped letter arrays, every k_i >= 2).
class SubstitutionRule {
public:
    enum class Kind { Word, Block };

    static std::shared_ptr<const SubstitutionRule> word(std::string name, AlphabetRef alphabet,
                                                        std::vector<std::vector<int>> images);
    static std::shared_ptr<const SubstitutionRule> block(std::string name, AlphabetRef alphabet, Vec block_shape,
                                                         std::vector<std::vector<int>> images);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const AlphabetRef& alphabet() const { return alphabet_; }
    int dim() const { return kind_ == Kind::Word ? 1 : block_shape_.dim; }

    // word access
    const std::vector<int>& image(int letter) const { return images_[static_cast<size_t>(letter)]; }
    long long image_length(int letter) const { return static_cast<long long>(images_[static_cast<size_t>(letter)].size()); }

    // block access (row-major over Box(0, shape-1))
    const Vec& block_shape() const { return block_shape_; }
    int block_at(int letter, const Vec& offset) const;

    bool constant_length() const { return constant_length_; }
    // per-axis expansion of one application; only for block or constant-length word rules
    Vec expansion_vector() const;
    long long cells_per_image(int letter) const {
        return kind_ == Kind::Word ? image_length(letter) : block_cells_;
    }

    long long min_image_length() const { return min_len_; }
    long long max_image_length() const { return max_len_; }

    // |sigma^t(letter)| as exact integers, memoized
    Int iterated_length(int letter, int t) const;
    // letter at position `pos` of sigma^t(base); 0 <= pos < iterated_length
    int descend_word(int base, int t, const Int& pos) const;
    // block analogue: per-axis digit descent, pos componentwise in [0, k^t)
    int descend_block(int base, int t, const Vec& pos) const;

    // substitute a word in place
    std::vector<int> substitute_word(const std::vector<int>& w) const;
    std::vector<int> iterate_letter(int letter, int t) const;  // materialized sigma^t(letter)

    // true if |sigma^t(letter)| -> infinity
    bool letter_grows(int letter) const;

private:
    SubstitutionRule() = default;
    void validate() const;

    Kind kind_ = Kind::Word;
    std::string name_;
    AlphabetRef alphabet_;
    std::vector<std::vector<int>> images_;  // word letters, or row-major blocks
    Vec block_shape_{};
    long long block_cells_ = 0;
    bool constant_length_ = true;
    long long min_len_ = 0, max_len_ = 0;

    mutable std::mutex cache_mutex_;
    mutable std::vector<std::vector<Int>> length_cache_;  // [t][letter]
};

using RuleRef = std::shared_ptr<const SubstitutionRule>;

// Patch-level rewriting: block cells map to k-blocks, word cells concatenate
// with exact offsets; the anchor maps to L * anchor (cell-position for words).
Patch substitute_patch(const SubstitutionRule& rule, const Patch& p);

// -- substitution matrix and primitivity -------------------------------------

struct SubstitutionMatrix {
    AlphabetRef alphabet;
    std::vector<std::vector<Int>> counts;  // counts[row b][col a] = #b in sigma(a)
};

SubstitutionMatrix substitution_matrix(const SubstitutionRule& rule);
// M^m > 0 for some m up to the Wielandt bound (n-1)^2 + 1
bool is_primitive(const SubstitutionRule& rule);

// -- seeds and fixed points ---------------------------------------------------

// A seed pins a sigma^n-fixed pattern: either one letter reproduced strictly
// inside its own n-fold image, or 2^d letters each fixed at its corner.
struct Seed {
    enum class Kind { Interior, Corner };
    Kind kind = Kind::Interior;
    int letter = 0;                  // Interior
    Vec offset{};                    // Interior: position of `letter` in sigma^n(letter)
    std::vector<int> corner_letters; // Corner: indexed by quadrant bitmask (bit i = negative side of axis i)

    friend bool operator==(const Seed& a, const Seed& b) {
        return a.kind == b.kind && a.letter == b.letter && a.offset == b.offset &&
               a.corner_letters == b.corner_letters;
    }
    friend bool operator<(const Seed& a, const Seed& b);
    std::string str(const Alphabet& alphabet) const;
};

// letter of the sigma^n-fixed point (seed-anchored, no shift/phase) at cell x
int address(const SubstitutionRule& rule, const Seed& seed, int n, const Vec& x);

bool seed_valid(const SubstitutionRule& rule, const Seed& seed, int n);

std::vector<std::pair<int, Seed>> fixed_points(const SubstitutionRule& rule, int max_power);

}  // namespace substrate::subst
