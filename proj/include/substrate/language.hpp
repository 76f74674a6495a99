#pragma once

#include "substrate/pattern.hpp"
#include "substrate/rule.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

namespace substrate::subst {

enum class LangMode { AdmittedBySubstitution, HullOfPattern };

// Per-size set of legal patch contents (row-major value vectors over a box of
// the given size). Sets are computed on demand and cached; saturation metadata
// records the depth at which each size stabilized.
class Language {
public:
    struct Entry {
        std::set<std::vector<int>> patches;
        int depth = 0;        // substitution depth / window radius at stabilization
        bool complete = true; // false when the saturation cap was hit
    };

    static Language admitted(RuleRef rule, int depth_cap = 12);
    static Language hull_of(patterns::LatticePattern pattern, int radius_cap = 4096);

    LangMode mode() const { return mode_; }
    int dim() const { return dim_; }
    const RuleRef& rule() const { return rule_; }
    const patterns::AlphabetRef& alphabet() const { return alphabet_; }

    const Entry& entry(const Vec& size) const;
    const std::set<std::vector<int>>& patches(const Vec& size) const { return entry(size).patches; }
    bool contains(const Vec& size, const std::vector<int>& values) const {
        return entry(size).patches.count(values) != 0;
    }
    bool contains_patch(const patterns::Patch& p) const { return contains(p.shape.size(), p.values); }

    // materialize the set at a requested shape (same size, anchored as given)
    std::vector<patterns::Patch> patches_as(const patterns::Box& shape) const;

    // throws SaturationCapExceeded if the entry for `size` is incomplete
    void require_complete(const Vec& size) const;

private:
    Language() = default;
    Entry compute_admitted(const Vec& size) const;
    Entry compute_hull(const Vec& size) const;

    LangMode mode_ = LangMode::AdmittedBySubstitution;
    int dim_ = 1;
    RuleRef rule_;  // admitted mode
    patterns::AlphabetRef alphabet_;
    std::optional<patterns::LatticePattern> pattern_;  // hull mode
    int depth_cap_ = 12;
    long long radius_cap_ = 4096;

    mutable std::mutex mutex_;
    mutable std::map<Vec, Entry> cache_;
};

// legal_patches per the module contract; shape size is taken from `shape`
std::vector<patterns::Patch> legal_patches(const Language& lang, const patterns::Box& shape);

long long complexity(const Language& lang, long long extent);

struct RepetitivityProfile {
    // extent(ell) -> minimal extent R such that every legal ell-patch occurs in
    // every legal R-patch; extents are cell counts per axis
    std::vector<std::pair<long long, long long>> samples;
    std::optional<Rat> linear_constant;  // max R/ell, for primitive rules
};

RepetitivityProfile repetitivity_profile(const Language& lang, long long ell_max, long long big_cap = 96,
                                         bool primitive_rule = false);

}  // namespace substrate::subst
