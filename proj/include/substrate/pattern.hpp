#pragma once

#include "substrate/alphabet.hpp"
#include "substrate/patch.hpp"
#include "substrate/vec.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace substrate::subst {
class SubstitutionRule;
struct Seed;
}  // namespace substrate::subst

namespace substrate::patterns {

// Canonical representative of a translation mod Z^d: entries in [0,1).
struct Phase {
    RatVec offset;

    Phase() = default;
    explicit Phase(RatVec v) : offset(v.frac()) {}
    static Phase zero(int d) { return Phase(RatVec::zero(d)); }
    int dim() const { return offset.dim; }
    bool is_zero() const { return offset.is_zero(); }
    friend bool operator==(const Phase& a, const Phase& b) { return a.offset == b.offset; }
    friend bool operator!=(const Phase& a, const Phase& b) { return !(a == b); }
    friend bool operator<(const Phase& a, const Phase& b) { return a.offset < b.offset; }
    std::string str() const { return offset.str(); }
};

enum class SourceKind { Periodic, Substitutive, HalfSpaces, Derived, Inflated };

class PatternSource {
public:
    virtual ~PatternSource() = default;
    virtual SourceKind kind() const = 0;
    virtual int dim() const = 0;
    virtual int value(const Vec& x) const = 0;  // letter of the coloring at cell x
    virtual std::string describe() const = 0;
};

using SourceRef = std::shared_ptr<const PatternSource>;

// -- periodic -----------------------------------------------------------------

// Full-rank integer period lattice in column Hermite form (lower triangular,
// positive diagonal) with a fundamental block on Box(0, diag-1).
class PeriodicSource : public PatternSource {
public:
    PeriodicSource(std::vector<std::vector<long long>> lattice_columns, Patch block);

    SourceKind kind() const override { return SourceKind::Periodic; }
    int dim() const override { return block_.dim(); }
    int value(const Vec& x) const override { return block_.at(reduce(x)); }
    std::string describe() const override;

    const Patch& block() const { return block_; }
    // lower-triangular HNF basis, columns
    const std::vector<std::vector<long long>>& basis() const { return basis_; }
    Vec reduce(const Vec& x) const;  // representative in the fundamental box
    long long covolume() const;

private:
    std::vector<std::vector<long long>> basis_;  // basis_[j] = column j
    Patch block_;
};

// -- half-space decorated patterns -------------------------------------------

// First-match list of axis-aligned half-space regions with periodic fillers;
// the last region must be a catch-all so the partition is total by construction.
struct HalfSpaceRegion {
    bool catch_all = false;
    int axis = 0;
    long long threshold = 0;  // x[axis] >= threshold when geq, else x[axis] < threshold
    bool geq = true;
    std::shared_ptr<const PeriodicSource> filler;

    bool holds(const Vec& x) const {
        return catch_all || (geq ? x[axis] >= threshold : x[axis] < threshold);
    }
};

class HalfSpaceSource : public PatternSource {
public:
    HalfSpaceSource(int dim, std::vector<HalfSpaceRegion> regions);

    SourceKind kind() const override { return SourceKind::HalfSpaces; }
    int dim() const override { return dim_; }
    int value(const Vec& x) const override;
    std::string describe() const override;

    const std::vector<HalfSpaceRegion>& regions() const { return regions_; }

private:
    int dim_;
    std::vector<HalfSpaceRegion> regions_;
};

// -- substitutive -------------------------------------------------------------

// sigma^twist of the sigma^n-fixed point pinned by a seed. Lazy supertile
// addressing; the cell cache tolerates concurrent readers.
class SubstitutiveSource : public PatternSource {
public:
    SubstitutiveSource(std::shared_ptr<const subst::SubstitutionRule> rule, int power,
                       subst::Seed seed, int twist = 0);

    SourceKind kind() const override { return SourceKind::Substitutive; }
    int dim() const override;
    int value(const Vec& x) const override;
    std::string describe() const override;

    const std::shared_ptr<const subst::SubstitutionRule>& rule() const { return rule_; }
    int power() const { return power_; }
    int twist() const { return twist_; }
    const subst::Seed& seed() const { return *seed_; }

private:
    int fixed_point_value(const Vec& x) const;  // twist = 0 evaluation

    std::shared_ptr<const subst::SubstitutionRule> rule_;
    int power_;
    int twist_;
    std::unique_ptr<subst::Seed> seed_;

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<Vec, int, VecHash> cell_cache_;
    // word-rule twist evaluation: image start positions of base cells 0..k / -1..-k
    mutable std::vector<long long> fwd_starts_, bwd_starts_;
};

// -- the pattern type ----------------------------------------------------------

// A unit-cube coloring of Z^d at a rational phase: tile k sits at k + phase,
// value_at reads the source coloring shifted by an integer vector.
struct LatticePattern {
    AlphabetRef alphabet;
    SourceRef source;
    Vec shift;    // integer translation applied to the source coloring
    Phase phase;  // fractional translation

    int dim() const { return source->dim(); }
    std::string describe() const;
};

int value_at(const LatticePattern& p, const Vec& x);
Patch extract_patch(const LatticePattern& p, const Vec& x, const Box& shape);
LatticePattern pattern_translate(const LatticePattern& p, const RatVec& t);

// -- equality ------------------------------------------------------------------

struct EqualityResult {
    bool certified = false;
    bool equal = false;
    long long window = 0;      // radius examined for uncertified answers / witnesses
    std::string method;        // "phase", "structural", "witness-cell", "window", ...
    std::optional<Vec> witness;
};

struct EqualityOptions {
    long long window_radius = 64;  // max radius examined before returning Uncertified
};

EqualityResult pattern_equal(const LatticePattern& p, const LatticePattern& q,
                             const EqualityOptions& opts = {});

// Reduce a substitutive source to a periodic one when its reachable letters
// collapse (e.g. single-letter rules); returns the pattern unchanged otherwise.
LatticePattern normalize_pattern(const LatticePattern& p);

}  // namespace substrate::patterns
