#include "substrate/language.hpp"

#include <algorithm>

namespace substrate::subst {

using patterns::Box;
using patterns::LatticePattern;
using patterns::Patch;
using patterns::SourceKind;

Language Language::admitted(RuleRef rule, int depth_cap) {
    Language lang;
    lang.mode_ = LangMode::AdmittedBySubstitution;
    lang.dim_ = rule->dim();
    lang.alphabet_ = rule->alphabet();
    lang.rule_ = std::move(rule);
    lang.depth_cap_ = depth_cap;
    return lang;
}

Language Language::hull_of(LatticePattern pattern, int radius_cap) {
    Language lang;
    lang.mode_ = LangMode::HullOfPattern;
    lang.dim_ = pattern.dim();
    lang.alphabet_ = pattern.alphabet;
    lang.pattern_ = std::move(pattern);
    lang.radius_cap_ = radius_cap;
    return lang;
}

const Language::Entry& Language::entry(const Vec& size) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(size);
    if (it != cache_.end()) return it->second;
    Entry e = mode_ == LangMode::AdmittedBySubstitution ? compute_admitted(size) : compute_hull(size);
    return cache_.emplace(size, std::move(e)).first->second;
}

namespace {

// all size-shaped windows fully inside the patch, as value vectors
void collect_windows(const Patch& p, const Vec& size, std::set<std::vector<int>>& out) {
    const int d = p.dim();
    Vec lo = p.shape.lo, hi = p.shape.hi;
    for (int i = 0; i < d; ++i) {
        hi[i] = hi[i] - size[i] + 1;
        if (hi[i] < lo[i]) return;
    }
    Box anchors(lo, hi);
    Box window(Vec::zero(d), size - Vec::constant(d, 1));
    for (long long ai = 0; ai < anchors.cell_count(); ++ai) {
        Vec a = anchors.cell_at(ai);
        std::vector<int> vals;
        vals.reserve(static_cast<size_t>(window.cell_count()));
        for (long long wi = 0; wi < window.cell_count(); ++wi) vals.push_back(p.at(a + window.cell_at(wi)));
        out.insert(std::move(vals));
    }
}

Patch patch_of_values(const Vec& size, const std::vector<int>& vals) {
    Box shape(Vec::zero(size.dim), size - Vec::constant(size.dim, 1));
    return Patch(shape, Vec::zero(size.dim), vals);
}

}  // namespace

Language::Entry Language::compute_admitted(const Vec& size) const {
    Entry e;
    const int d = dim_;
    const int nletters = alphabet_->size();

    // base: windows of sigma^t(a) for the least t where the image covers `size`
    std::set<std::vector<int>> acc;
    for (int a = 0; a < nletters; ++a) {
        if (!rule_->letter_grows(a)) {
            // bounded supertiles still contribute their own windows when large enough
        }
        Patch p(Box::cell(Vec::zero(d)), Vec::zero(d), std::vector<int>{a});
        for (int t = 0; t <= depth_cap_ + 64; ++t) {
            bool covers = true;
            for (int i = 0; i < d; ++i)
                if (p.shape.hi[i] - p.shape.lo[i] + 1 < size[i]) covers = false;
            if (covers) {
                collect_windows(p, size, acc);
                break;
            }
            if (!rule_->letter_grows(a) && t > nletters + 2) break;  // stalls forever
            p = substitute_patch(*rule_, p);
        }
    }

    // saturate: windows of substitutes of known windows
    int stable_rounds = 0;
    int depth = 0;
    bool complete = false;
    for (int round = 1; round <= depth_cap_; ++round) {
        std::set<std::vector<int>> fresh;
        for (const auto& vals : acc) {
            Patch w = patch_of_values(size, vals);
            Patch sw = substitute_patch(*rule_, w);
            collect_windows(sw, size, fresh);
        }
        size_t before = acc.size();
        acc.insert(fresh.begin(), fresh.end());
        depth = round;
        if (acc.size() == before) {
            if (++stable_rounds >= 2) {
                complete = true;
                break;
            }
        } else {
            stable_rounds = 0;
        }
    }
    e.patches = std::move(acc);
    e.depth = depth;
    e.complete = complete;
    return e;
}

Language::Entry Language::compute_hull(const Vec& size) const {
    Entry e;
    const LatticePattern& P = *pattern_;
    const int d = dim_;
    auto scan = [&](long long radius) {
        std::set<std::vector<int>> found;
        Box anchors(Vec::constant(d, -radius), Vec::constant(d, radius));
        Box window(Vec::zero(d), size - Vec::constant(d, 1));
        for (long long ai = 0; ai < anchors.cell_count(); ++ai) {
            Vec a = anchors.cell_at(ai);
            std::vector<int> vals;
            vals.reserve(static_cast<size_t>(window.cell_count()));
            for (long long wi = 0; wi < window.cell_count(); ++wi)
                vals.push_back(patterns::value_at(P, a + window.cell_at(wi)));
            found.insert(std::move(vals));
        }
        return found;
    };

    long long ext = size.max_norm();
    switch (P.source->kind()) {
        case SourceKind::Periodic: {
            // one fundamental domain of the period lattice is exhaustive
            auto* ps = static_cast<const patterns::PeriodicSource*>(P.source.get());
            long long span = 1;
            for (int i = 0; i < d; ++i) span = std::max(span, ps->block().shape.hi[i] + 1);
            e.patches = scan(span + ext + 2);
            e.depth = static_cast<int>(span + ext + 2);
            e.complete = true;
            return e;
        }
        case SourceKind::HalfSpaces: {
            // beyond every boundary the pattern is filler-periodic, so a window
            // past all thresholds plus one filler period sees everything
            auto* hs = static_cast<const patterns::HalfSpaceSource*>(P.source.get());
            long long bound = 0, span = 1;
            for (const auto& r : hs->regions()) {
                if (!r.catch_all) bound = std::max(bound, std::llabs(r.threshold));
                for (int i = 0; i < d; ++i) span = std::max(span, r.filler->block().shape.hi[i] + 1);
            }
            long long R = bound + P.shift.max_norm() + span + ext + 2;
            e.patches = scan(R);
            e.depth = static_cast<int>(R);
            e.complete = true;
            return e;
        }
        default: {
            // growing windows, stabilization = two consecutive doublings adding nothing
            long long R = std::max<long long>(8, 2 * ext);
            std::set<std::vector<int>> acc = scan(R);
            int stable = 0;
            bool complete = false;
            while (R <= radius_cap_) {
                R *= 2;
                auto next = scan(R);
                size_t before = acc.size();
                acc.insert(next.begin(), next.end());
                if (acc.size() == before) {
                    if (++stable >= 2) {
                        complete = true;
                        break;
                    }
                } else {
                    stable = 0;
                }
            }
            e.patches = std::move(acc);
            e.depth = static_cast<int>(R);
            e.complete = complete;
            return e;
        }
    }
}

std::vector<Patch> Language::patches_as(const Box& shape) const {
    const auto& set = patches(shape.size());
    std::vector<Patch> out;
    out.reserve(set.size());
    for (const auto& vals : set) out.emplace_back(shape, Vec::zero(dim_), vals);
    return out;
}

void Language::require_complete(const Vec& size) const {
    const Entry& e = entry(size);
    if (!e.complete)
        fail("SaturationCapExceeded",
             "legal-patch set for size " + size.str() + " did not stabilize (partial set of " +
                 std::to_string(e.patches.size()) + " patches at depth " + std::to_string(e.depth) + ")");
}

std::vector<Patch> legal_patches(const Language& lang, const Box& shape) { return lang.patches_as(shape); }

long long complexity(const Language& lang, long long extent) {
    return static_cast<long long>(lang.patches(Vec::constant(lang.dim(), extent)).size());
}

namespace {

bool occurs_in(const Patch& small, const Patch& big) {
    const int d = small.dim();
    Vec lo = big.shape.lo, hi = big.shape.hi;
    Vec ssize = small.shape.size();
    for (int i = 0; i < d; ++i) {
        hi[i] = hi[i] - ssize[i] + 1;
        if (hi[i] < lo[i]) return false;
    }
    Box anchors(lo, hi);
    Box window(Vec::zero(d), ssize - Vec::constant(d, 1));
    for (long long ai = 0; ai < anchors.cell_count(); ++ai) {
        Vec a = anchors.cell_at(ai);
        bool match = true;
        for (long long wi = 0; wi < window.cell_count() && match; ++wi) {
            Vec u = window.cell_at(wi);
            if (big.at(a + u) != small.at(small.shape.lo + u)) match = false;
        }
        if (match) return true;
    }
    return false;
}

}  // namespace

RepetitivityProfile repetitivity_profile(const Language& lang, long long ell_max, long long big_cap,
                                         bool primitive_rule) {
    RepetitivityProfile profile;
    const int d = lang.dim();
    Rat worst(0);
    for (long long ell = 1; ell <= ell_max; ++ell) {
        Vec ssize = Vec::constant(d, ell);
        Box sshape(Vec::zero(d), ssize - Vec::constant(d, 1));
        auto small = lang.patches_as(sshape);
        lang.require_complete(ssize);
        long long found = -1;
        for (long long R = ell; R <= big_cap; ++R) {
            Vec bsize = Vec::constant(d, R);
            Box bshape(Vec::zero(d), bsize - Vec::constant(d, 1));
            auto big = lang.patches_as(bshape);
            lang.require_complete(bsize);
            bool ok = true;
            for (const auto& B : big) {
                for (const auto& S : small) {
                    if (!occurs_in(S, B)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) {
                found = R;
                break;
            }
        }
        if (found < 0)
            fail("SaturationCapExceeded", "no repetitivity window up to extent " + std::to_string(big_cap) +
                                              " for patch extent " + std::to_string(ell));
        profile.samples.emplace_back(ell, found);
        Rat ratio = rat(found, ell);
        if (ratio > worst) worst = ratio;
    }
    if (primitive_rule) profile.linear_constant = worst;
    return profile;
}

}  // namespace substrate::subst
