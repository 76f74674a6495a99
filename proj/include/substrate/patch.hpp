#pragma once

#include "substrate/alphabet.hpp"
#include "substrate/vec.hpp"

#include <map>
#include <vector>

namespace substrate::patterns {

// Axis-aligned box of cells, inclusive bounds. Radius-r balls in the max norm
// are exactly boxes, so Box is the only shape representation.
struct Box {
    Vec lo, hi;

    Box() = default;
    Box(Vec l, Vec h) : lo(l), hi(h) {
        for (int i = 0; i < lo.dim; ++i)
            if (lo[i] > hi[i]) fail("EmptyShape", "box lo > hi on axis " + std::to_string(i));
    }
    static Box radius(int d, long long r) {
        if (r < 0) fail("BadRadius", "radius must be nonnegative");
        return Box(Vec::constant(d, -r), Vec::constant(d, r));
    }
    static Box cell(const Vec& v) { return Box(v, v); }

    int dim() const { return lo.dim; }
    Vec size() const {  // cells per axis
        Vec s = Vec::zero(dim());
        for (int i = 0; i < dim(); ++i) s[i] = hi[i] - lo[i] + 1;
        return s;
    }
    long long cell_count() const {
        long long n = 1;
        for (int i = 0; i < dim(); ++i) n *= hi[i] - lo[i] + 1;
        return n;
    }
    bool contains(const Vec& v) const {
        for (int i = 0; i < dim(); ++i)
            if (v[i] < lo[i] || v[i] > hi[i]) return false;
        return true;
    }
    bool contains(const Box& b) const {
        for (int i = 0; i < dim(); ++i)
            if (b.lo[i] < lo[i] || b.hi[i] > hi[i]) return false;
        return true;
    }
    Box translated(const Vec& z) const { return Box(lo + z, hi + z); }
    // shrink by t on every side; error if empty
    Box shrunk(long long t) const { return Box(lo + Vec::constant(dim(), t), hi - Vec::constant(dim(), t)); }
    Box fattened(long long t) const { return shrunk(-t); }

    // row-major cell order: first axis slowest, last axis fastest
    long long index_of(const Vec& v) const {
        long long idx = 0;
        for (int i = 0; i < dim(); ++i) idx = idx * (hi[i] - lo[i] + 1) + (v[i] - lo[i]);
        return idx;
    }
    Vec cell_at(long long idx) const {
        Vec v = Vec::zero(dim());
        for (int i = dim() - 1; i >= 0; --i) {
            long long w = hi[i] - lo[i] + 1;
            v[i] = lo[i] + idx % w;
            idx /= w;
        }
        return v;
    }

    friend bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }
    friend bool operator!=(const Box& a, const Box& b) { return !(a == b); }
    friend bool operator<(const Box& a, const Box& b) { return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi; }

    std::string str() const { return lo.str() + ".." + hi.str(); }
};

// Finite map from the cells of a box (relative coordinates) to letters.
// Equality compares shape and contents; the anchor is bookkeeping only.
struct Patch {
    Box shape;
    Vec anchor;
    std::vector<int> values;  // row-major over shape

    Patch() = default;
    Patch(Box s, Vec a, std::vector<int> v) : shape(s), anchor(a), values(std::move(v)) {
        if (static_cast<long long>(values.size()) != shape.cell_count())
            fail("PatchSizeMismatch", "value count does not match shape");
    }

    int dim() const { return shape.dim(); }
    int at(const Vec& u) const {
        if (!shape.contains(u)) fail("CellOutsideShape", "cell " + u.str() + " outside " + shape.str());
        return values[static_cast<size_t>(shape.index_of(u))];
    }

    friend bool operator==(const Patch& a, const Patch& b) { return a.shape == b.shape && a.values == b.values; }
    friend bool operator!=(const Patch& a, const Patch& b) { return !(a == b); }
    friend bool operator<(const Patch& a, const Patch& b) {
        if (a.shape != b.shape) return a.shape < b.shape;
        return a.values < b.values;
    }
};

// Image of a patch under an invertible linear map: values on the sparse cell
// set L*(shape cells). Supports equality and the inverse transform.
struct SparsePatch {
    std::map<Vec, int> cells;

    friend bool operator==(const SparsePatch& a, const SparsePatch& b) { return a.cells == b.cells; }
};

// -- patch algebra -----------------------------------------------------------

Patch patch_restrict(const Patch& p, const Box& sub);
Patch patch_shift(const Patch& p, const Vec& z);

// 2x2 (or 1x1) integer matrix for patch_transform
struct IntMat {
    int n = 1;
    std::array<std::array<long long, kMaxDim>, kMaxDim> a{{{1, 0}, {0, 1}}};

    static IntMat identity(int n);
    static IntMat scalar(int n, long long k);
    long long det() const;
    Vec apply(const Vec& v) const;
};

SparsePatch patch_transform(const Patch& p, const IntMat& L);
Patch patch_transform_inverse(const SparsePatch& sp, const IntMat& L, const Vec& anchor);

// agreement of two patches on a common shape: p (anchored at x) and q (at y)
// agree on shape U when their values coincide cellwise over U
bool patches_agree(const Patch& p, const Patch& q, const Box& on);

}  // namespace substrate::patterns
