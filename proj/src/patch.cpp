#include "substrate/patch.hpp"

namespace substrate::patterns {

Patch patch_restrict(const Patch& p, const Box& sub) {
    if (!p.shape.contains(sub))
        fail("SubShapeNotContained", "restriction shape " + sub.str() + " not inside " + p.shape.str());
    std::vector<int> vals;
    vals.reserve(static_cast<size_t>(sub.cell_count()));
    for (long long i = 0; i < sub.cell_count(); ++i) vals.push_back(p.at(sub.cell_at(i)));
    return Patch(sub, p.anchor, std::move(vals));
}

Patch patch_shift(const Patch& p, const Vec& z) {
    // v'(u) = v(u + z) on the shape translated by -z; anchor moves by +z
    Box moved = p.shape.translated(-z);
    std::vector<int> vals;
    vals.reserve(p.values.size());
    for (long long i = 0; i < moved.cell_count(); ++i) vals.push_back(p.at(moved.cell_at(i) + z));
    return Patch(moved, p.anchor + z, std::move(vals));
}

IntMat IntMat::identity(int n) {
    IntMat m;
    m.n = n;
    m.a = {{{1, 0}, {0, 1}}};
    return m;
}

IntMat IntMat::scalar(int n, long long k) {
    IntMat m = identity(n);
    for (int i = 0; i < n; ++i) m.a[i][i] = k;
    return m;
}

long long IntMat::det() const {
    return n == 1 ? a[0][0] : a[0][0] * a[1][1] - a[0][1] * a[1][0];
}

Vec IntMat::apply(const Vec& v) const {
    Vec r = Vec::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += a[i][j] * v[j];
    return r;
}

SparsePatch patch_transform(const Patch& p, const IntMat& L) {
    if (L.n != p.dim()) fail("DimMismatch", "matrix dimension does not match patch");
    if (L.det() == 0) fail("NonInvertibleMatrix", "transform matrix is singular");
    SparsePatch sp;
    for (long long i = 0; i < p.shape.cell_count(); ++i) {
        Vec u = p.shape.cell_at(i);
        sp.cells[L.apply(u)] = p.at(u);
    }
    return sp;
}

Patch patch_transform_inverse(const SparsePatch& sp, const IntMat& L, const Vec& anchor) {
    if (L.det() == 0) fail("NonInvertibleMatrix", "transform matrix is singular");
    // invert over the rationals; cells must map back to integers
    std::map<Vec, int> back;
    long long det = L.det();
    for (const auto& [cell, letter] : sp.cells) {
        Vec num = Vec::zero(L.n);  // adj(L) * cell
        if (L.n == 1) {
            num[0] = cell[0];
        } else {
            num[0] = L.a[1][1] * cell[0] - L.a[0][1] * cell[1];
            num[1] = -L.a[1][0] * cell[0] + L.a[0][0] * cell[1];
        }
        Vec u = Vec::zero(L.n);
        for (int i = 0; i < L.n; ++i) {
            if (num[i] % det != 0) fail("NonLatticeCell", "transformed cell not on the image lattice");
            u[i] = num[i] / det;
        }
        back[u] = letter;
    }
    if (back.empty()) fail("EmptyPatch", "cannot rebuild a patch from an empty cell set");
    Vec lo = back.begin()->first, hi = lo;
    for (const auto& [cell, letter] : back) {
        (void)letter;
        for (int i = 0; i < L.n; ++i) {
            lo[i] = std::min(lo[i], cell[i]);
            hi[i] = std::max(hi[i], cell[i]);
        }
    }
    Box shape(lo, hi);
    if (shape.cell_count() != static_cast<long long>(back.size()))
        fail("SparseDomain", "inverse-transformed cells do not fill a box");
    std::vector<int> vals(static_cast<size_t>(shape.cell_count()));
    for (const auto& [cell, letter] : back) vals[static_cast<size_t>(shape.index_of(cell))] = letter;
    return Patch(shape, anchor, std::move(vals));
}

bool patches_agree(const Patch& p, const Patch& q, const Box& on) {
    if (!p.shape.contains(on) || !q.shape.contains(on)) return false;
    for (long long i = 0; i < on.cell_count(); ++i) {
        Vec u = on.cell_at(i);
        if (p.at(u) != q.at(u)) return false;
    }
    return true;
}

}  // namespace substrate::patterns
