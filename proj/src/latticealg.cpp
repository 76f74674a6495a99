#include "substrate/latticealg.hpp"

#include <algorithm>
#include <sstream>

namespace substrate::lattice {

MatZ MatZ::identity(int n) {
    MatZ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatZ MatZ::from_columns(int dim, const std::vector<std::vector<long long>>& cols) {
    MatZ m(dim, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < dim; ++i) m.at(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return m;
}

MatZ MatZ::times(const MatZ& other) const {
    if (cols != other.rows) fail("DimMismatch", "matrix product shape");
    MatZ r(rows, other.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k)
            if (at(i, k) != 0)
                for (int j = 0; j < other.cols; ++j) r.at(i, j) += at(i, k) * other.at(k, j);
    return r;
}

MatZ MatZ::column(int j) const {
    MatZ c(rows, 1);
    for (int i = 0; i < rows; ++i) c.at(i, 0) = at(i, j);
    return c;
}

bool MatZ::is_zero() const {
    for (const Int& v : a)
        if (v != 0) return false;
    return true;
}

Int MatZ::det() const {
    if (rows != cols) fail("DimMismatch", "determinant of a non-square matrix");
    if (rows == 0) return 1;
    if (rows == 1) return at(0, 0);
    if (rows == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    // fraction-free Gaussian elimination (Bareiss)
    MatZ m = *this;
    Int denom = 1;
    int sign = 1;
    for (int k = 0; k + 1 < rows; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < rows; ++i)
                if (m.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < cols; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < rows; ++i)
            for (int j = k + 1; j < cols; ++j) {
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / denom;
            }
        denom = m.at(k, k);
    }
    return sign > 0 ? m.at(rows - 1, rows - 1) : -m.at(rows - 1, rows - 1);
}

std::string MatZ::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols; ++j) os << (j ? "," : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

HnfResult hnf(const MatZ& M) {
    MatZ H = M;
    MatZ U = MatZ::identity(M.cols);
    auto col_swap = [&](int x, int y) {
        for (int i = 0; i < H.rows; ++i) std::swap(H.at(i, x), H.at(i, y));
        for (int i = 0; i < U.rows; ++i) std::swap(U.at(i, x), U.at(i, y));
    };
    auto col_negate = [&](int x) {
        for (int i = 0; i < H.rows; ++i) H.at(i, x) = -H.at(i, x);
        for (int i = 0; i < U.rows; ++i) U.at(i, x) = -U.at(i, x);
    };
    auto col_addmul = [&](int dst, int src, const Int& q) {  // col dst += q * col src
        for (int i = 0; i < H.rows; ++i) H.at(i, dst) += q * H.at(i, src);
        for (int i = 0; i < U.rows; ++i) U.at(i, dst) += q * U.at(i, src);
    };

    int pivot_col = 0;
    std::vector<int> pivot_rows;
    for (int row = 0; row < H.rows && pivot_col < H.cols; ++row) {
        // euclid out everything right of pivot_col in this row
        while (true) {
            int k = -1;
            for (int j = pivot_col + (H.at(row, pivot_col) != 0 ? 1 : 0); j < H.cols; ++j)
                if (H.at(row, j) != 0) {
                    k = j;
                    break;
                }
            if (H.at(row, pivot_col) == 0) {
                if (k < 0) break;
                col_swap(pivot_col, k);
                continue;
            }
            if (k < 0) break;
            Int q = floor_div(H.at(row, k), H.at(row, pivot_col));
            col_addmul(k, pivot_col, -q);
            if (H.at(row, k) != 0) col_swap(pivot_col, k);
        }
        if (H.at(row, pivot_col) == 0) continue;
        if (H.at(row, pivot_col) < 0) col_negate(pivot_col);
        // reduce earlier columns at this row into [0, pivot)
        for (int j = 0; j < pivot_col; ++j) {
            Int q = floor_div(H.at(row, j), H.at(row, pivot_col));
            if (q != 0) col_addmul(j, pivot_col, -q);
        }
        pivot_rows.push_back(row);
        ++pivot_col;
    }
    int rank = pivot_col;
    MatZ Hr(M.rows, rank);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < rank; ++j) Hr.at(i, j) = H.at(i, j);
    return {Hr, U};
}

SnfResult snf(const MatZ& M) {
    MatZ D = M;
    MatZ U = MatZ::identity(M.rows), V = MatZ::identity(M.cols);
    auto row_swap = [&](int x, int y) {
        for (int j = 0; j < D.cols; ++j) std::swap(D.at(x, j), D.at(y, j));
        for (int j = 0; j < U.cols; ++j) std::swap(U.at(x, j), U.at(y, j));
    };
    auto row_addmul = [&](int dst, int src, const Int& q) {
        for (int j = 0; j < D.cols; ++j) D.at(dst, j) += q * D.at(src, j);
        for (int j = 0; j < U.cols; ++j) U.at(dst, j) += q * U.at(src, j);
    };
    auto row_negate = [&](int x) {
        for (int j = 0; j < D.cols; ++j) D.at(x, j) = -D.at(x, j);
        for (int j = 0; j < U.cols; ++j) U.at(x, j) = -U.at(x, j);
    };
    auto col_swap = [&](int x, int y) {
        for (int i = 0; i < D.rows; ++i) std::swap(D.at(i, x), D.at(i, y));
        for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, x), V.at(i, y));
    };
    auto col_addmul = [&](int dst, int src, const Int& q) {
        for (int i = 0; i < D.rows; ++i) D.at(i, dst) += q * D.at(i, src);
        for (int i = 0; i < V.rows; ++i) V.at(i, dst) += q * V.at(i, src);
    };

    const int n = std::min(D.rows, D.cols);
    for (int t = 0; t < n; ++t) {
        // find a nonzero pivot in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < D.rows && pi < 0; ++i)
            for (int j = t; j < D.cols; ++j)
                if (D.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < D.rows; ++i) {
                while (D.at(i, t) != 0) {
                    Int q = floor_div(D.at(i, t), D.at(t, t));
                    row_addmul(i, t, -q);
                    if (D.at(i, t) != 0) row_swap(i, t);
                }
            }
            for (int j = t + 1; j < D.cols; ++j) {
                while (D.at(t, j) != 0) {
                    Int q = floor_div(D.at(t, j), D.at(t, t));
                    col_addmul(j, t, -q);
                    if (D.at(t, j) != 0) {
                        col_swap(j, t);
                        dirty = true;  // row entries may be disturbed
                    }
                }
            }
        }
        if (D.at(t, t) < 0) row_negate(t);
        // divisibility: pivot must divide the rest of the block
        for (int i = t + 1; i < D.rows; ++i)
            for (int j = t + 1; j < D.cols; ++j)
                if (D.at(i, j) % D.at(t, t) != 0) {
                    row_addmul(t, i, Int(1));
                    --t;  // redo this pivot
                    i = D.rows;
                    break;
                }
    }
    return {D, U, V};
}

MatZ kernel_basis(const MatZ& M) {
    SnfResult s = snf(M);
    int n = std::min(M.rows, M.cols);
    int rank = 0;
    for (int t = 0; t < n; ++t)
        if (s.D.at(t, t) != 0) ++rank;
    MatZ K(M.cols, M.cols - rank);
    for (int j = rank; j < M.cols; ++j)
        for (int i = 0; i < M.cols; ++i) K.at(i, j - rank) = s.V.at(i, j);
    return K;
}

MatZ lattice_intersection(const MatZ& A, const MatZ& B) {
    if (A.rows != B.rows) fail("DimMismatch", "lattice ambient dimensions differ");
    MatZ C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = -B.at(i, j);
    }
    MatZ K = kernel_basis(C);  // (u; v) with A u = B v
    MatZ top(A.cols, K.cols);
    for (int i = 0; i < A.cols; ++i)
        for (int j = 0; j < K.cols; ++j) top.at(i, j) = K.at(i, j);
    return hnf(A.times(top)).H;
}

std::optional<std::vector<Rat>> solve_rational(const MatZ& M, const std::vector<Rat>& rhs) {
    int rows = M.rows, cols = M.cols;
    std::vector<std::vector<Rat>> aug(static_cast<size_t>(rows), std::vector<Rat>(static_cast<size_t>(cols) + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rat(M.at(i, j));
        aug[static_cast<size_t>(i)][static_cast<size_t>(cols)] = rhs[static_cast<size_t>(i)];
    }
    std::vector<int> pivot_of_col(static_cast<size_t>(cols), -1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (aug[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(aug[static_cast<size_t>(p)], aug[static_cast<size_t>(r)]);
        Rat pv = aug[static_cast<size_t>(r)][static_cast<size_t>(c)];
        for (int j = c; j <= cols; ++j) aug[static_cast<size_t>(r)][static_cast<size_t>(j)] /= pv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rat f = aug[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (f == 0) continue;
            for (int j = c; j <= cols; ++j)
                aug[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * aug[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        pivot_of_col[static_cast<size_t>(c)] = r;
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (aug[static_cast<size_t>(i)][static_cast<size_t>(cols)] != 0) return std::nullopt;
    std::vector<Rat> x(static_cast<size_t>(cols), Rat(0));  // free variables -> 0
    for (int c = 0; c < cols; ++c)
        if (pivot_of_col[static_cast<size_t>(c)] >= 0)
            x[static_cast<size_t>(c)] = aug[static_cast<size_t>(pivot_of_col[static_cast<size_t>(c)])][static_cast<size_t>(cols)];
    return x;
}

std::vector<Rat> char_poly(const MatZ& L) {
    // Faddeev-LeVerrier; coefficients of det(xI - L), monic
    const int n = L.rows;
    std::vector<Rat> c(static_cast<size_t>(n) + 1, Rat(0));
    c[static_cast<size_t>(n)] = 1;
    std::vector<std::vector<Rat>> Mk(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    std::vector<std::vector<Rat>> A(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rat(L.at(i, j));
    for (int k = 1; k <= n; ++k) {
        // Mk = A * Mk + c_{n-k+1} I
        if (k > 1) {
            std::vector<std::vector<Rat>> t(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l)
                    if (A[static_cast<size_t>(i)][static_cast<size_t>(l)] != 0)
                        for (int j = 0; j < n; ++j)
                            t[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                                A[static_cast<size_t>(i)][static_cast<size_t>(l)] * Mk[static_cast<size_t>(l)][static_cast<size_t>(j)];
            Mk = t;
            for (int i = 0; i < n; ++i) Mk[static_cast<size_t>(i)][static_cast<size_t>(i)] += c[static_cast<size_t>(n - k + 1)];
        } else {
            for (int i = 0; i < n; ++i) Mk[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        }
        Rat trace(0);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                trace += A[static_cast<size_t>(i)][static_cast<size_t>(l)] * Mk[static_cast<size_t>(l)][static_cast<size_t>(i)];
        c[static_cast<size_t>(n - k)] = -trace / rat(k);
    }
    return c;
}

bool schur_stable(std::vector<Rat> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.empty()) fail("ZeroPolynomial", "zero polynomial has no stability status");
    while (p.size() > 1) {
        size_t n = p.size() - 1;
        Rat a0 = p.front(), an = p.back();
        Rat gap = an * an - a0 * a0;  // |an| > |a0| required
        if (gap <= 0) return false;
        std::vector<Rat> q(n);
        for (size_t j = 0; j < n; ++j) q[j] = an * p[j + 1] - a0 * p[n - 1 - j];
        p = std::move(q);  // leading coefficient an^2 - a0^2 > 0
    }
    return true;
}

bool is_expansive(const MatZ& L) {
    if (L.rows != L.cols) fail("DimMismatch", "expansiveness of a non-square matrix");
    if (L.det() == 0) return false;
    std::vector<Rat> c = char_poly(L);
    std::vector<Rat> reversed(c.rbegin(), c.rend());  // roots become 1/lambda
    return schur_stable(std::move(reversed));
}

// -- expansion maps ------------------------------------------------------------

ExpansionMap ExpansionMap::from_int(const MatZ& m) {
    ExpansionMap e;
    e.dim = m.rows;
    e.entries.reserve(static_cast<size_t>(m.rows) * static_cast<size_t>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) e.entries.emplace_back(Rat(m.at(i, j)));
    return e;
}

ExpansionMap ExpansionMap::scalar(int dim, QuadNum v) {
    ExpansionMap e;
    e.dim = dim;
    e.entries.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), QuadNum(0));
    for (int i = 0; i < dim; ++i) e.entries[static_cast<size_t>(i * dim + i)] = v;
    return e;
}

ExpansionMap ExpansionMap::diag(std::vector<QuadNum> values) {
    ExpansionMap e;
    e.dim = static_cast<int>(values.size());
    e.entries.assign(static_cast<size_t>(e.dim) * static_cast<size_t>(e.dim), QuadNum(0));
    for (int i = 0; i < e.dim; ++i) e.entries[static_cast<size_t>(i * e.dim + i)] = values[static_cast<size_t>(i)];
    return e;
}

bool ExpansionMap::is_integer() const {
    for (const auto& q : entries)
        if (!q.is_rational() || !substrate::is_integer(q.a)) return false;
    return true;
}

MatZ ExpansionMap::to_int() const {
    if (!is_integer()) fail("NotInteger", "expansion map is not an integer matrix");
    MatZ m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) = at(i, j).a.get_num();
    return m;
}

ExpansionMap ExpansionMap::power(int n) const {
    ExpansionMap r = scalar(dim, QuadNum(1));
    for (int k = 0; k < n; ++k) {
        ExpansionMap t;
        t.dim = dim;
        t.entries.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), QuadNum(0));
        for (int i = 0; i < dim; ++i)
            for (int l = 0; l < dim; ++l)
                for (int j = 0; j < dim; ++j)
                    t.entries[static_cast<size_t>(i * dim + j)] =
                        t.entries[static_cast<size_t>(i * dim + j)] + r.at(i, l) * at(l, j);
        r = t;
    }
    return r;
}

std::string ExpansionMap::str() const {
    std::string s = "[";
    for (int i = 0; i < dim; ++i) {
        s += i ? "; " : "";
        for (int j = 0; j < dim; ++j) s += (j ? "," : "") + at(i, j).str();
    }
    return s + "]";
}

namespace {

std::vector<QuadNum> char_poly_quad(const ExpansionMap& L) {
    const int n = L.dim;
    if (n == 1) return {-L.at(0, 0), QuadNum(1)};
    if (n == 2) {
        QuadNum det = L.at(0, 0) * L.at(1, 1) - L.at(0, 1) * L.at(1, 0);
        QuadNum tr = L.at(0, 0) + L.at(1, 1);
        return {det, -tr, QuadNum(1)};
    }
    fail("DimMismatch", "expansion maps are at most 2x2 here");
}

bool schur_stable_quad(std::vector<QuadNum> p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    if (p.empty()) fail("ZeroPolynomial", "zero polynomial has no stability status");
    while (p.size() > 1) {
        size_t n = p.size() - 1;
        QuadNum a0 = p.front(), an = p.back();
        QuadNum gap = an * an - a0 * a0;
        if (gap.sign() <= 0) return false;
        std::vector<QuadNum> q(n);
        for (size_t j = 0; j < n; ++j) q[j] = an * p[j + 1] - a0 * p[n - 1 - j];
        p = std::move(q);
    }
    return true;
}

}  // namespace

bool is_expansive(const ExpansionMap& L) {
    std::vector<QuadNum> c = char_poly_quad(L);
    if (c.front().is_zero()) return false;  // singular
    std::vector<QuadNum> reversed(c.rbegin(), c.rend());
    return schur_stable_quad(std::move(reversed));
}

// -- period groups --------------------------------------------------------------

PeriodGroup PeriodGroup::trivial(int dim) {
    PeriodGroup k;
    k.dim = dim;
    k.lattice = MatZ(dim, 0);
    return k;
}

PeriodGroup PeriodGroup::from_lattice(int dim, const MatZ& generators, Certificate cert) {
    PeriodGroup k;
    k.dim = dim;
    k.lattice = hnf(generators).H;
    k.cert = cert;
    return k;
}

PeriodGroup PeriodGroup::full_space(int dim) {
    PeriodGroup k;
    k.dim = dim;
    k.lattice = MatZ(dim, 0);
    for (int i = 0; i < dim; ++i) {
        RatVec v = RatVec::zero(dim);
        v[i] = 1;
        k.subspace.push_back(v);
    }
    k.cert.kind = Certificate::Kind::Declared;
    k.cert.method = "declared-full-space";
    return k;
}

PeriodGroup PeriodGroup::subspace_group(int dim, std::vector<RatVec> basis) {
    PeriodGroup k;
    k.dim = dim;
    k.lattice = MatZ(dim, 0);
    k.subspace = std::move(basis);
    k.cert.kind = Certificate::Kind::Declared;
    k.cert.method = "declared-subspace";
    return k;
}

bool PeriodGroup::contains(const RatVec& v) const {
    // solve [S | B] (y; x) = v and demand the lattice coordinates x be integers
    const int s = static_cast<int>(subspace.size());
    const int r = lattice.cols;
    if (s == 0 && r == 0) return v.is_zero();
    // scale to a common denominator so we can use the integer solver
    Int denom = 1;
    for (int i = 0; i < dim; ++i) denom = lcm(denom, v[i].get_den());
    for (const auto& sv : subspace)
        for (int i = 0; i < dim; ++i) denom = lcm(denom, sv[i].get_den());
    MatZ M(dim, s + r);
    for (int j = 0; j < s; ++j)
        for (int i = 0; i < dim; ++i) {
            Rat scaled = subspace[static_cast<size_t>(j)][i] * Rat(denom);
            M.at(i, j) = scaled.get_num();
        }
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < dim; ++i) M.at(i, s + j) = lattice.at(i, j) * denom;
    std::vector<Rat> rhs(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) rhs[static_cast<size_t>(i)] = v[i] * Rat(denom);
    auto sol = solve_rational(M, rhs);
    if (!sol) return false;
    for (int j = 0; j < r; ++j)
        if (!substrate::is_integer((*sol)[static_cast<size_t>(s + j)])) return false;
    // columns are independent by the group invariant, so the solution is unique
    return true;
}

std::string PeriodGroup::str() const {
    std::string s = "K(dim=" + std::to_string(dim);
    if (!subspace.empty()) {
        s += ", subspace=";
        for (size_t i = 0; i < subspace.size(); ++i) s += (i ? "+" : "") + subspace[i].str();
    }
    if (lattice.cols > 0) s += ", lattice=" + lattice.str();
    if (is_trivial()) s += ", trivial";
    return s + ")";
}

bool has_trivial_discrete_component(const PeriodGroup& K) { return K.lattice_rank() == 0; }

namespace {

// apply L to a rational vector; component entries must stay in the field
std::vector<QuadNum> apply_quad(const ExpansionMap& L, const RatVec& v) {
    std::vector<QuadNum> out(static_cast<size_t>(L.dim), QuadNum(0));
    for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < v.dim; ++j) out[static_cast<size_t>(i)] = out[static_cast<size_t>(i)] + L.at(i, j) * QuadNum(v[j]);
    return out;
}

bool in_subspace_span(const std::vector<RatVec>& basis, const std::vector<QuadNum>& v, int dim) {
    // gaussian elimination over the quadratic field
    std::vector<std::vector<QuadNum>> cols;
    for (const auto& b : basis) {
        std::vector<QuadNum> c(static_cast<size_t>(dim), QuadNum(0));
        for (int i = 0; i < dim; ++i) c[static_cast<size_t>(i)] = QuadNum(b[i]);
        cols.push_back(std::move(c));
    }
    std::vector<QuadNum> target = v;
    std::vector<bool> used(cols.size(), false);
    for (int row = 0; row < dim; ++row) {
        if (target[static_cast<size_t>(row)].is_zero()) continue;
        int pick = -1;
        for (size_t j = 0; j < cols.size(); ++j)
            if (!used[j] && !cols[j][static_cast<size_t>(row)].is_zero()) {
                pick = static_cast<int>(j);
                break;
            }
        if (pick < 0) return false;
        used[static_cast<size_t>(pick)] = true;
        QuadNum f = target[static_cast<size_t>(row)] / cols[static_cast<size_t>(pick)][static_cast<size_t>(row)];
        for (int i = 0; i < dim; ++i)
            target[static_cast<size_t>(i)] = target[static_cast<size_t>(i)] - f * cols[static_cast<size_t>(pick)][static_cast<size_t>(i)];
    }
    for (int i = 0; i < dim; ++i)
        if (!target[static_cast<size_t>(i)].is_zero()) return false;
    return true;
}

// coordinates X of L^n * Lambda in the (Lambda, V) system; nullopt if L^n Lambda
// leaves the rational span or the system is inconsistent
std::optional<std::vector<std::vector<Rat>>> inflated_lattice_coords(const PeriodGroup& K, const ExpansionMap& L,
                                                                     int n) {
    const int r = K.lattice.cols;
    const int s = static_cast<int>(K.subspace.size());
    ExpansionMap Ln = L.power(n);
    std::vector<std::vector<Rat>> X(static_cast<size_t>(r), std::vector<Rat>(static_cast<size_t>(r), Rat(0)));
    for (int j = 0; j < r; ++j) {
        RatVec col = RatVec::zero(K.dim);
        for (int i = 0; i < K.dim; ++i) col[i] = Rat(K.lattice.at(i, j));
        std::vector<QuadNum> w = apply_quad(Ln, col);
        for (const auto& q : w)
            if (!q.is_rational()) return std::nullopt;
        // solve [Lambda | S] (x; y) = w over the rationals
        Int denom = 1;
        for (const auto& sv : K.subspace)
            for (int i = 0; i < K.dim; ++i) denom = lcm(denom, sv[i].get_den());
        for (const auto& q : w) denom = lcm(denom, q.a.get_den());
        MatZ M(K.dim, r + s);
        for (int jj = 0; jj < r; ++jj)
            for (int i = 0; i < K.dim; ++i) M.at(i, jj) = K.lattice.at(i, jj) * denom;
        for (int jj = 0; jj < s; ++jj)
            for (int i = 0; i < K.dim; ++i)
                M.at(i, r + jj) = (K.subspace[static_cast<size_t>(jj)][i] * Rat(denom)).get_num();
        std::vector<Rat> rhs(static_cast<size_t>(K.dim));
        for (int i = 0; i < K.dim; ++i) rhs[static_cast<size_t>(i)] = w[static_cast<size_t>(i)].a * Rat(denom);
        auto sol = solve_rational(M, rhs);
        if (!sol) return std::nullopt;
        for (int i = 0; i < r; ++i) X[static_cast<size_t>(i)][static_cast<size_t>(j)] = (*sol)[static_cast<size_t>(i)];
    }
    return X;
}

}  // namespace

PeriodGroup inflate_periods(const PeriodGroup& K, const ExpansionMap& L) {
    PeriodGroup out;
    out.dim = K.dim;
    out.cert = K.cert;
    // subspace: L V must have the same rational span as some subspace; here we
    // require L V = V (the only representable case) and keep the basis
    for (const auto& v : K.subspace) {
        std::vector<QuadNum> w = apply_quad(L, v);
        if (!in_subspace_span(K.subspace, w, K.dim))
            fail("UnsupportedSubspace", "L does not preserve the subspace span; inflated group not representable");
    }
    out.subspace = K.subspace;
    if (K.lattice.cols > 0) {
        MatZ Ln;
        if (L.is_integer()) {
            Ln = L.to_int();
        } else {
            fail("NotInteger", "inflating a lattice needs an integer expansion map");
        }
        out.lattice = hnf(Ln.times(K.lattice)).H;
    } else {
        out.lattice = MatZ(K.dim, 0);
    }
    return out;
}

bool check_invariance(const PeriodGroup& K, const ExpansionMap& L) {
    for (const auto& v : K.subspace) {
        std::vector<QuadNum> w = apply_quad(L, v);
        if (!in_subspace_span(K.subspace, w, K.dim)) return false;
    }
    auto X = inflated_lattice_coords(K, L, 1);
    if (!X) return false;
    for (const auto& row : *X)
        for (const auto& q : row)
            if (!substrate::is_integer(q)) return false;
    return true;
}

Int index_of_inflated(const PeriodGroup& K, const ExpansionMap& L, int n) {
    const int r = K.lattice.cols;
    if (r == 0) return 1;  // trivial discrete component
    auto Xq = inflated_lattice_coords(K, L, n);
    if (!Xq) fail("NotInvariant", "L^n K is not contained in the span of K");
    MatZ X(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const Rat& q = (*Xq)[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!substrate::is_integer(q)) fail("NotInvariant", "L^n K is not a subgroup of K");
            X.at(i, j) = q.get_num();
        }
    Int d = X.det();
    if (d == 0) fail("NotInvariant", "inflated lattice is degenerate");
    return d < 0 ? Int(-d) : d;
}

std::vector<Vec> coset_representatives(const PeriodGroup& K, const ExpansionMap& L, int n) {
    const int r = K.lattice.cols;
    std::vector<Vec> reps;
    if (r == 0) {
        reps.push_back(Vec::zero(K.dim));
        return reps;
    }
    auto Xq = inflated_lattice_coords(K, L, n);
    if (!Xq) fail("NotInvariant", "L^n K is not contained in the span of K");
    MatZ X(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const Rat& q = (*Xq)[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!substrate::is_integer(q)) fail("NotInvariant", "L^n K is not a subgroup of K");
            X.at(i, j) = q.get_num();
        }
    SnfResult s = snf(X);  // D = U X V
    // Z^r / X Z^r == Z^r / U^{-1} D Z^r; representatives U^{-1} j for j in box(D)
    // U is unimodular; invert exactly
    MatZ Uinv(r, r);
    {
        // adjugate-based inverse for r <= 2, generic elimination otherwise
        Int det = s.U.det();
        if (det != 1 && det != -1) fail("Internal", "SNF transform not unimodular");
        if (r == 1) {
            Uinv.at(0, 0) = s.U.at(0, 0);  // +-1
        } else if (r == 2) {
            Int sgn = det;
            Uinv.at(0, 0) = sgn * s.U.at(1, 1);
            Uinv.at(0, 1) = -sgn * s.U.at(0, 1);
            Uinv.at(1, 0) = -sgn * s.U.at(1, 0);
            Uinv.at(1, 1) = sgn * s.U.at(0, 0);
        } else {
            fail("DimMismatch", "coset enumeration restricted to rank <= 2");
        }
    }
    std::vector<Int> diag(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) diag[static_cast<size_t>(i)] = s.D.at(i, i);
    std::vector<Int> idx(static_cast<size_t>(r), Int(0));
    while (true) {
        // rep = Lambda * (Uinv * idx)
        Vec rep = Vec::zero(K.dim);
        std::vector<Int> coeff(static_cast<size_t>(r), Int(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) coeff[static_cast<size_t>(i)] += Uinv.at(i, j) * idx[static_cast<size_t>(j)];
        for (int i = 0; i < K.dim; ++i) {
            Int v = 0;
            for (int j = 0; j < r; ++j) v += K.lattice.at(i, j) * coeff[static_cast<size_t>(j)];
            rep[i] = to_ll(v);
        }
        reps.push_back(rep);
        int t = 0;
        for (; t < r; ++t) {
            idx[static_cast<size_t>(t)] += 1;
            if (idx[static_cast<size_t>(t)] < diag[static_cast<size_t>(t)]) break;
            idx[static_cast<size_t>(t)] = 0;
        }
        if (t == r) break;
    }
    // post: pairwise differences not in L^n K
    if (reps.size() <= 64) {
        PeriodGroup LK = inflate_periods(K, L.power(n));
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j) {
                RatVec diff = RatVec::from(reps[i]) - RatVec::from(reps[j]);
                if (LK.contains(diff)) fail("Internal", "coset representatives collide modulo L^n K");
            }
    }
    return reps;
}

}  // namespace substrate::lattice
