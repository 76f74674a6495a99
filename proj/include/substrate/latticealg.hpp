#pragma once

#include "substrate/exact.hpp"
#include "substrate/quadnum.hpp"
#include "substrate/vec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace substrate::lattice {

// Dense integer matrix, exact arithmetic.
struct MatZ {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    MatZ() = default;
    MatZ(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), Int(0)) {}
    static MatZ identity(int n);
    static MatZ from_columns(int dim, const std::vector<std::vector<long long>>& cols);

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    const Int& at(int i, int j) const {
        return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
    }
    MatZ times(const MatZ& other) const;
    MatZ column(int j) const;
    bool is_zero() const;
    Int det() const;  // square only
    friend bool operator==(const MatZ& x, const MatZ& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }
    std::string str() const;
};

// column-style Hermite normal form: H = M * U with U unimodular; H is lower
// triangular with positive diagonal and 0 <= h_ij < h_ii... canonical columns;
// zero columns are dropped so H's columns are a basis of the column lattice
struct HnfResult {
    MatZ H;
    MatZ U;  // transform on the full column count, M * U = [H | 0]
};
HnfResult hnf(const MatZ& M);

// Smith normal form D = U * M * V, diagonal entries d1 | d2 | ...
struct SnfResult {
    MatZ D, U, V;
};
SnfResult snf(const MatZ& M);

// integer kernel basis (columns) of M
MatZ kernel_basis(const MatZ& M);

// intersection of two full-column-rank lattices given by bases (columns)
MatZ lattice_intersection(const MatZ& A, const MatZ& B);

// solve M x = rhs over the rationals; empty if inconsistent
std::optional<std::vector<Rat>> solve_rational(const MatZ& M, const std::vector<Rat>& rhs);

// all eigenvalues strictly outside the closed unit disc (Schur-Cohn on the
// reversed characteristic polynomial, exact rational arithmetic)
bool is_expansive(const MatZ& L);

// characteristic polynomial coefficients c_0 + c_1 x + ... + c_n x^n (monic)
std::vector<Rat> char_poly(const MatZ& L);
// all roots of p strictly inside the open unit disc
bool schur_stable(std::vector<Rat> p);

// -- expansion maps and period groups ----------------------------------------

// Square matrix over a fixed real quadratic field (rational when D = 0).
struct ExpansionMap {
    int dim = 1;
    std::vector<QuadNum> entries;  // row-major
    bool expansive_certified = false;

    static ExpansionMap from_int(const MatZ& m);
    static ExpansionMap scalar(int dim, QuadNum v);
    static ExpansionMap diag(std::vector<QuadNum> values);

    const QuadNum& at(int i, int j) const { return entries[static_cast<size_t>(i * dim + j)]; }
    bool is_integer() const;
    MatZ to_int() const;
    ExpansionMap power(int n) const;
    std::string str() const;
};

bool is_expansive(const ExpansionMap& L);

struct Certificate {
    enum class Kind { Certified, Declared };
    Kind kind = Kind::Declared;
    long long bound = 0;   // window / norm bound the certification searched
    std::string method;
};

// Closed subgroup K = V + Lambda: rational subspace V plus an integer lattice
// whose span meets V trivially. The lattice basis is kept in canonical HNF.
struct PeriodGroup {
    int dim = 1;
    std::vector<RatVec> subspace;  // basis of V, possibly empty
    MatZ lattice;                  // dim x r, canonical HNF columns, r >= 0
    Certificate cert;

    static PeriodGroup trivial(int dim);
    static PeriodGroup from_lattice(int dim, const MatZ& generators, Certificate cert = {});
    static PeriodGroup full_space(int dim);                         // Declared
    static PeriodGroup subspace_group(int dim, std::vector<RatVec> basis);  // Declared

    int lattice_rank() const { return lattice.cols; }
    bool is_trivial() const { return subspace.empty() && lattice_rank() == 0; }
    bool contains(const RatVec& v) const;  // membership x in V + Lambda
    std::string str() const;
};

bool has_trivial_discrete_component(const PeriodGroup& K);

PeriodGroup inflate_periods(const PeriodGroup& K, const ExpansionMap& L);
bool check_invariance(const PeriodGroup& K, const ExpansionMap& L);

// [L^n K : K] = |det X| where X expresses L^n Lambda' in the Lambda' basis
// modulo the subspace; the subspace contributes factor 1
Int index_of_inflated(const PeriodGroup& K, const ExpansionMap& L, int n);

// representatives of K / L^n K, exactly index_of_inflated of them
std::vector<Vec> coset_representatives(const PeriodGroup& K, const ExpansionMap& L, int n);

}  // namespace substrate::lattice
