#pragma once

#include "substrate/exact.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace substrate {

inline constexpr int kMaxDim = 2;

// Integer cell vector of dimension 1 or 2.
struct Vec {
    int dim = 1;
    std::array<long long, kMaxDim> c{0, 0};

    Vec() = default;
    explicit Vec(long long x) : dim(1), c{x, 0} {}
    Vec(long long x, long long y) : dim(2), c{x, y} {}
    static Vec zero(int d) {
        Vec v;
        v.dim = d;
        return v;
    }
    static Vec constant(int d, long long k) {
        Vec v = zero(d);
        for (int i = 0; i < d; ++i) v.c[i] = k;
        return v;
    }

    long long operator[](int i) const { return c[static_cast<size_t>(i)]; }
    long long& operator[](int i) { return c[static_cast<size_t>(i)]; }

    friend Vec operator+(const Vec& a, const Vec& b) {
        Vec r = a;
        for (int i = 0; i < a.dim; ++i) r.c[i] += b.c[i];
        return r;
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        Vec r = a;
        for (int i = 0; i < a.dim; ++i) r.c[i] -= b.c[i];
        return r;
    }
    friend Vec operator-(const Vec& a) {
        Vec r = a;
        for (int i = 0; i < a.dim; ++i) r.c[i] = -r.c[i];
        return r;
    }
    friend Vec operator*(long long k, const Vec& a) {
        Vec r = a;
        for (int i = 0; i < a.dim; ++i) r.c[i] *= k;
        return r;
    }
    friend bool operator==(const Vec& a, const Vec& b) {
        if (a.dim != b.dim) return false;
        for (int i = 0; i < a.dim; ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }
    friend bool operator<(const Vec& a, const Vec& b) {  // lexicographic
        if (a.dim != b.dim) return a.dim < b.dim;
        for (int i = 0; i < a.dim; ++i)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    }

    bool is_zero() const {
        for (int i = 0; i < dim; ++i)
            if (c[i] != 0) return false;
        return true;
    }
    long long max_norm() const {
        long long m = 0;
        for (int i = 0; i < dim; ++i) m = std::max(m, c[i] < 0 ? -c[i] : c[i]);
        return m;
    }
    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < dim; ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s + ")";
    }
};

// Rational vector (translations, phases).
struct RatVec {
    int dim = 1;
    std::array<Rat, kMaxDim> c;

    RatVec() = default;
    explicit RatVec(Rat x) : dim(1), c{std::move(x), Rat(0)} {}
    RatVec(Rat x, Rat y) : dim(2), c{std::move(x), std::move(y)} {}
    static RatVec zero(int d) {
        RatVec v;
        v.dim = d;
        return v;
    }
    static RatVec from(const Vec& v) {
        RatVec r = zero(v.dim);
        for (int i = 0; i < v.dim; ++i) r.c[i] = rat(v[i]);
        return r;
    }

    const Rat& operator[](int i) const { return c[static_cast<size_t>(i)]; }
    Rat& operator[](int i) { return c[static_cast<size_t>(i)]; }

    friend RatVec operator+(const RatVec& a, const RatVec& b) {
        RatVec r = a;
        for (int i = 0; i < a.dim; ++i) r.c[i] += b.c[i];
        return r;
    }
    friend RatVec operator-(const RatVec& a, const RatVec& b) {
        RatVec r = a;
        for (int i = 0; i < a.dim; ++i) r.c[i] -= b.c[i];
        return r;
    }
    friend bool operator==(const RatVec& a, const RatVec& b) {
        if (a.dim != b.dim) return false;
        for (int i = 0; i < a.dim; ++i)
            if (a.c[i] != b.c[i]) return false;
        return true;
    }
    friend bool operator!=(const RatVec& a, const RatVec& b) { return !(a == b); }
    friend bool operator<(const RatVec& a, const RatVec& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        for (int i = 0; i < a.dim; ++i)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    }

    bool is_zero() const {
        for (int i = 0; i < dim; ++i)
            if (c[i] != 0) return false;
        return true;
    }
    bool is_integral() const {
        for (int i = 0; i < dim; ++i)
            if (!is_integer(c[i])) return false;
        return true;
    }
    Vec floor() const {
        Vec v = Vec::zero(dim);
        for (int i = 0; i < dim; ++i) v[i] = to_ll(rat_floor(c[i]));
        return v;
    }
    RatVec frac() const {
        RatVec r = zero(dim);
        for (int i = 0; i < dim; ++i) r.c[i] = rat_frac(c[i]);
        return r;
    }
    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < dim; ++i) s += (i ? "," : "") + rat_str(c[i]);
        return s + ")";
    }
};

struct VecHash {
    size_t operator()(const Vec& v) const {
        size_t h = static_cast<size_t>(v.dim);
        for (int i = 0; i < v.dim; ++i)
            h = h * 1099511628211ULL ^ std::hash<long long>()(v.c[i]);
        return h;
    }
};

}  // namespace substrate
