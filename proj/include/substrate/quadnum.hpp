#pragma once

#include "substrate/exact.hpp"

#include <string>

namespace substrate {

// Exact element a + b*sqrt(D) of a real quadratic field, D squarefree > 1.
// Plain rationals carry D = 0 and mix freely with any field.
struct QuadNum {
    Rat a, b;
    long long D = 0;

    QuadNum() : a(0), b(0) {}
    QuadNum(long long v) : a(rat(v)), b(0) {}  // NOLINT(google-explicit-constructor)
    explicit QuadNum(Rat v) : a(std::move(v)), b(0) {}
    QuadNum(Rat ra, Rat rb, long long d) : a(std::move(ra)), b(std::move(rb)), D(d) {
        if (b == 0) D = 0;
        if (D < 0) fail("BadField", "negative radicand");
    }

    bool is_rational() const { return b == 0; }

    static long long join_field(const QuadNum& x, const QuadNum& y) {
        if (x.D == 0) return y.D;
        if (y.D == 0 || x.D == y.D) return x.D;
        fail("FieldMismatch", "cannot mix sqrt(" + std::to_string(x.D) + ") with sqrt(" + std::to_string(y.D) + ")");
    }

    friend QuadNum operator+(const QuadNum& x, const QuadNum& y) {
        return QuadNum(x.a + y.a, x.b + y.b, join_field(x, y));
    }
    friend QuadNum operator-(const QuadNum& x, const QuadNum& y) {
        return QuadNum(x.a - y.a, x.b - y.b, join_field(x, y));
    }
    friend QuadNum operator-(const QuadNum& x) { return QuadNum(-x.a, -x.b, x.D); }
    friend QuadNum operator*(const QuadNum& x, const QuadNum& y) {
        long long d = join_field(x, y);
        return QuadNum(x.a * y.a + x.b * y.b * rat(d), x.a * y.b + x.b * y.a, d);
    }
    QuadNum inverse() const {
        Rat norm = a * a - b * b * rat(D);
        if (norm == 0) fail("DivisionByZero", "inverse of zero or degenerate element");
        return QuadNum(a / norm, -b / norm, D);
    }
    friend QuadNum operator/(const QuadNum& x, const QuadNum& y) { return x * y.inverse(); }

    int sign() const {
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        Rat diff = a * a - b * b * rat(D);
        return sgn(diff) * sa;
    }
    bool is_zero() const { return sign() == 0; }
    QuadNum abs() const { return sign() >= 0 ? *this : -*this; }

    friend bool operator==(const QuadNum& x, const QuadNum& y) { return (x - y).sign() == 0; }
    friend bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }
    friend bool operator<(const QuadNum& x, const QuadNum& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const QuadNum& x, const QuadNum& y) { return (x - y).sign() <= 0; }
    friend bool operator>(const QuadNum& x, const QuadNum& y) { return (x - y).sign() > 0; }
    friend bool operator>=(const QuadNum& x, const QuadNum& y) { return (x - y).sign() >= 0; }

    double to_double() const { return a.get_d() + b.get_d() * std::sqrt(static_cast<double>(D)); }

    std::string str() const {
        if (b == 0) return rat_str(a);
        std::string s;
        if (a != 0) s = rat_str(a) + (sgn(b) > 0 ? "+" : "");
        if (b == 1)
            s += "";
        else if (b == -1)
            s += "-";
        else
            s += rat_str(b);
        return s + "sqrt" + std::to_string(D);
    }

private:
    static int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }
};

// "p/q", "p/q+r/ssqrt5", "-sqrt5", "3sqrt2" ...
QuadNum parse_quadnum(const std::string& text);

}  // namespace substrate
