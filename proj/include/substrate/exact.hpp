#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace substrate {

using Int = mpz_class;
using Rat = mpq_class;

// Error with a stable machine-readable code ("SubShapeNotContained", ...) plus
// a human message. The CLI maps codes to exit classes.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

inline long long to_ll(const Int& z) {
    if (!z.fits_slong_p()) fail("IntOverflow", "value does not fit in a machine word: " + z.get_str());
    return z.get_si();
}

// floor division/mod for machine integers (C++ '/' truncates toward zero)
inline long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline long long floor_mod(long long a, long long b) { return a - floor_div(a, b) * b; }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline Int floor_mod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Rat rat(long long num, long long den = 1) {
    Rat q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

// fractional part in [0, 1)
inline Rat rat_frac(const Rat& q) {
    Rat f = q - Rat(rat_floor(q));
    f.canonicalize();
    return f;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string rat_str(const Rat& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) fail("BadRational", "cannot parse '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace substrate
