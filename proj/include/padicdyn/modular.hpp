#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "padicdyn/errors.hpp"

namespace padicdyn {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

/// Inverse of a modulo m (extended Euclid). Throws NonUnitDenominator when
/// gcd(a, m) != 1.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) {
        throw NonUnitDenominator("value " + std::to_string(a) + " is not a unit mod " +
                                 std::to_string(m));
    }
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

/// Nonnegative residue of z modulo m (m < 2^63).
inline std::uint64_t residue_mod(const mpz_class& z, std::uint64_t m) {
    mpz_class mm(static_cast<unsigned long>(m));
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mm.get_mpz_t());
    return r.get_ui();
}

/// Residue of the rational num/den modulo m; requires gcd(den, m) = 1.
inline std::uint64_t rational_residue_mod(const mpq_class& q, std::uint64_t m) {
    std::uint64_t num = residue_mod(q.get_num(), m);
    std::uint64_t den = residue_mod(q.get_den(), m);
    return mul_mod(num, inv_mod(den, m), m);
}

} // namespace padicdyn
