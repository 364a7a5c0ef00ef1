#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "padicdyn/errors.hpp"

namespace padicdyn {

/// An exact p-adic norm value: either zero or an integer power p^l,
/// stored as the exponent l. Comparisons and arithmetic are pure integer
/// operations on exponents; no floating point is involved anywhere.
class Radius {
public:
    static Radius zero() { return Radius(true, 0); }
    static Radius power(long exponent) { return Radius(false, exponent); }

    bool is_zero() const { return zero_; }
    bool is_power() const { return !zero_; }

    /// Exponent l of p^l. Throws ZeroRadius for the zero radius.
    long exponent() const {
        if (zero_) throw ZeroRadius("zero radius has no exponent");
        return exp_;
    }

    friend bool operator==(const Radius& a, const Radius& b) {
        if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
        return a.exp_ == b.exp_;
    }

    /// Total order with zero < p^l for every l.
    friend std::strong_ordering operator<=>(const Radius& a, const Radius& b) {
        if (a.zero_ && b.zero_) return std::strong_ordering::equal;
        if (a.zero_) return std::strong_ordering::less;
        if (b.zero_) return std::strong_ordering::greater;
        return a.exp_ <=> b.exp_;
    }

    /// Norm multiplicativity: p^a * p^b = p^(a+b); zero absorbs.
    friend Radius operator*(const Radius& a, const Radius& b) {
        if (a.zero_ || b.zero_) return zero();
        return power(a.exp_ + b.exp_);
    }

    friend Radius operator/(const Radius& a, const Radius& b) {
        if (b.zero_) throw ZeroRadius("division by zero radius");
        if (a.zero_) return zero();
        return power(a.exp_ - b.exp_);
    }

    Radius squared() const { return zero_ ? zero() : power(2 * exp_); }

    /// Rendered form "p^l", e.g. "2^-3"; "0" for the zero radius.
    std::string rendered(long prime) const;

private:
    Radius(bool is_zero_value, long exponent) : zero_(is_zero_value), exp_(exponent) {}
    bool zero_;
    long exp_;
};

/// An exact rational number viewed as an element of Q_p for a fixed prime p.
/// The value is always reduced (gcd(num, den) = 1, den >= 1, zero is 0/1),
/// and the valuation/norm are computed exactly from the reduced fraction.
/// Immutable; all operations return fresh values.
class PadicNumber {
public:
    /// Throws NotPrime unless p is a prime >= 2 (deterministic trial division),
    /// DivisionByZero if the value has a zero denominator.
    PadicNumber(mpq_class value, long prime);

    static PadicNumber integer(long v, long prime) { return PadicNumber(mpq_class(v), prime); }
    static PadicNumber ratio(long num, long den, long prime) {
        return PadicNumber(mpq_class(num, den), prime);
    }
    /// Parses "num/den" or a bare integer "num".
    static PadicNumber parse(const std::string& text, long prime);

    long prime() const { return prime_; }
    const mpq_class& value() const { return value_; }
    bool is_zero() const { return sgn(value_) == 0; }

    /// p-adic valuation; nullopt encodes +infinity (the valuation of zero).
    std::optional<long> valuation() const;

    /// |x|_p = p^(-valuation), zero radius for x = 0.
    Radius norm() const;

    /// Serialized form "num/den" with den > 0, reduced; zero is "0/1".
    std::string str() const;

    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
    /// Throws DivisionByZero when b = 0.
    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
    PadicNumber operator-() const;

    friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
        return a.prime_ == b.prime_ && a.value_ == b.value_;
    }

private:
    mpq_class value_;
    long prime_;
};

/// Checks the shared prime of two operands. Throws PrimeMismatch.
void require_same_prime(const PadicNumber& a, const PadicNumber& b);

/// Returns p^exp as an exact rational.
mpq_class prime_power(long prime, long exp);

/// Deterministic primality test by trial division (p is small in practice).
bool is_prime(long p);

/// Closed ball U_r(center) = { x : |x - center|_p <= r }.
struct BallSpec {
    PadicNumber center;
    Radius radius;
};

/// Sphere S_r(center) = { x : |x - center|_p = r }. The radius must be a
/// power of p: S_0 degenerates to a point and is disallowed.
struct SphereSpec {
    SphereSpec(PadicNumber center_point, Radius r);
    PadicNumber center;
    Radius radius;
};

bool in_ball(const PadicNumber& x, const BallSpec& ball);
bool in_sphere(const PadicNumber& x, const SphereSpec& sphere);

} // namespace padicdyn
