#include "padicdyn/padic_number.hpp"

#include <utility>

namespace padicdyn {

bool is_prime(long p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

std::string Radius::rendered(long prime) const {
    if (zero_) return "0";
    return std::to_string(prime) + "^" + std::to_string(exp_);
}

PadicNumber::PadicNumber(mpq_class value, long prime) : value_(std::move(value)), prime_(prime) {
    if (!is_prime(prime_)) {
        throw NotPrime("p must be prime, got " + std::to_string(prime_));
    }
    if (sgn(value_.get_den()) == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    value_.canonicalize();
}

PadicNumber PadicNumber::parse(const std::string& text, long prime) {
    std::string num = text;
    std::string den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    mpz_class n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
        throw ConfigError("cannot parse rational \"" + text + "\"");
    }
    if (d == 0) throw ConfigError("zero denominator in \"" + text + "\"");
    return PadicNumber(mpq_class(n) / mpq_class(d), prime);
}

std::optional<long> PadicNumber::valuation() const {
    if (is_zero()) return std::nullopt;
    const mpz_class p(prime_);
    mpz_class stripped;
    // The fraction is reduced, so at most one of num/den carries factors of p.
    long vnum = static_cast<long>(
        mpz_remove(stripped.get_mpz_t(), value_.get_num().get_mpz_t(), p.get_mpz_t()));
    if (vnum > 0) return vnum;
    long vden = static_cast<long>(
        mpz_remove(stripped.get_mpz_t(), value_.get_den().get_mpz_t(), p.get_mpz_t()));
    return -vden;
}

Radius PadicNumber::norm() const {
    auto v = valuation();
    if (!v) return Radius::zero();
    return Radius::power(-*v);
}

std::string PadicNumber::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

void require_same_prime(const PadicNumber& a, const PadicNumber& b) {
    if (a.prime() != b.prime()) {
        throw PrimeMismatch("operands live in Q_" + std::to_string(a.prime()) + " and Q_" +
                            std::to_string(b.prime()));
    }
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    return PadicNumber(a.value_ + b.value_, a.prime_);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    return PadicNumber(a.value_ - b.value_, a.prime_);
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    return PadicNumber(a.value_ * b.value_, a.prime_);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    if (b.is_zero()) throw DivisionByZero("division by zero in Q_" + std::to_string(a.prime_));
    return PadicNumber(a.value_ / b.value_, a.prime_);
}

PadicNumber PadicNumber::operator-() const {
    return PadicNumber(-value_, prime_);
}

mpq_class prime_power(long prime, long exp) {
    mpz_class base(prime);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp < 0 ? -exp : exp));
    if (exp >= 0) return mpq_class(pw);
    return mpq_class(1) / mpq_class(pw);
}

SphereSpec::SphereSpec(PadicNumber center_point, Radius r)
    : center(std::move(center_point)), radius(r) {
    if (radius.is_zero()) {
        throw ZeroRadius("sphere radius must be a power of p");
    }
}

bool in_ball(const PadicNumber& x, const BallSpec& ball) {
    require_same_prime(x, ball.center);
    return (x - ball.center).norm() <= ball.radius;
}

bool in_sphere(const PadicNumber& x, const SphereSpec& sphere) {
    require_same_prime(x, sphere.center);
    return (x - sphere.center).norm() == sphere.radius;
}

} // namespace padicdyn
