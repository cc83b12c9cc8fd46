#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace obsprob {

using Integer = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always in lowest terms with positive
// denominator. cpp_rational maintains that canonical form itself; the
// helper below exists because its two-argument constructor rejects
// negative denominators instead of normalizing them.
using Rational = boost::multiprecision::cpp_rational;

Rational make_rational(Integer numerator, Integer denominator);

inline int sign_of(const Rational& q) { return q.sign(); }

std::string format_rational(const Rational& q);

/// Thrown by the scalar/file parsers; `position` is a byte offset into
/// the offending input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// An element a + b*sqrt(2) of the real quadratic field Q(sqrt 2), held
/// exactly as the pair of rationals (a, b). The representation is unique,
/// so equality is structural; ordering is the real-number order.
class Scalar {
public:
    Scalar() = default;
    Scalar(int value) : rat_(value) {}             // NOLINT: implicit by design
    Scalar(Rational rational) : rat_(std::move(rational)) {}
    Scalar(Rational rational, Rational root2_coeff)
        : rat_(std::move(rational)), root2_(std::move(root2_coeff)) {}

    static Scalar sqrt2() { return Scalar(Rational(0), Rational(1)); }

    const Rational& rat() const { return rat_; }
    const Rational& root2() const { return root2_; }

    bool is_zero() const { return rat_.is_zero() && root2_.is_zero(); }
    bool is_rational() const { return root2_.is_zero(); }

    /// Sign of the real number a + b*sqrt(2): when a and b disagree in
    /// sign the comparison a^2 vs 2 b^2 decides.
    int sign() const;

    bool is_negative() const { return sign() < 0; }
    bool is_nonnegative() const { return sign() >= 0; }

    double to_double() const;

    Scalar operator-() const { return Scalar(-rat_, -root2_); }

    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    friend bool operator==(const Scalar& lhs, const Scalar& rhs) {
        return lhs.rat_ == rhs.rat_ && lhs.root2_ == rhs.root2_;
    }
    friend std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
        const int s = (lhs - rhs).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    Rational rat_{};    // coefficient of 1
    Rational root2_{};  // coefficient of sqrt(2)
};

/// Parses `rational ( ("+"|"-") rational "*" "sqrt2" )?` with
/// `rational := "-"? digits ("/" digits)?`. Whitespace is ignored
/// everywhere. Throws ParseError on malformed input.
Scalar parse_scalar(std::string_view text);

/// Canonical text form; parse_scalar(format_scalar(x)) == x.
std::string format_scalar(const Scalar& x);

}  // namespace obsprob
