#include "obsprob/scalar.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace obsprob {

Rational make_rational(Integer numerator, Integer denominator) {
    if (denominator.is_zero()) {
        throw std::domain_error("rational with zero denominator");
    }
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    return Rational(numerator, denominator);
}

std::string format_rational(const Rational& q) {
    std::string out = numerator(q).str();
    if (denominator(q) != 1) {
        out += "/";
        out += denominator(q).str();
    }
    return out;
}

int Scalar::sign() const {
    if (root2_.is_zero()) return rat_.sign();
    if (rat_.is_zero()) return root2_.sign();
    if (rat_.sign() == root2_.sign()) return rat_.sign();
    // a and b have opposite signs: a + b*sqrt2 has the sign of a exactly
    // when |a| > |b|*sqrt2, i.e. when a^2 > 2 b^2. The gap a^2 - 2 b^2 is
    // never zero here because sqrt2 is irrational.
    const Rational gap = rat_ * rat_ - 2 * root2_ * root2_;
    return rat_.sign() * gap.sign();
}

double Scalar::to_double() const {
    return rat_.convert_to<double>() + root2_.convert_to<double>() * std::sqrt(2.0);
}

Scalar& Scalar::operator+=(const Scalar& other) {
    rat_ += other.rat_;
    root2_ += other.root2_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
    rat_ -= other.rat_;
    root2_ -= other.root2_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
    // (a1 + b1 r)(a2 + b2 r) = (a1 a2 + 2 b1 b2) + (a1 b2 + a2 b1) r
    Rational a = rat_ * other.rat_ + 2 * root2_ * other.root2_;
    Rational b = rat_ * other.root2_ + other.rat_ * root2_;
    rat_ = std::move(a);
    root2_ = std::move(b);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
    if (other.is_zero()) {
        throw std::domain_error("division by zero scalar");
    }
    // Multiply by the conjugate: 1/(a + b r) = (a - b r) / (a^2 - 2 b^2).
    // The norm a^2 - 2 b^2 vanishes only at a = b = 0 since sqrt2 is
    // irrational.
    const Rational norm =
        other.rat_ * other.rat_ - 2 * other.root2_ * other.root2_;
    Rational a = (rat_ * other.rat_ - 2 * root2_ * other.root2_) / norm;
    Rational b = (root2_ * other.rat_ - rat_ * other.root2_) / norm;
    rat_ = std::move(a);
    root2_ = std::move(b);
    return *this;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
};

Integer parse_digits(Cursor& c) {
    c.skip_ws();
    const std::size_t start = c.pos;
    while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
        ++c.pos;
    }
    if (c.pos == start) {
        throw ParseError("expected digits", start);
    }
    return Integer(std::string(c.text.substr(start, c.pos - start)));
}

Rational parse_rational(Cursor& c) {
    bool negative = false;
    if (c.peek() == '-') {
        negative = true;
        ++c.pos;
    }
    Integer num = parse_digits(c);
    Integer den = 1;
    if (c.peek() == '/') {
        ++c.pos;
        const std::size_t den_pos = c.pos;
        den = parse_digits(c);
        if (den.is_zero()) {
            throw ParseError("zero denominator", den_pos);
        }
    }
    if (negative) num = -num;
    return make_rational(std::move(num), std::move(den));
}

void expect_keyword(Cursor& c, std::string_view keyword) {
    c.skip_ws();
    if (c.text.substr(c.pos, keyword.size()) != keyword) {
        throw ParseError("expected '" + std::string(keyword) + "'", c.pos);
    }
    c.pos += keyword.size();
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    Cursor c{text};
    Rational rat = parse_rational(c);
    Rational root2 = 0;
    const char op = c.peek();
    if (op == '+' || op == '-') {
        ++c.pos;
        root2 = parse_rational(c);
        expect_keyword(c, "*");
        expect_keyword(c, "sqrt2");
        if (op == '-') root2 = -root2;
    }
    if (!c.done()) {
        throw ParseError("trailing characters", c.pos);
    }
    return Scalar(std::move(rat), std::move(root2));
}

std::string format_scalar(const Scalar& x) {
    if (x.root2().is_zero()) {
        return format_rational(x.rat());
    }
    std::string out = format_rational(x.rat());
    if (x.root2() < 0) {
        out += "-";
        out += format_rational(-x.root2());
    } else {
        out += "+";
        out += format_rational(x.root2());
    }
    out += "*sqrt2";
    return out;
}

}  // namespace obsprob
