#include "lineal/scalar.hpp"

#include <cctype>

namespace lineal {

Scalar::Scalar(const Int& num, const Int& den) {
    if (den == 0) throw ScalarParseError("scalar denominator is zero");
    // the backing rational reduces to lowest terms but requires a positive
    // denominator up front
    if (den < 0)
        v_ = Rep(Int(-num), Int(-den));
    else
        v_ = Rep(num, den);
}

Scalar Scalar::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero scalar");
    Int n = numerator(), d = denominator();
    if (n < 0) {
        n = -n;
        d = -d;
    }
    return Scalar(Rep(std::move(d), std::move(n)));
}

Scalar parse_scalar(std::string_view text) {
    size_t i = 0;
    auto fail = [&]() -> ScalarParseError {
        return ScalarParseError("malformed scalar literal: '" + std::string(text) + "'");
    };
    bool neg = false;
    if (i < text.size() && text[i] == '-') {
        neg = true;
        ++i;
    }
    auto read_int = [&]() -> Scalar::Int {
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw fail();
        return Scalar::Int(std::string(text.substr(start, i - start)));
    };
    Scalar::Int num = read_int();
    Scalar::Int den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = read_int();
        if (den == 0) throw ScalarParseError("scalar denominator is zero");
    }
    if (i != text.size()) throw fail();
    if (neg) num = -num;
    return Scalar(num, den);
}

std::string print_scalar(const Scalar& s) {
    std::string out = s.numerator().str();
    if (s.denominator() != 1) {
        out += '/';
        out += s.denominator().str();
    }
    return out;
}

}  // namespace lineal
