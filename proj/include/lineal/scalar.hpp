#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lineal {

// Exact rational scalars, the commutative ring shared by terms and types.
// Values are immutable and always kept in lowest terms with a positive
// denominator; zero is 0/1.
class Scalar {
public:
    using Int = boost::multiprecision::cpp_int;
    using Rep = boost::multiprecision::cpp_rational;

    Scalar() : v_(0) {}
    Scalar(long n) : v_(n) {}
    explicit Scalar(Int n) : v_(std::move(n)) {}
    Scalar(const Int& num, const Int& den);

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Int numerator() const { return boost::multiprecision::numerator(v_); }
    Int denominator() const { return boost::multiprecision::denominator(v_); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return Scalar(Rep(a.v_ + b.v_)); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return Scalar(Rep(a.v_ * b.v_)); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return Scalar(Rep(a.v_ - b.v_)); }
    Scalar operator-() const { return Scalar(Rep(-v_)); }

    // Division is a convenience of the concrete ring (the rationals), not
    // part of the ring interface proper.
    Scalar reciprocal() const;

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }

    // Total order used wherever a deterministic ordering of scalars is
    // needed; returns <0, 0, >0.
    friend int compare(const Scalar& a, const Scalar& b) {
        if (a.v_ < b.v_) return -1;
        if (b.v_ < a.v_) return 1;
        return 0;
    }

private:
    explicit Scalar(Rep v) : v_(std::move(v)) {}
    Rep v_;
};

struct ScalarParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Literals: INT, -INT or INT/INT (denominator positive). Rejects anything
// else, including whitespace.
Scalar parse_scalar(std::string_view text);

// Lowest terms; "n" when the denominator is 1, "n/d" otherwise.
std::string print_scalar(const Scalar& s);

}  // namespace lineal
