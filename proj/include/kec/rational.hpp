#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace kec {

// Exact rational scalar. All LP values, capacities and costs in this library
// are of this type; there is no floating point anywhere on the solution path.
// Invariant: always canonical (reduced fraction, positive denominator).
class Rat {
public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_(static_cast<signed long>(n)) {}
    Rat(long long n) { v_ = make_int(n); }
    Rat(long num, long den);

    // Accepts "p", "-p/q", and plain decimals such as "2.75" (converted
    // exactly). Throws ParseError on anything else.
    static Rat parse(const std::string& s);

    bool is_integer() const { return mpz_cmp_ui(v_.get_den().get_mpz_t(), 1) == 0; }
    Rat floor() const;
    Rat ceil() const;
    Rat abs() const { return Rat(v_ < 0 ? mpq_class(-v_) : v_); }
    int sgn() const { return mpq_sgn(v_.get_mpq_t()); }

    // Requires is_integer() and a value that fits in long long.
    long long to_int() const;

    // "p" when integral, "p/q" otherwise; lossless.
    std::string str() const;

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    explicit Rat(mpq_class v) : v_(std::move(v)) {}
    static mpq_class make_int(long long n);
    mpq_class v_;
};

} // namespace kec
