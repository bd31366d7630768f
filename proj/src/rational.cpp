#include "kec/rational.hpp"

#include "kec/error.hpp"

#include <cctype>
#include <ostream>

namespace kec {

mpq_class Rat::make_int(long long n) {
    mpz_class z;
    // mpz has no long long constructor on LP64 this matters only for pedantry
    z = static_cast<signed long>(n);
    return mpq_class(z);
}

Rat::Rat(long num, long den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    v_ = q;
}

Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto bad = [&] { throw ParseError("bad rational literal: '" + s + "'"); };
    std::string t = s;
    // decimal form: sign, digits, '.', digits
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        std::string head = t.substr(0, dot), tail = t.substr(dot + 1);
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) bad();
        std::string digits = head + tail;
        if (digits.empty()) bad();
        mpz_class num, den(1);
        if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0) bad();
        mpz_ui_pow_ui(den.get_mpz_t(), 10, tail.size());
        mpq_class q(num, den);
        q.canonicalize();
        Rat r;
        r.v_ = q;
        return r;
    }
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0) bad();
    if (mpz_sgn(q.get_den().get_mpz_t()) == 0) throw ParseError("rational with zero denominator: '" + s + "'");
    q.canonicalize();
    Rat r;
    r.v_ = q;
    return r;
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.sgn() == 0) throw InvariantError("rational division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
}

Rat Rat::floor() const {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    Rat r;
    r.v_ = mpq_class(z);
    return r;
}

Rat Rat::ceil() const {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    Rat r;
    r.v_ = mpq_class(z);
    return r;
}

long long Rat::to_int() const {
    KEC_CHECK(is_integer(), "to_int on non-integer rational " + str());
    KEC_CHECK(v_.get_num().fits_slong_p(), "integer rational out of range");
    return v_.get_num().get_si();
}

std::string Rat::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

} // namespace kec
