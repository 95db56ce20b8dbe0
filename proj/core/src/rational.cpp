#include "tophier/rational.hpp"

namespace tophier {

Rat Rat::parse(std::string_view text) {
    if (text.empty()) raise(ErrorKind::ParseError, "Rat: empty literal");
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(mpz_class(s));
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) raise(ErrorKind::ParseError, "Rat: zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        raise(ErrorKind::ParseError, "Rat: bad literal '" + s + "'");
    }
}

Rat Rat::pow(long e) const {
    if (e == 0) return Rat(1);
    if (is_zero()) {
        if (e < 0) raise(ErrorKind::Precondition, "Rat: 0 to negative power");
        return Rat(0);
    }
    mpz_class n, d;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), a);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), a);
    return e > 0 ? Rat(n, d) : Rat(d, n);
}

Rat Rat::inverse() const {
    if (is_zero()) raise(ErrorKind::Precondition, "Rat: inverse of zero");
    return Rat(q_.get_den(), q_.get_num());
}

std::string Rat::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

mpz_class factorial(long n) {
    if (n < 0) raise(ErrorKind::Precondition, "factorial of negative integer");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class double_factorial(long n) {
    if (n == -1 || n == 0) return 1;
    if (n < -1) raise(ErrorKind::Precondition, "double factorial below -1");
    mpz_class r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class binomial(long n, long k) {
    if (k < 0) return 0;
    // C(n, k) = n (n-1) ... (n-k+1) / k!  valid for any integer n.
    mpz_class num = 1;
    for (long i = 0; i < k; ++i) num *= mpz_class(n - i);
    mpz_class r = num / factorial(k);
    return r;
}

Rat rat_factorial_inv(long n) {
    if (n < 0) return Rat(0);
    return Rat(mpz_class(1), factorial(n));
}

}  // namespace tophier
