#include "walklab/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace walklab {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

// "12.34" with optional exponent -> exact rational.
Rational parse_decimal(const std::string& body, long exp10) {
    auto dot = body.find('.');
    std::string digits = body;
    long frac_digits = 0;
    if (dot != std::string::npos) {
        digits = body.substr(0, dot) + body.substr(dot + 1);
        frac_digits = static_cast<long>(body.size() - dot - 1);
    }
    if (!all_digits(digits)) throw ValidationError("bad rational literal: " + body);
    mpz_class num(digits, 10);
    mpz_class den = 1;
    long shift = exp10 - frac_digits;
    mpz_class ten = 10;
    if (shift >= 0) {
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift));
        num *= scale;
    } else {
        mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-shift));
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ValidationError("empty rational literal");

    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        s.erase(0, 1);
    }
    if (s.empty()) throw ValidationError("bad rational literal: " + text);

    Rational q;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ValidationError("bad rational literal: " + text);
        q = Rational(mpz_class(num, 10), mpz_class(den, 10));
        if (q.get_den() == 0) throw ValidationError("zero denominator: " + text);
        q.canonicalize();
    } else {
        long exp10 = 0;
        auto epos = s.find_first_of("eE");
        std::string body = s;
        if (epos != std::string::npos) {
            body = s.substr(0, epos);
            const std::string etxt = s.substr(epos + 1);
            if (etxt.empty()) throw ValidationError("bad rational literal: " + text);
            char* end = nullptr;
            exp10 = std::strtol(etxt.c_str(), &end, 10);
            if (end == nullptr || *end != '\0') throw ValidationError("bad rational literal: " + text);
        }
        if (body.empty() || body == ".") throw ValidationError("bad rational literal: " + text);
        q = parse_decimal(body, exp10);
    }
    if (neg) q = -q;
    return q;
}

std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace walklab
