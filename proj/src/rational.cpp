#include "contexture/rational.hpp"

#include <cctype>

namespace contexture {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    auto fail = [&] { throw std::invalid_argument("parse_rational: bad rational '" + text + "'"); };

    Rational value;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) fail();
        mpz_class n(num), d(den);
        if (d == 0) fail();
        value = Rational(n, d);
        value.canonicalize();
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) fail();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class n = mpz_class(whole) * scale + mpz_class(frac);
        value = Rational(n, scale);
        value.canonicalize();
    } else {
        if (!all_digits(s)) fail();
        value = Rational(mpz_class(s));
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace contexture
