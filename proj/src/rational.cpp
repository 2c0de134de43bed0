#include <symchain/rational.hpp>

#include <stdexcept>

namespace symchain {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto digits_ok = [](std::string_view part) {
        if (!part.empty() && part.front() == '-') part.remove_prefix(1);
        if (part.empty()) return false;
        for (char ch : part) {
            if (ch < '0' || ch > '9') return false;
        }
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den) || den.front() == '-') {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
    Integer d(den);
    if (sgn(d) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
    Integer l = 1;
    for (const auto& v : values) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    return l;
}

std::vector<Rational> make_primitive(std::vector<Rational> v) {
    Integer l = lcm_of_denominators(v);
    Integer g = 0;
    for (auto& x : v) {
        x *= l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    if (sgn(g) == 0) return v;
    for (auto& x : v) x /= g;
    return v;
}

}  // namespace symchain
