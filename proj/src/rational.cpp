#include "iso/rational.hpp"

namespace iso {

std::optional<Rat> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(text);
            return Rat(n);
        }
        std::string ns = text.substr(0, slash);
        std::string ds = text.substr(slash + 1);
        if (ns.empty() || ds.empty()) return std::nullopt;
        mpz_class n(ns), d(ds);
        if (d == 0) return std::nullopt;
        Rat r(n, d);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string format_rational(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rational_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return b;
    if (b == 0) return a;
    // gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s)
    mpz_class num;
    mpz_gcd(num.get_mpz_t(),
            mpz_class(a.get_num() * b.get_den()).get_mpz_t(),
            mpz_class(b.get_num() * a.get_den()).get_mpz_t());
    Rat g(num, a.get_den() * b.get_den());
    g.canonicalize();
    return g;
}

Rat ceil_to_multiple(const Rat& value, const Rat& step) {
    if (step <= 0) throw std::invalid_argument("ceil_to_multiple: step must be positive");
    Rat q = value / step;
    mpz_class k;
    mpz_cdiv_q(k.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return Rat(k) * step;
}

Rat rational_floor(const Rat& value) {
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
    return Rat(k);
}

} // namespace iso
