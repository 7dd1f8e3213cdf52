#include "fusionq/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fusionq {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        const bool ok = (c >= '0' && c <= '9') || c == '/' || (i == 0 && (c == '-' || c == '+'));
        if (!ok) throw std::invalid_argument("bad rational literal '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    if (s.find('/') != std::string::npos && s.back() == '/') throw std::invalid_argument("bad rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string var_name(int v) {
    if (v == 0) return "t";
    return "L" + std::to_string(v);
}

int var_index(std::string_view name) {
    if (name == "t") return 0;
    if (name.size() == 2 && name[0] == 'L' && name[1] >= '1' && name[1] < '1' + (kNumVars - 1)) return name[1] - '0';
    return -1;
}

Poly::Poly(const Rational& c) {
    if (!fusionq::is_zero(c)) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(int v, int power) {
    if (v < 0 || v >= kNumVars) throw std::out_of_range("variable index");
    Poly p;
    Monomial m{};
    m[v] = static_cast<std::uint8_t>(power);
    p.terms_.emplace(m, Rational(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

Rational Poly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

const Poly::Monomial& Poly::leading_monomial() const {
    if (terms_.empty()) throw std::domain_error("leading monomial of zero polynomial");
    return terms_.begin()->first;
}

int Poly::degree_in(int v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m[v]));
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (auto e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

int Poly::main_var() const {
    for (int v = kNumVars - 1; v >= 0; --v)
        if (involves(v)) return v;
    return -1;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (fusionq::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (fusionq::is_zero(it->second)) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (fusionq::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Poly::Monomial m;
            for (int v = 0; v < kNumVars; ++v) m[v] = static_cast<std::uint8_t>(ma[v] + mb[v]);
            r.add_term(m, ca * cb);
        }
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

std::vector<Poly> Poly::coeffs_in(int v) const {
    std::vector<Poly> out(static_cast<std::size_t>(degree_in(v)) + 1);
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        const int k = rest[v];
        rest[v] = 0;
        out[k].add_term(rest, c);
    }
    return out;
}

Poly Poly::from_coeffs(const std::vector<Poly>& coeffs, int v) {
    Poly r;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (const auto& [m, c] : coeffs[k].terms_) {
            Monomial mm = m;
            mm[v] = static_cast<std::uint8_t>(mm[v] + k);
            r.add_term(mm, c);
        }
    return r;
}

Poly Poly::substitute(int v, const Rational& value) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        Rational pw = 1;
        for (int k = 0; k < m[v]; ++k) pw *= value;
        rest[v] = 0;
        r.add_term(rest, c * pw);
    }
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    r *= Rational(1) / leading_coeff();
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool neg = sgn(c) < 0;
        Rational a = abs(c);
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        const bool constant = m == Monomial{};
        bool need_star = false;
        if (constant || a != 1) {
            os << a.get_str();
            need_star = true;
        }
        for (int v = 0; v < kNumVars; ++v) {
            if (m[v] == 0) continue;
            if (need_star) os << "*";
            os << var_name(v);
            if (m[v] > 1) os << "^" << int(m[v]);
            need_star = true;
        }
    }
    return os.str();
}

Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly q, rem = a;
    const auto& lm = b.leading_monomial();
    const Rational& lc = b.leading_coeff();
    while (!rem.is_zero()) {
        const auto& rm = rem.leading_monomial();
        Poly::Monomial qm;
        for (int v = 0; v < kNumVars; ++v) {
            if (rm[v] < lm[v]) throw std::domain_error("polynomial division is not exact");
            qm[v] = static_cast<std::uint8_t>(rm[v] - lm[v]);
        }
        Poly mono(rem.leading_coeff() / lc);
        for (int v = 0; v < kNumVars; ++v)
            if (qm[v] > 0) mono = mono * Poly::variable(v, qm[v]);
        q += mono;
        rem -= mono * b;
    }
    return q;
}

Poly pseudo_rem(const Poly& a, const Poly& b, int v) {
    const int db = b.degree_in(v);
    auto bc = b.coeffs_in(v);
    const Poly& lb = bc.back();
    Poly r = a;
    while (!r.is_zero() && r.degree_in(v) >= db) {
        const int dr = r.degree_in(v);
        auto rc = r.coeffs_in(v);
        Poly shift = rc.back() * Poly::variable(v, dr - db);
        r = lb * r - shift * b;
    }
    return r;
}

Poly content_in(const Poly& a, int v) {
    Poly g;
    for (const auto& c : a.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return g;
    }
    return g;
}

namespace {

Poly primitive_part(const Poly& a, int v) {
    if (a.is_zero()) return a;
    return exact_div(a, content_in(a, v)).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
    const int v = std::max(a.main_var(), b.main_var());
    if (!a.involves(v)) return gcd(a, content_in(b, v));
    if (!b.involves(v)) return gcd(content_in(a, v), b);
    const Poly ca = content_in(a, v);
    const Poly cb = content_in(b, v);
    Poly p = exact_div(a, ca).monic();
    Poly q = exact_div(b, cb).monic();
    if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
    while (!q.is_zero()) {
        Poly r = pseudo_rem(p, q, v);
        p = std::move(q);
        q = r.is_zero() ? r : primitive_part(r, v);
    }
    // p is primitive in v; a zero-degree remainder means the v-part is trivial.
    Poly g = p.involves(v) ? primitive_part(p, v) : Poly(Rational(1));
    return (gcd(ca, cb) * g).monic();
}

}  // namespace fusionq
