#include "fusionq/ratfunc.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace fusionq {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    reduce();
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    if (den_.is_constant()) {
        num_ *= Rational(1) / den_.constant_term();
        den_ = Poly(Rational(1));
        return;
    }
    const Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
    }
    const Rational lc = den_.leading_coeff();
    if (lc != 1) {
        const Rational inv = Rational(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

Rational RatFunc::to_rational() const {
    if (!is_constant()) throw std::domain_error("rational function '" + to_string() + "' is not constant");
    return num_.constant_term();
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (den_ == o.den_) {
        num_ += o.num_;
        if (!den_.is_constant()) reduce();
        else if (num_.is_zero()) den_ = Poly(Rational(1));
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = RatFunc();
    num_ = num_ * o.num_;
    const bool plain = den_.is_constant() && o.den_.is_constant();
    den_ = den_ * o.den_;
    if (!plain) reduce();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    return *this *= RatFunc(o.den_, o.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::substitute(int v, const Rational& value) const {
    Poly d = den_.substitute(v, value);
    if (d.is_zero()) throw std::domain_error("pole at " + var_name(v) + " = " + value.get_str());
    return RatFunc(num_.substitute(v, value), d);
}

std::string RatFunc::to_string() const {
    if (den_.is_constant() && num_.is_constant()) return num_.constant_term().get_str();
    if (den_.is_constant()) return "(" + num_.to_string() + ")";
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    RatFunc parse() {
        RatFunc r = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    RatFunc sum() {
        skip();
        RatFunc r;
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        r = product();
        if (neg) r = -r;
        for (;;) {
            skip();
            const char c = peek();
            if (c != '+' && c != '-') return r;
            ++pos_;
            RatFunc rhs = product();
            if (c == '+') r += rhs;
            else r -= rhs;
        }
    }

    RatFunc product() {
        RatFunc r = power();
        for (;;) {
            skip();
            const char c = peek();
            if (c != '*' && c != '/') return r;
            ++pos_;
            RatFunc rhs = power();
            if (c == '*') r *= rhs;
            else r /= rhs;
        }
    }

    RatFunc power() {
        RatFunc base = atom();
        skip();
        if (peek() != '^') return base;
        ++pos_;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent");
        const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
        RatFunc r(1);
        for (int k = 0; k < e; ++k) r *= base;
        return r;
    }

    RatFunc atom() {
        skip();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc r = sum();
            skip();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return r;
        }
        if (c == '-') {
            ++pos_;
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatFunc(parse_rational(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string_view name = s_.substr(start, pos_ - start);
            const int v = var_index(name);
            if (v < 0) fail("unknown variable '" + std::string(name) + "'");
            return RatFunc::variable(v);
        }
        fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("cannot parse '" + std::string(s_) + "': " + msg);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// Splits p = t^k * q with q(0) != 0; returns k.
int split_t_power(const Poly& p, std::vector<Rational>& q) {
    auto coeffs = p.coeffs_in(0);
    int k = 0;
    while (k < int(coeffs.size()) && coeffs[k].is_zero()) ++k;
    q.clear();
    for (std::size_t i = k; i < coeffs.size(); ++i) q.push_back(coeffs[i].constant_term());
    return k;
}

void require_univariate(const RatFunc& f) {
    for (int v = 1; v < kNumVars; ++v)
        if (f.num().involves(v) || f.den().involves(v))
            throw std::domain_error("Laurent expansion needs a function of t only, got " + f.to_string());
}

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return ExprParser(text).parse(); }

Rational LaurentSeries::coefficient(int power) const {
    const int k = power - valuation;
    if (k < 0 || k >= int(coeffs.size())) return Rational(0);
    return coeffs[k];
}

LaurentSeries laurent_expand(const RatFunc& f, int max_power) {
    require_univariate(f);
    LaurentSeries out;
    if (f.is_zero()) {
        out.valuation = max_power + 1;
        return out;
    }
    std::vector<Rational> n, d;
    const int kn = split_t_power(f.num(), n);
    const int kd = split_t_power(f.den(), d);
    out.valuation = kn - kd;
    const int terms = max_power - out.valuation + 1;
    // power-series division n / d with d[0] != 0
    for (int k = 0; k < terms; ++k) {
        Rational acc = k < int(n.size()) ? n[k] : Rational(0);
        for (int j = 1; j <= k && j < int(d.size()); ++j) acc -= d[j] * out.coeffs[k - j];
        out.coeffs.push_back(acc / d[0]);
    }
    return out;
}

int pole_order_at_zero(const RatFunc& f) {
    require_univariate(f);
    if (f.is_zero()) return 0;
    std::vector<Rational> tmp;
    const int kn = split_t_power(f.num(), tmp);
    const int kd = split_t_power(f.den(), tmp);
    return kd > kn ? kd - kn : 0;
}

namespace {

// Divisors of |n| for n up to 10^12; empty if n is larger.
std::vector<mpz_class> divisors(const mpz_class& n) {
    std::vector<mpz_class> out;
    const mpz_class a = abs(n);
    if (a == 0 || a > mpz_class("1000000000000")) return out;
    std::vector<mpz_class> high;
    for (mpz_class d = 1; d * d <= a; ++d)
        if (a % d == 0) {
            out.push_back(d);
            if (d * d != a) high.push_back(a / d);
        }
    out.insert(out.end(), high.rbegin(), high.rend());
    return out;
}

Rational horner(const std::vector<Rational>& c, const Rational& x) {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = Rational(acc * x + *it);
    return acc;
}

// Divides by (t - r), assuming r is a root.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& r) {
    std::vector<Rational> q(c.size() - 1);
    Rational carry = 0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
        carry = Rational(carry * r + c[k]);
        q[k - 1] = carry;
    }
    return q;
}

std::string power_suffix(int m) { return m > 1 ? "^" + std::to_string(m) : ""; }

std::string factor_univariate(const Poly& p) {
    if (p.is_zero()) return "0";
    std::vector<Rational> c;
    for (const auto& q : p.coeffs_in(0)) c.push_back(q.constant_term());
    int zero_mult = 0;
    while (c.size() > 1 && c.front() == 0) {
        c.erase(c.begin());
        ++zero_mult;
    }
    std::vector<std::pair<Rational, int>> roots;
    if (c.size() > 1) {
        mpz_class scale = 1;
        for (const auto& x : c) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
        const mpz_class a0 = mpz_class(c.front() * scale), an = mpz_class(c.back() * scale);
        std::vector<Rational> candidates;
        for (const auto& num : divisors(a0))
            for (const auto& den : divisors(an)) {
                Rational r(num, den);
                r.canonicalize();
                candidates.push_back(r);
                candidates.push_back(-r);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& r : candidates) {
            int m = 0;
            while (c.size() > 1 && horner(c, r) == 0) {
                c = deflate(c, r);
                ++m;
            }
            if (m > 0) roots.emplace_back(r, m);
        }
    }
    const Rational lead = c.back();
    std::vector<std::string> parts;
    if (zero_mult > 0) parts.push_back("t" + power_suffix(zero_mult));
    for (const auto& [r, m] : roots)
        parts.push_back("(t" + std::string(sgn(r) > 0 ? "-" : "+") + Rational(abs(r)).get_str() + ")" + power_suffix(m));
    if (c.size() > 1) {
        std::vector<Poly> rest;
        for (const auto& x : c) rest.emplace_back(Rational(x / lead));
        parts.push_back("(" + Poly::from_coeffs(rest, 0).to_string() + ")");
    }
    std::string out;
    if (parts.empty()) return lead.get_str();
    if (lead == -1) out = "-";
    else if (lead != 1) out = lead.get_str() + "*";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    return out;
}

}  // namespace

std::string factored_string(const RatFunc& f) {
    for (int v = 1; v < kNumVars; ++v)
        if (f.num().involves(v) || f.den().involves(v)) return f.to_string();
    const std::string num = factor_univariate(f.num());
    if (f.den().is_constant() && f.den().constant_term() == 1) return num;
    return "(" + num + ")/(" + factor_univariate(f.den()) + ")";
}

}  // namespace fusionq
