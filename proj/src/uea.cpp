#include "fusionq/uea.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fusionq {

UEA::UEA(std::shared_ptr<const RootSystem> rs) : rs_(std::move(rs)) {
    if (!rs_) throw std::invalid_argument("UEA requires a root system");
}

const PBWElem<Rational>& UEA::times_generator(const PBWMono& m, int g) const {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(m, g);
    if (auto it = gen_cache_.find(key); it != gen_cache_.end()) return it->second;

    int j = dim() - 1;
    while (j >= 0 && m[j] == 0) --j;
    PBWElem<Rational> result;
    if (j <= g) {
        PBWMono mm = m;
        ++mm[g];
        result.add_term(mm, Rational(1));
    } else {
        // m e_g = m' e_j e_g = (m' e_g) e_j + m' [e_j, e_g]
        PBWMono rest = m;
        --rest[j];
        for (const auto& [a, c] : times_generator(rest, g).terms())
            for (const auto& [b, d] : times_generator(a, j).terms()) result.add_term(b, c * d);
        for (const auto& [e, k] : rs_->bracket(j, g))
            for (const auto& [b, d] : times_generator(rest, e).terms()) result.add_term(b, d * k);
    }
    return gen_cache_.emplace(key, std::move(result)).first->second;
}

const PBWElem<Rational>& UEA::mono_product(const PBWMono& a, const PBWMono& b) const {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(a, b);
    if (auto it = prod_cache_.find(key); it != prod_cache_.end()) return it->second;
    PBWElem<Rational> cur;
    cur.add_term(a, Rational(1));
    for (int i = 0; i < dim(); ++i)
        for (int k = 0; k < b[i]; ++k) {
            PBWElem<Rational> next;
            for (const auto& [m, c] : cur.terms())
                for (const auto& [mm, d] : times_generator(m, i).terms()) next.add_term(mm, c * d);
            cur = std::move(next);
        }
    return prod_cache_.emplace(key, std::move(cur)).first->second;
}

PBWElem<Rational> UEA::word(const std::vector<int>& letters) const {
    PBWElem<Rational> cur = one<Rational>();
    for (int g : letters) {
        PBWElem<Rational> next;
        for (const auto& [m, c] : cur.terms())
            for (const auto& [mm, d] : times_generator(m, g).terms()) next.add_term(mm, c * d);
        cur = std::move(next);
    }
    return cur;
}

namespace {

std::vector<int> letters_of(const PBWMono& m) {
    std::vector<int> w;
    for (int i = 0; i < int(m.size()); ++i)
        for (int k = 0; k < m[i]; ++k) w.push_back(i);
    return w;
}

}  // namespace

int UEA::degree(const PBWMono& m) const {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

PBWElem<Rational> UEA::antipode_mono(const PBWMono& m) const {
    auto w = letters_of(m);
    std::reverse(w.begin(), w.end());
    PBWElem<Rational> r = word(w);
    return w.size() % 2 ? -r : r;
}

namespace {

int swap_xy(const RootSystem& rs, int b) {
    switch (rs.kind(b)) {
        case GenKind::Y: return rs.x_index(rs.sub_index(b));
        case GenKind::X: return rs.y_index(rs.sub_index(b));
        default: return b;
    }
}

}  // namespace

PBWElem<Rational> UEA::omega_mono(const PBWMono& m) const {
    auto w = letters_of(m);
    std::reverse(w.begin(), w.end());
    for (int& g : w) g = swap_xy(*rs_, g);
    return word(w);
}

PBWElem<Rational> UEA::theta_mono(const PBWMono& m) const {
    auto w = letters_of(m);
    for (int& g : w) g = swap_xy(*rs_, g);
    PBWElem<Rational> r = word(w);
    return w.size() % 2 ? -r : r;
}

std::pair<PBWMono, int> UEA::theta_lowering(const PBWMono& y) const {
    if (!is_lowering_mono(y)) throw std::invalid_argument("theta_lowering expects a Y-monomial");
    PBWMono x = unit_mono();
    int deg = 0;
    for (int k = 0; k < rs_->num_positive_roots(); ++k) {
        x[rs_->x_index(k)] = y[rs_->y_index(k)];
        deg += y[k];
    }
    return {x, deg % 2 ? -1 : 1};
}

std::vector<std::pair<std::pair<PBWMono, PBWMono>, Rational>> UEA::coproduct_mono(const PBWMono& m) const {
    std::vector<std::pair<std::pair<PBWMono, PBWMono>, Rational>> out;
    PBWMono left(m.size(), 0);
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& w) {
        if (i == m.size()) {
            PBWMono right(m.size());
            for (std::size_t k = 0; k < m.size(); ++k) right[k] = m[k] - left[k];
            out.push_back({{left, right}, w});
            return;
        }
        mpz_class binom = 1;
        for (int j = 0; j <= m[i]; ++j) {
            left[i] = j;
            rec(i + 1, w * Rational(binom));
            binom = binom * (m[i] - j) / (j + 1);
        }
        left[i] = 0;
    };
    rec(0, Rational(1));
    return out;
}

bool UEA::is_cartan_mono(const PBWMono& m) const {
    for (int b = 0; b < dim(); ++b)
        if (m[b] != 0 && rs_->kind(b) != GenKind::H) return false;
    return true;
}

bool UEA::is_lowering_mono(const PBWMono& m) const {
    for (int b = 0; b < dim(); ++b)
        if (m[b] != 0 && rs_->kind(b) != GenKind::Y) return false;
    return true;
}

bool UEA::is_raising_mono(const PBWMono& m) const {
    for (int b = 0; b < dim(); ++b)
        if (m[b] != 0 && rs_->kind(b) != GenKind::X) return false;
    return true;
}

RootVec UEA::weight(const PBWMono& m) const {
    RootVec w{std::vector<int>(rs_->rank(), 0)};
    for (int b = 0; b < dim(); ++b)
        if (m[b] != 0) w = w + rs_->basis_weight(b).scaled(m[b]);
    return w;
}

std::vector<PBWMono> UEA::lowering_basis(const RootVec& beta) const {
    std::vector<PBWMono> out;
    const int np = rs_->num_positive_roots();
    PBWMono cur = unit_mono();
    std::function<void(int, RootVec)> rec = [&](int k, RootVec remaining) {
        if (k == np) {
            if (remaining.height() == 0 && remaining.is_nonnegative()) out.push_back(cur);
            return;
        }
        const RootVec& r = rs_->positive_roots()[k];
        for (int e = 0;; ++e) {
            if (!remaining.is_nonnegative()) break;
            cur[rs_->y_index(k)] = e;
            rec(k + 1, remaining);
            remaining = remaining - r;
        }
        cur[rs_->y_index(k)] = 0;
    };
    rec(0, beta);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::string UEA::mono_to_string(const PBWMono& m) const {
    std::string s;
    for (int b = 0; b < dim(); ++b) {
        if (m[b] == 0) continue;
        if (!s.empty()) s += " * ";
        s += rs_->basis_name(b);
        if (m[b] > 1) s += "^" + std::to_string(m[b]);
    }
    return s.empty() ? "1" : s;
}

std::vector<std::string> UEA::split_top_level(std::string_view text, std::string_view sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(' || c == '[') ++depth;
        else if (c == ')' || c == ']') --depth;
        else if (depth == 0 && text.compare(i, sep.size(), sep) == 0) {
            parts.emplace_back(text.substr(start, i - start));
            i += sep.size() - 1;
            start = i + 1;
        }
    }
    parts.emplace_back(text.substr(start));
    for (auto& p : parts) {
        const auto b = p.find_first_not_of(' ');
        const auto e = p.find_last_not_of(' ');
        p = b == std::string::npos ? std::string() : p.substr(b, e - b + 1);
        if (p.empty()) throw std::invalid_argument("malformed element text");
    }
    return parts;
}

bool UEA::looks_like_generator(std::string_view s) {
    return s.size() >= 2 && (s[0] == 'Y' || s[0] == 'H' || s[0] == 'X') && s[1] == '[';
}

std::pair<int, int> UEA::parse_generator_power(std::string_view s) const {
    const auto close = s.find(']');
    if (close == std::string_view::npos) throw std::invalid_argument("malformed generator '" + std::string(s) + "'");
    const int b = rs_->parse_basis_name(s.substr(0, close + 1));
    if (b < 0) throw std::invalid_argument("unknown generator '" + std::string(s.substr(0, close + 1)) + "'");
    int power = 1;
    if (close + 1 < s.size()) {
        if (s[close + 1] != '^') throw std::invalid_argument("malformed generator '" + std::string(s) + "'");
        const std::string digits(s.substr(close + 2));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed exponent in '" + std::string(s) + "'");
        power = std::stoi(digits);
    }
    return {b, power};
}

}  // namespace fusionq
