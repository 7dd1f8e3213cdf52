#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fusionq/ratfunc.hpp"
#include "fusionq/rootsys.hpp"

namespace fusionq {

/// PBW monomial as exponents over the basis index (Y..., H..., X...).
using PBWMono = std::vector<int>;

/// Normally ordered element of U(g): a map from PBW monomials to nonzero
/// coefficients.
template <class S>
class PBWElem {
public:
    using TermMap = std::map<PBWMono, S>;

    PBWElem() = default;

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const PBWMono& m, const S& c) {
        if (fusionq::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (inserted) return;
        it->second += c;
        if (fusionq::is_zero(it->second)) terms_.erase(it);
    }
    S coefficient(const PBWMono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? S(0) : it->second;
    }

    PBWElem& operator+=(const PBWElem& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    PBWElem& operator-=(const PBWElem& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend PBWElem operator+(PBWElem a, const PBWElem& b) { return a += b; }
    friend PBWElem operator-(PBWElem a, const PBWElem& b) { return a -= b; }
    PBWElem operator-() const { return scaled(S(-1)); }
    PBWElem scaled(const S& c) const {
        PBWElem r;
        if (fusionq::is_zero(c)) return r;
        for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
        return r;
    }
    friend bool operator==(const PBWElem& a, const PBWElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PBWElem& a, const PBWElem& b) { return !(a == b); }

    template <class T>
    PBWElem<T> convert() const {
        PBWElem<T> r;
        for (const auto& [m, c] : terms_) r.add_term(m, T(c));
        return r;
    }

private:
    TermMap terms_;
};

/// Element of U(g) (x) U(g) in PBW (x) PBW coordinates.
template <class S>
using PBWTensor = std::map<std::pair<PBWMono, PBWMono>, S>;

/// The universal enveloping algebra of a RootSystem's Lie algebra.
///
/// The rewriting engine memoizes products of PBW monomials; the cache is
/// guarded by a mutex so a single instance can be shared across threads.
class UEA {
public:
    explicit UEA(std::shared_ptr<const RootSystem> rs);

    const RootSystem& roots() const { return *rs_; }
    std::shared_ptr<const RootSystem> roots_ptr() const { return rs_; }
    int dim() const { return rs_->dim(); }

    PBWMono unit_mono() const { return PBWMono(dim(), 0); }
    PBWMono generator_mono(int basis, int power = 1) const {
        PBWMono m = unit_mono();
        m[basis] = power;
        return m;
    }

    template <class S>
    PBWElem<S> one() const {
        return monomial<S>(unit_mono());
    }
    template <class S>
    PBWElem<S> generator(int basis) const {
        return monomial<S>(generator_mono(basis));
    }
    template <class S>
    PBWElem<S> monomial(const PBWMono& m, const S& c = S(1)) const {
        PBWElem<S> e;
        e.add_term(m, c);
        return e;
    }

    /// Normal-ordered product of two PBW monomials (cached).
    const PBWElem<Rational>& mono_product(const PBWMono& a, const PBWMono& b) const;

    template <class S>
    PBWElem<S> multiply(const PBWElem<S>& a, const PBWElem<S>& b) const {
        PBWElem<S> r;
        for (const auto& [ma, ca] : a.terms())
            for (const auto& [mb, cb] : b.terms()) {
                const S cab = ca * cb;
                for (const auto& [m, c] : mono_product(ma, mb).terms()) r.add_term(m, cab * S(c));
            }
        return r;
    }

    /// Product of a word of basis elements e_{w0} e_{w1} ...
    PBWElem<Rational> word(const std::vector<int>& letters) const;

    template <class S>
    PBWElem<S> antipode(const PBWElem<S>& a) const {
        return apply_mono_map(a, [this](const PBWMono& m) { return antipode_mono(m); });
    }
    /// Chevalley anti-involution: X_b <-> Y_b, H fixed, reverses products.
    template <class S>
    PBWElem<S> omega(const PBWElem<S>& a) const {
        return apply_mono_map(a, [this](const PBWMono& m) { return omega_mono(m); });
    }
    /// theta(x) = omega(S(x)); an automorphism mapping U(n-)[-b] onto U(n+)[b].
    template <class S>
    PBWElem<S> theta(const PBWElem<S>& a) const {
        return apply_mono_map(a, [this](const PBWMono& m) { return theta_mono(m); });
    }

    template <class S>
    PBWTensor<S> coproduct(const PBWElem<S>& a) const {
        PBWTensor<S> out;
        for (const auto& [m, c] : a.terms())
            for (const auto& [split, k] : coproduct_mono(m)) {
                auto [it, inserted] = out.try_emplace(split, c * S(k));
                if (!inserted) {
                    it->second += c * S(k);
                    if (fusionq::is_zero(it->second)) out.erase(it);
                }
            }
        return out;
    }
    /// Delta of a single monomial: pairs (m1, m2) with binomial weights.
    std::vector<std::pair<std::pair<PBWMono, PBWMono>, Rational>> coproduct_mono(const PBWMono& m) const;

    template <class S>
    S counit(const PBWElem<S>& a) const {
        return a.coefficient(unit_mono());
    }

    /// Projection U(g) -> U(h) along n- U(g) + U(g) n+.
    template <class S>
    PBWElem<S> project_zero(const PBWElem<S>& a) const {
        PBWElem<S> r;
        for (const auto& [m, c] : a.terms())
            if (is_cartan_mono(m)) r.add_term(m, c);
        return r;
    }

    /// Substitutes H_i -> <lambda, alpha_i^vee>; throws std::invalid_argument
    /// if a is not in U(h).
    template <class S, class W>
    S evaluate_at(const PBWElem<S>& a, const Weight<W>& lambda) const {
        S total(0);
        for (const auto& [m, c] : a.terms()) {
            if (!is_cartan_mono(m)) throw std::invalid_argument("evaluate_at: element is not in U(h)");
            S v = c;
            for (int i = 0; i < rs_->rank(); ++i)
                for (int k = 0; k < m[rs_->h_index(i)]; ++k) v *= S(lambda.coords[i]);
            total += v;
        }
        return total;
    }

    bool is_cartan_mono(const PBWMono& m) const;
    bool is_lowering_mono(const PBWMono& m) const;  // in U(n-)
    bool is_raising_mono(const PBWMono& m) const;   // in U(n+)
    int degree(const PBWMono& m) const;
    /// ad(h)-weight in simple-root coordinates.
    RootVec weight(const PBWMono& m) const;

    /// Y-monomials of weight -beta (the Kostant partitions of beta), in
    /// canonical order: exponent vectors in descending lex order.
    std::vector<PBWMono> lowering_basis(const RootVec& beta) const;
    /// theta of a lowering monomial, as a raising monomial and a sign.
    std::pair<PBWMono, int> theta_lowering(const PBWMono& y) const;

    std::string mono_to_string(const PBWMono& m) const;
    template <class S>
    std::string to_string(const PBWElem<S>& a) const {
        if (a.is_zero()) return "0";
        std::string out;
        for (const auto& [m, c] : a.terms()) {
            if (!out.empty()) out += " + ";
            out += fusionq::to_string(c);
            if (degree(m) > 0) out += " * " + mono_to_string(m);
        }
        return out;
    }

    /// Inverse of to_string; throws std::invalid_argument on malformed text.
    template <class S>
    PBWElem<S> parse(std::string_view text) const {
        PBWElem<S> r;
        for (const auto& term : split_top_level(text, " + ")) {
            const auto factors = split_top_level(term, " * ");
            if (factors.empty()) throw std::invalid_argument("empty term");
            std::size_t first = 0;
            S coef(1);
            if (!looks_like_generator(factors[0])) {
                coef = parse_scalar<S>(factors[0]);
                first = 1;
            }
            PBWElem<S> t = one<S>().scaled(coef);
            for (std::size_t f = first; f < factors.size(); ++f) {
                if (factors[f] == "1") continue;
                const auto [basis, power] = parse_generator_power(factors[f]);
                for (int k = 0; k < power; ++k) t = multiply(t, generator<S>(basis));
            }
            r += t;
        }
        return r;
    }

private:
    template <class S, class F>
    PBWElem<S> apply_mono_map(const PBWElem<S>& a, F&& f) const {
        PBWElem<S> r;
        for (const auto& [m, c] : a.terms()) {
            const PBWElem<Rational> image = f(m);
            for (const auto& [mm, k] : image.terms()) r.add_term(mm, c * S(k));
        }
        return r;
    }
    PBWElem<Rational> antipode_mono(const PBWMono& m) const;
    PBWElem<Rational> omega_mono(const PBWMono& m) const;
    PBWElem<Rational> theta_mono(const PBWMono& m) const;
    const PBWElem<Rational>& times_generator(const PBWMono& m, int g) const;

    static std::vector<std::string> split_top_level(std::string_view text, std::string_view sep);
    static bool looks_like_generator(std::string_view s);
    std::pair<int, int> parse_generator_power(std::string_view s) const;

    std::shared_ptr<const RootSystem> rs_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<std::pair<PBWMono, int>, PBWElem<Rational>> gen_cache_;
    mutable std::map<std::pair<PBWMono, PBWMono>, PBWElem<Rational>> prod_cache_;
};

}  // namespace fusionq
