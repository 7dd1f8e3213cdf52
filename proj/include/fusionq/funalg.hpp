#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "fusionq/matrix.hpp"
#include "fusionq/uea.hpp"

namespace fusionq {

using SparseVec = std::map<int, Rational>;

/// Finite-dimensional representation in a weight basis. gens[b][j] holds
/// the column rho(e_b) e_j.
struct Rep {
    std::string name;
    int dim = 0;
    std::vector<std::vector<int>> weights;  // fundamental coordinates
    std::vector<std::vector<SparseVec>> gens;

    /// rho(m) v, applying the rightmost factor of the PBW monomial first.
    SparseVec apply(const PBWMono& m, const SparseVec& v) const;
    /// v^T rho(m), i.e. the covector e^* rho(m).
    SparseVec apply_covector(const PBWMono& m, const SparseVec& v) const;
};
using RepPtr = std::shared_ptr<const Rep>;

/// Function on the group given by matrix coefficients:
/// f(u) = sum over reps R of sum_{ij} C^R_ij rho_R(u)_ij.
template <class S>
class FElem {
public:
    struct Term {
        RepPtr rep;
        std::map<std::pair<int, int>, S> coeffs;
    };

    FElem() = default;

    const std::map<std::string, Term>& terms() const { return terms_; }
    bool is_zero_repr() const { return terms_.empty(); }

    void add(const RepPtr& rep, int i, int j, const S& c) {
        if (fusionq::is_zero(c)) return;
        auto& term = terms_[rep->name];
        if (!term.rep) term.rep = rep;
        auto [it, inserted] = term.coeffs.try_emplace({i, j}, c);
        if (!inserted) {
            it->second += c;
            if (fusionq::is_zero(it->second)) term.coeffs.erase(it);
        }
        if (term.coeffs.empty()) terms_.erase(rep->name);
    }

    FElem& operator+=(const FElem& o) {
        for (const auto& [name, term] : o.terms_)
            for (const auto& [ij, c] : term.coeffs) add(term.rep, ij.first, ij.second, c);
        return *this;
    }
    FElem& operator-=(const FElem& o) { return *this += o.scaled(S(-1)); }
    friend FElem operator+(FElem a, const FElem& b) { return a += b; }
    friend FElem operator-(FElem a, const FElem& b) { return a -= b; }
    FElem scaled(const S& c) const {
        FElem r;
        if (fusionq::is_zero(c)) return r;
        for (const auto& [name, term] : terms_)
            for (const auto& [ij, x] : term.coeffs) r.add(term.rep, ij.first, ij.second, x * c);
        return r;
    }
    template <class T>
    FElem<T> convert() const {
        FElem<T> r;
        for (const auto& [name, term] : terms_)
            for (const auto& [ij, x] : term.coeffs) r.add(term.rep, ij.first, ij.second, T(x));
        return r;
    }
    /// Structural equality of the stored coefficients (see FunctionAlgebra::equals
    /// for equality as functions).
    friend bool operator==(const FElem& a, const FElem& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || ia->second.coeffs != ib->second.coeffs) return false;
        return true;
    }

private:
    std::map<std::string, Term> terms_;
};

/// Probe key: (weight nu, raising monomial, lowering monomial). The value
/// of f at Y-mono * H-poly * X-mono is the sum over nu of h(nu) times the
/// profile entry, so the profile determines f and vice versa.
using ProfileKey = std::tuple<std::vector<int>, PBWMono, PBWMono>;
template <class S>
using Profile = std::map<ProfileKey, S>;

/// Element of F (x) F as a finite sum of c * f (x) g.
template <class S>
struct FTensor {
    std::vector<std::tuple<S, FElem<S>, FElem<S>>> terms;
};

/// The algebra F of matrix coefficients together with its regular actions.
/// Holds a registry of representations (trivial, coadjoint, tensor
/// products, and any registered modules); the registry is mutex-guarded.
class FunctionAlgebra {
public:
    explicit FunctionAlgebra(std::shared_ptr<const UEA> uea);

    const UEA& uea() const { return *uea_; }
    std::shared_ptr<const UEA> uea_ptr() const { return uea_; }
    const RootSystem& roots() const { return uea_->roots(); }

    RepPtr trivial() const { return trivial_; }
    /// Contragredient of the adjoint representation, basis dual to the
    /// Chevalley basis: rho(a) = -ad(a)^T.
    RepPtr coadjoint() const { return coadjoint_; }
    RepPtr tensor(const RepPtr& a, const RepPtr& b) const;
    /// Adds a representation under its name; returns the stored pointer.
    RepPtr register_rep(Rep rep) const;
    /// Looks a representation up by name; tensor names "AxB" are built on
    /// demand. Throws std::invalid_argument for unknown names.
    RepPtr rep_by_name(const std::string& name) const;

    template <class S>
    FElem<S> one() const {
        FElem<S> f;
        f.add(trivial_, 0, 0, S(1));
        return f;
    }

    /// f_x: u -> (u . lambda~)(x) on the coadjoint representation, with
    /// lambda~(H_i) = lambda_i and lambda~ = 0 on root vectors.
    FElem<Rational> orbit_function(const std::vector<Rational>& x, const Weight<Rational>& lambda) const;
    FElem<Rational> orbit_function(int basis, const Weight<Rational>& lambda) const;

    template <class S>
    S evaluate(const FElem<S>& f, const PBWElem<Rational>& u) const {
        S total(0);
        for (const auto& [name, term] : f.terms())
            for (const auto& [m, c] : u.terms())
                for (const auto& [ij, x] : term.coeffs) {
                    const SparseVec v = term.rep->apply(m, {{ij.second, Rational(1)}});
                    auto it = v.find(ij.first);
                    if (it != v.end()) total += x * S(c * it->second);
                }
        return total;
    }

    /// (->a f)(x) = f(x a): acts on the vector slot.
    template <class S>
    FElem<S> left(const PBWElem<Rational>& a, const FElem<S>& f) const {
        FElem<S> r;
        for (const auto& [name, term] : f.terms())
            for (const auto& [m, c] : a.terms())
                for (const auto& [ij, x] : term.coeffs)
                    for (const auto& [k, v] : term.rep->apply(m, {{ij.second, Rational(1)}}))
                        r.add(term.rep, ij.first, k, x * S(c * v));
        return r;
    }
    /// (f <- a)(x) = f(a x): acts on the covector slot.
    template <class S>
    FElem<S> right(const FElem<S>& f, const PBWElem<Rational>& a) const {
        FElem<S> r;
        for (const auto& [name, term] : f.terms())
            for (const auto& [m, c] : a.terms())
                for (const auto& [ij, x] : term.coeffs)
                    for (const auto& [k, v] : term.rep->apply_covector(m, {{ij.first, Rational(1)}}))
                        r.add(term.rep, k, ij.second, x * S(c * v));
        return r;
    }

    /// Pointwise product, realized on tensor-product representations.
    template <class S>
    FElem<S> product(const FElem<S>& f, const FElem<S>& g) const {
        FElem<S> r;
        for (const auto& [na, ta] : f.terms())
            for (const auto& [nb, tb] : g.terms()) {
                const RepPtr t = tensor(ta.rep, tb.rep);
                const int db = tb.rep->dim;
                for (const auto& [ij, x] : ta.coeffs)
                    for (const auto& [kl, y] : tb.coeffs)
                        r.add(t, ij.first * db + kl.first, ij.second * db + kl.second, x * y);
            }
        return r;
    }

    template <class S>
    Profile<S> profile(const FElem<S>& f) const;

    template <class S>
    bool equals(const FElem<S>& f, const FElem<S>& g) const {
        return profile(f - g).empty();
    }
    template <class S>
    bool is_zero(const FElem<S>& f) const {
        return profile(f).empty();
    }

    /// Equality in F (x) F through outer products of profiles.
    template <class S>
    bool equals(const FTensor<S>& a, const FTensor<S>& b) const;

    /// f in F[0], i.e. ->H f = 0 for every Cartan element.
    template <class S>
    bool in_weight_zero(const FElem<S>& f) const {
        for (const auto& [key, v] : profile(f)) {
            const RootVec x = uea_->weight(std::get<1>(key));
            const auto nu = std::get<0>(key);
            const auto xw = roots().root_to_weight(x);
            for (int i = 0; i < roots().rank(); ++i)
                if (nu[i] != xw[i]) return false;
        }
        return true;
    }

    /// ->a f = eps(a) f for every a in gens.
    template <class S>
    bool is_invariant(const FElem<S>& f, const std::vector<PBWElem<Rational>>& gens) const {
        for (const auto& a : gens) {
            FElem<S> d = left(a, f) - f.scaled(S(uea_->counit(a)));
            if (!is_zero(d)) return false;
        }
        return true;
    }

    /// Largest height of beta with ->U(n-)[-beta] f possibly nonzero (lower)
    /// or ->U(n+)[beta] f possibly nonzero (upper), read off the weights.
    template <class S>
    int lower_spread(const FElem<S>& f) const {
        return spread(f, -1);
    }
    template <class S>
    int upper_spread(const FElem<S>& f) const {
        return spread(f, +1);
    }

    /// Matrix whose column k is the profile of fs[k] (rows over the union of
    /// keys); its rank is the dimension of span(fs) as functions.
    template <class S>
    Matrix<S> profile_matrix(const std::vector<FElem<S>>& fs) const {
        std::vector<Profile<S>> profs;
        std::map<ProfileKey, std::size_t> rows;
        for (const auto& f : fs) {
            profs.push_back(profile(f));
            for (const auto& [k, v] : profs.back()) rows.emplace(k, 0);
        }
        std::size_t r = 0;
        for (auto& [k, idx] : rows) idx = r++;
        Matrix<S> m(rows.size(), fs.size());
        for (std::size_t c = 0; c < profs.size(); ++c)
            for (const auto& [k, v] : profs[c]) m(rows.at(k), c) = v;
        return m;
    }
    template <class S>
    std::size_t span_dim(const std::vector<FElem<S>>& fs) const {
        return rank(profile_matrix(fs));
    }
    /// Matrix units c[R; i, j] with the j-th basis vector of weight zero; they
    /// span the part of F[0] carried by R.
    std::vector<FElem<Rational>> weight_zero_units(const RepPtr& rep) const;

    /// Coefficient vectors c with sum_k c_k fs[k] annihilated (via ->) by
    /// every element of gens, shifted by the counit.
    template <class S>
    std::vector<std::vector<S>> invariant_combinations(const std::vector<FElem<S>>& fs,
                                                       const std::vector<PBWElem<Rational>>& gens) const {
        std::map<std::pair<std::size_t, ProfileKey>, std::size_t> rows;
        std::vector<std::vector<std::pair<std::pair<std::size_t, ProfileKey>, S>>> entries(fs.size());
        for (std::size_t k = 0; k < fs.size(); ++k)
            for (std::size_t g = 0; g < gens.size(); ++g) {
                const FElem<S> d = left(gens[g], fs[k]) - fs[k].scaled(S(uea_->counit(gens[g])));
                for (const auto& [key, v] : profile(d)) {
                    rows.emplace(std::make_pair(g, key), 0);
                    entries[k].push_back({{g, key}, v});
                }
            }
        std::size_t r = 0;
        for (auto& [key, idx] : rows) idx = r++;
        Matrix<S> m(rows.size(), fs.size());
        for (std::size_t k = 0; k < fs.size(); ++k)
            for (const auto& [key, v] : entries[k]) m(rows.at(key), k) = v;
        return nullspace(m);
    }
    template <class S>
    static FElem<S> combine(const std::vector<FElem<S>>& fs, const std::vector<S>& c) {
        FElem<S> out;
        for (std::size_t k = 0; k < fs.size(); ++k) out += fs[k].scaled(c[k]);
        return out;
    }

    template <class S>
    std::string to_string(const FElem<S>& f) const {
        std::string out;
        for (const auto& [name, term] : f.terms())
            for (const auto& [ij, x] : term.coeffs) {
                if (!out.empty()) out += " + ";
                out += fusionq::to_string(x) + " * c[" + name + "; " + std::to_string(ij.first) + ", " +
                       std::to_string(ij.second) + "]";
            }
        return out.empty() ? "0" : out;
    }
    template <class S>
    FElem<S> parse(std::string_view text) const;

    /// Weights reachable from mu by adding (sign +1) or subtracting (-1) an
    /// element of Q+ u {0} that land in the rep's weight set, as pairs
    /// (gamma in root coordinates, target weight).
    const std::vector<std::pair<RootVec, std::vector<int>>>& reachable(const Rep& rep, const std::vector<int>& mu,
                                                                      int sign) const;

private:
    template <class S>
    int spread(const FElem<S>& f, int sign) const {
        int best = 0;
        for (const auto& [name, term] : f.terms()) {
            std::map<int, bool> cols;
            for (const auto& [ij, x] : term.coeffs) cols[ij.second] = true;
            for (const auto& [j, unused] : cols)
                for (const auto& [gamma, target] : reachable(*term.rep, term.rep->weights[j], sign))
                    best = std::max(best, gamma.height());
        }
        return best;
    }
    /// Raising or lowering PBW monomials of weight +-gamma.
    const std::vector<PBWMono>& monomials_of(const RootVec& gamma, bool raising) const;
    /// The nonzero vectors rho(ym) rho(xm) e_j behind the profile keys of
    /// column j, computed once per (rep, j).
    const std::vector<std::pair<ProfileKey, SparseVec>>& column_probes(const Rep& rep, int j) const;

    std::shared_ptr<const UEA> uea_;
    RepPtr trivial_, coadjoint_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, RepPtr> registry_;
    mutable std::map<std::pair<RootVec, bool>, std::vector<PBWMono>> mono_cache_;
    mutable std::map<std::tuple<std::string, std::vector<int>, int>, std::vector<std::pair<RootVec, std::vector<int>>>>
        reach_cache_;
    mutable std::map<std::pair<std::string, int>, std::vector<std::pair<ProfileKey, SparseVec>>> probe_cache_;
};

template <class S>
Profile<S> FunctionAlgebra::profile(const FElem<S>& f) const {
    Profile<S> prof;
    for (const auto& [name, term] : f.terms()) {
        std::map<int, std::map<int, S>> columns;
        for (const auto& [ij, x] : term.coeffs) columns[ij.second][ij.first] = x;
        for (const auto& [j, col] : columns) {
            for (const auto& [key, w] : column_probes(*term.rep, j)) {
                S value(0);
                for (const auto& [i, c] : w) {
                    auto it = col.find(i);
                    if (it != col.end()) value += it->second * S(c);
                }
                if (fusionq::is_zero(value)) continue;
                auto [pit, inserted] = prof.try_emplace(key, value);
                if (!inserted) pit->second += value;
            }
        }
    }
    for (auto it = prof.begin(); it != prof.end();) it = fusionq::is_zero(it->second) ? prof.erase(it) : std::next(it);
    return prof;
}

template <class S>
bool FunctionAlgebra::equals(const FTensor<S>& a, const FTensor<S>& b) const {
    std::map<std::pair<ProfileKey, ProfileKey>, S> total;
    auto accumulate = [&](const FTensor<S>& t, const S& sign) {
        for (const auto& [c, f, g] : t.terms) {
            const auto pf = profile(f);
            const auto pg = profile(g);
            for (const auto& [kf, vf] : pf)
                for (const auto& [kg, vg] : pg) total[{kf, kg}] += sign * c * vf * vg;
        }
    };
    accumulate(a, S(1));
    accumulate(b, S(-1));
    for (const auto& [k, v] : total)
        if (!fusionq::is_zero(v)) return false;
    return true;
}

template <class S>
FElem<S> FunctionAlgebra::parse(std::string_view text) const {
    FElem<S> f;
    std::string s(text);
    if (s == "0") return f;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t star = s.find(" * c[", pos);
        if (star == std::string::npos) throw std::invalid_argument("malformed function term near '" + s.substr(pos) + "'");
        const S coef = parse_scalar<S>(s.substr(pos, star - pos));
        const std::size_t open = star + 5;
        const std::size_t semi = s.find(';', open);
        const std::size_t close = s.find(']', semi == std::string::npos ? open : semi);
        if (semi == std::string::npos || close == std::string::npos)
            throw std::invalid_argument("malformed function term near '" + s.substr(pos) + "'");
        const RepPtr rep = rep_by_name(s.substr(open, semi - open));
        const std::string idx = s.substr(semi + 1, close - semi - 1);
        const std::size_t comma = idx.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("malformed index pair '" + idx + "'");
        const int i = std::stoi(idx.substr(0, comma)), j = std::stoi(idx.substr(comma + 1));
        if (i < 0 || j < 0 || i >= rep->dim || j >= rep->dim) throw std::invalid_argument("index out of range in '" + idx + "'");
        f.add(rep, i, j, coef);
        pos = close + 1;
        if (pos < s.size()) {
            if (s.compare(pos, 3, " + ") != 0) throw std::invalid_argument("expected ' + ' between terms");
            pos += 3;
        }
    }
    return f;
}

}  // namespace fusionq
