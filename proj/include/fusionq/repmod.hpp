#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fusionq/funalg.hpp"
#include "fusionq/shapovalov.hpp"

namespace fusionq {

/// Vector of a highest-weight module: coordinates per weight space, keyed by
/// beta (the weight is lambda - beta).
template <class S>
using ModVec = std::map<RootVec, std::vector<S>>;

template <class S>
struct WeightSpace {
    RootVec beta;
    std::vector<PBWMono> full_basis;  // lowering_basis(beta)
    std::vector<std::size_t> kept;    // coset representatives, indices into full_basis
    Matrix<S> block;                  // S_lambda^beta on full_basis
    Matrix<S> form;                   // restriction to kept (the contravariant form)
    Matrix<S> form_inverse;           // empty for Verma modules

    std::size_t dim() const { return kept.size(); }
};

enum class ModuleKind { Verma, Irreducible };

/// Verma module M(lambda) or irreducible quotient V(lambda), realized weight
/// space by weight space up to a height cutoff.
template <class S>
class HWModule {
public:
    static HWModule verma(std::shared_ptr<const Shapovalov> sh, const Weight<S>& lambda, int cutoff) {
        return HWModule(std::move(sh), lambda, cutoff, ModuleKind::Verma);
    }
    /// Coset bases are the lexicographically earliest complements of the
    /// kernel in the PBW order (pivot columns of the block).
    static HWModule irreducible(std::shared_ptr<const Shapovalov> sh, const Weight<S>& lambda, int cutoff) {
        return HWModule(std::move(sh), lambda, cutoff, ModuleKind::Irreducible);
    }

    ModuleKind kind() const { return kind_; }
    const Weight<S>& lambda() const { return lambda_; }
    int cutoff() const { return cutoff_; }
    const Shapovalov& shapovalov() const { return *sh_; }
    const UEA& uea() const { return sh_->uea(); }
    /// All weight spaces, including beta = 0, in root order.
    const std::vector<RootVec>& betas() const { return betas_; }
    const WeightSpace<S>& space(const RootVec& beta) const { return spaces_.at(beta); }
    bool has_space(const RootVec& beta) const { return spaces_.count(beta) > 0; }
    std::size_t dim(const RootVec& beta) const {
        auto it = spaces_.find(beta);
        return it == spaces_.end() ? 0 : it->second.dim();
    }
    /// Total dimension over the stored weight spaces.
    std::size_t total_dim() const {
        std::size_t d = 0;
        for (const auto& [b, sp] : spaces_) d += sp.dim();
        return d;
    }
    /// Dimensions summed per height 0..cutoff.
    std::vector<std::size_t> dims_by_height() const {
        std::vector<std::size_t> d(cutoff_ + 1, 0);
        for (const auto& [b, sp] : spaces_) d[b.height()] += sp.dim();
        return d;
    }
    /// True when some height layer within the cutoff vanishes, which forces
    /// every higher layer to vanish (U(n-) is generated by simple Y's).
    bool finite_dimensional() const {
        for (std::size_t h : dims_by_height())
            if (h == 0) return true;
        return false;
    }

    ModVec<S> highest() const { return {{betas_.front(), {S(1)}}}; }
    /// Basis vector k of the weight space beta.
    ModVec<S> basis_vector(const RootVec& beta, std::size_t k) const {
        std::vector<S> v(dim(beta), S(0));
        v.at(k) = S(1);
        return {{beta, v}};
    }

    /// u * (y 1_lambda) reduced to the module: drops terms with X factors and
    /// evaluates Cartan factors at lambda. The result lies in U(n-).
    PBWElem<S> apply_to_highest(const PBWElem<S>& u) const {
        const RootSystem& rs = sh_->roots();
        PBWElem<S> out;
        for (const auto& [m, c] : u.terms()) {
            PBWMono y = m;
            S v = c;
            bool killed = false;
            for (int b = 0; b < rs.dim() && !killed; ++b) {
                if (m[b] == 0) continue;
                switch (rs.kind(b)) {
                    case GenKind::X: killed = true; break;
                    case GenKind::H:
                        for (int k = 0; k < m[b]; ++k) v *= lambda_.coords[rs.sub_index(b)];
                        y[b] = 0;
                        break;
                    default: break;
                }
            }
            if (!killed) out.add_term(y, v);
        }
        return out;
    }

    /// Coordinates of y 1_lambda (y in U(n-)), projected to the module.
    ModVec<S> from_lowering(const PBWElem<S>& y) const {
        std::map<RootVec, std::vector<std::pair<PBWMono, S>>> grouped;
        for (const auto& [m, c] : y.terms()) grouped[uea().weight(m).scaled(-1)].emplace_back(m, c);
        ModVec<S> out;
        for (const auto& [beta, terms] : grouped) {
            auto it = spaces_.find(beta);
            if (it == spaces_.end()) {
                if (beta.height() > cutoff_ && !finite_dimensional())
                    throw std::out_of_range("module vector beyond the height cutoff");
                continue;
            }
            const WeightSpace<S>& sp = it->second;
            std::vector<S> full(sp.full_basis.size(), S(0));
            for (const auto& [m, c] : terms) {
                std::size_t i = 0;
                while (sp.full_basis[i] != m) ++i;
                full[i] += c;
            }
            std::vector<S> coords = reduce(sp, full);
            bool zero = true;
            for (const auto& x : coords) zero = zero && fusionq::is_zero(x);
            if (!zero) out[beta] = std::move(coords);
        }
        return out;
    }

    /// Action of u in U(g) on a module vector.
    ModVec<S> act(const PBWElem<S>& u, const ModVec<S>& v) const {
        PBWElem<S> y;
        for (const auto& [beta, coords] : v) {
            const WeightSpace<S>& sp = spaces_.at(beta);
            for (std::size_t k = 0; k < coords.size(); ++k) {
                if (fusionq::is_zero(coords[k])) continue;
                const auto x = uea().template monomial<S>(sp.full_basis[sp.kept[k]], coords[k]);
                y += apply_to_highest(uea().multiply(u, x));
            }
        }
        return from_lowering(y);
    }
    ModVec<S> act(const PBWElem<Rational>& u, const ModVec<S>& v) const
        requires(!std::is_same_v<S, Rational>)
    {
        return act(u.template convert<S>(), v);
    }

    /// Finite-dimensional module as a Rep (weight basis ordered by beta in
    /// root order, then coset index). Requires integral lambda.
    Rep to_rep() const
        requires std::is_same_v<S, Rational>
    {
        if (!finite_dimensional()) throw std::domain_error("module is not finite-dimensional within the cutoff");
        const RootSystem& rs = sh_->roots();
        Rep rep;
        rep.name = "V" + lambda_.to_string();
        std::map<std::pair<RootVec, std::size_t>, int> index;
        std::vector<int> lam(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) {
            if (!is_integer(lambda_.coords[i])) throw std::domain_error("to_rep requires an integral weight");
            lam[i] = int(lambda_.coords[i].get_num().get_si());
        }
        for (const auto& beta : betas_)
            for (std::size_t k = 0; k < dim(beta); ++k) {
                index[{beta, k}] = rep.dim++;
                auto w = rs.root_to_weight(beta);
                for (int i = 0; i < rs.rank(); ++i) w[i] = lam[i] - w[i];
                rep.weights.push_back(w);
            }
        rep.gens.assign(rs.dim(), std::vector<SparseVec>(rep.dim));
        for (int g = 0; g < rs.dim(); ++g) {
            const auto eg = uea().template generator<Rational>(g);
            for (const auto& [key, j] : index)
                for (const auto& [beta, coords] : act(eg, basis_vector(key.first, key.second)))
                    for (std::size_t k = 0; k < coords.size(); ++k)
                        if (!fusionq::is_zero(coords[k])) rep.gens[g][j][index.at({beta, k})] = coords[k];
        }
        return rep;
    }

    /// Action matrix of u on the whole (finite-dimensional) module in the
    /// to_rep basis order.
    Matrix<S> action_matrix(const PBWElem<S>& u) const {
        std::vector<std::pair<RootVec, std::size_t>> order;
        for (const auto& beta : betas_)
            for (std::size_t k = 0; k < dim(beta); ++k) order.emplace_back(beta, k);
        std::map<std::pair<RootVec, std::size_t>, std::size_t> index;
        for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
        Matrix<S> m(order.size(), order.size());
        for (std::size_t j = 0; j < order.size(); ++j)
            for (const auto& [beta, coords] : act(u, basis_vector(order[j].first, order[j].second)))
                for (std::size_t k = 0; k < coords.size(); ++k) m(index.at({beta, k}), j) = coords[k];
        return m;
    }

private:
    HWModule(std::shared_ptr<const Shapovalov> sh, const Weight<S>& lambda, int cutoff, ModuleKind kind)
        : sh_(std::move(sh)), lambda_(lambda), cutoff_(cutoff), kind_(kind) {
        if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
        const int r = sh_->roots().rank();
        betas_.push_back(RootVec{std::vector<int>(r, 0)});
        for (const auto& b : sh_->roots().q_plus_up_to(cutoff)) betas_.push_back(b);
        for (const auto& beta : betas_) {
            WeightSpace<S> sp;
            sp.beta = beta;
            if (beta.height() == 0) {
                sp.full_basis = {uea().unit_mono()};
                sp.block = Matrix<S>::identity(1);
            } else {
                auto b = sh_->block(beta, lambda_, cutoff);
                sp.full_basis = std::move(b.basis);
                sp.block = std::move(b.matrix);
            }
            if (kind_ == ModuleKind::Verma) {
                for (std::size_t i = 0; i < sp.full_basis.size(); ++i) sp.kept.push_back(i);
            } else {
                sp.kept = rref(sp.block).pivots;
            }
            const std::size_t n = sp.kept.size();
            sp.form = Matrix<S>(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) sp.form(i, j) = sp.block(sp.kept[i], sp.kept[j]);
            if (kind_ == ModuleKind::Irreducible && n > 0) {
                try {
                    sp.form_inverse = inverse(sp.form);
                } catch (const std::domain_error&) {
                    throw std::logic_error("contravariant form degenerate on the coset basis at beta " + beta.to_string());
                }
            }
            spaces_.emplace(beta, std::move(sp));
        }
    }

    /// Coset coordinates of a vector of M(lambda)[lambda - beta] given in the
    /// full PBW basis.
    std::vector<S> reduce(const WeightSpace<S>& sp, const std::vector<S>& full) const {
        if (kind_ == ModuleKind::Verma) return full;
        const std::size_t n = sp.kept.size();
        std::vector<S> s(n, S(0)), c(n, S(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < full.size(); ++j)
                if (!fusionq::is_zero(full[j])) s[i] += sp.block(sp.kept[i], j) * full[j];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c[i] += sp.form_inverse(i, j) * s[j];
        return c;
    }

    std::shared_ptr<const Shapovalov> sh_;
    Weight<S> lambda_;
    int cutoff_;
    ModuleKind kind_;
    std::vector<RootVec> betas_;
    std::map<RootVec, WeightSpace<S>> spaces_;
};

/// Contravariant form of an irreducible module: the per-beta matrices.
template <class S>
std::map<RootVec, Matrix<S>> contravariant_form(const HWModule<S>& mod) {
    if (mod.kind() != ModuleKind::Irreducible) throw std::invalid_argument("contravariant_form expects an irreducible module");
    std::map<RootVec, Matrix<S>> out;
    for (const auto& beta : mod.betas()) out.emplace(beta, mod.space(beta).form);
    return out;
}

/// Element of V(lambda) (x) F as a list of (module vector, function).
template <class S>
using ModFunTensor = std::vector<std::pair<ModVec<S>, FElem<S>>>;

/// (e (x) 1 + 1 (x) e) xi = 0 for every simple raising generator e, with F
/// carrying the left regular action.
template <class S>
bool is_singular_vector(const HWModule<S>& mod, const FunctionAlgebra& fa, const ModFunTensor<S>& xi) {
    const RootSystem& rs = mod.shapovalov().roots();
    for (int i = 0; i < rs.rank(); ++i) {
        const int e = rs.x_index(rs.root_index(rs.simple_root(i)));
        const auto eg = mod.uea().template generator<Rational>(e);
        std::map<std::pair<RootVec, std::size_t>, FElem<S>> buckets;
        for (const auto& [v, f] : xi) {
            for (const auto& [beta, coords] : mod.act(eg.template convert<S>(), v))
                for (std::size_t k = 0; k < coords.size(); ++k) buckets[{beta, k}] += f.scaled(coords[k]);
            const FElem<S> ef = fa.left(eg, f);
            for (const auto& [beta, coords] : v)
                for (std::size_t k = 0; k < coords.size(); ++k) buckets[{beta, k}] += ef.scaled(coords[k]);
        }
        for (const auto& [key, f] : buckets)
            if (!fa.is_zero(f)) return false;
    }
    return true;
}

}  // namespace fusionq
