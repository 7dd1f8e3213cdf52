#include "fusionq/quantize.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <stdexcept>

namespace fusionq {

namespace {

using BasisKey = std::pair<RootVec, std::size_t>;

/// Row echelon form over sparse vectors, grown one vector at a time.
template <class Key>
class SparseEchelon {
public:
    using Vec = std::map<Key, Rational>;

    /// Adds v if it is independent of the stored rows; returns whether it was.
    bool insert(Vec v) {
        for (const auto& [pivot, row] : rows_) {
            auto it = v.find(pivot);
            if (it == v.end()) continue;
            const Rational c = it->second;
            for (const auto& [k, x] : row) {
                Rational& slot = v[k];
                slot -= c * x;
                if (fusionq::is_zero(slot)) v.erase(k);
            }
        }
        if (v.empty()) return false;
        const Key pivot = v.begin()->first;
        const Rational lead = v.begin()->second;
        for (auto& [k, x] : v) x /= lead;
        rows_.emplace_back(pivot, std::move(v));
        return true;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<std::pair<Key, Vec>> rows_;
};

std::map<BasisKey, FElem<Rational>> buckets(const ModFunTensor<Rational>& t) {
    std::map<BasisKey, FElem<Rational>> out;
    for (const auto& [v, f] : t)
        for (const auto& [beta, coords] : v)
            for (std::size_t k = 0; k < coords.size(); ++k)
                if (!fusionq::is_zero(coords[k])) out[{beta, k}] += f.scaled(coords[k]);
    return out;
}

int top_height(const HWModule<Rational>& mod) {
    int top = 0;
    for (const auto& beta : mod.betas())
        if (mod.dim(beta) > 0) top = std::max(top, beta.height());
    return top;
}

/// Coordinates of target in the span of elems (all of one weight); throws if
/// target is outside the span.
std::vector<Rational> solve_in_span(const std::vector<PBWElem<Rational>>& elems, const PBWElem<Rational>& target) {
    std::map<PBWMono, std::size_t> rows;
    for (const auto& e : elems)
        for (const auto& [m, c] : e.terms()) rows.emplace(m, 0);
    for (const auto& [m, c] : target.terms()) rows.emplace(m, 0);
    std::size_t r = 0;
    for (auto& [m, idx] : rows) idx = r++;
    Matrix<Rational> aug(rows.size(), elems.size() + 1);
    for (std::size_t j = 0; j < elems.size(); ++j)
        for (const auto& [m, c] : elems[j].terms()) aug(rows.at(m), j) = c;
    for (const auto& [m, c] : target.terms()) aug(rows.at(m), elems.size()) = c;
    const auto e = rref(aug);
    std::vector<Rational> x(elems.size(), Rational(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == elems.size()) throw std::logic_error("element outside the ad-orbit span");
        x[e.pivots[i]] = e.reduced(i, elems.size());
    }
    return x;
}

}  // namespace

Quantizer::Quantizer(std::shared_ptr<const Shapovalov> sh, std::shared_ptr<const FunctionAlgebra> fa,
                     const Weight<Rational>& lambda0, int cutoff)
    : sh_(std::move(sh)),
      fa_(std::move(fa)),
      lambda0_(lambda0),
      module_(HWModule<Rational>::irreducible(sh_, lambda0, cutoff)) {}

bool Quantizer::is_admissible(const FElem<Rational>& f) const {
    return is_kernel_invariant(*fa_, *sh_, lambda0_, f, Side::Left) &&
           is_kernel_invariant(*fa_, *sh_, lambda0_, f, Side::Right);
}

int Quantizer::needed_height(const FElem<Rational>& f, const FElem<Rational>& g) const {
    const int h = std::min(fa_->lower_spread(f), fa_->upper_spread(g));
    if (module_.finite_dimensional()) return std::min(h, top_height(module_));
    if (h > module_.cutoff())
        throw std::out_of_range("product needs weight spaces up to height " + std::to_string(h) +
                                " beyond the cutoff " + std::to_string(module_.cutoff()));
    return h;
}

FusionElem<Rational> Quantizer::jred(int height) const {
    std::lock_guard lock(mutex_);
    if (!jred_ready_ || jred_.cutoff < height) {
        jred_ = reduced_fusion_element(*sh_, lambda0_, height);
        jred_ready_ = true;
    }
    FusionElem<Rational> out;
    out.cutoff = height;
    out.reduced = true;
    for (const auto& b : jred_.blocks)
        if (b.beta.height() <= height) out.blocks.push_back(b);
    return out;
}

std::vector<FElem<Rational>> Quantizer::corrections(const FusionBlock<Rational>& b, const FElem<Rational>& g) const {
    const std::size_t n = b.basis.size();
    std::vector<FElem<Rational>> moved;
    for (const auto& y : b.basis) moved.push_back(fa_->left(theta_of(uea(), y), g));
    std::vector<FElem<Rational>> out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!fusionq::is_zero(b.coeffs(i, j)) && !moved[j].is_zero_repr()) out[i] += moved[j].scaled(b.coeffs(i, j));
    return out;
}

Intertwiner Quantizer::theta_inverse(const FElem<Rational>& f) const {
    if (!is_admissible(f)) throw std::invalid_argument("theta_inverse: f is not in F[0]^{K + K~} for this weight");
    Intertwiner phi{lambda0_, {{module_.highest(), f}}};
    int h = fa_->upper_spread(f);
    if (module_.finite_dimensional()) h = std::min(h, top_height(module_));
    else if (h > module_.cutoff())
        throw std::out_of_range("theta_inverse needs height " + std::to_string(h) + " beyond the cutoff");
    for (const auto& b : jred(h).blocks) {
        const auto corr = corrections(b, f);
        for (std::size_t i = 0; i < corr.size(); ++i)
            if (!corr[i].is_zero_repr()) phi.image.emplace_back(module_.basis_vector(b.beta, i), corr[i]);
    }
    return phi;
}

FElem<Rational> Quantizer::star_unchecked(const FElem<Rational>& f, const FElem<Rational>& g) const {
    const FusionElem<Rational> j = jred(needed_height(f, g));
    auto block_term = [&](const FusionBlock<Rational>& b) {
        FElem<Rational> part;
        const auto corr = corrections(b, g);
        for (std::size_t i = 0; i < b.basis.size(); ++i) {
            if (corr[i].is_zero_repr()) continue;
            const FElem<Rational> moved = fa_->left(uea().monomial<Rational>(b.basis[i]), f);
            if (!moved.is_zero_repr()) part += fa_->product(moved, corr[i]);
        }
        return part;
    };
    // blocks in parallel, summed in canonical beta order
    std::vector<std::future<FElem<Rational>>> parts;
    for (std::size_t k = 1; k < j.blocks.size(); ++k)
        parts.push_back(std::async(std::launch::async, block_term, std::cref(j.blocks[k])));
    FElem<Rational> out = fa_->product(f, g);
    if (!j.blocks.empty()) out += block_term(j.blocks.front());
    for (auto& p : parts) out += p.get();
    return out;
}

FElem<Rational> Quantizer::star(const FElem<Rational>& f, const FElem<Rational>& g) const {
    if (!is_admissible(f) || !is_admissible(g))
        throw std::invalid_argument("star: inputs must lie in F[0]^{K + K~} for this weight");
    return star_unchecked(f, g);
}

FElem<Rational> Quantizer::star_via_fusion(const FElem<Rational>& f, const FElem<Rational>& g) const {
    if (!is_admissible(f) || !is_admissible(g))
        throw std::invalid_argument("star: inputs must lie in F[0]^{K + K~} for this weight");
    return multiply_out(*fa_, apply_fusion(*fa_, jred(needed_height(f, g)), f, g));
}

ModFunTensor<Rational> Quantizer::apply(const Intertwiner& phi, const ModVec<Rational>& v) const {
    ModFunTensor<Rational> out;
    for (const auto& [beta, coords] : v) {
        const WeightSpace<Rational>& sp = module_.space(beta);
        for (std::size_t k = 0; k < coords.size(); ++k) {
            if (fusionq::is_zero(coords[k])) continue;
            for (const auto& [split, c] : uea().coproduct_mono(sp.full_basis[sp.kept[k]])) {
                const auto x1 = uea().monomial<Rational>(split.first);
                const auto x2 = uea().monomial<Rational>(split.second);
                for (const auto& [w, h] : phi.image) {
                    ModVec<Rational> moved = module_.act(x1, w);
                    if (moved.empty()) continue;
                    FElem<Rational> fh = fa_->left(x2, h);
                    if (fh.is_zero_repr()) continue;
                    out.emplace_back(std::move(moved), fh.scaled(coords[k] * c));
                }
            }
        }
    }
    return out;
}

Intertwiner Quantizer::compose(const Intertwiner& a, const Intertwiner& b) const {
    ModFunTensor<Rational> raw;
    for (const auto& [v, g] : b.image)
        for (const auto& [w, h] : apply(a, v)) raw.emplace_back(w, fa_->product(h, g));
    auto bk = buckets(raw);
    const RootVec top = module_.betas().front();
    Intertwiner out{lambda0_, {{module_.highest(), bk[{top, 0}]}}};
    for (const auto& [key, f] : bk)
        if (!(key.first == top) && !f.is_zero_repr()) out.image.emplace_back(module_.basis_vector(key.first, key.second), f);
    return out;
}

bool Quantizer::equal(const Intertwiner& a, const Intertwiner& b) const {
    ModFunTensor<Rational> diff = a.image;
    for (const auto& [v, f] : b.image) diff.emplace_back(v, f.scaled(Rational(-1)));
    for (const auto& [key, f] : buckets(diff))
        if (!fa_->is_zero(f)) return false;
    return true;
}

EndoImage Quantizer::to_endo(const Intertwiner& phi) const {
    if (!module_.finite_dimensional())
        throw std::domain_error("Phi is only computed on finite-dimensional V(lambda0)");
    std::vector<BasisKey> order;
    for (const auto& beta : module_.betas())
        for (std::size_t k = 0; k < module_.dim(beta); ++k) order.emplace_back(beta, k);
    std::map<BasisKey, std::size_t> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
    EndoImage out{Matrix<Rational>(order.size(), order.size())};
    for (std::size_t j = 0; j < order.size(); ++j) {
        const WeightSpace<Rational>& sp = module_.space(order[j].first);
        for (const auto& [split, c] : uea().coproduct_mono(sp.full_basis[sp.kept[order[j].second]])) {
            const auto x1 = uea().monomial<Rational>(split.first);
            const auto x2 = uea().monomial<Rational>(split.second);
            for (const auto& [w, h] : phi.image) {
                const Rational s = c * fa_->evaluate(h, x2);
                if (fusionq::is_zero(s)) continue;
                for (const auto& [beta, coords] : module_.act(x1, w))
                    for (std::size_t k = 0; k < coords.size(); ++k) out.matrix(index.at({beta, k}), j) += s * coords[k];
            }
        }
    }
    return out;
}

Intertwiner Quantizer::psi(const PBWElem<Rational>& a, std::size_t max_orbit_dim) const {
    const UEA& u = uea();
    const RootSystem& rs = u.roots();
    // Weight-homogeneous components of a start the orbit.
    std::map<RootVec, PBWElem<Rational>> comps;
    for (const auto& [m, c] : a.terms()) comps[u.weight(m)].add_term(m, c);
    std::vector<PBWElem<Rational>> basis;
    std::vector<RootVec> weights;
    std::map<RootVec, std::vector<std::size_t>> by_weight;
    auto try_add = [&](const PBWElem<Rational>& e) {
        if (e.is_zero()) return false;
        const RootVec w = u.weight(e.terms().begin()->first);
        auto& idx = by_weight[w];
        std::vector<PBWElem<Rational>> same;
        for (auto i : idx) same.push_back(basis[i]);
        try {
            solve_in_span(same, e);
            return false;
        } catch (const std::logic_error&) {
        }
        if (basis.size() >= max_orbit_dim)
            throw std::length_error("ad-orbit does not close within " + std::to_string(max_orbit_dim) + " dimensions");
        idx.push_back(basis.size());
        basis.push_back(e);
        weights.push_back(w);
        return true;
    };
    std::vector<std::size_t> seeds;
    for (const auto& [w, e] : comps) {
        if (try_add(e)) seeds.push_back(basis.size() - 1);
        else throw std::logic_error("psi: dependent weight components");
    }
    for (std::size_t next = 0; next < basis.size(); ++next)
        for (int b = 0; b < rs.dim(); ++b) {
            const auto g = u.generator<Rational>(b);
            try_add(u.multiply(basis[next], g) - u.multiply(g, basis[next]));
        }
    // Right adjoint action [a_k, e_b] = sum_j R_b(j, k) a_j; the dual
    // representation has rho*(e_b) = R_b^T on the dual basis.
    const std::size_t n = basis.size();
    Rep rep;
    rep.name = "adr{" + u.to_string(a) + "}";
    rep.dim = int(n);
    for (const auto& w : weights) rep.weights.push_back(rs.root_to_weight(w.scaled(-1)));
    rep.gens.assign(rs.dim(), std::vector<SparseVec>(n));
    for (int b = 0; b < rs.dim(); ++b) {
        const auto g = u.generator<Rational>(b);
        for (std::size_t k = 0; k < n; ++k) {
            const auto br = u.multiply(basis[k], g) - u.multiply(g, basis[k]);
            if (br.is_zero()) continue;
            const RootVec w = u.weight(br.terms().begin()->first);
            const auto& idx = by_weight.at(w);
            std::vector<PBWElem<Rational>> same;
            for (auto i : idx) same.push_back(basis[i]);
            const auto x = solve_in_span(same, br);
            for (std::size_t s = 0; s < idx.size(); ++s)
                if (!fusionq::is_zero(x[s])) rep.gens[b][idx[s]][int(k)] = x[s];
        }
    }
    const RepPtr r = fa_->register_rep(std::move(rep));
    Intertwiner phi{lambda0_, {}};
    std::vector<std::pair<ModVec<Rational>, FElem<Rational>>> rest;
    FElem<Rational> lead;
    for (std::size_t i = 0; i < n; ++i) {
        FElem<Rational> fi;
        for (auto s : seeds) fi.add(r, int(s), int(i), Rational(1));
        for (const auto& [key, coef] : buckets({{module_.act(basis[i], module_.highest()), fi}})) {
            if (key.first == module_.betas().front()) lead += coef;
            else rest.emplace_back(module_.basis_vector(key.first, key.second), coef);
        }
    }
    phi.image.emplace_back(module_.highest(), lead);
    for (auto& e : rest) phi.image.push_back(std::move(e));
    return phi;
}

SaturationReport Quantizer::generated_dimension(const std::vector<FElem<Rational>>& gens, int max_rounds) const {
    for (const auto& g : gens)
        if (!is_admissible(g)) throw std::invalid_argument("generated_dimension: generator is not admissible");
    SaturationReport rep;
    SparseEchelon<ProfileKey> span;
    std::vector<FElem<Rational>> frontier{fa_->one<Rational>()};
    span.insert(fa_->profile(frontier.front()));
    rep.dims.push_back(span.rank());
    for (int round = 0; round < max_rounds && !frontier.empty(); ++round) {
        std::vector<FElem<Rational>> next;
        for (const auto& s : frontier)
            for (const auto& g : gens) {
                FElem<Rational> p = star_unchecked(s, g);
                if (span.insert(fa_->profile(p))) next.push_back(std::move(p));
            }
        frontier = std::move(next);
        rep.dims.push_back(span.rank());
    }
    rep.dim = span.rank();
    rep.saturated = frontier.empty();
    return rep;
}

StarLimitReport Quantizer::star_limit(const Weight<Rational>& nu, const FElem<Rational>& f,
                                      const FElem<Rational>& g) const {
    StarLimitReport rep;
    const int h = std::min(fa_->lower_spread(f), fa_->upper_spread(g));
    const auto j = fusion_element(*sh_, line_weight(lambda0_, nu), h);
    rep.along_line = multiply_out(*fa_, apply_fusion(*fa_, j, f.convert<RatFunc>(), g.convert<RatFunc>()));
    Profile<Rational> at_zero;
    rep.regular = true;
    for (const auto& [key, v] : fa_->profile(rep.along_line)) {
        if (pole_order_at_zero(v) > 0) {
            rep.regular = false;
            continue;
        }
        const Rational x = v.substitute(0, Rational(0)).to_rational();
        if (!fusionq::is_zero(x)) at_zero[key] = x;
    }
    rep.equal = rep.regular && at_zero == fa_->profile(star(f, g));
    return rep;
}

KostantReport kostant_rank(std::shared_ptr<const Shapovalov> sh, const Weight<Rational>& lambda0, int max_degree) {
    for (const auto& c : lambda0.coords)
        if (!is_integer(c) || sgn(c) < 0) throw std::domain_error("kostant_rank needs a dominant integral weight");
    // Smallest cutoff that exposes an empty layer, i.e. the whole module.
    int cutoff = 2;
    auto mod = HWModule<Rational>::irreducible(sh, lambda0, cutoff);
    while (!mod.finite_dimensional()) mod = HWModule<Rational>::irreducible(sh, lambda0, cutoff *= 2);
    const UEA& u = sh->uea();
    std::vector<Matrix<Rational>> gen;
    for (int b = 0; b < u.dim(); ++b) gen.push_back(mod.action_matrix(u.generator<Rational>(b)));
    const std::size_t n = mod.total_dim();
    KostantReport rep;
    rep.dim_end = n * n;
    SparseEchelon<std::size_t> span;
    auto add = [&](const Matrix<Rational>& m) {
        std::map<std::size_t, Rational> v;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!fusionq::is_zero(m(i, j))) v[i * n + j] = m(i, j);
        return span.insert(std::move(v));
    };
    // The image of U_{<=d} is spanned by the image of U_{<=d-1} and its left
    // multiples by generators, so only newly independent matrices are extended.
    std::vector<Matrix<Rational>> frontier{Matrix<Rational>::identity(n)};
    add(frontier.front());
    rep.rank_by_degree.push_back(span.rank());
    for (int d = 1; d <= max_degree; ++d) {
        std::vector<Matrix<Rational>> next;
        for (const auto& m : frontier)
            for (const auto& g : gen) {
                Matrix<Rational> p = g * m;
                if (add(p)) next.push_back(std::move(p));
            }
        frontier = std::move(next);
        rep.rank_by_degree.push_back(span.rank());
        rep.degree = d;
        const auto& r = rep.rank_by_degree;
        if (span.rank() == rep.dim_end || (d >= 2 && r[d] == r[d - 1] && r[d - 1] == r[d - 2])) {
            rep.saturated = true;
            break;
        }
    }
    rep.rank = span.rank();
    return rep;
}

}  // namespace fusionq
