#include "fusionq/fusion.hpp"

#include <algorithm>

namespace fusionq {

PBWElem<Rational> theta_of(const UEA& uea, const PBWMono& y) {
    const auto [x, sign] = uea.theta_lowering(y);
    return uea.monomial<Rational>(x, Rational(sign));
}

FusionElem<Rational> reduced_fusion_element(const Shapovalov& sh, const Weight<Rational>& lambda0, int cutoff) {
    FusionElem<Rational> j;
    j.cutoff = cutoff;
    j.reduced = true;
    for (const auto& beta : sh.roots().q_plus_up_to(cutoff)) {
        const auto b = sh.block(beta, lambda0, cutoff);
        const auto kept = rref(b.matrix).pivots;
        if (kept.empty()) continue;
        FusionBlock<Rational> fb{beta, {}, Matrix<Rational>(kept.size(), kept.size())};
        for (std::size_t r = 0; r < kept.size(); ++r) {
            fb.basis.push_back(b.basis[kept[r]]);
            for (std::size_t c = 0; c < kept.size(); ++c) fb.coeffs(r, c) = b.matrix(kept[r], kept[c]);
        }
        fb.coeffs = inverse(fb.coeffs);
        j.blocks.push_back(std::move(fb));
    }
    return j;
}

Matrix<Rational> LaurentBlock::coefficient(int power) const {
    const int k = power + pole_order;
    if (k < 0 || k >= int(coeffs.size())) return Matrix<Rational>(basis.size(), basis.size());
    return coeffs[k];
}

Weight<RatFunc> line_weight(const Weight<Rational>& lambda0, const Weight<Rational>& nu) {
    if (lambda0.rank() != nu.rank()) throw std::invalid_argument("line: weight and direction ranks differ");
    Weight<RatFunc> w;
    const RatFunc t = RatFunc::variable(0);
    for (std::size_t i = 0; i < lambda0.rank(); ++i) w.coords.push_back(RatFunc(lambda0.coords[i]) + t * RatFunc(nu.coords[i]));
    return w;
}

std::vector<LaurentBlock> laurent_blocks(const Shapovalov& sh, const Weight<Rational>& lambda0,
                                         const Weight<Rational>& nu, int cutoff, int order) {
    const Weight<RatFunc> line = line_weight(lambda0, nu);
    std::vector<LaurentBlock> out;
    for (const auto& beta : sh.roots().q_plus_up_to(cutoff)) {
        LaurentBlock lb;
        lb.beta = beta;
        lb.order = order;
        auto bt = sh.block(beta, line, cutoff);
        lb.basis = bt.basis;
        lb.a_t = std::move(bt.matrix);
        lb.a0 = sh.block(beta, lambda0, cutoff).matrix;
        if (fusionq::is_zero(determinant(lb.a_t)))
            throw std::domain_error("line is not transversal: det S^beta vanishes identically at beta " +
                                    beta.to_string());
        lb.inverse = inverse(lb.a_t);
        const std::size_t n = lb.basis.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) lb.pole_order = std::max(lb.pole_order, pole_order_at_zero(lb.inverse(i, j)));
        lb.coeffs.assign(order + lb.pole_order + 1, Matrix<Rational>(n, n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (fusionq::is_zero(lb.inverse(i, j))) continue;
                const LaurentSeries s = laurent_expand(lb.inverse(i, j), order);
                for (int p = -lb.pole_order; p <= order; ++p) lb.coeffs[p + lb.pole_order](i, j) = s.coefficient(p);
            }
        out.push_back(std::move(lb));
    }
    return out;
}

std::string to_string(LemmaStatus s) {
    switch (s) {
        case LemmaStatus::Holds: return "holds";
        case LemmaStatus::Fails: return "fails";
        case LemmaStatus::OutOfScope: return "out-of-scope (pole order > 1)";
    }
    return "?";
}

namespace {

std::vector<std::vector<Rational>> kernel_vectors(const KernelSpace& kernel, const RootVec& beta) {
    auto it = kernel.blocks.find(beta);
    return it == kernel.blocks.end() ? std::vector<std::vector<Rational>>{} : it->second;
}

std::vector<std::vector<Rational>> columns(const Matrix<Rational>& m) {
    std::vector<std::vector<Rational>> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
    return cols;
}

LemmaStatus columns_in_kernel(const LaurentBlock& lb, const KernelSpace& kernel, const Matrix<Rational>& m) {
    if (lb.pole_order > 1) return LemmaStatus::OutOfScope;
    return in_span(kernel_vectors(kernel, lb.beta), columns(m), lb.basis.size()) ? LemmaStatus::Holds
                                                                                 : LemmaStatus::Fails;
}

}  // namespace

LemmaStatus check_lemma_C_image(const LaurentBlock& lb, const KernelSpace& kernel) {
    return columns_in_kernel(lb, kernel, lb.c());
}

LemmaStatus check_lemma_D0A0(const LaurentBlock& lb, const KernelSpace& kernel) {
    if (lb.pole_order > 1) return LemmaStatus::OutOfScope;
    return columns_in_kernel(lb, kernel, lb.d0() * lb.a0 - Matrix<Rational>::identity(lb.basis.size()));
}

RegularityReport check_regularity(const FunctionAlgebra& fa, const Shapovalov& sh, const Weight<Rational>& lambda0,
                                  const Weight<Rational>& nu, const FElem<Rational>& f, Side side, int cutoff) {
    RegularityReport rep;
    const UEA& uea = fa.uea();
    const int h = std::min(cutoff, side == Side::Left ? fa.lower_spread(f) : fa.upper_spread(f));
    for (const auto& lb : laurent_blocks(sh, lambda0, nu, h, 0)) {
        if (lb.pole_order == 0) continue;
        const std::size_t n = lb.basis.size();
        std::vector<FElem<Rational>> moved;
        for (const auto& y : lb.basis)
            moved.push_back(side == Side::Left ? fa.left(uea.monomial<Rational>(y), f) : fa.left(theta_of(uea, y), f));
        bool ok = true;
        for (int p = -lb.pole_order; p < 0 && ok; ++p) {
            const Matrix<Rational> m = lb.coefficient(p);
            for (std::size_t a = 0; a < n && ok; ++a) {
                FElem<Rational> acc;
                for (std::size_t b = 0; b < n; ++b) {
                    const Rational& c = side == Side::Left ? m(b, a) : m(a, b);
                    if (!fusionq::is_zero(c)) acc += moved[b].scaled(c);
                }
                ok = fa.is_zero(acc);
            }
        }
        if (!ok) {
            rep.regular = false;
            rep.singular_blocks.push_back(lb.beta);
        }
    }
    return rep;
}

bool is_kernel_invariant(const FunctionAlgebra& fa, const Shapovalov& sh, const Weight<Rational>& lambda0,
                         const FElem<Rational>& f, Side side) {
    if (!fa.in_weight_zero(f)) return false;
    const int h = side == Side::Left ? fa.lower_spread(f) : fa.upper_spread(f);
    if (h == 0) return true;
    const KernelSpace k = side == Side::Left ? sh.kernel(lambda0, h) : sh.upper_kernel(lambda0, h);
    return fa.is_invariant(f, sh.kernel_elements(k));
}

LimitReport limit_pairing(const FunctionAlgebra& fa, const Shapovalov& sh, const Weight<Rational>& lambda0,
                          const Weight<Rational>& nu, const FElem<Rational>& f, const FElem<Rational>& g, int cutoff) {
    if (!is_kernel_invariant(fa, sh, lambda0, f, Side::Left))
        throw std::invalid_argument("limit: f is not in F[0]^{K_lambda0}");
    if (!is_kernel_invariant(fa, sh, lambda0, g, Side::Right))
        throw std::invalid_argument("limit: g is not in F[0]^{K~_lambda0}");
    const UEA& uea = fa.uea();
    LimitReport rep;
    rep.cutoff = std::min(cutoff, std::min(fa.lower_spread(f), fa.upper_spread(g)));
    rep.limit.terms.emplace_back(Rational(1), f, g);
    for (const auto& lb : laurent_blocks(sh, lambda0, nu, rep.cutoff, 0)) {
        const std::size_t n = lb.basis.size();
        std::vector<FElem<Rational>> lf, lg;
        for (const auto& y : lb.basis) {
            lf.push_back(fa.left(uea.monomial<Rational>(y), f));
            lg.push_back(fa.left(theta_of(uea, y), g));
        }
        auto part = [&](int p) {
            FTensor<Rational> t;
            const Matrix<Rational> m = lb.coefficient(p);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (!fusionq::is_zero(m(r, c)) && !lf[r].is_zero_repr() && !lg[c].is_zero_repr())
                        t.terms.emplace_back(m(r, c), lf[r], lg[c]);
            return t;
        };
        for (int p = -lb.pole_order; p < 0; ++p)
            if (!fa.equals(part(p), FTensor<Rational>{})) {
                throw std::domain_error("limit: pole at t = 0 survives in block " + lb.beta.to_string());
            }
        for (auto& term : part(0).terms) rep.limit.terms.push_back(std::move(term));
    }
    rep.reduced = apply_fusion(fa, reduced_fusion_element(sh, lambda0, rep.cutoff), f, g);
    rep.equal = fa.equals(rep.limit, rep.reduced);
    return rep;
}

}  // namespace fusionq
