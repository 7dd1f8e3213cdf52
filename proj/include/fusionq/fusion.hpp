#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionq/funalg.hpp"
#include "fusionq/shapovalov.hpp"

namespace fusionq {

/// One graded piece of a fusion element: sum_ij coeffs(i, j) x_i (x) theta(x_j).
template <class S>
struct FusionBlock {
    RootVec beta;
    std::vector<PBWMono> basis;
    Matrix<S> coeffs;
};

/// J(lambda) or J_red(lambda0), truncated at a height cutoff. The degree-zero
/// part 1 (x) 1 is implicit; blocks are stored in canonical root order.
template <class S>
struct FusionElem {
    int cutoff = 0;
    bool reduced = false;
    std::vector<FusionBlock<S>> blocks;

    const FusionBlock<S>* block(const RootVec& beta) const {
        for (const auto& b : blocks)
            if (b.beta == beta) return &b;
        return nullptr;
    }
};

/// theta(y) for a lowering monomial y, as an element of U(n+).
PBWElem<Rational> theta_of(const UEA& uea, const PBWMono& y);

/// Blocks (S_lambda^beta)^(-1) for every beta up to the cutoff. Throws
/// std::domain_error naming beta if some block is singular at lambda.
template <class S>
FusionElem<S> fusion_element(const Shapovalov& sh, const Weight<S>& lambda, int cutoff) {
    FusionElem<S> j;
    j.cutoff = cutoff;
    for (const auto& beta : sh.roots().q_plus_up_to(cutoff)) {
        auto b = sh.block(beta, lambda, cutoff);
        try {
            j.blocks.push_back({beta, b.basis, inverse(b.matrix)});
        } catch (const std::domain_error&) {
            throw std::domain_error("fusion element: Shapovalov block at beta " + beta.to_string() +
                                    " is singular (lambda is not generic)");
        }
    }
    return j;
}

/// J_red(lambda0): on each weight space the coset basis is the set of pivot
/// columns of S^beta (the PBW-earliest complement V1 of the kernel V0), and
/// the block is the inverse of the form restricted to it.
FusionElem<Rational> reduced_fusion_element(const Shapovalov& sh, const Weight<Rational>& lambda0, int cutoff);

/// 1 (x) 1 + sum C_ij x_i (x) theta(x_j) in PBW (x) PBW coordinates.
template <class S>
PBWTensor<S> expand(const UEA& uea, const FusionElem<S>& j) {
    PBWTensor<S> out;
    out[{uea.unit_mono(), uea.unit_mono()}] = S(1);
    for (const auto& b : j.blocks) {
        std::vector<std::pair<PBWMono, int>> th;
        for (const auto& y : b.basis) th.push_back(uea.theta_lowering(y));
        for (std::size_t r = 0; r < b.basis.size(); ++r)
            for (std::size_t c = 0; c < b.basis.size(); ++c) {
                if (fusionq::is_zero(b.coeffs(r, c))) continue;
                S v = b.coeffs(r, c);
                if (th[c].second < 0) v = -v;
                out[{b.basis[r], th[c].first}] += v;
            }
    }
    for (auto it = out.begin(); it != out.end();) it = fusionq::is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

/// Text form "c * A (x) B + ...", with "1" for a unit factor.
template <class S>
std::string tensor_to_string(const UEA& uea, const PBWTensor<S>& t) {
    if (t.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : t) {
        if (!out.empty()) out += " + ";
        out += fusionq::to_string(c) + " * " + uea.mono_to_string(key.first) + " (x) " + uea.mono_to_string(key.second);
    }
    return out;
}

/// Inverse of tensor_to_string.
template <class S>
PBWTensor<S> parse_tensor(const UEA& uea, std::string_view text);

/// ->J (f (x) g) as an element of F (x) F.
template <class S>
FTensor<S> apply_fusion(const FunctionAlgebra& fa, const FusionElem<S>& j, const FElem<S>& f, const FElem<S>& g) {
    FTensor<S> out;
    out.terms.emplace_back(S(1), f, g);
    const UEA& uea = fa.uea();
    for (const auto& b : j.blocks) {
        const std::size_t n = b.basis.size();
        std::vector<FElem<S>> lf, lg;
        for (std::size_t i = 0; i < n; ++i) {
            lf.push_back(fa.left(uea.monomial<Rational>(b.basis[i]), f));
            lg.push_back(fa.left(theta_of(uea, b.basis[i]), g));
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (lf[r].is_zero_repr()) continue;
            for (std::size_t c = 0; c < n; ++c)
                if (!lg[c].is_zero_repr() && !fusionq::is_zero(b.coeffs(r, c)))
                    out.terms.emplace_back(b.coeffs(r, c), lf[r], lg[c]);
        }
    }
    return out;
}

/// mu: F (x) F -> F.
template <class S>
FElem<S> multiply_out(const FunctionAlgebra& fa, const FTensor<S>& t) {
    FElem<S> out;
    for (const auto& [c, f, g] : t.terms) out += fa.product(f, g).scaled(c);
    return out;
}

/// Laurent expansion of (S^beta at lambda0 + t nu)^(-1) around t = 0.
struct LaurentBlock {
    RootVec beta;
    std::vector<PBWMono> basis;
    int pole_order = 0;
    int order = 0;                           // highest power kept
    std::vector<Matrix<Rational>> coeffs;    // coeffs[k] multiplies t^(k - pole_order)
    Matrix<Rational> a0;                     // S^beta at lambda0
    Matrix<RatFunc> a_t;                     // S^beta along the line
    Matrix<RatFunc> inverse;                 // exact (A_t)^(-1)

    /// Coefficient of t^power (zero outside the stored range).
    Matrix<Rational> coefficient(int power) const;
    Matrix<Rational> c() const { return coefficient(-1); }
    Matrix<Rational> d0() const { return coefficient(0); }
};

Weight<RatFunc> line_weight(const Weight<Rational>& lambda0, const Weight<Rational>& nu);

/// Throws std::domain_error if det S^beta vanishes identically along the line.
std::vector<LaurentBlock> laurent_blocks(const Shapovalov& sh, const Weight<Rational>& lambda0,
                                         const Weight<Rational>& nu, int cutoff, int order);

enum class LemmaStatus { Holds, Fails, OutOfScope };
std::string to_string(LemmaStatus s);

/// Image C inside V0 = K_lambda0[-beta]; OutOfScope for poles of order > 1.
LemmaStatus check_lemma_C_image(const LaurentBlock& lb, const KernelSpace& kernel);
/// (D0 A0 - id) V inside V0.
LemmaStatus check_lemma_D0A0(const LaurentBlock& lb, const KernelSpace& kernel);

enum class Side { Left, Right };

struct RegularityReport {
    bool regular = true;
    std::vector<RootVec> singular_blocks;
};

/// Whether the singular Laurent parts of J(lambda0 + t nu), applied to f on
/// the given tensor slot, vanish.
RegularityReport check_regularity(const FunctionAlgebra& fa, const Shapovalov& sh, const Weight<Rational>& lambda0,
                                  const Weight<Rational>& nu, const FElem<Rational>& f, Side side, int cutoff);

struct LimitReport {
    int cutoff = 0;                  // effective height used
    FTensor<Rational> limit;         // t -> 0 value of ->J(lambda0 + t nu)(f (x) g)
    FTensor<Rational> reduced;       // ->J_red(lambda0)(f (x) g)
    bool equal = false;
};

/// Throws std::invalid_argument unless f is K-invariant and g is K~-invariant
/// weight-zero functions; throws std::domain_error if a pole survives.
LimitReport limit_pairing(const FunctionAlgebra& fa, const Shapovalov& sh, const Weight<Rational>& lambda0,
                          const Weight<Rational>& nu, const FElem<Rational>& f, const FElem<Rational>& g, int cutoff);

/// f in F[0]^{K_lambda0} (side Left) or F[0]^{K~_lambda0} (side Right),
/// checked with kernels up to the height reachable from f.
bool is_kernel_invariant(const FunctionAlgebra& fa, const Shapovalov& sh, const Weight<Rational>& lambda0,
                         const FElem<Rational>& f, Side side);

template <class S>
PBWTensor<S> parse_tensor(const UEA& uea, std::string_view text) {
    PBWTensor<S> out;
    std::string s(text);
    if (s == "0") return out;
    const std::string sep = " (x) ";
    // Terms are separated by " + " at depth zero; the marker " (x) " occurs once per term.
    std::size_t pos = 0;
    int depth = 0;
    std::vector<std::string> terms;
    std::size_t start = 0;
    for (pos = 0; pos < s.size(); ++pos) {
        if (s[pos] == '(' && s.compare(pos, 3, "(x)") != 0) ++depth;
        else if (s[pos] == ')' && (pos < 2 || s.compare(pos - 2, 3, "(x)") != 0)) --depth;
        else if (depth == 0 && s.compare(pos, 3, " + ") == 0) {
            terms.push_back(s.substr(start, pos - start));
            start = pos + 3;
            pos += 2;
        }
    }
    terms.push_back(s.substr(start));
    for (const auto& term : terms) {
        const auto cut = term.rfind(sep);
        if (cut == std::string::npos) throw std::invalid_argument("tensor term without ' (x) ': " + term);
        const auto lhs = uea.parse<S>(term.substr(0, cut));
        const auto rhs = uea.parse<Rational>(term.substr(cut + sep.size()));
        for (const auto& [a, x] : lhs.terms())
            for (const auto& [b, y] : rhs.terms()) {
                S v = x * S(y);
                auto [it, inserted] = out.try_emplace({a, b}, v);
                if (!inserted) it->second += v;
            }
    }
    for (auto it = out.begin(); it != out.end();) it = fusionq::is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace fusionq
