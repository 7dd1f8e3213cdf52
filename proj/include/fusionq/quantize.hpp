#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "fusionq/fusion.hpp"
#include "fusionq/repmod.hpp"

namespace fusionq {

/// An intertwiner phi: V(lambda) -> V(lambda) (x) F, stored through its value
/// on the highest weight vector. The first entry is (1_lambda, Theta(phi)).
struct Intertwiner {
    Weight<Rational> lambda;
    ModFunTensor<Rational> image;
};

/// Matrix of an endomorphism of a finite-dimensional V(lambda0) in the
/// weight basis order of HWModule::action_matrix.
struct EndoImage {
    Matrix<Rational> matrix;
};

struct KostantReport {
    std::size_t rank = 0;
    std::size_t dim_end = 0;
    int degree = 0;                        // last degree examined
    std::vector<std::size_t> rank_by_degree;
    bool saturated = false;                // stable for two consecutive degrees, or full
    bool surjective() const { return rank == dim_end; }
};

struct StarLimitReport {
    FElem<RatFunc> along_line;   // f *_{lambda0 + t nu} g
    bool regular = false;        // no pole at t = 0 as a function
    bool equal = false;          // value at t = 0 equals f *_{lambda0} g
};

struct SaturationReport {
    std::size_t dim = 0;
    std::vector<std::size_t> dims;   // span dimension after each round
    bool saturated = false;
};

/// The Theta correspondence and the star product at a fixed rational
/// highest weight lambda0, with V(lambda0) realized up to a height cutoff.
class Quantizer {
public:
    Quantizer(std::shared_ptr<const Shapovalov> sh, std::shared_ptr<const FunctionAlgebra> fa,
              const Weight<Rational>& lambda0, int cutoff);

    const Weight<Rational>& lambda0() const { return lambda0_; }
    const HWModule<Rational>& module() const { return module_; }
    const FunctionAlgebra& functions() const { return *fa_; }
    const Shapovalov& shapovalov() const { return *sh_; }
    const UEA& uea() const { return sh_->uea(); }

    /// f in F[0]^{K_lambda0 + K~_lambda0}.
    bool is_admissible(const FElem<Rational>& f) const;

    /// Throws std::invalid_argument for inadmissible f.
    Intertwiner theta_inverse(const FElem<Rational>& f) const;
    static const FElem<Rational>& theta(const Intertwiner& phi) { return phi.image.front().second; }

    /// f *_lambda0 g through the corrections of Theta^(-1)(g). Throws
    /// std::invalid_argument for inadmissible inputs.
    FElem<Rational> star(const FElem<Rational>& f, const FElem<Rational>& g) const;
    /// mu(->J_red(lambda0)(f (x) g)), the same product through the fusion element.
    FElem<Rational> star_via_fusion(const FElem<Rational>& f, const FElem<Rational>& g) const;

    /// phi(v) = sum over phi(1) = sum w (x) h of x(1) w (x) ->x(2) h for v = x 1.
    ModFunTensor<Rational> apply(const Intertwiner& phi, const ModVec<Rational>& v) const;
    /// a * b = (id (x) mu)(a (x) id) b.
    Intertwiner compose(const Intertwiner& a, const Intertwiner& b) const;
    bool equal(const Intertwiner& a, const Intertwiner& b) const;

    /// Phi(phi) = (id (x) eps) phi. Throws std::domain_error unless V(lambda0)
    /// is finite-dimensional.
    EndoImage to_endo(const Intertwiner& phi) const;

    /// Psi(a): m -> sum a_i m (x) f_i with ad^r_x a = sum f_i(x) a_i. Throws
    /// std::length_error if the ad-orbit exceeds max_orbit_dim.
    Intertwiner psi(const PBWElem<Rational>& a, std::size_t max_orbit_dim = 256) const;

    /// Dimension of the unital star-algebra generated by gens (admissible),
    /// by saturating spans of iterated products.
    SaturationReport generated_dimension(const std::vector<FElem<Rational>>& gens, int max_rounds = 16) const;

    /// f *_{lambda0 + t nu} g over Q(t) through J, and its t -> 0 limit.
    StarLimitReport star_limit(const Weight<Rational>& nu, const FElem<Rational>& f, const FElem<Rational>& g) const;

private:
    int needed_height(const FElem<Rational>& f, const FElem<Rational>& g) const;
    FusionElem<Rational> jred(int height) const;
    FElem<Rational> star_unchecked(const FElem<Rational>& f, const FElem<Rational>& g) const;
    std::vector<FElem<Rational>> corrections(const FusionBlock<Rational>& b, const FElem<Rational>& g) const;

    std::shared_ptr<const Shapovalov> sh_;
    std::shared_ptr<const FunctionAlgebra> fa_;
    Weight<Rational> lambda0_;
    HWModule<Rational> module_;
    mutable std::mutex mutex_;
    mutable FusionElem<Rational> jred_;
    mutable bool jred_ready_ = false;
};

/// Rank of the span of action matrices of PBW monomials on V(lambda0), by
/// increasing degree until the rank is full or stable for two degrees.
KostantReport kostant_rank(std::shared_ptr<const Shapovalov> sh, const Weight<Rational>& lambda0, int max_degree = 16);

}  // namespace fusionq
