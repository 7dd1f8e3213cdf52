#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fusionq/matrix.hpp"
#include "fusionq/uea.hpp"

namespace fusionq {

/// Graded block S_lambda^beta of the Shapovalov form on U(n-)[-beta].
template <class S>
struct ShapovalovBlock {
    RootVec beta;
    std::vector<PBWMono> basis;  // lowering_basis(beta)
    Matrix<S> matrix;
};

enum class KernelSide { Lower, Upper };

/// Graded pieces of K_lambda0 (side Lower) or of K~_lambda0 = theta(K_lambda0)
/// (side Upper), up to a height cutoff. Vectors are coordinates over the
/// block's lowering basis in both cases; for the upper side the element is
/// the theta-image of the lowering combination.
struct KernelSpace {
    Weight<Rational> lambda0;
    int cutoff = 0;
    KernelSide side = KernelSide::Lower;
    std::map<RootVec, std::vector<PBWMono>> bases;
    std::map<RootVec, std::vector<std::vector<Rational>>> blocks;

    std::size_t dim(const RootVec& beta) const {
        auto it = blocks.find(beta);
        return it == blocks.end() ? 0 : it->second.size();
    }
    bool empty() const {
        for (const auto& [b, v] : blocks)
            if (!v.empty()) return false;
        return true;
    }
};

/// One row of a kernel-sum report.
struct KernelSumRow {
    RootVec beta;
    std::size_t dim_k0 = 0;        // dim K_{lambda0}[-beta]
    std::size_t dim_sum = 0;       // dim (K_{lambda1} + ... + K_{lambdal})[-beta]
    std::size_t dim_joint = 0;     // dim (K_{lambda0} + sum)[-beta]
    std::size_t dim_prime = 0;     // dim K_{lambda'}[-beta]
    bool prime_included = true;    // K_{lambda'}[-beta] inside the sum
    bool equal() const { return dim_k0 == dim_sum && dim_sum == dim_joint; }
};

struct KernelSumReport {
    std::vector<KernelSumRow> rows;
    bool holds() const {
        for (const auto& r : rows)
            if (!r.equal() || !r.prime_included) return false;
        return true;
    }
};

/// Computes Shapovalov blocks, kernels and related checks. Block entries are
/// cached as U(h) polynomials and evaluated at any weight.
class Shapovalov {
public:
    explicit Shapovalov(std::shared_ptr<const UEA> uea) : uea_(std::move(uea)) {}

    const UEA& uea() const { return *uea_; }
    std::shared_ptr<const UEA> uea_ptr() const { return uea_; }
    const RootSystem& roots() const { return uea_->roots(); }

    /// pi_lambda(x (x) y) = (S(x) y)_0(lambda) for x in U(n+), y in U(n-).
    template <class S>
    S pairing_pi(const PBWElem<S>& x, const PBWElem<S>& y, const Weight<S>& lambda) const {
        return uea_->evaluate_at(uea_->project_zero(uea_->multiply(uea_->antipode(x), y)), lambda);
    }

    /// Entries (omega(x_i) x_j)_0 as U(h) elements over Q.
    const std::vector<std::vector<PBWElem<Rational>>>& symbolic_entries(const RootVec& beta) const;

    /// Throws std::out_of_range if height(beta) exceeds cutoff.
    template <class S>
    ShapovalovBlock<S> block(const RootVec& beta, const Weight<S>& lambda, int cutoff) const {
        if (beta.height() > cutoff)
            throw std::out_of_range("beta " + beta.to_string() + " exceeds the height cutoff " + std::to_string(cutoff));
        ShapovalovBlock<S> b{beta, uea_->lowering_basis(beta), {}};
        const auto& entries = symbolic_entries(beta);
        const std::size_t n = b.basis.size();
        b.matrix = Matrix<S>(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                b.matrix(i, j) = uea_->evaluate_at(entries[i][j].template convert<S>(), lambda);
        return b;
    }

    KernelSpace kernel(const Weight<Rational>& lambda0, int cutoff) const;
    /// The same graded pieces, labelled as the upper kernel theta(K).
    KernelSpace upper_kernel(const Weight<Rational>& lambda0, int cutoff) const;

    /// Kernel vector as an element of U(n-) (or U(n+) for the upper side).
    PBWElem<Rational> kernel_element(const KernelSpace& k, const RootVec& beta, std::size_t index) const;
    /// All stored kernel elements, in canonical order.
    std::vector<PBWElem<Rational>> kernel_elements(const KernelSpace& k) const;

    /// {Y_alpha^(n_alpha + 1) : alpha in delta} for lambda0 integral on the
    /// simple roots delta (indices) and generic on roots outside span(delta).
    /// Throws std::invalid_argument if the hypothesis fails.
    std::vector<PBWElem<Rational>> kernel_generators_integral(const Weight<Rational>& lambda0,
                                                              const std::vector<int>& delta) const;

    /// Graded pieces of the left ideal of U(n-) generated by gens, as
    /// coordinate vectors over lowering_basis (row-reduced basis).
    std::vector<std::vector<Rational>> ideal_piece(const std::vector<PBWElem<Rational>>& gens, const RootVec& beta) const;

    /// Coordinates of an element of U(n-)[-beta] over lowering_basis(beta).
    std::vector<Rational> coordinates(const PBWElem<Rational>& y, const RootVec& beta) const;

    KernelSumReport kernel_sum_check(const Weight<Rational>& lambda0, const std::vector<Weight<Rational>>& parts,
                                     const std::vector<Weight<Rational>>& primes, int cutoff) const;

private:
    std::shared_ptr<const UEA> uea_;
    mutable std::mutex mutex_;
    mutable std::map<RootVec, std::vector<std::vector<PBWElem<Rational>>>> cache_;
};

/// Row-reduced basis of the span of the given vectors (all of length n).
std::vector<std::vector<Rational>> span_basis(const std::vector<std::vector<Rational>>& vectors, std::size_t n);

}  // namespace fusionq
