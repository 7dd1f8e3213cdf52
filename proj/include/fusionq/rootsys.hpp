#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fusionq/matrix.hpp"

namespace fusionq {

/// Vector in the root lattice, in simple-root coordinates.
struct RootVec {
    std::vector<int> coords;

    int height() const {
        int h = 0;
        for (int c : coords) h += c;
        return h;
    }
    bool is_nonnegative() const {
        for (int c : coords)
            if (c < 0) return false;
        return true;
    }
    friend bool operator==(const RootVec&, const RootVec&) = default;
    friend auto operator<=>(const RootVec&, const RootVec&) = default;
    RootVec operator+(const RootVec& o) const;
    RootVec operator-(const RootVec& o) const;
    RootVec scaled(int k) const;
    std::string to_string() const;  // "1,1"
};

/// Weight in fundamental-weight coordinates, so that <lambda, alpha_i^vee>
/// is coords[i].
template <class S>
struct Weight {
    std::vector<S> coords;

    std::size_t rank() const { return coords.size(); }
    Weight operator+(const Weight& o) const {
        Weight r = *this;
        for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
        return r;
    }
    Weight scaled(const S& c) const {
        Weight r = *this;
        for (auto& x : r.coords) x *= c;
        return r;
    }
    friend bool operator==(const Weight& a, const Weight& b) { return a.coords == b.coords; }
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + fusionq::to_string(coords[i]);
        return s + ")";
    }
};

/// Sparse combination of Lie algebra basis elements with integer coefficients.
using LieVec = std::vector<std::pair<int, long>>;

/// Kind of a Chevalley basis element.
enum class GenKind { Y, H, X };

/// Root system with a Chevalley basis of the Lie algebra.
///
/// Basis indexing: Y_beta for positive roots in root order occupy
/// [0, m), the coroots H_i occupy [m, m + r), and X_beta occupy
/// [m + r, 2m + r). This is also the PBW normal order.
///
/// Positive roots are ordered by height, ties broken by descending
/// lexicographic order of simple-root coordinates. For each non-simple root
/// xi the extraspecial pair is (alpha_i, xi - alpha_i) with i the smallest
/// simple index such that xi - alpha_i is a root, and the sign convention is
///   X_xi = [X_{alpha_i}, X_{xi - alpha_i}] / (p + 1),
///   Y_xi = [Y_{xi - alpha_i}, Y_{alpha_i}] / (p + 1),
/// p the largest integer with xi - alpha_i - p alpha_i a root. Then
/// [X_beta, Y_beta] = beta^vee for every positive root, and X -> Y, Y -> X,
/// H -> H extends to an anti-automorphism of U(g).
class RootSystem {
public:
    /// Supported labels: A1, A2, A3, B2, B3, C2, C3 and 'x'-joined products
    /// of these with total rank at most 3 (e.g. "A1xA1", "A1xA2").
    /// Throws std::invalid_argument otherwise.
    static RootSystem build(const std::string& label);

    const std::string& label() const { return label_; }
    int rank() const { return rank_; }
    int num_positive_roots() const { return int(positive_roots_.size()); }
    int dim() const { return 2 * num_positive_roots() + rank_; }

    /// cartan()[i][j] = <alpha_j, alpha_i^vee>.
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    const std::vector<RootVec>& positive_roots() const { return positive_roots_; }
    /// Index of a positive root in root order, or -1.
    int root_index(const RootVec& r) const;
    bool is_positive_root(const RootVec& r) const { return root_index(r) >= 0; }
    RootVec simple_root(int i) const;
    /// Coroot of a positive root in simple-coroot coordinates.
    const std::vector<int>& coroot(int root) const { return coroots_[root]; }
    /// (alpha, alpha) with short simple roots normalized to 2.
    long root_norm(int root) const { return norms_[root]; }

    // Basis index helpers.
    int y_index(int root) const { return root; }
    int h_index(int i) const { return num_positive_roots() + i; }
    int x_index(int root) const { return num_positive_roots() + rank_ + root; }
    GenKind kind(int basis) const;
    /// Root index for Y/X basis elements, simple index for H.
    int sub_index(int basis) const;
    /// ad(h)-weight of a basis element in simple-root coordinates.
    RootVec basis_weight(int basis) const;
    std::string basis_name(int basis) const;  // "Y[1,1]", "H[2]", "X[1]"
    /// Parses a basis_name; returns -1 if unknown.
    int parse_basis_name(std::string_view name) const;

    /// [e_a, e_b] in the basis.
    const LieVec& bracket(int a, int b) const { return brackets_[std::size_t(a) * dim() + b]; }

    /// Matrix of e_a in the realization used to build the algebra (for type
    /// A_n this is the defining representation of sl(n+1)).
    const Matrix<Rational>& defining_matrix(int basis) const { return defining_[basis]; }
    /// Tr(e_a e_b) in that realization.
    Rational trace_form(int a, int b) const;

    /// <lambda, beta^vee> for a positive root (index into positive_roots()).
    template <class S>
    S pair(const Weight<S>& lambda, int root) const {
        S s(0);
        const auto& c = coroots_[root];
        for (int i = 0; i < rank_; ++i)
            if (c[i] != 0) s += lambda.coords[i] * S(Rational(c[i]));
        return s;
    }
    /// Same, with the root given by coordinates; throws if not a positive root.
    template <class S>
    S pair(const Weight<S>& lambda, const RootVec& root) const {
        const int k = root_index(root);
        if (k < 0) throw std::invalid_argument("not a positive root: " + root.to_string());
        return pair(lambda, k);
    }

    /// Fundamental-weight coordinates of a root-lattice vector.
    std::vector<int> root_to_weight(const RootVec& r) const;
    /// Simple-root coordinates of an integral weight difference (must lie in
    /// the root lattice up to rational coefficients).
    std::vector<Rational> weight_to_root(const std::vector<int>& w) const;

    Weight<Rational> rho() const;

    /// Positive roots beta with <lambda + rho, beta^vee> a positive integer.
    std::vector<int> genericity_report(const Weight<Rational>& lambda) const;

    /// All beta in Q_+ with 1 <= height <= max_height, ordered by height then
    /// descending lex.
    std::vector<RootVec> q_plus_up_to(int max_height) const;

    std::string to_json() const;

private:
    std::string label_;
    int rank_ = 0;
    std::vector<std::vector<int>> cartan_;
    std::vector<RootVec> positive_roots_;
    std::vector<std::vector<int>> coroots_;
    std::vector<long> norms_;
    std::vector<LieVec> brackets_;
    std::vector<Matrix<Rational>> defining_;
    Matrix<Rational> cartan_inverse_;
};

/// Root order used throughout: by height, then descending lex.
bool root_order_less(const RootVec& a, const RootVec& b);

}  // namespace fusionq
