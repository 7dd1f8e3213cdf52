#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fusionq/rational.hpp"

namespace fusionq {

// Variable 0 is the line parameter t, variables 1..3 are the symbolic weight
// coordinates L1..L3.
inline constexpr int kNumVars = 4;

std::string var_name(int v);
int var_index(std::string_view name);  // -1 if unknown

/// Sparse multivariate polynomial over Q. Terms are kept in lex-descending
/// order, so the first term is the leading term.
class Poly {
public:
    using Monomial = std::array<std::uint8_t, kNumVars>;
    using TermMap = std::map<Monomial, Rational, std::greater<Monomial>>;

    Poly() = default;
    Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static Poly variable(int v, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    const Rational& leading_coeff() const;
    const Monomial& leading_monomial() const;
    const TermMap& terms() const { return terms_; }

    int degree_in(int v) const;
    int total_degree() const;
    bool involves(int v) const { return degree_in(v) > 0; }
    /// Highest-index variable occurring, or -1 for constants.
    int main_var() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Coefficients with respect to variable v: result[k] multiplies v^k.
    std::vector<Poly> coeffs_in(int v) const;
    static Poly from_coeffs(const std::vector<Poly>& coeffs, int v);

    Poly substitute(int v, const Rational& value) const;

    /// Divides by the leading coefficient (zero stays zero).
    Poly monic() const;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    TermMap terms_;
};

/// Exact quotient a / b; throws std::domain_error if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
/// Pseudo-remainder of a by b with respect to variable v.
Poly pseudo_rem(const Poly& a, const Poly& b, int v);
/// Monic gcd (lex-leading coefficient 1); gcd(0,0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// gcd of the coefficients of a with respect to v.
Poly content_in(const Poly& a, int v);

}  // namespace fusionq
