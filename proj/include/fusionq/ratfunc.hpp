#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fusionq/poly.hpp"

namespace fusionq {

/// Element of Q(t, L1, L2, L3), kept reduced: gcd(num, den) = 1 and the
/// denominator has lex-leading coefficient 1. Equality is structural.
class RatFunc {
public:
    RatFunc() : den_(Rational(1)) {}
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(long c) : RatFunc(Rational(c)) {}                    // NOLINT(google-explicit-constructor)
    RatFunc(int c) : RatFunc(Rational(c)) {}                     // NOLINT(google-explicit-constructor)
    RatFunc(Poly p) : num_(std::move(p)), den_(Rational(1)) {}   // NOLINT(google-explicit-constructor)
    RatFunc(Poly num, Poly den);

    static RatFunc variable(int v) { return RatFunc(Poly::variable(v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Throws std::domain_error unless constant.
    Rational to_rational() const;

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    RatFunc operator-() const;
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Substitutes a rational value for variable v; throws std::domain_error
    /// if the denominator vanishes there.
    RatFunc substitute(int v, const Rational& value) const;

    std::string to_string() const;

private:
    void reduce();
    Poly num_;
    Poly den_;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline std::string to_string(const RatFunc& x) { return x.to_string(); }

/// Parses an arithmetic expression over rationals and the variables
/// t, L1, L2, L3 with + - * / ^ and parentheses.
RatFunc parse_ratfunc(std::string_view text);

/// Laurent expansion of a univariate element of Q(t) around t = 0.
struct LaurentSeries {
    int valuation = 0;               // exponent of coeffs[0]
    std::vector<Rational> coeffs;    // coeffs[k] multiplies t^(valuation + k)
    Rational coefficient(int power) const;
};

/// Expands f in t up to and including t^max_power. Throws if f involves any
/// variable other than t.
LaurentSeries laurent_expand(const RatFunc& f, int max_power);

/// Order of the pole at t = 0 (0 if f is regular there).
int pole_order_at_zero(const RatFunc& f);

/// Display form with rational linear factors in t split off, e.g.
/// "6*t*(t-1)*(t-2)". Falls back to to_string() for multivariate input.
std::string factored_string(const RatFunc& f);

}  // namespace fusionq

namespace fusionq {

/// Scalar parsing dispatched on the field type.
template <class S>
S parse_scalar(std::string_view text);
template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return parse_rational(text); }
template <>
inline RatFunc parse_scalar<RatFunc>(std::string_view text) { return parse_ratfunc(text); }

}  // namespace fusionq
