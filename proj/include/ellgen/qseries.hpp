#pragma once

#include "ellgen/rational.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace ellgen {

/// Truncated formal series in u = q^{1/2} with exact rational coefficients.
///
/// A series of order N tracks u^0..u^N. Binary operations truncate to the
/// smaller order of their operands; nothing beyond the order is ever reported
/// or assumed to be zero.
class HalfQSeries {
public:
    /// The zero series of order 0.
    HalfQSeries();
    explicit HalfQSeries(std::size_t order);
    /// Coefficients c[0..N]; the order is c.size() - 1. Must be non-empty.
    explicit HalfQSeries(std::vector<Rational> coeffs);

    static HalfQSeries constant(const Rational& value, std::size_t order);
    /// value * u^power, zero if power > order.
    static HalfQSeries monomial(std::size_t power, const Rational& value, std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t k) const { return coeffs_.at(k); }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const;
    /// True iff every odd power of u has coefficient zero, i.e. the series lies in Q[[q]].
    bool is_integral_q() const;
    /// Index of the first nonzero coefficient, or order()+1 for the zero series.
    std::size_t valuation() const;

    HalfQSeries truncated(std::size_t order) const;

    HalfQSeries& operator+=(const HalfQSeries& other);
    HalfQSeries& operator-=(const HalfQSeries& other);
    HalfQSeries& operator*=(const HalfQSeries& other);
    HalfQSeries& operator*=(const Rational& scalar);

    friend HalfQSeries operator+(HalfQSeries a, const HalfQSeries& b) { return a += b; }
    friend HalfQSeries operator-(HalfQSeries a, const HalfQSeries& b) { return a -= b; }
    friend HalfQSeries operator*(HalfQSeries a, const HalfQSeries& b) { return a *= b; }
    friend HalfQSeries operator*(HalfQSeries a, const Rational& s) { return a *= s; }
    friend HalfQSeries operator*(const Rational& s, HalfQSeries a) { return a *= s; }
    HalfQSeries operator-() const;

    /// Equal orders and equal coefficients.
    friend bool operator==(const HalfQSeries& a, const HalfQSeries& b) { return a.coeffs_ == b.coeffs_; }

    /// Multiplicative inverse; throws ZeroConstantTerm if the u^0 coefficient vanishes.
    HalfQSeries inverse() const;
    /// Non-negative integer power.
    HalfQSeries pow(unsigned exponent) const;
    /// exp of a series with zero constant term; throws NonNilpotentScalar otherwise.
    HalfQSeries exp() const;

private:
    std::vector<Rational> coeffs_;
};

HalfQSeries add(const HalfQSeries& a, const HalfQSeries& b);
HalfQSeries mul(const HalfQSeries& a, const HalfQSeries& b);
HalfQSeries invert(const HalfQSeries& a);

/// prod_{j>=1} (1 + sign * q^{j - half_shift/2})^exponent truncated at u-order N.
/// sign is +1 or -1; a negative exponent inverts the product.
HalfQSeries eta_like_product(int sign, bool half_shift, int exponent, std::size_t order);

/// The substitution tau -> tau + 1, i.e. u -> -u: flips the sign of odd coefficients.
HalfQSeries tau_plus_one(const HalfQSeries& a);

struct NumericValue {
    std::complex<double> value;
    /// Bound on the modulus of the untracked tail.
    double tail_bound = 0.0;
};

/// Horner evaluation at a complex u with |u| < 1. The tail bound is
/// |u|^{N+1} * max|c_k| over the last five tracked terms / (1 - |u|).
NumericValue eval_numeric(const HalfQSeries& a, std::complex<double> u);

/// "q^0", "q^{1/2}", "q^1", "q^{3/2}", ... for the coefficient of u^k.
std::string q_power_label(std::size_t k);
/// The exponent of q carried by u^k, as a reduced fraction string ("3/2", "1", "0").
std::string q_power_string(std::size_t k);

/// One line per coefficient: "q^0: -1/8". Zero coefficients are listed too
/// unless skip_zero is set.
std::string render_series(const HalfQSeries& a, bool skip_zero = false);

} // namespace ellgen
