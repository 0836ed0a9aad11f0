#pragma once

#include "ellgen/cohring.hpp"
#include "ellgen/qseries.hpp"

#include <complex>
#include <string_view>
#include <vector>

namespace ellgen {

enum class ThetaKind { Theta, Theta1, Theta2, Theta3 };

std::string_view to_string(ThetaKind kind);

/// Power series in a single slot z with HalfQSeries coefficients, tracked to
/// z-degree D and u-order N.
class FactorSeries {
public:
    FactorSeries(std::size_t max_degree, std::size_t order);

    static FactorSeries one(std::size_t max_degree, std::size_t order);

    std::size_t max_degree() const noexcept { return coeffs_.size() - 1; }
    std::size_t order() const noexcept { return order_; }

    const HalfQSeries& operator[](std::size_t k) const { return coeffs_.at(k); }
    HalfQSeries& operator[](std::size_t k) { return coeffs_.at(k); }

    bool is_even() const;

    FactorSeries& operator+=(const FactorSeries& other);
    FactorSeries& operator*=(const FactorSeries& other);
    FactorSeries& operator*=(const Rational& s);
    friend FactorSeries operator+(FactorSeries a, const FactorSeries& b) { return a += b; }
    friend FactorSeries operator*(FactorSeries a, const FactorSeries& b) { return a *= b; }
    friend bool operator==(const FactorSeries& a, const FactorSeries& b);

    /// Requires a zero z^0 series.
    FactorSeries exp() const;
    /// Requires an invertible z^0 series.
    FactorSeries inverse() const;

    /// Sum over k of coeff_k * w^k in the ring of w. w must have zero scalar part.
    CohElement evaluate(const CohElement& w) const;
    /// Numeric value at a genuine complex z and u.
    std::complex<double> evaluate_numeric(std::complex<double> z, std::complex<double> u) const;

private:
    std::size_t order_;
    std::vector<HalfQSeries> coeffs_;
};

/// The normalized theta quotient in z (with e^{2 pi i v} = e^z):
///   Theta : z / [(e^{z/2}-e^{-z/2}) prod (1-q^j e^z)(1-q^j e^{-z})/(1-q^j)^2]
///   Theta1: cosh(z/2) prod (1+q^j e^z)(1+q^j e^{-z})/(1+q^j)^2
///   Theta2: prod (1-q^{j-1/2} e^z)(1-q^{j-1/2} e^{-z})/(1-q^{j-1/2})^2
///   Theta3: prod (1+q^{j-1/2} e^z)(1+q^{j-1/2} e^{-z})/(1+q^{j-1/2})^2
/// D is the z-degree cutoff (even), N the u-order.
FactorSeries elliptic_factor(ThetaKind kind, std::size_t max_degree, std::size_t order);

inline constexpr int kDefaultThetaTerms = 60;

/// Literal truncated products with J factors, q = e^{2 pi i tau}, q^{1/8} = e^{pi i tau / 4}.
std::complex<double> theta_numeric(ThetaKind kind, std::complex<double> v, std::complex<double> tau,
                                   int terms = kDefaultThetaTerms);

/// d^k/dv^k of the same truncated product for k <= 3, by exact jet
/// (truncated Taylor) arithmetic.
std::complex<double> theta_numeric_dv(ThetaKind kind, std::complex<double> v, std::complex<double> tau, int terms,
                                      int deriv_order);

/// prod (1+q^j)(1-q^{j-1/2})(1+q^{j-1/2}) == 1 to u-order N. With perturb the
/// first factor is replaced by (1-q^j), a negative control.
bool jacobi_identity_exact(std::size_t order, bool perturb = false);

} // namespace ellgen
