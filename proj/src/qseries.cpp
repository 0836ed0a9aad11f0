#include "ellgen/qseries.hpp"

#include "ellgen/errors.hpp"
#include "ellgen/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ellgen {

HalfQSeries::HalfQSeries() : coeffs_(1) {}

HalfQSeries::HalfQSeries(std::size_t order) : coeffs_(order + 1) {}

HalfQSeries::HalfQSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw std::invalid_argument("HalfQSeries needs at least one coefficient");
}

HalfQSeries HalfQSeries::constant(const Rational& value, std::size_t order)
{
    HalfQSeries s(order);
    s.coeffs_[0] = value;
    return s;
}

HalfQSeries HalfQSeries::monomial(std::size_t power, const Rational& value, std::size_t order)
{
    HalfQSeries s(order);
    if (power <= order)
        s.coeffs_[power] = value;
    return s;
}

bool HalfQSeries::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return sgn(r) == 0; });
}

bool HalfQSeries::is_integral_q() const
{
    for (std::size_t k = 1; k < coeffs_.size(); k += 2)
        if (sgn(coeffs_[k]) != 0)
            return false;
    return true;
}

std::size_t HalfQSeries::valuation() const
{
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (sgn(coeffs_[k]) != 0)
            return k;
    return coeffs_.size();
}

HalfQSeries HalfQSeries::truncated(std::size_t order) const
{
    if (order > this->order())
        throw std::invalid_argument("cannot extend a truncated series beyond its order");
    return HalfQSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(order) + 1));
}

HalfQSeries& HalfQSeries::operator+=(const HalfQSeries& other)
{
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        coeffs_[k] += other.coeffs_[k];
    return *this;
}

HalfQSeries& HalfQSeries::operator-=(const HalfQSeries& other)
{
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        coeffs_[k] -= other.coeffs_[k];
    return *this;
}

HalfQSeries& HalfQSeries::operator*=(const HalfQSeries& other)
{
    const auto n = std::min(coeffs_.size(), other.coeffs_.size());
    coeffs_ = kernels::cauchy_product(coeffs_, other.coeffs_, n);
    return *this;
}

HalfQSeries& HalfQSeries::operator*=(const Rational& scalar)
{
    for (auto& c : coeffs_)
        c *= scalar;
    return *this;
}

HalfQSeries HalfQSeries::operator-() const
{
    HalfQSeries r(*this);
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

HalfQSeries HalfQSeries::inverse() const
{
    if (sgn(coeffs_[0]) == 0)
        throw ZeroConstantTerm();
    const auto n = coeffs_.size();
    std::vector<Rational> inv(n);
    const Rational c0inv = 1 / coeffs_[0];
    inv[0] = c0inv;
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc;
        for (std::size_t i = 1; i <= k; ++i)
            if (sgn(coeffs_[i]) != 0)
                acc += coeffs_[i] * inv[k - i];
        inv[k] = -acc * c0inv;
    }
    return HalfQSeries(std::move(inv));
}

HalfQSeries HalfQSeries::pow(unsigned exponent) const
{
    HalfQSeries result = constant(1, order());
    HalfQSeries base = *this;
    while (exponent > 0) {
        if (exponent & 1u)
            result *= base;
        exponent >>= 1;
        if (exponent > 0)
            base *= base;
    }
    return result;
}

HalfQSeries HalfQSeries::exp() const
{
    if (sgn(coeffs_[0]) != 0)
        throw NonNilpotentScalar();
    // E' = a' E  =>  k E_k = sum_{i=1}^k i a_i E_{k-i}
    const auto n = coeffs_.size();
    std::vector<Rational> e(n);
    e[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc;
        for (std::size_t i = 1; i <= k; ++i)
            if (sgn(coeffs_[i]) != 0)
                acc += Rational(static_cast<long>(i)) * coeffs_[i] * e[k - i];
        e[k] = acc / static_cast<long>(k);
    }
    return HalfQSeries(std::move(e));
}

HalfQSeries add(const HalfQSeries& a, const HalfQSeries& b)
{
    return a + b;
}

HalfQSeries mul(const HalfQSeries& a, const HalfQSeries& b)
{
    return a * b;
}

HalfQSeries invert(const HalfQSeries& a)
{
    return a.inverse();
}

HalfQSeries eta_like_product(int sign, bool half_shift, int exponent, std::size_t order)
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("eta_like_product: sign must be +1 or -1");
    // Build the exponent-1 product by multiplying in (1 + sign u^p) one factor
    // at a time: an O(N) update per factor.
    std::vector<Rational> c(order + 1);
    c[0] = 1;
    for (std::size_t j = 1;; ++j) {
        const std::size_t p = half_shift ? 2 * j - 1 : 2 * j;
        if (p > order)
            break;
        for (std::size_t k = order; k >= p; --k) {
            if (sign > 0)
                c[k] += c[k - p];
            else
                c[k] -= c[k - p];
            if (k == p)
                break;
        }
    }
    HalfQSeries base(std::move(c));
    if (exponent == 0)
        return HalfQSeries::constant(1, order);
    if (exponent < 0)
        return base.inverse().pow(static_cast<unsigned>(-exponent));
    return base.pow(static_cast<unsigned>(exponent));
}

HalfQSeries tau_plus_one(const HalfQSeries& a)
{
    std::vector<Rational> c = a.coefficients();
    for (std::size_t k = 1; k < c.size(); k += 2)
        c[k] = -c[k];
    return HalfQSeries(std::move(c));
}

NumericValue eval_numeric(const HalfQSeries& a, std::complex<double> u)
{
    const double r = std::abs(u);
    if (!(r < 1.0))
        throw DivergentTail(r);
    const auto& c = a.coefficients();
    std::complex<double> acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;)
        acc = acc * u + c[k].get_d();

    double tail_coeff = 0.0;
    const std::size_t first = c.size() > 5 ? c.size() - 5 : 0;
    for (std::size_t k = first; k < c.size(); ++k)
        tail_coeff = std::max(tail_coeff, std::abs(c[k].get_d()));
    const double bound = std::pow(r, static_cast<double>(c.size())) * tail_coeff / (1.0 - r);
    return {acc, bound};
}

std::string q_power_string(std::size_t k)
{
    if (k % 2 == 0)
        return std::to_string(k / 2);
    return std::to_string(k) + "/2";
}

std::string q_power_label(std::size_t k)
{
    if (k % 2 == 0)
        return "q^" + std::to_string(k / 2);
    return "q^{" + std::to_string(k) + "/2}";
}

std::string render_series(const HalfQSeries& a, bool skip_zero)
{
    std::string out;
    for (std::size_t k = 0; k <= a.order(); ++k) {
        if (skip_zero && sgn(a[k]) == 0)
            continue;
        out += q_power_label(k) + ": " + to_string(a[k]) + "\n";
    }
    return out;
}

} // namespace ellgen
