#include "ellgen/theta.hpp"

#include "ellgen/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ellgen {

std::string_view to_string(ThetaKind kind)
{
    switch (kind) {
    case ThetaKind::Theta: return "theta";
    case ThetaKind::Theta1: return "theta1";
    case ThetaKind::Theta2: return "theta2";
    case ThetaKind::Theta3: return "theta3";
    }
    return "?";
}

// --- FactorSeries -----------------------------------------------------------

FactorSeries::FactorSeries(std::size_t max_degree, std::size_t order)
    : order_(order), coeffs_(max_degree + 1, HalfQSeries(order))
{
}

FactorSeries FactorSeries::one(std::size_t max_degree, std::size_t order)
{
    FactorSeries f(max_degree, order);
    f.coeffs_[0] = HalfQSeries::constant(1, order);
    return f;
}

bool FactorSeries::is_even() const
{
    for (std::size_t k = 1; k < coeffs_.size(); k += 2)
        if (!coeffs_[k].is_zero())
            return false;
    return true;
}

FactorSeries& FactorSeries::operator+=(const FactorSeries& other)
{
    const std::size_t d = std::min(max_degree(), other.max_degree());
    coeffs_.resize(d + 1);
    order_ = std::min(order_, other.order_);
    for (std::size_t k = 0; k <= d; ++k)
        coeffs_[k] = coeffs_[k].truncated(order_) + other.coeffs_[k].truncated(order_);
    return *this;
}

FactorSeries& FactorSeries::operator*=(const FactorSeries& other)
{
    const std::size_t d = std::min(max_degree(), other.max_degree());
    const std::size_t n = std::min(order_, other.order_);
    FactorSeries out(d, n);
    for (std::size_t i = 0; i <= d; ++i) {
        if (coeffs_[i].is_zero())
            continue;
        for (std::size_t j = 0; i + j <= d; ++j) {
            if (other.coeffs_[j].is_zero())
                continue;
            out.coeffs_[i + j] += coeffs_[i].truncated(n) * other.coeffs_[j].truncated(n);
        }
    }
    *this = std::move(out);
    return *this;
}

FactorSeries& FactorSeries::operator*=(const Rational& s)
{
    for (auto& c : coeffs_)
        c *= s;
    return *this;
}

bool operator==(const FactorSeries& a, const FactorSeries& b)
{
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

FactorSeries FactorSeries::exp() const
{
    if (!coeffs_[0].is_zero())
        throw NonNilpotentScalar();
    // E' = A' E  =>  k E_k = sum_{i=1}^k i A_i E_{k-i}
    FactorSeries e = one(max_degree(), order_);
    for (std::size_t k = 1; k <= max_degree(); ++k) {
        HalfQSeries acc(order_);
        for (std::size_t i = 1; i <= k; ++i)
            if (!coeffs_[i].is_zero() && !e.coeffs_[k - i].is_zero())
                acc += coeffs_[i] * e.coeffs_[k - i] * Rational(static_cast<long>(i));
        e.coeffs_[k] = acc * Rational(1, static_cast<long>(k));
    }
    return e;
}

FactorSeries FactorSeries::inverse() const
{
    const HalfQSeries c0_inv = coeffs_[0].inverse();
    FactorSeries r(max_degree(), order_);
    r.coeffs_[0] = c0_inv;
    for (std::size_t k = 1; k <= max_degree(); ++k) {
        HalfQSeries acc(order_);
        for (std::size_t i = 1; i <= k; ++i)
            if (!coeffs_[i].is_zero() && !r.coeffs_[k - i].is_zero())
                acc += coeffs_[i] * r.coeffs_[k - i];
        r.coeffs_[k] = -(acc * c0_inv);
    }
    return r;
}

CohElement FactorSeries::evaluate(const CohElement& w) const
{
    if (sgn(w.scalar_part()[0]) != 0)
        throw NonNilpotentScalar();
    const std::size_t n = std::min(order_, w.order());
    CohElement result = CohElement::scalar(w.presentation(), coeffs_[0].truncated(n));
    CohElement power = CohElement::constant(w.presentation(), 1, n);
    for (std::size_t k = 1; k <= max_degree(); ++k) {
        power *= w;
        if (power.is_zero())
            break;
        if (!coeffs_[k].is_zero())
            result += power * coeffs_[k].truncated(n);
    }
    return result;
}

std::complex<double> FactorSeries::evaluate_numeric(std::complex<double> z, std::complex<double> u) const
{
    std::complex<double> acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;)
        acc = acc * z + eval_numeric(coeffs_[k], u).value;
    return acc;
}

// --- elliptic_factor --------------------------------------------------------

namespace {

// z/(e^{z/2}-e^{-z/2}) or cosh(z/2), as z-series with constant coefficients.
FactorSeries base_factor(ThetaKind kind, std::size_t max_degree, std::size_t order)
{
    FactorSeries f(max_degree, order);
    for (std::size_t k = 0; 2 * k <= max_degree; ++k) {
        const Rational scale = power_of_two(-2 * static_cast<int>(k));
        if (kind == ThetaKind::Theta)
            f[2 * k] = HalfQSeries::constant(scale / factorial(static_cast<unsigned>(2 * k + 1)), order);
        else
            f[2 * k] = HalfQSeries::constant(scale / factorial(static_cast<unsigned>(2 * k)), order);
    }
    return kind == ThetaKind::Theta ? f.inverse() : f;
}

} // namespace

FactorSeries elliptic_factor(ThetaKind kind, std::size_t max_degree, std::size_t order)
{
    if (max_degree % 2 != 0)
        throw std::invalid_argument("elliptic_factor: z-degree cutoff must be even");

    // log of the level products: sum over levels t = u^p and k >= 1 of
    // sign_k t^k / k (e^{kz} + e^{-kz} - 2); the bracket is sum_{d>=1} 2 k^{2d} z^{2d}/(2d)!.
    const bool half_levels = kind == ThetaKind::Theta2 || kind == ThetaKind::Theta3;
    const bool alternating = kind == ThetaKind::Theta1 || kind == ThetaKind::Theta3;
    const int overall = kind == ThetaKind::Theta2 ? -1 : 1;

    std::vector<std::vector<Rational>> log(max_degree + 1, std::vector<Rational>(order + 1));
    for (std::size_t j = 1;; ++j) {
        const std::size_t p = half_levels ? 2 * j - 1 : 2 * j;
        if (p > order)
            break;
        for (std::size_t k = 1; p * k <= order; ++k) {
            int sign = overall;
            if (alternating && k % 2 == 0)
                sign = -sign;
            Integer kpow = 1;
            for (std::size_t d = 1; 2 * d <= max_degree; ++d) {
                kpow *= static_cast<unsigned long>(k * k);
                Rational c(2 * kpow, 1);
                c /= factorial(static_cast<unsigned>(2 * d));
                c /= static_cast<unsigned long>(k);
                if (sign < 0)
                    c = -c;
                log[2 * d][p * k] += c;
            }
        }
    }
    FactorSeries l(max_degree, order);
    for (std::size_t d = 0; d <= max_degree; ++d)
        l[d] = HalfQSeries(std::move(log[d]));

    FactorSeries result = l.exp();
    if (kind == ThetaKind::Theta || kind == ThetaKind::Theta1)
        result *= base_factor(kind, max_degree, order);
    return result;
}

// --- numeric thetas ---------------------------------------------------------

namespace {

using cd = std::complex<double>;
constexpr int kJetSize = 4;

// Truncated Taylor polynomial in h: value plus three derivatives / k!.
struct Jet {
    std::array<cd, kJetSize> c{};

    static Jet constant(cd v)
    {
        Jet j;
        j.c[0] = v;
        return j;
    }

    Jet& operator*=(const Jet& o)
    {
        std::array<cd, kJetSize> r{};
        for (int i = 0; i < kJetSize; ++i)
            for (int k = 0; i + k < kJetSize; ++k)
                r[static_cast<std::size_t>(i + k)] += c[static_cast<std::size_t>(i)] * o.c[static_cast<std::size_t>(k)];
        c = r;
        return *this;
    }
    Jet& operator+=(const Jet& o)
    {
        for (int i = 0; i < kJetSize; ++i)
            c[static_cast<std::size_t>(i)] += o.c[static_cast<std::size_t>(i)];
        return *this;
    }
    Jet& operator*=(cd s)
    {
        for (auto& x : c)
            x *= s;
        return *this;
    }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator*(Jet a, cd s) { return a *= s; }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
};

// exp(a0 + a1 h + ...): E' = a' E.
Jet exp(const Jet& a)
{
    Jet e;
    e.c[0] = std::exp(a.c[0]);
    for (int k = 1; k < kJetSize; ++k) {
        cd acc = 0.0;
        for (int i = 1; i <= k; ++i)
            acc += static_cast<double>(i) * a.c[static_cast<std::size_t>(i)] * e.c[static_cast<std::size_t>(k - i)];
        e.c[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }
    return e;
}

Jet theta_jet(ThetaKind kind, cd v, cd tau, int terms)
{
    if (!(tau.imag() > 0.0))
        throw InvalidTau();
    if (terms < 1)
        throw InputError("theta product needs at least one factor");
    using std::numbers::pi;
    const cd i(0.0, 1.0);

    Jet arg; // 2 pi i (v + h)
    arg.c[0] = 2.0 * pi * i * v;
    arg.c[1] = 2.0 * pi * i;
    const Jet ez = exp(arg);
    const Jet ez_inv = exp(arg * cd(-1.0));

    const cd q = std::exp(2.0 * pi * i * tau);
    const cd q_half = std::exp(pi * i * tau);
    const bool minus = kind == ThetaKind::Theta || kind == ThetaKind::Theta2;
    const bool half_levels = kind == ThetaKind::Theta2 || kind == ThetaKind::Theta3;
    const double s = minus ? -1.0 : 1.0;

    Jet result = Jet::constant(1.0);
    if (kind == ThetaKind::Theta || kind == ThetaKind::Theta1) {
        // 2 q^{1/8} sin(pi v) or 2 q^{1/8} cos(pi v), via exp(+-i pi v).
        Jet half;
        half.c[0] = pi * i * v;
        half.c[1] = pi * i;
        const Jet ep = exp(half);
        const Jet em = exp(half * cd(-1.0));
        Jet trig = kind == ThetaKind::Theta ? (ep + em * cd(-1.0)) * (1.0 / (2.0 * i)) : (ep + em) * cd(0.5);
        result = trig * (2.0 * std::exp(pi * i * tau / 4.0));
    }

    cd qj = 1.0;
    cd level = half_levels ? q_half : q;
    for (int j = 1; j <= terms; ++j) {
        qj *= q;
        const cd t = level;
        Jet f = Jet::constant(1.0 - qj);
        f *= Jet::constant(1.0) + ez * (s * t);
        f *= Jet::constant(1.0) + ez_inv * (s * t);
        result *= f;
        level *= q;
    }
    return result;
}

} // namespace

std::complex<double> theta_numeric(ThetaKind kind, std::complex<double> v, std::complex<double> tau, int terms)
{
    return theta_jet(kind, v, tau, terms).c[0];
}

std::complex<double> theta_numeric_dv(ThetaKind kind, std::complex<double> v, std::complex<double> tau, int terms,
                                      int deriv_order)
{
    if (deriv_order < 0 || deriv_order >= kJetSize)
        throw std::invalid_argument("theta_numeric_dv: derivative order must be 0..3");
    const Jet j = theta_jet(kind, v, tau, terms);
    double fact = 1.0;
    for (int k = 2; k <= deriv_order; ++k)
        fact *= k;
    return j.c[static_cast<std::size_t>(deriv_order)] * fact;
}

bool jacobi_identity_exact(std::size_t order, bool perturb)
{
    HalfQSeries p = eta_like_product(perturb ? -1 : 1, false, 1, order);
    p *= eta_like_product(-1, true, 1, order);
    p *= eta_like_product(1, true, 1, order);
    return p == HalfQSeries::constant(1, order);
}

} // namespace ellgen
