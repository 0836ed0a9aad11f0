#include "ellgen/modcheck.hpp"

#include "ellgen/errors.hpp"
#include "ellgen/theta.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ellgen {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

std::string tau_string(Complex tau)
{
    return fmt::format("{:.6g}{:+.6g}i", tau.real(), tau.imag());
}

Complex q_power_factor(const Rational& c, Complex tau)
{
    if (c == 0)
        return 1.0;
    return std::exp(2.0 * kPi * kI * c.get_d() * tau);
}

} // namespace

SL2Matrix::SL2Matrix(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_)
{
    if (a * d - b * c != 1)
        throw InputError("matrix " + to_string() + " does not have determinant 1");
}

Complex SL2Matrix::apply(Complex tau) const
{
    return (static_cast<double>(a) * tau + static_cast<double>(b)) /
           (static_cast<double>(c) * tau + static_cast<double>(d));
}

Complex SL2Matrix::automorphy(Complex tau, int weight) const
{
    return std::pow(static_cast<double>(c) * tau + static_cast<double>(d), weight);
}

std::string SL2Matrix::to_string() const
{
    return fmt::format("[[{}, {}], [{}, {}]]", a, b, c, d);
}

SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::vector<SL2Matrix> group_generators(Group group)
{
    const SL2Matrix s = SL2Matrix::S();
    const SL2Matrix t = SL2Matrix::T();
    const SL2Matrix t2 = SL2Matrix::T(2);
    switch (group) {
    case Group::SL2Z: return {s, t};
    case Group::Gamma0_2: return {t, s * t2 * s * t};
    case Group::Gamma_up0_2: return {s * t * s, t2 * s * t * s};
    case Group::GammaTheta: return {s, t2};
    case Group::None: return {};
    }
    return {};
}

bool check_T_exact(const HalfQSeries& f, const HalfQSeries& expected)
{
    return tau_plus_one(f) == expected;
}

bool check_T_exact(const HalfQSeries& f)
{
    return check_T_exact(f, f);
}

Complex evaluate_series(const HalfQSeries& f, Complex tau, const Rational& q_power, double tail_limit)
{
    if (!(tau.imag() > 0))
        throw InvalidTau();
    const NumericValue v = eval_numeric(f, std::exp(kPi * kI * tau));
    if (v.tail_bound > tail_limit)
        throw TailTooLarge(tau_string(tau), v.tail_bound);
    return v.value * q_power_factor(q_power, tau);
}

NumericReport check_numeric(const HalfQSeries& f, const SL2Matrix& g, int weight, const std::vector<Complex>& samples,
                            double tol, const Rational& q_power)
{
    NumericReport rep;
    if (f.is_zero()) {
        rep.passed = true;
        rep.chi = 1.0;
        rep.detail = "series is identically zero";
        return rep;
    }
    const double tail = tol / 10;
    for (Complex tau : samples) {
        const Complex lhs = evaluate_series(f, g.apply(tau), q_power, tail);
        const Complex rhs = g.automorphy(tau, weight) * evaluate_series(f, tau, q_power, tail);
        rep.samples.push_back({tau, lhs / rhs});
    }
    rep.chi = rep.samples.front().ratio;
    for (const auto& s : rep.samples) {
        rep.dispersion = std::max(rep.dispersion, std::abs(s.ratio - rep.chi));
        rep.modulus_error = std::max(rep.modulus_error, std::abs(std::abs(s.ratio) - 1.0));
    }
    rep.passed = rep.dispersion < tol && rep.modulus_error < tol;
    rep.detail = fmt::format("chi = {:.10g}{:+.10g}i, dispersion {:.3g}, | |chi| - 1 | {:.3g}", rep.chi.real(),
                             rep.chi.imag(), rep.dispersion, rep.modulus_error);
    return rep;
}

GroupReport check_group(const HalfQSeries& f, Group group, int weight, const std::vector<Complex>& samples,
                        double tol, const Rational& q_power)
{
    GroupReport rep;
    for (const auto& g : group_generators(group)) {
        auto r = check_numeric(f, g, weight, samples, tol, q_power);
        rep.passed = rep.passed && r.passed;
        rep.generators.emplace_back(g, std::move(r));
    }
    return rep;
}

NumericReport check_s_squared(const HalfQSeries& f, int weight, const std::vector<Complex>& samples, double tol)
{
    const SL2Matrix s = SL2Matrix::S();
    NumericReport rep = check_numeric(f, s * s, weight, samples, tol);
    if (!f.is_zero())
        rep.passed = rep.passed && std::abs(rep.chi - 1.0) < tol;
    return rep;
}

RelationReport check_s_relation(const HalfQSeries& f, const HalfQSeries& g, int weight,
                                const std::vector<Complex>& samples, double tol, const Rational& q_power)
{
    RelationReport rep;
    const double tail = tol / 10;
    for (Complex tau : samples) {
        const Complex lhs = evaluate_series(f, -1.0 / tau, q_power, tail);
        const Complex rhs = std::pow(tau, weight) * evaluate_series(g, tau, q_power, tail);
        rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
        rep.ratios.push_back({tau, lhs / rhs});
    }
    rep.passed = rep.max_residual < tol;
    return rep;
}

QPowerFit best_q_power(const HalfQSeries& f, const HalfQSeries& g, int weight, const std::vector<Complex>& samples)
{
    QPowerFit best{Rational(0), std::numeric_limits<double>::infinity()};
    for (int k = -24; k <= 24; ++k) {
        const Rational c = Rational(k) / 24;
        const auto rel = check_s_relation(f, g, weight, samples, 1.0, c);
        const Complex r0 = rel.ratios.front().ratio;
        double spread = 0.0;
        for (const auto& r : rel.ratios)
            spread = std::max(spread, std::abs(r.ratio - r0) / std::abs(r0));
        if (spread < best.spread)
            best = {c, spread};
    }
    return best;
}

std::vector<ThetaLawResult> check_theta_laws(double tol, int terms)
{
    struct Sample {
        Complex v;
        Complex tau;
    };
    const std::vector<Sample> samples{{{0.1, 0.05}, {0.0, 1.1}}, {{0.23, -0.1}, {0.3, 1.2}}, {{0.37, 0.02}, {-0.2, 0.9}}};
    const Complex eighth = std::exp(kI * kPi / 4.0);
    auto th = [terms](ThetaKind k, Complex v, Complex tau) { return theta_numeric(k, v, tau, terms); };
    auto s_factor = [](Complex v, Complex tau) { return std::sqrt(tau / kI) * std::exp(kI * kPi * tau * v * v); };

    using Law = std::function<std::pair<Complex, Complex>(Complex, Complex)>;
    const std::vector<std::pair<std::string, Law>> laws{
        {"theta(v, tau+1) = e^{i pi/4} theta(v, tau)",
         [&](Complex v, Complex t) { return std::pair{th(ThetaKind::Theta, v, t + 1.0), eighth * th(ThetaKind::Theta, v, t)}; }},
        {"theta(v, -1/tau) = -i (tau/i)^{1/2} e^{i pi tau v^2} theta(tau v, tau)",
         [&](Complex v, Complex t) {
             return std::pair{th(ThetaKind::Theta, v, -1.0 / t), -kI * s_factor(v, t) * th(ThetaKind::Theta, t * v, t)};
         }},
        {"theta1(v, tau+1) = e^{i pi/4} theta1(v, tau)",
         [&](Complex v, Complex t) { return std::pair{th(ThetaKind::Theta1, v, t + 1.0), eighth * th(ThetaKind::Theta1, v, t)}; }},
        {"theta1(v, -1/tau) = (tau/i)^{1/2} e^{i pi tau v^2} theta2(tau v, tau)",
         [&](Complex v, Complex t) {
             return std::pair{th(ThetaKind::Theta1, v, -1.0 / t), s_factor(v, t) * th(ThetaKind::Theta2, t * v, t)};
         }},
        {"theta2(v, tau+1) = theta3(v, tau)",
         [&](Complex v, Complex t) { return std::pair{th(ThetaKind::Theta2, v, t + 1.0), th(ThetaKind::Theta3, v, t)}; }},
        {"theta2(v, -1/tau) = (tau/i)^{1/2} e^{i pi tau v^2} theta1(tau v, tau)",
         [&](Complex v, Complex t) {
             return std::pair{th(ThetaKind::Theta2, v, -1.0 / t), s_factor(v, t) * th(ThetaKind::Theta1, t * v, t)};
         }},
        {"theta3(v, tau+1) = theta2(v, tau)",
         [&](Complex v, Complex t) { return std::pair{th(ThetaKind::Theta3, v, t + 1.0), th(ThetaKind::Theta2, v, t)}; }},
        {"theta3(v, -1/tau) = (tau/i)^{1/2} e^{i pi tau v^2} theta3(tau v, tau)",
         [&](Complex v, Complex t) {
             return std::pair{th(ThetaKind::Theta3, v, -1.0 / t), s_factor(v, t) * th(ThetaKind::Theta3, t * v, t)};
         }},
    };

    std::vector<ThetaLawResult> out;
    for (const auto& [name, law] : laws) {
        ThetaLawResult r{name, 0.0, false};
        for (const auto& s : samples) {
            const auto [lhs, rhs] = law(s.v, s.tau);
            r.max_residual = std::max(r.max_residual, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        r.passed = r.max_residual < tol;
        out.push_back(std::move(r));
    }
    return out;
}

double pell1_cp2_closed_form(double q, int terms)
{
    if (!(q > 0.0 && q < 1.0))
        throw InputError("q must lie in (0, 1)");
    const Complex tau = kI * (-std::log(q) / (2.0 * kPi));
    const Complex zero = 0.0;
    const Complex r1 = theta_numeric_dv(ThetaKind::Theta1, zero, tau, terms, 2) /
                       theta_numeric_dv(ThetaKind::Theta1, zero, tau, terms, 0);
    const Complex r0 = theta_numeric_dv(ThetaKind::Theta, zero, tau, terms, 3) /
                       theta_numeric_dv(ThetaKind::Theta, zero, tau, terms, 1);
    return (-(r1 - r0) / (8.0 * kPi * kPi)).real();
}

double richardson_q1(const std::function<double(double)>& f, double a0, double q1, double q2)
{
    const double c1 = (f(q1) - a0) / q1;
    const double c2 = (f(q2) - a0) / q2;
    return (q2 * c1 - q1 * c2) / (q2 - q1);
}

} // namespace ellgen
