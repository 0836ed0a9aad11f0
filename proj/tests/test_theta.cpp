#include "ellgen/errors.hpp"
#include "ellgen/theta.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ellgen;
using cd = std::complex<double>;

namespace {

// Dense bivariate polynomial c[z-degree][u-power], truncated at (D, N).
using Poly2 = std::vector<std::vector<Rational>>;

Poly2 poly_one(std::size_t d, std::size_t n)
{
    Poly2 p(d + 1, std::vector<Rational>(n + 1));
    p[0][0] = 1;
    return p;
}

Poly2 poly_mul(const Poly2& a, const Poly2& b)
{
    const std::size_t d = a.size() - 1;
    const std::size_t n = a[0].size() - 1;
    Poly2 r(d + 1, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t k = 0; k <= n; ++k) {
            if (sgn(a[i][k]) == 0)
                continue;
            for (std::size_t j = 0; i + j <= d; ++j)
                for (std::size_t l = 0; k + l <= n; ++l)
                    r[i + j][k + l] += a[i][k] * b[j][l];
        }
    return r;
}

// e^{c z} as a z-series with constant u-coefficients.
Poly2 poly_exp(int c, std::size_t d, std::size_t n)
{
    Poly2 p(d + 1, std::vector<Rational>(n + 1));
    Rational term = 1;
    for (std::size_t i = 0; i <= d; ++i) {
        p[i][0] = term;
        term *= c;
        term /= static_cast<unsigned long>(i + 1);
    }
    return p;
}

// Brute-force product of level factors, expanded without logarithms:
// (1 + s t e^z)(1 + s t e^{-z}) / (1 + s t)^2 for t = u^p, with geometric
// series for the inverse where the sign requires it.
Poly2 brute_levels(int s, bool half, std::size_t d, std::size_t n, bool inverted)
{
    Poly2 acc = poly_one(d, n);
    for (std::size_t j = 1;; ++j) {
        const std::size_t p = half ? 2 * j - 1 : 2 * j;
        if (p > n)
            break;
        for (int dir : {1, -1}) {
            // numerator factor (1 + s u^p e^{dir z}) or its inverse
            Poly2 f = poly_one(d, n);
            if (!inverted) {
                auto e = poly_exp(dir, d, n);
                for (std::size_t i = 0; i <= d; ++i)
                    f[i][p] += s * e[i][0];
            } else {
                // 1/(1 + s t e^z) = sum_k (-s t)^k e^{kz}
                for (std::size_t k = 1; p * k <= n; ++k) {
                    auto e = poly_exp(dir * static_cast<int>(k), d, n);
                    Rational sign = (k % 2 == 1) ? Rational(-s) : Rational(1);
                    for (std::size_t i = 0; i <= d; ++i)
                        f[i][p * k] += sign * e[i][0];
                }
            }
            acc = poly_mul(acc, f);
            // denominator (1 + s t)^{-1} or numerator (1 + s t) for the inverted case
            Poly2 g = poly_one(d, n);
            if (!inverted) {
                for (std::size_t k = 1; p * k <= n; ++k)
                    g[0][p * k] = (k % 2 == 1) ? Rational(-s) : Rational(1);
            } else {
                g[0][p] = s;
            }
            acc = poly_mul(acc, g);
        }
    }
    return acc;
}

Poly2 to_poly(const FactorSeries& f)
{
    Poly2 p(f.max_degree() + 1, std::vector<Rational>(f.order() + 1));
    for (std::size_t i = 0; i <= f.max_degree(); ++i)
        for (std::size_t k = 0; k <= f.order(); ++k)
            p[i][k] = f[i][k];
    return p;
}

} // namespace

TEST_SUITE("theta")
{
    TEST_CASE("Theta factor degenerates to the A-hat factor at q = 0")
    {
        auto f = elliptic_factor(ThetaKind::Theta, 6, 4);
        CHECK(f[0][0] == 1);
        CHECK(f[2][0] == Rational(-1, 24));
        CHECK(f[4][0] == Rational(7, 5760));
        CHECK(f[6][0] == Rational(-31, 967680));
        auto f1 = elliptic_factor(ThetaKind::Theta1, 4, 4);
        CHECK(f1[2][0] == Rational(1, 8));
        CHECK(f1[4][0] == Rational(1, 384));
        for (auto kind : {ThetaKind::Theta2, ThetaKind::Theta3}) {
            auto g = elliptic_factor(kind, 4, 4);
            CHECK(g[2][0] == 0);
            CHECK(g[4][0] == 0);
        }
    }

    TEST_CASE("normalization and evenness")
    {
        for (auto kind : {ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3}) {
            auto f = elliptic_factor(kind, 8, 10);
            CHECK(f[0] == HalfQSeries::constant(1, 10));
            CHECK(f.is_even());
        }
        CHECK_THROWS(elliptic_factor(ThetaKind::Theta, 3, 2));
    }

    TEST_CASE("Theta2 coefficient of z^2 u^1 is -1")
    {
        CHECK(elliptic_factor(ThetaKind::Theta2, 2, 1)[2][1] == -1);
    }

    TEST_CASE("log-sum construction matches direct product expansion")
    {
        const std::size_t d = 6;
        const std::size_t n = 8;
        CHECK(to_poly(elliptic_factor(ThetaKind::Theta2, d, n)) == brute_levels(-1, true, d, n, false));
        CHECK(to_poly(elliptic_factor(ThetaKind::Theta3, d, n)) == brute_levels(1, true, d, n, false));

        // Theta1 = cosh(z/2) * levels; Theta = Ahat-base * inverted levels.
        Poly2 cosh_half(d + 1, std::vector<Rational>(n + 1));
        Poly2 ahat(d + 1, std::vector<Rational>(n + 1));
        const Rational ahat_coeffs[] = {1, Rational(-1, 24), Rational(7, 5760), Rational(-31, 967680)};
        for (std::size_t k = 0; 2 * k <= d; ++k) {
            cosh_half[2 * k][0] = power_of_two(-2 * static_cast<int>(k)) / factorial(static_cast<unsigned>(2 * k));
            ahat[2 * k][0] = ahat_coeffs[k];
        }
        CHECK(to_poly(elliptic_factor(ThetaKind::Theta1, d, n)) ==
              poly_mul(cosh_half, brute_levels(1, false, d, n, false)));
        CHECK(to_poly(elliptic_factor(ThetaKind::Theta, d, n)) == poly_mul(ahat, brute_levels(-1, false, d, n, true)));
    }

    TEST_CASE("factor series algebra")
    {
        auto f = elliptic_factor(ThetaKind::Theta, 8, 6);
        CHECK(f * f.inverse() == FactorSeries::one(8, 6));
        auto g = elliptic_factor(ThetaKind::Theta3, 8, 6);
        CHECK(f * g == g * f);
    }

    TEST_CASE("evaluation on a cohomology class")
    {
        auto cp2 = builtin_manifold("CP2");
        auto x = CohElement::generator(cp2.presentation, 0, 3);
        auto f = elliptic_factor(ThetaKind::Theta, 2, 3);
        auto e = f.evaluate(x);
        CHECK(e.coefficient({0}) == f[0]);
        CHECK(e.coefficient({1}).is_zero());
        CHECK(e.coefficient({2}) == f[2]);
        CHECK_THROWS_AS(f.evaluate(CohElement::constant(cp2.presentation, 1, 3)), NonNilpotentScalar);
    }

    TEST_CASE("numeric thetas: zeros, sum form, Jacobi identity")
    {
        using std::numbers::pi;
        const cd tau(0.0, 1.1);
        CHECK(std::abs(theta_numeric(ThetaKind::Theta, 0.0, tau)) == 0.0);
        CHECK(std::abs(theta_numeric_dv(ThetaKind::Theta1, 0.0, tau, 60, 1)) < 1e-14);

        const cd tau3(0.0, 1.2);
        const cd q = std::exp(2.0 * pi * cd(0, 1) * tau3);
        cd sum = 0.0;
        for (int k = -30; k <= 30; ++k)
            sum += std::pow(q, 0.5 * k * k);
        CHECK(std::abs(theta_numeric(ThetaKind::Theta3, 0.0, tau3) - sum) < 1e-10);

        const cd lhs = theta_numeric_dv(ThetaKind::Theta, 0.0, tau, 60, 1);
        const cd rhs = pi * theta_numeric(ThetaKind::Theta1, 0.0, tau) * theta_numeric(ThetaKind::Theta2, 0.0, tau) *
                       theta_numeric(ThetaKind::Theta3, 0.0, tau);
        CHECK(std::abs(lhs - rhs) < 1e-10);
        CHECK_THROWS_AS(theta_numeric(ThetaKind::Theta, 0.0, cd(0.3, -1.0)), InvalidTau);
    }

    TEST_CASE("theta'''/theta' approaches -pi^2 + 24 pi^2 q")
    {
        using std::numbers::pi;
        for (double qv : {1e-3, 1e-4}) {
            const cd tau(0.0, -std::log(qv) / (2 * pi));
            const cd ratio = theta_numeric_dv(ThetaKind::Theta, 0.0, tau, 60, 3) /
                             theta_numeric_dv(ThetaKind::Theta, 0.0, tau, 60, 1);
            const double predicted = -pi * pi + 24 * pi * pi * qv;
            CHECK(std::abs(ratio - predicted) < 100 * pi * pi * qv * qv);
        }
    }

    TEST_CASE("jet derivatives agree with a central difference as a sanity bound")
    {
        const cd tau(0.2, 0.9);
        const cd v(0.13, 0.05);
        const double h = 1e-5;
        for (auto kind : {ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3}) {
            const cd fd = (theta_numeric(kind, v + h, tau) - theta_numeric(kind, v - h, tau)) / (2 * h);
            CHECK(std::abs(theta_numeric_dv(kind, v, tau, 60, 1) - fd) < 1e-6);
        }
    }

    TEST_CASE("exact and numeric representations agree through v = z/(2 pi i)")
    {
        using std::numbers::pi;
        const cd i(0, 1);
        const cd tau(0.1, 1.5);
        const cd u = std::exp(pi * i * tau);
        const cd z0(0.3, 0.2);
        const cd v = z0 / (2 * pi * i);
        const std::size_t d = 24;
        const std::size_t n = 20;

        const cd t_exact = elliptic_factor(ThetaKind::Theta, d, n).evaluate_numeric(z0, u);
        const cd t_num = v * theta_numeric_dv(ThetaKind::Theta, 0.0, tau, 60, 1) / theta_numeric(ThetaKind::Theta, v, tau);
        CHECK(std::abs(t_exact - t_num) < 1e-10);

        for (auto kind : {ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3}) {
            const cd exact = elliptic_factor(kind, d, n).evaluate_numeric(z0, u);
            const cd num = theta_numeric(kind, v, tau) / theta_numeric(kind, 0.0, tau);
            CHECK(std::abs(exact - num) < 1e-10);
        }
    }

    TEST_CASE("exact Jacobi identity")
    {
        CHECK(jacobi_identity_exact(0));
        CHECK(jacobi_identity_exact(20));
        CHECK_FALSE(jacobi_identity_exact(20, true));
    }
}
