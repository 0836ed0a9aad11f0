#include "ellgen/errors.hpp"
#include "ellgen/qseries.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ellgen;

namespace {

HalfQSeries series(std::initializer_list<int> c)
{
    std::vector<Rational> v;
    for (int x : c)
        v.emplace_back(x);
    return HalfQSeries(std::move(v));
}

HalfQSeries random_series(std::mt19937& rng, std::size_t order)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<Rational> v(order + 1);
    for (auto& c : v) {
        c = Rational(num(rng), den(rng));
        c.canonicalize();
    }
    return HalfQSeries(std::move(v));
}

// Brute-force prod_{j>=1} (1 + sign u^{p_j}) by multiplying binomials as dense vectors.
HalfQSeries brute_product(int sign, bool half, std::size_t order)
{
    std::vector<Rational> c(order + 1);
    c[0] = 1;
    for (std::size_t j = 1; j <= order; ++j) {
        const std::size_t p = half ? 2 * j - 1 : 2 * j;
        if (p > order)
            break;
        std::vector<Rational> f(order + 1);
        f[0] = 1;
        f[p] = sign;
        std::vector<Rational> r(order + 1);
        for (std::size_t a = 0; a <= order; ++a)
            for (std::size_t b = 0; a + b <= order; ++b)
                r[a + b] += c[a] * f[b];
        c = r;
    }
    return HalfQSeries(c);
}

} // namespace

TEST_SUITE("qseries")
{
    TEST_CASE("rationals parse and print in lowest terms")
    {
        CHECK(parse_rational("6/4") == Rational(3, 2));
        CHECK(parse_rational(" -1/8 ") == Rational(-1, 8));
        CHECK(to_string(Rational(4, 2)) == "2");
        CHECK(to_fraction_string(Rational(-1)) == "-1/1");
        CHECK_THROWS_AS(parse_rational("1/0"), InputError);
        CHECK_THROWS_AS(parse_rational("x"), InputError);
        CHECK_THROWS_AS(parse_rational("1/-2"), InputError);
        CHECK(power_of_two(-3) == Rational(1, 8));
        CHECK(factorial(5) == 120);
    }

    TEST_CASE("add truncates to the smaller order")
    {
        auto a = series({1, 0, 1, 0, 0});
        auto b = series({0, 0, 0});
        auto s = a + b;
        CHECK(s.order() == 2);
        CHECK(s == series({1, 0, 1}));
        CHECK(series({1, -1}) + series({0, 1}) == series({1, 0}));
    }

    TEST_CASE("mul examples")
    {
        const std::size_t n = 12;
        std::vector<Rational> geo(n + 1);
        for (std::size_t k = 0; k <= n; k += 2)
            geo[k] = 1;
        auto one_minus_q = HalfQSeries::monomial(0, 1, n) - HalfQSeries::monomial(2, 1, n);
        CHECK(one_minus_q * HalfQSeries(geo) == HalfQSeries::constant(1, n));
        auto u = HalfQSeries::monomial(1, 1, 4);
        CHECK(u * u == HalfQSeries::monomial(2, 1, 4));
        CHECK(series({1, 1, 0}) * series({1, 1, 0}) == series({1, 2, 1}));
    }

    TEST_CASE("invert")
    {
        CHECK(invert(series({1, -1, 0, 0})) == series({1, 1, 1, 1}));
        CHECK(invert(series({2})) == HalfQSeries::constant(Rational(1, 2), 0));
        auto a = series({1, 1, 1, 0, 0, 0, 0});
        CHECK(a * invert(a) == HalfQSeries::constant(1, 6));
        CHECK_THROWS_AS(invert(series({0, 1})), ZeroConstantTerm);
    }

    TEST_CASE("ring axioms and two-sided inverse on random samples")
    {
        std::mt19937 rng(1234);
        for (int trial = 0; trial < 20; ++trial) {
            auto a = random_series(rng, 10);
            auto b = random_series(rng, 10);
            auto c = random_series(rng, 10);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (sgn(a[0]) != 0) {
                CHECK(a * a.inverse() == HalfQSeries::constant(1, 10));
                CHECK(a.inverse() * a == HalfQSeries::constant(1, 10));
            }
        }
    }

    TEST_CASE("eta_like_product")
    {
        auto p = eta_like_product(-1, false, 1, 4);
        CHECK(p == series({1, 0, -1, 0, -1}));
        CHECK(eta_like_product(1, true, 0, 6) == HalfQSeries::constant(1, 6));
        for (int sign : {-1, 1})
            for (bool half : {false, true}) {
                CHECK(eta_like_product(sign, half, 1, 30) == brute_product(sign, half, 30));
                CHECK(eta_like_product(sign, half, 2, 20) * eta_like_product(sign, half, -3, 20) ==
                      eta_like_product(sign, half, -1, 20));
            }
        // Euler-type consequence of the Jacobi identity, against the brute-force oracle.
        auto euler = brute_product(1, false, 24) * brute_product(-1, true, 24) * brute_product(1, true, 24);
        CHECK(euler == HalfQSeries::constant(1, 24));
        CHECK(eta_like_product(1, false, 1, 24) * eta_like_product(-1, true, 1, 24) *
                  eta_like_product(1, true, 1, 24) ==
              HalfQSeries::constant(1, 24));
    }

    TEST_CASE("tau_plus_one is an involutive ring homomorphism")
    {
        CHECK(tau_plus_one(series({1, 1})) == series({1, -1}));
        auto even = series({3, 0, 2, 0, 5});
        CHECK(tau_plus_one(even) == even);
        CHECK(even.is_integral_q());
        CHECK_FALSE(series({0, 1}).is_integral_q());
        std::mt19937 rng(99);
        for (int trial = 0; trial < 10; ++trial) {
            auto a = random_series(rng, 9);
            auto b = random_series(rng, 9);
            CHECK(tau_plus_one(tau_plus_one(a)) == a);
            CHECK(tau_plus_one(a * b) == tau_plus_one(a) * tau_plus_one(b));
            CHECK(tau_plus_one(a + b) == tau_plus_one(a) + tau_plus_one(b));
        }
    }

    TEST_CASE("eval_numeric")
    {
        auto c = HalfQSeries::constant(Rational(3, 2), 5);
        CHECK(std::abs(eval_numeric(c, {0.3, 0.2}).value - 1.5) < 1e-15);
        std::vector<Rational> geo(41, Rational(1));
        auto r = eval_numeric(HalfQSeries(geo), 0.1);
        CHECK(std::abs(r.value - 1.0 / 0.9) <= r.tail_bound + 1e-15);
        CHECK(r.tail_bound > 0.0);
        auto z = eval_numeric(HalfQSeries(6), 0.5);
        CHECK(z.value == std::complex<double>(0.0));
        CHECK(z.tail_bound == 0.0);
        CHECK_THROWS_AS(eval_numeric(c, 1.0), DivergentTail);
    }

    TEST_CASE("exp inverts log-like sums")
    {
        // exp(u^2) coefficients 1/k!
        auto e = HalfQSeries::monomial(2, 1, 8).exp();
        CHECK(e[4] == Rational(1, 2));
        CHECK(e[8] == Rational(1, 24));
        CHECK_THROWS_AS(series({1, 1}).exp(), NonNilpotentScalar);
    }

    TEST_CASE("rendering")
    {
        CHECK(q_power_label(0) == "q^0");
        CHECK(q_power_label(1) == "q^{1/2}");
        CHECK(q_power_label(4) == "q^2");
        CHECK(q_power_string(3) == "3/2");
        CHECK(render_series(series({-1, 0, 2}), true) == "q^0: -1\nq^1: 2\n");
    }
}
