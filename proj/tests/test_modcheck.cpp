#include "ellgen/errors.hpp"
#include "ellgen/modcheck.hpp"

#include <doctest.h>

#include <random>

using namespace ellgen;

namespace {

struct Matched {
    Manifold m = builtin_manifold("CP2");
    LinearClass x = LinearClass::generator(m.presentation, 0);
    ProjBundle e = ProjBundle({x, x, x}, LinearClass(m.presentation));

    HalfQSeries series(GenusKind kind, std::size_t order) const
    {
        return pell(m, e, kind, Method::ThetaProduct, order).series;
    }
};

} // namespace

TEST_SUITE("modcheck")
{
    TEST_CASE("matrices and generators")
    {
        auto s = SL2Matrix::S();
        CHECK(s * s == SL2Matrix(-1, 0, 0, -1));
        CHECK_THROWS_AS(SL2Matrix(1, 1, 1, 1), InputError);
        CHECK(std::abs(s.apply({0.0, 2.0}) - Complex(0.0, 0.5)) < 1e-15);
        for (const auto& g : group_generators(Group::Gamma0_2))
            CHECK(g.c % 2 == 0);
        for (const auto& g : group_generators(Group::Gamma_up0_2))
            CHECK(g.b % 2 == 0);
        CHECK(group_generators(Group::None).empty());
    }

    TEST_CASE("exact T checks")
    {
        CHECK(check_T_exact(eta_like_product(-1, false, 3, 10)));
        auto u = HalfQSeries::monomial(1, 1, 4);
        CHECK_FALSE(check_T_exact(u, u));
        Matched s;
        CHECK(check_T_exact(s.series(GenusKind::PEll2, 12), s.series(GenusKind::PEll3, 12)));
    }

    TEST_CASE("constant series has trivial character")
    {
        auto one = HalfQSeries::constant(1, 10);
        for (const auto& g : {SL2Matrix::S(), SL2Matrix::T(), SL2Matrix(1, 0, 2, 1)}) {
            auto r = check_numeric(one, g, 0);
            CHECK(r.passed);
            CHECK(std::abs(r.chi - 1.0) < 1e-12);
        }
    }

    TEST_CASE("group checks on the matched CP2 bundle")
    {
        Matched s;
        CHECK(check_group(s.series(GenusKind::PEll, 20), Group::SL2Z, 2).passed);
        auto p1 = s.series(GenusKind::PEll1, 80);
        auto p2 = s.series(GenusKind::PEll2, 80);
        auto p3 = s.series(GenusKind::PEll3, 80);
        CHECK(check_group(p1, Group::Gamma0_2, 2).passed);
        CHECK(check_group(p2, Group::Gamma_up0_2, 2).passed);
        CHECK(check_group(p3, Group::GammaTheta, 2).passed);
        CHECK(check_s_squared(p2, 2).passed);
        CHECK_FALSE(check_group(p2, Group::SL2Z, 2).passed);
    }

    TEST_CASE("S relation between PEll1 and PEll2")
    {
        Matched s;
        auto p1 = s.series(GenusKind::PEll1, 40);
        auto p2 = s.series(GenusKind::PEll2, 40);
        auto rel = check_s_relation(p1, p2, 2);
        // The definitional PEll1 carries 2^l relative to the theta quotient.
        for (const auto& r : rel.ratios)
            CHECK(std::abs(r.ratio - 8.0) < 1e-9);
        CHECK(check_s_relation(p1 * (Rational(1) / 8), p2, 2).passed);
        auto fit = best_q_power(p1, p2, 2);
        CHECK(fit.exponent == 0);
    }

    TEST_CASE("negative control: a random series is not modular")
    {
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> d(-5, 5);
        std::vector<Rational> c(41);
        for (auto& v : c)
            v = d(rng);
        c[0] = 1;
        CHECK_FALSE(check_group(HalfQSeries(c), Group::SL2Z, 2).passed);
    }

    TEST_CASE("tail guard")
    {
        auto f = eta_like_product(-1, false, -6, 6);
        CHECK_THROWS_AS(check_numeric(f, SL2Matrix::S(), 0, {{0.0, 0.2}}), TailTooLarge);
    }

    TEST_CASE("theta transformation laws")
    {
        auto laws = check_theta_laws();
        CHECK(laws.size() == 8);
        for (const auto& l : laws) {
            INFO(l.name, " residual ", l.max_residual);
            CHECK(l.passed);
        }
    }

    TEST_CASE("closed-form PEll1 for CP2 with O(1)")
    {
        CHECK(std::abs(pell1_cp2_closed_form(1e-12)) < 1e-9);
        double a1 = richardson_q1([](double q) { return pell1_cp2_closed_form(q); }, 0.0, 1e-3, 1e-4);
        CHECK(a1 == doctest::Approx(4.0).epsilon(1e-6));
    }
}
