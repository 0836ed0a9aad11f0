#include "ellgen/bundleops.hpp"
#include "ellgen/errors.hpp"

#include <doctest.h>

#include <random>

using namespace ellgen;

namespace {

struct Cp2 {
    Manifold m = builtin_manifold("CP2");
    PresentationPtr p = m.presentation;
    LinearClass x = LinearClass::generator(p, 0);
    LinearClass zero = LinearClass(p);

    CohElement el(const LinearClass& c, std::size_t order) const { return c.to_element(order); }
    CohElement one(std::size_t order) const { return CohElement::constant(p, 1, order); }
};

CohElement flip_half_powers(const CohElement& a)
{
    CohElement out(a.presentation(), a.order());
    for (const auto& [m, c] : a.terms())
        out += CohElement::monomial(a.presentation(), m, 1, a.order()) * tau_plus_one(c);
    return out;
}

} // namespace

TEST_SUITE("bundleops")
{
    TEST_CASE("twisted Chern characters")
    {
        Cp2 s;
        CHECK(ch(ProjBundle::trivial(s.p, 1), 2) == s.one(2));
        auto o1 = ProjBundle({s.x}, s.zero);
        auto x = s.el(s.x, 2);
        CHECK(ch(o1, 2) == s.one(2) + x + x * x * Rational(1, 2));
        auto twisted = ProjBundle({s.zero}, Rational(1, 2) * s.x);
        CHECK(ch(twisted, 2) == s.one(2) + x * Rational(1, 2) + x * x * Rational(1, 8));
        CHECK(ch(twisted, 2, 0) == s.one(2));
        CHECK(o1.p1() == x.truncated(0) * x.truncated(0));
    }

    TEST_CASE("log_lambda_sum")
    {
        Cp2 s;
        const std::size_t n = 12;
        CHECK(log_lambda_sum({}, -1, Levels::Integral, n, s.p).is_zero());
        auto prod = exp_nilpotent(log_lambda_sum({s.zero}, -1, Levels::Integral, n, s.p));
        CHECK(prod == CohElement::scalar(s.p, eta_like_product(-1, false, 1, n)));

        // Direct product oracle: prod over half levels of (1 - u^p e^x).
        auto ex = exp_nilpotent(s.el(s.x, n));
        CohElement direct = s.one(n);
        for (std::size_t p = 1; p <= n; p += 2)
            direct *= s.one(n) - ex * HalfQSeries::monomial(p, 1, n);
        auto via_log = exp_nilpotent(log_lambda_sum({s.x}, -1, Levels::HalfIntegral, n, s.p));
        CHECK(via_log == direct);
        CHECK(via_log.coefficient({1})[1] == -1);
    }

    TEST_CASE("Witten bundle characters")
    {
        Cp2 s;
        const std::size_t n = 14;
        auto triv = ProjBundle::trivial(s.p, 1);
        auto p1 = eta_like_product(1, false, 2, n);
        CHECK(witten_bundle_ch(ThetaKind::Theta1, triv, n) == CohElement::scalar(s.p, p1));
        CHECK(witten_bundle_ch(ThetaKind::Theta2, triv, n) ==
              CohElement::scalar(s.p, eta_like_product(-1, true, 2, n)));
        auto o1 = ProjBundle({s.x}, s.zero);
        CHECK(witten_bundle_ch(ThetaKind::Theta, o1, n).scalar_part() == eta_like_product(-1, false, 2, n));
    }

    TEST_CASE("Witten bundle characters are multiplicative under direct sum")
    {
        Cp2 s;
        std::mt19937 rng(3);
        std::uniform_int_distribution<int> num(-3, 3);
        for (int trial = 0; trial < 4; ++trial) {
            auto b = (Rational(num(rng)) / 2) * s.x;
            auto e = ProjBundle({Rational(num(rng)) * s.x}, b);
            auto f = ProjBundle({Rational(num(rng)) * s.x, Rational(num(rng)) * s.x}, b);
            for (auto kind : {ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3}) {
                CHECK(witten_bundle_ch(kind, e.direct_sum(f), 8) ==
                      witten_bundle_ch(kind, e, 8) * witten_bundle_ch(kind, f, 8));
            }
        }
    }

    TEST_CASE("graded decomposition of a line bundle")
    {
        Cp2 s;
        auto o1 = ProjBundle({s.x}, Rational(1, 2) * s.x);
        auto table = graded_decompose(GradedKind::W, o1, 4);
        CHECK(table.weights_at(0) == std::vector<int>{0, 1});
        CHECK(table.entry(0, 0) == s.one(0));
        CHECK(table.entry(1, 0) == -exp_nilpotent(s.el(Rational(3, 2) * s.x, 0)));
        for (int m : table.weights_at(1))
            CHECK(std::abs(m) <= 2);

        auto b_table = graded_decompose(GradedKind::B, ProjBundle({s.x, s.zero}, s.zero), 6);
        CHECK(b_table.weights_at(0) == std::vector<int>{0});
        CHECK(b_table.entry(0, 0) == s.one(0));
    }

    TEST_CASE("gch equals the shifted-root closed form")
    {
        Cp2 s;
        auto e = ProjBundle({s.x, Rational(-1) * s.x}, Rational(1, 2) * s.x);
        for (auto kind : {GradedKind::W, GradedKind::A, GradedKind::B, GradedKind::C})
            CHECK(gch(kind, e, 6) == gch_closed_form(kind, e, 6));

        // rank 2, kind A, N = 4: resummation against the Theta1 character and (Lambda^ev + Lambda^odd).
        auto r2 = ProjBundle({s.x, s.x}, Rational(1, 2) * s.x);
        CohElement expect = witten_bundle_ch(ThetaKind::Theta1, r2, 4);
        for (const auto& w : r2.shifted_roots())
            expect *= s.one(4) + exp_nilpotent(w.to_element(4));
        CHECK(gch(GradedKind::A, r2, 4) == expect);

        // b = 0: ordinary character of the composite bundle.
        auto honest = ProjBundle({s.x}, s.zero);
        auto ordinary = (s.one(6) - exp_nilpotent(s.el(s.x, 6))) * witten_bundle_ch(ThetaKind::Theta, honest, 6);
        CHECK(gch(GradedKind::W, honest, 6) == ordinary);

        // rank 1, root 0, b = x/2: level-0 term 1 - exp(x/2).
        auto pure = ProjBundle({s.zero}, Rational(1, 2) * s.x);
        auto g = gch(GradedKind::W, pure, 4);
        CHECK(g.u_coefficient(0) == s.one(0) - exp_nilpotent(s.el(Rational(1, 2) * s.x, 0)));
    }

    TEST_CASE("kind B and kind C are exchanged by tau -> tau + 1")
    {
        Cp2 s;
        for (auto e : {ProjBundle({s.x}, s.zero), ProjBundle({s.x, s.x, s.zero}, Rational(1, 2) * s.x)})
            CHECK(flip_half_powers(gch(GradedKind::B, e, 9)) == gch(GradedKind::C, e, 9));
    }

    TEST_CASE("decomposition guards")
    {
        Cp2 s;
        CHECK_THROWS_AS(graded_decompose(GradedKind::W, ProjBundle::trivial(s.p, 7), 2), GuardExceeded);
        CHECK_THROWS_AS(graded_decompose(GradedKind::B, ProjBundle::trivial(s.p, 1), 25), GuardExceeded);
    }

    TEST_CASE("square root of the determinant")
    {
        Cp2 s;
        CHECK(det_sqrt_ch(ProjBundle::trivial(s.p, 3), 2) == s.one(2));
        CHECK(det_sqrt_ch(ProjBundle({s.x}, s.zero), 2) == exp_nilpotent(s.el(Rational(-1, 2) * s.x, 2)));
        CHECK(det_sqrt_ch(ProjBundle({s.x, s.x, s.x}, s.zero), 2) == exp_nilpotent(s.el(Rational(-3, 2) * s.x, 2)));
        auto e = ProjBundle({s.x, s.x}, Rational(1, 2) * s.x);
        auto d = det_sqrt_ch(e, 2);
        CHECK(d * d == exp_nilpotent(s.el(Rational(-3) * s.x, 2)));
    }

    TEST_CASE("partitions")
    {
        CHECK(partitions(4, 4, 4).size() == 5);
        CHECK(partitions(4, 2, 4).size() == 3);
        CHECK(partitions(4, 2, 2) == std::vector<Partition>{{2, 2}});
        CHECK(conjugate({3, 1}) == Partition{2, 1, 1});
        CHECK(conjugate(conjugate({4, 2, 2, 1})) == Partition{4, 2, 2, 1});
    }

    TEST_CASE("Schur characters")
    {
        auto ring = free_manifold("r", {{"y1", 2}, {"y2", 2}, {"y3", 2}}, 8);
        const auto& p = ring.presentation;
        std::vector<LinearClass> roots{LinearClass::generator(p, 0), LinearClass::generator(p, 1)};
        auto ps = adams_power_sums(roots, 4, 0);
        auto e1 = exp_nilpotent(roots[0].to_element(0));
        auto e2 = exp_nilpotent(roots[1].to_element(0));
        CHECK(schur_character({1}, ps, 2) == e1 + e2);
        CHECK(schur_character({1, 1}, ps, 2) == e1 * e2);
        CHECK(schur_character({2}, ps, 2) == e1 * e1 + e1 * e2 + e2 * e2);
        CHECK_THROWS_AS(schur_character({1, 1, 1}, ps, 2), PartitionTooTall);

        // Lambda^n = s_(1^n) and S^n = s_(n), brute force over multisets of three roots.
        std::vector<LinearClass> r3{LinearClass::generator(p, 0), LinearClass::generator(p, 1),
                                    LinearClass::generator(p, 2)};
        auto ps3 = adams_power_sums(r3, 3, 0);
        std::vector<CohElement> ex;
        for (const auto& r : r3)
            ex.push_back(exp_nilpotent(r.to_element(0)));
        CohElement lambda3 = ex[0] * ex[1] * ex[2];
        CHECK(schur_character({1, 1, 1}, ps3, 3) == lambda3);
        CohElement sym3(p, 0);
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b)
                for (int c = b; c < 3; ++c)
                    sym3 += ex[static_cast<std::size_t>(a)] * ex[static_cast<std::size_t>(b)] *
                            ex[static_cast<std::size_t>(c)];
        CHECK(schur_character({3}, ps3, 3) == sym3);
    }

    TEST_CASE("exterior power of a tensor product")
    {
        CHECK(tensor_exterior_identity_check(1, 1, 1));
        CHECK(tensor_exterior_identity_check(2, 2, 2));
        CHECK(tensor_exterior_identity_check(2, 2, 3));
        CHECK(tensor_exterior_identity_check(3, 2, 4));
        CHECK(tensor_exterior_identity_check(1, 1, 3));
        CHECK_THROWS_AS(tensor_exterior_identity_check(5, 1, 1), GuardExceeded);

        // Negative control: without conjugating lambda the sum is the symmetric power.
        auto ring = free_manifold("g", {{"a1", 2}, {"a2", 2}, {"b1", 2}, {"b2", 2}}, 6);
        const auto& p = ring.presentation;
        std::vector<LinearClass> u{LinearClass::generator(p, 0), LinearClass::generator(p, 1)};
        std::vector<LinearClass> v{LinearClass::generator(p, 2), LinearClass::generator(p, 3)};
        auto pu = adams_power_sums(u, 2, 0);
        auto pv = adams_power_sums(v, 2, 0);
        CohElement wrong(p, 0);
        CohElement right(p, 0);
        for (const auto& lam : partitions(2, 2, 2)) {
            wrong += schur_character(lam, pu, 2) * schur_character(lam, pv, 2);
            right += schur_character(lam, pu, 2) * schur_character(conjugate(lam), pv, 2);
        }
        CHECK_FALSE(wrong == right);
    }
}
