#include "ellgen/errors.hpp"
#include "ellgen/manifest.hpp"
#include "ellgen/report.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace ellgen;
using nlohmann::json;

namespace {

bool same_model(const Manifest& a, const Manifest& b)
{
    if (!(*a.manifold.presentation == *b.manifold.presentation))
        return false;
    if (a.manifold.name != b.manifold.name || a.manifold.tangent_roots.size() != b.manifold.tangent_roots.size())
        return false;
    for (std::size_t i = 0; i < a.manifold.tangent_roots.size(); ++i)
        if (!(a.manifold.tangent_roots[i].coefficients() == b.manifold.tangent_roots[i].coefficients()))
            return false;
    if (a.bundle.has_value() != b.bundle.has_value() || a.order != b.order)
        return false;
    if (!a.bundle)
        return true;
    if (a.bundle->rank() != b.bundle->rank() ||
        !(a.bundle->twist_b.coefficients() == b.bundle->twist_b.coefficients()))
        return false;
    for (std::size_t i = 0; i < a.bundle->rank(); ++i)
        if (!(a.bundle->roots[i].coefficients() == b.bundle->roots[i].coefficients()))
            return false;
    return true;
}

const json kExplicit = json::parse(R"({
  "manifold": {
    "name": "two-point blowup-like ring",
    "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 2}],
    "top_degree": 4,
    "vanishing": [[1, 1]],
    "integration": [{"monomial": [2, 0], "value": "1"}, {"monomial": [0, 2], "value": "-1"}],
    "tangent_roots": ["x", "y", {"x": "1", "y": "-1"}]
  },
  "bundle": {"rank": 3, "roots": ["1/2*x - y", "0"], "twist_b": {"y": "1/2"}},
  "order": 7
})");

} // namespace

TEST_SUITE("manifest")
{
    TEST_CASE("linear class shorthand")
    {
        auto m = builtin_manifold("CP2");
        auto p = m.presentation;
        CHECK(parse_linear_class(p, "x") == LinearClass::generator(p, 0));
        CHECK(parse_linear_class(p, " -3/2*x ") == LinearClass::generator(p, 0, Rational(-3, 2)));
        CHECK(parse_linear_class(p, "0").is_zero());
        CHECK(parse_linear_class(p, "x - x").is_zero());
        CHECK_THROWS_AS(parse_linear_class(p, "z"), InputError);
        CHECK_THROWS_AS(parse_linear_class(p, "1 + x"), InputError);
        CHECK_THROWS_AS(parse_linear_class(p, "x x"), InputError);
        auto c = LinearClass::generator(p, 0, Rational(5, 3));
        CHECK(parse_linear_class(p, c.to_string()) == c);
    }

    TEST_CASE("builtin and explicit manifests")
    {
        auto a = manifest_from_json(json::parse(R"({"manifold": "CP2", "bundle": {"rank": 2, "roots": ["x"]}})"));
        CHECK(a.builtin == "CP2");
        CHECK(a.bundle->rank() == 2);
        CHECK(a.bundle->roots[1].is_zero());
        CHECK_FALSE(a.order.has_value());

        auto b = manifest_from_json(kExplicit);
        CHECK(b.builtin.empty());
        CHECK(b.manifold.presentation->size() == 2);
        CHECK(b.bundle->twist_b.coefficients()[1] == Rational(1, 2));
        CHECK(b.bundle->roots[0].coefficients()[0] == Rational(1, 2));
        CHECK(b.order == 7u);
    }

    TEST_CASE("round trip")
    {
        for (const json& doc :
             {kExplicit, json::parse(R"({"manifold": {"builtin": "CP4"}, "order": 3})"),
              json::parse(R"({"manifold": "CP2", "bundle": {"rank": 1, "roots": ["x"], "twist_b": "1/2*x"}})")}) {
            auto m = manifest_from_json(doc);
            auto again = manifest_from_json(manifest_to_json(m));
            CHECK(same_model(m, again));
            CHECK(manifest_to_json(again) == manifest_to_json(m));
        }
    }

    TEST_CASE("malformed manifests")
    {
        CHECK_THROWS_AS(manifest_from_json(json::parse(R"({"bundle": {}})")), InputError);
        CHECK_THROWS_AS(manifest_from_json(json::parse(R"({"manifold": "CP3"})")), UnknownManifold);
        CHECK_THROWS_AS(manifest_from_json(json::parse(R"({"manifold": "CP2", "bundle": {"rank": 0}})")), InputError);
        CHECK_THROWS_AS(manifest_from_json(json::parse(R"({"manifold": "CP2", "bundle": {"rank": 1, "roots": ["x", "x"]}})")),
                        InputError);
        CHECK_THROWS_AS(manifest_from_json(json::parse(R"({"manifold": "CP2", "order": -1})")), InputError);
        CHECK_THROWS_AS(manifest_from_json(json::parse(R"({"manifold": {"generators": [{"name": "x", "degree": 3}], "top_degree": 4}})")),
                        InputError);
        CHECK_THROWS_AS(manifest_from_json(json::parse(R"({"manifold": {"generators": [{"name": "x", "degree": 2}], "top_degree": 6}})")),
                        InputError);
        CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.json"), InputError);
    }

    TEST_CASE("order precedence")
    {
        auto m = manifest_from_json(json::parse(R"({"manifold": "CP2", "order": 9})"));
        auto bare = manifest_from_json(json::parse(R"({"manifold": "CP2"})"));
        ::unsetenv(kOrderEnvVar);
        CHECK(resolve_order(5, &m) == 5);
        CHECK(resolve_order(std::nullopt, &m) == 9);
        CHECK(resolve_order(std::nullopt, &bare) == kFallbackOrder);
        ::setenv(kOrderEnvVar, "14", 1);
        CHECK(resolve_order(std::nullopt, &bare) == 14);
        CHECK(resolve_order(std::nullopt, &m) == 9);
        ::setenv(kOrderEnvVar, "abc", 1);
        CHECK_THROWS_AS(resolve_order(std::nullopt, &bare), InputError);
        ::unsetenv(kOrderEnvVar);
    }

    TEST_CASE("report JSON carries exact fractions")
    {
        auto m = manifest_from_json(json::parse(R"({"manifold": "CP2", "bundle": {"rank": 1, "roots": ["x"]}})"));
        auto r = pell(m.manifold, *m.bundle, GenusKind::PEll2, Method::ThetaProduct, 3);
        auto j = report_to_json(r);
        CHECK(j["kind"] == "pell2");
        CHECK(j["group"] == "none");
        CHECK(j["coefficients"][0]["value"] == "-1/8");
        CHECK(j["coefficients"][1]["power"] == "1/2");
        CHECK(j["coefficients"][1]["value"] == "-1/1");
        const std::string text = report_to_text(r);
        for (const auto& c : j["coefficients"])
            CHECK(text.find(to_string(parse_rational(c["value"].get<std::string>()))) != std::string::npos);
    }
}
