#include "ellgen/manifest.hpp"

#include "ellgen/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>

namespace ellgen {

using nlohmann::json;

namespace {

Rational rational_field(const json& v, const std::string& where)
{
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(v.get<long>());
    throw InputError(where + ": expected a rational written as a string");
}

int int_field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.contains(key) || !obj.at(key).is_number_integer())
        throw InputError(where + ": missing integer field '" + key + "'");
    return obj.at(key).get<int>();
}

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

LinearClass class_from_json(const PresentationPtr& pres, const json& v, const std::string& where)
{
    if (v.is_string())
        return parse_linear_class(pres, v.get<std::string>());
    if (!v.is_object())
        throw InputError(where + ": a class is a string or an object of coefficients");
    LinearClass out(pres);
    for (const auto& [name, coeff] : v.items()) {
        const auto idx = pres->index_of(name);
        if (!idx)
            throw InputError(where + ": unknown generator '" + name + "'");
        out += LinearClass::generator(pres, *idx, rational_field(coeff, where));
    }
    return out;
}

json class_to_json(const LinearClass& c)
{
    return c.to_string();
}

Manifold explicit_manifold(const json& doc)
{
    const std::string where = "manifold";
    std::vector<Generator> gens;
    for (const auto& g : doc.at("generators")) {
        if (!g.contains("name") || !g.at("name").is_string())
            throw InputError(where + ": generator without a name");
        gens.push_back({g.at("name").get<std::string>(), int_field(g, "degree", where)});
    }
    for (const auto& g : gens)
        if (g.degree < 2 || g.degree % 2 != 0)
            throw InputError(where + ": generator '" + g.name + "' must have even degree >= 2");
    const int top = int_field(doc, "top_degree", where);

    std::vector<Monomial> vanishing;
    for (const auto& m : doc.value("vanishing", json::array()))
        vanishing.push_back(m.get<Monomial>());
    std::vector<std::pair<Monomial, Rational>> integration;
    for (const auto& e : doc.value("integration", json::array()))
        integration.emplace_back(e.at("monomial").get<Monomial>(), rational_field(e.at("value"), where));
    for (const auto& m : vanishing)
        if (m.size() != gens.size())
            throw InputError(where + ": vanishing monomial has the wrong length");
    for (const auto& [m, v] : integration)
        if (m.size() != gens.size())
            throw InputError(where + ": integration monomial has the wrong length");

    auto pres = std::make_shared<const RingPresentation>(std::move(gens), top, std::move(vanishing),
                                                         std::move(integration));
    Manifold m{doc.value("name", std::string("explicit")), pres, {}};
    for (const auto& r : doc.value("tangent_roots", json::array()))
        m.tangent_roots.push_back(class_from_json(pres, r, where + ".tangent_roots"));
    return m;
}

} // namespace

LinearClass parse_linear_class(const PresentationPtr& pres, std::string_view text)
{
    LinearClass out(pres);
    const std::string s = trim(text);
    if (s.empty())
        throw InputError("empty class expression");
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw InputError("malformed class expression '" + s + "'");
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-')
            ++end;
        const std::string term = trim(std::string_view(s).substr(pos, end - pos));
        pos = end;
        first = false;
        if (term.empty())
            throw InputError("malformed class expression '" + s + "'");

        Rational coeff = sign;
        std::string name = term;
        if (const auto star = term.find('*'); star != std::string::npos) {
            coeff *= parse_rational(term.substr(0, star));
            name = trim(std::string_view(term).substr(star + 1));
        } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
            if (parse_rational(term) != 0)
                throw InputError("class expression '" + s + "' has a nonzero constant term");
            continue;
        }
        const auto idx = pres->index_of(name);
        if (!idx)
            throw InputError("unknown generator '" + name + "' in '" + s + "'");
        if (pres->generators()[*idx].degree != 2)
            throw InputError("generator '" + name + "' does not have degree 2");
        out += LinearClass::generator(pres, *idx, coeff);
    }
    return out;
}

Manifest manifest_from_json(const json& doc)
{
    if (!doc.is_object() || !doc.contains("manifold"))
        throw InputError("manifest needs a top-level \"manifold\"");
    try {
        Manifest out{Manifold{}, {}, std::nullopt, std::nullopt};
        const json& m = doc.at("manifold");
        if (m.is_string()) {
            out.builtin = m.get<std::string>();
        } else if (m.is_object() && m.contains("builtin")) {
            out.builtin = m.at("builtin").get<std::string>();
        }
        out.manifold = out.builtin.empty() ? explicit_manifold(m) : builtin_manifold(out.builtin);
        out.manifold.validate();

        const auto& pres = out.manifold.presentation;
        if (doc.contains("bundle") && !doc.at("bundle").is_null()) {
            const json& b = doc.at("bundle");
            std::vector<LinearClass> roots;
            for (const auto& r : b.value("roots", json::array()))
                roots.push_back(class_from_json(pres, r, "bundle.roots"));
            if (b.contains("rank")) {
                const int rank = int_field(b, "rank", "bundle");
                if (rank < static_cast<int>(roots.size()))
                    throw InputError("bundle: rank is smaller than the number of roots");
                roots.resize(static_cast<std::size_t>(rank), LinearClass(pres));
            }
            if (roots.empty())
                throw InputError("bundle: rank must be at least 1");
            LinearClass twist = b.contains("twist_b") ? class_from_json(pres, b.at("twist_b"), "bundle.twist_b")
                                                      : LinearClass(pres);
            out.bundle = ProjBundle(std::move(roots), std::move(twist));
        }
        if (doc.contains("order")) {
            if (!doc.at("order").is_number_unsigned())
                throw InputError("order must be a non-negative integer");
            out.order = doc.at("order").get<std::size_t>();
        }
        return out;
    } catch (const json::exception& e) {
        throw InputError(std::string("manifest: ") + e.what());
    }
}

Manifest load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open manifest '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InputError("manifest '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return manifest_from_json(doc);
}

json manifest_to_json(const Manifest& m)
{
    json doc;
    if (!m.builtin.empty()) {
        doc["manifold"] = m.builtin;
    } else {
        const auto& p = *m.manifold.presentation;
        json gens = json::array();
        for (const auto& g : p.generators())
            gens.push_back({{"name", g.name}, {"degree", g.degree}});
        json integration = json::array();
        for (const auto& [mono, v] : p.integration_table())
            integration.push_back({{"monomial", mono}, {"value", to_fraction_string(v)}});
        json roots = json::array();
        for (const auto& r : m.manifold.tangent_roots)
            roots.push_back(class_to_json(r));
        doc["manifold"] = {{"name", m.manifold.name},     {"generators", gens},
                           {"top_degree", p.top_degree()}, {"vanishing", p.vanishing()},
                           {"integration", integration},   {"tangent_roots", roots}};
    }
    if (m.bundle) {
        json roots = json::array();
        for (const auto& r : m.bundle->roots)
            roots.push_back(class_to_json(r));
        doc["bundle"] = {{"rank", m.bundle->rank()}, {"roots", roots}, {"twist_b", class_to_json(m.bundle->twist_b)}};
    }
    if (m.order)
        doc["order"] = *m.order;
    return doc;
}

std::size_t resolve_order(std::optional<std::size_t> flag, const Manifest* manifest)
{
    if (flag)
        return *flag;
    if (manifest && manifest->order)
        return *manifest->order;
    if (const char* env = std::getenv(kOrderEnvVar); env && *env) {
        std::size_t n = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw InputError(std::string(kOrderEnvVar) + " must be a non-negative integer");
        return n;
    }
    return kFallbackOrder;
}

} // namespace ellgen
