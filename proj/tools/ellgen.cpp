#include "ellgen/errors.hpp"
#include "ellgen/genera.hpp"
#include "ellgen/manifest.hpp"
#include "ellgen/modcheck.hpp"
#include "ellgen/report.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

using namespace ellgen;

namespace {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInput = 2, kGuard = 3, kUnsupported = 4 };

constexpr std::size_t kGroupCheckOrder = 80;

struct Options {
    std::string input;
    std::optional<std::size_t> order;
    std::string genus = "pell";
    std::string method = "theta";
    bool json = false;
    std::string suite;
    double tol = 1e-8;
    std::string tau_list;
    std::string kind = "W";
    int rank = 2;
    bool no_relation = false;
    bool realified = false;
};

Complex parse_complex(std::string s)
{
    std::erase_if(s, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (s.empty())
        throw InputError("empty tau value");
    auto number = [&](const std::string& t) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw InputError("cannot parse tau value '" + s + "'");
        }
        if (used != t.size())
            throw InputError("cannot parse tau value '" + s + "'");
        return v;
    };
    if (s.back() != 'i')
        return {number(s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not the leading one or part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    auto imag = [&](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return number(t);
    };
    if (split == std::string::npos)
        return {0.0, imag(body)};
    return {number(body.substr(0, split)), imag(body.substr(split))};
}

std::vector<Complex> parse_tau_list(const std::string& list)
{
    if (list.empty())
        return kDefaultSamples;
    std::vector<Complex> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_complex(item));
    for (auto t : out)
        if (!(t.imag() > 0))
            throw InvalidTau();
    return out;
}

std::string fmt_tau(Complex t)
{
    return fmt::format("{:g}{:+g}i", t.real(), t.imag());
}

Manifest require_input(const Options& o)
{
    if (o.input.empty())
        throw InputError("this command needs --input FILE");
    return load_manifest(o.input);
}

const ProjBundle& require_bundle(const Manifest& m)
{
    if (!m.bundle)
        throw InputError("the manifest has no bundle");
    return *m.bundle;
}

class Tally {
public:
    void check(bool ok, const std::string& name, const std::string& detail = "")
    {
        ++total_;
        passed_ += ok ? 1 : 0;
        fmt::print("[{}] {}{}\n", ok ? "pass" : "FAIL", name, detail.empty() ? "" : " -- " + detail);
    }
    static void info(const std::string& text) { fmt::print("[info] {}\n", text); }
    int finish() const
    {
        fmt::print("summary: {}/{} passed\n", passed_, total_);
        return passed_ == total_ ? kOk : kVerifyFailed;
    }

private:
    int total_ = 0;
    int passed_ = 0;
};

int cmd_compute(const Options& o)
{
    const GenusKind kind = parse_genus_kind(o.genus);
    const Method method = parse_method(o.method);
    const Manifest m = require_input(o);
    const std::size_t order = resolve_order(o.order, &m);
    const GenusReport r = compute_genus(kind, method, m.manifold, m.bundle, order);
    if (o.json)
        std::cout << report_to_json(r).dump(2) << "\n";
    else
        std::cout << report_to_text(r);
    return kOk;
}

std::string max_difference(const HalfQSeries& a, const HalfQSeries& b)
{
    Rational worst = 0;
    for (std::size_t k = 0; k <= std::min(a.order(), b.order()); ++k)
        worst = std::max<Rational>(worst, abs(a[k] - b[k]));
    return "max |difference| " + to_string(worst);
}

int suite_theta_laws(const Options& o)
{
    Tally t;
    for (const auto& law : check_theta_laws(o.tol))
        t.check(law.passed, law.name, fmt::format("residual {:.3g}", law.max_residual));
    return t.finish();
}

int suite_jacobi(const Options& o)
{
    Tally t;
    const std::size_t order = resolve_order(o.order, nullptr);
    t.check(jacobi_identity_exact(order), fmt::format("exact product identity to u-order {}", order));
    t.check(!jacobi_identity_exact(order, true), "perturbed identity rejected (negative control)");
    const double pi = std::numbers::pi;
    for (Complex tau : parse_tau_list(o.tau_list)) {
        const Complex lhs = theta_numeric_dv(ThetaKind::Theta, 0.0, tau, kDefaultThetaTerms, 1);
        const Complex rhs = pi * theta_numeric(ThetaKind::Theta1, 0.0, tau) *
                            theta_numeric(ThetaKind::Theta2, 0.0, tau) * theta_numeric(ThetaKind::Theta3, 0.0, tau);
        const double res = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        t.check(res < o.tol, "theta'(0) = pi theta1 theta2 theta3 at tau = " + fmt_tau(tau),
                fmt::format("residual {:.3g}", res));
    }
    return t.finish();
}

int suite_consistency(const Options& o)
{
    const Manifest m = require_input(o);
    const ProjBundle& e = require_bundle(m);
    const std::size_t order = resolve_order(o.order, &m);
    Tally t;
    for (auto kind : {GenusKind::PEll, GenusKind::PEll1, GenusKind::PEll2, GenusKind::PEll3}) {
        const auto a = pell(m.manifold, e, kind, Method::Definition, order).series;
        const auto b = pell(m.manifold, e, kind, Method::ThetaProduct, order).series;
        t.check(a == b, fmt::format("{}: definition == theta_product to u-order {}", to_string(kind), order),
                max_difference(a, b));
    }
    return t.finish();
}

int suite_half_period(const Options& o)
{
    const Manifest m = require_input(o);
    const ProjBundle& e = require_bundle(m);
    const std::size_t order = resolve_order(o.order, &m);
    auto series = [&](GenusKind k) { return pell(m.manifold, e, k, Method::ThetaProduct, order).series; };
    const auto p2 = series(GenusKind::PEll2);
    const auto p3 = series(GenusKind::PEll3);
    Tally t;
    t.check(check_T_exact(p2, p3), "PEll2(tau + 1) == PEll3(tau)", max_difference(tau_plus_one(p2), p3));
    t.check(check_T_exact(p3, p2), "PEll3(tau + 1) == PEll2(tau)", max_difference(tau_plus_one(p3), p2));
    t.check(check_T_exact(series(GenusKind::PEll)), "PEll(tau + 1) == PEll(tau)");
    t.check(check_T_exact(series(GenusKind::PEll1)), "PEll1(tau + 1) == PEll1(tau)");
    return t.finish();
}

int suite_s_transform(const Options& o)
{
    const Manifest m = require_input(o);
    const ProjBundle& e = require_bundle(m);
    const std::size_t order = resolve_order(o.order, &m);
    const auto taus = parse_tau_list(o.tau_list);
    const int weight = m.manifold.dimension() / 2;
    auto series = [&](GenusKind k) { return pell(m.manifold, e, k, Method::ThetaProduct, order).series; };
    const auto p1 = series(GenusKind::PEll1);
    const auto p2 = series(GenusKind::PEll2);

    Tally t;
    if (!p1_matched(m.manifold, e))
        Tally::info("p1(TZ) != p1(E): modularity is not expected");
    const auto rel = check_s_relation(p1, p2, weight, taus, o.tol);
    std::string ratios;
    for (const auto& r : rel.ratios)
        ratios += fmt::format(" {:.10g}{:+.3g}i", r.ratio.real(), r.ratio.imag());
    t.check(rel.passed, fmt::format("PEll1(-1/tau) = tau^{} PEll2(tau)", weight),
            fmt::format("max residual {:.3g}; ratios{}", rel.max_residual, ratios));
    const Rational scale = power_of_two(-static_cast<int>(e.rank()));
    const auto scaled = check_s_relation(p1 * scale, p2, weight, taus, o.tol);
    Tally::info(fmt::format("with PEll1 scaled by 2^-{}: max residual {:.3g} ({})", e.rank(), scaled.max_residual,
                            scaled.passed ? "within tol" : "outside tol"));
    const auto fit = best_q_power(p1, p2, weight, taus);
    Tally::info(fmt::format("best q-power prefactor c = {} (ratio spread {:.3g})", to_string(fit.exponent), fit.spread));

    if (p1_matched(m.manifold, e)) {
        // Group generators move the samples closer to the real axis than S does.
        const std::size_t group_order = std::max(order, kGroupCheckOrder);
        Tally::info(fmt::format("group checks use u-order {}", group_order));
        auto group_series = [&](GenusKind k) {
            return pell(m.manifold, e, k, Method::ThetaProduct, group_order).series;
        };
        for (auto kind : {GenusKind::PEll, GenusKind::PEll1, GenusKind::PEll2, GenusKind::PEll3}) {
            const auto group = natural_group(kind);
            const auto rep = check_group(group_series(kind), group, weight, taus, o.tol);
            for (const auto& [g, r] : rep.generators)
                t.check(r.passed, fmt::format("{} over {}: generator {}", to_string(kind), to_string(group), g.to_string()),
                        r.detail);
        }
        const auto sq = check_s_squared(group_series(GenusKind::PEll2), weight, taus, o.tol);
        t.check(sq.passed, "S applied twice acts trivially on PEll2", sq.detail);
    }
    return t.finish();
}

int suite_schur(const Options&)
{
    Tally t;
    for (std::size_t ru = 1; ru <= 3; ++ru)
        for (std::size_t rv = 1; rv <= 3; ++rv)
            for (int n = 1; n <= 4; ++n)
                t.check(tensor_exterior_identity_check(ru, rv, n),
                        fmt::format("Lambda^{}(U (x) V), rank U = {}, rank V = {}", n, ru, rv));
    return t.finish();
}

int cmd_verify(const Options& o)
{
    if (o.suite == "theta-laws")
        return suite_theta_laws(o);
    if (o.suite == "jacobi")
        return suite_jacobi(o);
    if (o.suite == "consistency")
        return suite_consistency(o);
    if (o.suite == "half-period")
        return suite_half_period(o);
    if (o.suite == "s-transform")
        return suite_s_transform(o);
    if (o.suite == "schur")
        return suite_schur(o);
    throw InputError("unknown suite '" + o.suite + "'");
}

GradedKind parse_graded_kind(const std::string& s)
{
    for (auto k : {GradedKind::W, GradedKind::A, GradedKind::B, GradedKind::C})
        if (to_string(k) == s)
            return k;
    throw InputError("unknown kind '" + s + "' (expected W, A, B or C)");
}

int cmd_decompose(const Options& o)
{
    const Manifest m = require_input(o);
    const ProjBundle& e = require_bundle(m);
    const std::size_t order = resolve_order(o.order, &m);
    const GradedKind kind = parse_graded_kind(o.kind);
    const GradedTable table = graded_decompose(kind, e, order);
    fmt::print("kind {} for {}, u-order {}\n", to_string(kind), e.describe(), order);
    for (std::size_t n = 0; n < table.levels(); ++n) {
        fmt::print("n={} ({}):\n", n, q_power_label(table.u_power(n)));
        for (int w : table.weights_at(n)) {
            const CohElement entry = table.entry(w, n);
            std::string leading = "none";
            for (int d = 2; d <= entry.presentation()->top_degree(); d += 2) {
                const CohElement c = entry.degree_component(d);
                if (!c.is_zero()) {
                    leading = to_string(c);
                    break;
                }
            }
            fmt::print("  m={}: rank {}, leading {}\n", w, to_string(entry.scalar_part()[0]), leading);
        }
    }
    const bool ok = gch(table) == gch_closed_form(kind, e, order);
    fmt::print("gch == closed form: {}\n", ok ? "yes" : "no");
    return ok ? kOk : kVerifyFailed;
}

int cmd_cancel12(const Options& o)
{
    const auto form = o.realified ? CancellationForm::Realified : CancellationForm::Literal;
    const auto res = cancellation12_check(o.rank, !o.no_relation, form);
    fmt::print("rank: {}\nform: {}\nrelation s2^T = s2^E imposed: {}\n", res.rank, o.realified ? "realified" : "literal",
               res.relation_imposed ? "yes" : "no");
    fmt::print("equal: {}\n", res.equal ? "yes" : "no");
    if (!res.equal)
        fmt::print("residual (degree 12): {}\n", to_string(res.residual));
    if (o.no_relation) {
        fmt::print("residual divisible by (s2^T - s2^E): {}\n", res.residual_divisible ? "yes" : "no");
        return res.residual_divisible ? kOk : kVerifyFailed;
    }
    return res.equal ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Projective elliptic genera: exact q-series, modularity checks and character identities"};
    app.require_subcommand(1);
    Options o;

    auto* compute = app.add_subcommand("compute", "Compute a genus for a manifest");
    compute->add_option("--input", o.input, "Manifest file")->required();
    compute->add_option("--genus", o.genus, "ahat|witten|pell|pell1|pell2|pell3");
    compute->add_option("--method", o.method, "theta|definition");
    compute->add_option("--order", o.order, "Truncation order N in q^{1/2}");
    compute->add_flag("--json", o.json, "Machine-readable report");

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", o.suite, "theta-laws|consistency|half-period|s-transform|jacobi|schur")->required();
    verify->add_option("--input", o.input, "Manifest file");
    verify->add_option("--order", o.order, "Truncation order N in q^{1/2}");
    verify->add_option("--tol", o.tol, "Numeric tolerance");
    verify->add_option("--tau", o.tau_list, "Comma-separated tau samples, e.g. 1.1i,0.3+1.2i");

    auto* decompose = app.add_subcommand("decompose", "Print the determinant-weight decomposition table");
    decompose->add_option("--input", o.input, "Manifest file")->required();
    decompose->add_option("--kind", o.kind, "W|A|B|C");
    decompose->add_option("--order", o.order, "Truncation order N in q^{1/2}");

    auto* cancel = app.add_subcommand("cancel12", "Degree-12 cancellation identity");
    cancel->add_option("--rank", o.rank, "Bundle rank l (2 or 4)")->required();
    cancel->add_flag("--no-relation", o.no_relation, "Do not impose s2^T = s2^E");
    cancel->add_flag("--realified", o.realified, "Use Ch(E) + Ch(Ebar) on the right-hand side");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*compute)
            return cmd_compute(o);
        if (*verify)
            return cmd_verify(o);
        if (*decompose)
            return cmd_decompose(o);
        return cmd_cancel12(o);
    } catch (const GuardExceeded& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kGuard;
    } catch (const UnsupportedRank& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUnsupported;
    } catch (const PartitionTooTall& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUnsupported;
    } catch (const TailTooLarge& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kVerifyFailed;
    } catch (const Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kInput;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kInput;
    }
}
