#include "ellgen/genera.hpp"

#include "ellgen/errors.hpp"
#include "ellgen/theta.hpp"

#include <stdexcept>

namespace ellgen {

std::string_view to_string(GenusKind kind)
{
    switch (kind) {
    case GenusKind::AHat: return "ahat";
    case GenusKind::Witten: return "witten";
    case GenusKind::PEll: return "pell";
    case GenusKind::PEll1: return "pell1";
    case GenusKind::PEll2: return "pell2";
    case GenusKind::PEll3: return "pell3";
    }
    return "?";
}

std::string_view to_string(Method method)
{
    return method == Method::Definition ? "definition" : "theta_product";
}

std::string_view to_string(Group group)
{
    switch (group) {
    case Group::SL2Z: return "SL2Z";
    case Group::Gamma0_2: return "Gamma0_2";
    case Group::Gamma_up0_2: return "Gamma_up0_2";
    case Group::GammaTheta: return "GammaTheta";
    case Group::None: return "none";
    }
    return "?";
}

GenusKind parse_genus_kind(std::string_view name)
{
    for (auto k : {GenusKind::AHat, GenusKind::Witten, GenusKind::PEll, GenusKind::PEll1, GenusKind::PEll2,
                   GenusKind::PEll3})
        if (to_string(k) == name)
            return k;
    throw InputError("unknown genus '" + std::string(name) + "'");
}

Method parse_method(std::string_view name)
{
    if (name == "theta" || name == "theta_product")
        return Method::ThetaProduct;
    if (name == "definition")
        return Method::Definition;
    throw InputError("unknown method '" + std::string(name) + "'");
}

namespace {

// Even z-degree cutoff large enough that every w^k beyond it vanishes.
std::size_t factor_degree(const Manifold& m)
{
    std::size_t d = static_cast<std::size_t>(m.dimension() / 2);
    return d + d % 2;
}

CohElement one(const Manifold& m, std::size_t order)
{
    return CohElement::constant(m.presentation, 1, order);
}

// sinh(x/2)/(x/2) = sum x^{2k} / (4^k (2k+1)!), as a ring element.
CohElement sinh_ratio(const CohElement& x, int top_degree)
{
    CohElement s = CohElement::constant(x.presentation(), 1, x.order());
    CohElement x2 = x * x;
    CohElement power = s;
    for (int k = 1; 4 * k <= top_degree; ++k) {
        power *= x2;
        s += power * (power_of_two(-2 * k) / factorial(static_cast<unsigned>(2 * k + 1)));
    }
    return s;
}

// prod over tangent roots and levels of 1 / ((1 - q^n e^x)(1 - q^n e^{-x})): Ch(Theta(T_C Z)).
CohElement tangent_witten_ch(const Manifold& m, std::size_t order)
{
    CohElement denom = one(m, order);
    for (const auto& root : m.tangent_roots) {
        const CohElement x = root.to_element(order);
        const CohElement ex = exp_nilpotent(x);
        const CohElement ex_inv = exp_nilpotent(-x);
        for (std::size_t p = 2; p <= order; p += 2) {
            const HalfQSeries t = HalfQSeries::monomial(p, 1, order);
            denom *= one(m, order) - ex * t;
            denom *= one(m, order) - ex_inv * t;
        }
    }
    return denom.inverse();
}

HalfQSeries theta_product_integral(const Manifold& m, const ProjBundle& e, GenusKind kind, std::size_t order)
{
    const std::size_t d = factor_degree(m);
    const FactorSeries t_factor = elliptic_factor(ThetaKind::Theta, d, order);
    CohElement integrand = one(m, order);
    for (const auto& x : m.tangent_roots)
        integrand *= t_factor.evaluate(x.to_element(order));

    const auto roots = e.shifted_roots();
    switch (kind) {
    case GenusKind::PEll: {
        const FactorSeries inv = t_factor.inverse();
        for (const auto& w : roots) {
            const CohElement we = w.to_element(order);
            integrand *= inv.evaluate(we) * (-we);
        }
        break;
    }
    case GenusKind::PEll1: {
        const FactorSeries f = elliptic_factor(ThetaKind::Theta1, d, order);
        for (const auto& w : roots)
            integrand *= f.evaluate(w.to_element(order)) * Rational(2);
        break;
    }
    case GenusKind::PEll2:
    case GenusKind::PEll3: {
        const FactorSeries f =
            elliptic_factor(kind == GenusKind::PEll2 ? ThetaKind::Theta2 : ThetaKind::Theta3, d, order);
        for (const auto& w : roots)
            integrand *= f.evaluate(w.to_element(order));
        break;
    }
    default:
        throw std::invalid_argument("theta_product_integral: not a projective elliptic genus");
    }
    return integrate(integrand, m);
}

// (prod (1-q^j))^{2 n_T} and the bundle-side prefactor of each kind for rank l.
HalfQSeries definition_prefactor(GenusKind kind, std::size_t tangent_roots, std::size_t l, std::size_t order)
{
    const int nt = 2 * static_cast<int>(tangent_roots);
    const int nl = 2 * static_cast<int>(l);
    switch (kind) {
    case GenusKind::PEll:
        return eta_like_product(-1, false, nt - nl, order);
    case GenusKind::PEll1:
        return eta_like_product(-1, false, nt, order) * eta_like_product(1, false, -nl, order);
    case GenusKind::PEll2:
        return eta_like_product(-1, false, nt, order) * eta_like_product(-1, true, -nl, order);
    case GenusKind::PEll3:
        return eta_like_product(-1, false, nt, order) * eta_like_product(1, true, -nl, order);
    default:
        throw std::invalid_argument("definition_prefactor: not a projective elliptic genus");
    }
}

GradedKind graded_kind_of(GenusKind kind)
{
    switch (kind) {
    case GenusKind::PEll: return GradedKind::W;
    case GenusKind::PEll1: return GradedKind::A;
    case GenusKind::PEll2: return GradedKind::B;
    case GenusKind::PEll3: return GradedKind::C;
    default: throw std::invalid_argument("not a projective elliptic genus");
    }
}

bool uses_det_sqrt(GenusKind kind)
{
    return kind == GenusKind::PEll || kind == GenusKind::PEll1;
}

// The bundle-side class of the definition: sqrt(det) * GCh, or GCh alone.
CohElement definition_bundle_class(const ProjBundle& e, GenusKind kind, std::size_t order)
{
    CohElement h = gch(graded_kind_of(kind), e, order);
    if (uses_det_sqrt(kind))
        h *= det_sqrt_ch(e, order);
    return h;
}

HalfQSeries definition_integral(const Manifold& m, const CohElement& bundle_class, GenusKind kind, std::size_t l,
                                std::size_t order)
{
    CohElement integrand = a_hat_class(m, order) * tangent_witten_ch(m, order) * bundle_class;
    return integrate(integrand, m) * definition_prefactor(kind, m.tangent_roots.size(), l, order);
}

CohElement tangent_p1(const Manifold& m)
{
    CohElement s(m.presentation, 0);
    for (const auto& x : m.tangent_roots) {
        const auto e = x.to_element(0);
        s += e * e;
    }
    return s;
}

void fill_report(GenusReport& r, const Manifold& m, const std::optional<ProjBundle>& e)
{
    r.manifold = m.name;
    r.bundle = e ? e->describe() : "none";
    r.weight = m.dimension() / 2;
    if (r.kind == GenusKind::AHat) {
        r.group = Group::None;
        return;
    }
    if (r.kind == GenusKind::Witten) {
        const bool vanishing = tangent_p1(m).is_zero();
        r.group = vanishing ? Group::SL2Z : Group::None;
        r.checks.push_back({"p1(TZ) = 0", vanishing, to_string(tangent_p1(m))});
        return;
    }
    const bool matched = p1_matched(m, *e);
    r.group = matched ? natural_group(r.kind) : Group::None;
    r.checks.push_back({"p1 matched", matched,
                        "p1(TZ) = " + to_string(tangent_p1(m)) + ", p1(E) = " + to_string(e->p1())});
    if (r.kind == GenusKind::PEll || r.kind == GenusKind::PEll1)
        r.checks.push_back({"series in Q[[q]]", r.series.is_integral_q(), ""});
}

} // namespace

CohElement a_hat_class(const Manifold& m, std::size_t order)
{
    CohElement s = one(m, order);
    for (const auto& x : m.tangent_roots)
        s *= sinh_ratio(x.to_element(order), m.dimension());
    return s.inverse();
}

Rational a_hat_integral(const Manifold& m)
{
    return integrate(a_hat_class(m, 0), m)[0];
}

HalfQSeries witten_genus(const Manifold& m, std::size_t order)
{
    const FactorSeries t_factor = elliptic_factor(ThetaKind::Theta, factor_degree(m), order);
    CohElement integrand = one(m, order);
    for (const auto& x : m.tangent_roots)
        integrand *= t_factor.evaluate(x.to_element(order));
    return integrate(integrand, m);
}

bool p1_matched(const Manifold& m, const ProjBundle& e)
{
    return tangent_p1(m) == e.p1();
}

Group natural_group(GenusKind kind)
{
    switch (kind) {
    case GenusKind::PEll: return Group::SL2Z;
    case GenusKind::PEll1: return Group::Gamma0_2;
    case GenusKind::PEll2: return Group::Gamma_up0_2;
    case GenusKind::PEll3: return Group::GammaTheta;
    case GenusKind::Witten: return Group::SL2Z;
    case GenusKind::AHat: return Group::None;
    }
    return Group::None;
}

GenusReport pell(const Manifold& m, const ProjBundle& e, GenusKind kind, Method method, std::size_t order)
{
    if (kind == GenusKind::AHat || kind == GenusKind::Witten)
        throw std::invalid_argument("pell: kind must be one of PEll, PEll1, PEll2, PEll3");
    m.validate();
    if (!(*e.presentation() == *m.presentation))
        throw PresentationMismatch();

    GenusReport r;
    r.kind = kind;
    r.method = method;
    if (method == Method::ThetaProduct)
        r.series = theta_product_integral(m, e, kind, order);
    else
        r.series = definition_integral(m, definition_bundle_class(e, kind, order), kind, e.rank(), order);
    fill_report(r, m, e);
    return r;
}

GenusReport compute_genus(GenusKind kind, Method method, const Manifold& m, const std::optional<ProjBundle>& e,
                          std::size_t order)
{
    if (kind == GenusKind::AHat || kind == GenusKind::Witten) {
        m.validate();
        GenusReport r;
        r.kind = kind;
        r.method = method;
        r.series = kind == GenusKind::AHat ? HalfQSeries::constant(a_hat_integral(m), 0) : witten_genus(m, order);
        fill_report(r, m, e);
        return r;
    }
    if (!e)
        throw InputError("genus '" + std::string(to_string(kind)) + "' needs a bundle");
    return pell(m, *e, kind, method, order);
}

GenusReport pseudodiff_genus(const PseudoDiffSpec& spec, GenusKind kind, std::size_t order, Method method)
{
    GenusReport direct = pell(spec.manifold, spec.bundle, kind, method, order);
    if (!spec.label.empty())
        direct.bundle = spec.label + " (" + direct.bundle + ")";
    if (spec.multiplicity_exponent == 0)
        return direct;

    const unsigned copies = 1u << spec.multiplicity_exponent;
    if (kind == GenusKind::PEll) {
        // The rank-0 class (Lambda^ev - Lambda^odd) has no canonical root.
        direct.checks.push_back({"root of E^(+)" + std::to_string(copies) + " characters", true,
                                 "not applicable to the rank-0 class; reduced bundle used directly"});
        return direct;
    }
    ProjBundle sum = spec.bundle;
    for (unsigned i = 1; i < copies; ++i)
        sum = sum.direct_sum(spec.bundle);
    CohElement big = method == Method::Definition ? definition_bundle_class(sum, kind, order)
                                                  : gch_closed_form(graded_kind_of(kind), sum, order);
    if (method != Method::Definition && uses_det_sqrt(kind))
        big *= det_sqrt_ch(sum, order);
    const CohElement h = big.fractional_power(copies);
    const HalfQSeries via_root = definition_integral(spec.manifold, h, kind, spec.bundle.rank(), order);
    direct.checks.push_back({"root of E^(+)" + std::to_string(copies) + " characters equals PEll(Z, E)",
                             via_root == direct.series, ""});
    return direct;
}

// --- degree-12 cancellation -------------------------------------------------

namespace {

// Coefficients of z^2, z^4, z^6 in log f(z), f given by its even coefficients.
std::vector<Rational> log_coefficients(const std::vector<Rational>& even_coeffs, bool invert)
{
    auto ring = free_manifold("z", {{"z", 2}}, 12);
    const auto& p = ring.presentation;
    CohElement f(p, 0);
    for (std::size_t k = 0; k < even_coeffs.size() && 2 * k <= 6; ++k)
        f += CohElement::monomial(p, {static_cast<int>(2 * k)}, even_coeffs[k], 0);
    if (invert)
        f = f.inverse();
    const CohElement log = f.log_unipotent();
    return {log.coefficient({2})[0], log.coefficient({4})[0], log.coefficient({6})[0]};
}

} // namespace

CancellationResult cancellation12_check(int l, bool impose_relation, CancellationForm form)
{
    if (l != 2 && l != 4)
        throw UnsupportedRank(l);

    const Manifold ring = power_sum_ring();
    const auto& p = ring.presentation;
    auto gen = [&](std::string_view name) { return CohElement::generator(p, *p->index_of(name), 0); };
    const CohElement s2t = gen("s2T");
    const CohElement s4t = gen("s4T");
    const CohElement s6t = gen("s6T");
    std::vector<CohElement> se;
    for (int k = 1; k <= 6; ++k)
        se.push_back(gen("s" + std::to_string(k) + "E"));

    // log(x / (2 sinh(x/2))) and log cosh(x/2) as power series in x^2.
    std::vector<Rational> sinh_c;
    std::vector<Rational> cosh_c;
    for (unsigned k = 0; k <= 3; ++k) {
        sinh_c.push_back(power_of_two(-2 * static_cast<int>(k)) / factorial(2 * k + 1));
        cosh_c.push_back(power_of_two(-2 * static_cast<int>(k)) / factorial(2 * k));
    }
    const auto a = log_coefficients(sinh_c, true);
    const auto c = log_coefficients(cosh_c, false);

    const CohElement a_hat = exp_nilpotent(s2t * a[0] + s4t * a[1] + s6t * a[2]);
    const CohElement cosh_part = exp_nilpotent(se[1] * c[0] + se[3] * c[1] + se[5] * c[2]);
    const CohElement lhs = (a_hat * cosh_part * power_of_two(l)).degree_component(12);

    CohElement ch_e = CohElement::constant(p, l, 0);
    CohElement ch_ebar = CohElement::constant(p, l, 0);
    for (unsigned k = 1; k <= 6; ++k) {
        const CohElement term = se[k - 1] * (Rational(1) / factorial(k));
        ch_e += term;
        ch_ebar += k % 2 == 0 ? term : -term;
    }
    const CohElement twisted = form == CancellationForm::Literal ? ch_e : ch_e + ch_ebar;
    const CohElement rhs =
        ((a_hat * twisted + a_hat * Rational(8 - 2 * l)) * power_of_two(l - 3)).degree_component(12);

    const CohElement full = lhs - rhs;
    const CohElement substituted = full.substitute(*p->index_of("s2T"), se[1]);
    CancellationResult res{.rank = l,
                           .relation_imposed = impose_relation,
                           .form = form,
                           .equal = false,
                           .residual = impose_relation ? substituted : full,
                           .residual_divisible = substituted.is_zero()};
    res.equal = res.residual.is_zero();
    return res;
}

ClassicalRecovery classical_recovery_check(const Manifold& m, const ProjBundle& v, std::size_t order)
{
    if (!v.twist_b.is_zero())
        throw InputError("classical recovery needs an untwisted bundle (b = 0)");
    ClassicalRecovery out;
    out.pell = pell(m, v, GenusKind::PEll, Method::ThetaProduct, order).series;
    out.sign = v.rank() % 2 == 0 ? 1 : -1;

    // A-hat Ch(Theta(reduced T_C Z)) Ch((Delta^+ - Delta^-) (x) Theta(reduced V)).
    CohElement delta = one(m, order);
    for (const auto& w : v.shifted_roots()) {
        const CohElement we = w.to_element(order);
        delta *= exp_nilpotent(we * Rational(1, 2)) - exp_nilpotent(we * Rational(-1, 2));
    }
    CohElement integrand = a_hat_class(m, order) * tangent_witten_ch(m, order) * delta *
                           witten_bundle_ch(ThetaKind::Theta, v, order);
    const int nt = 2 * static_cast<int>(m.tangent_roots.size());
    const int nl = 2 * static_cast<int>(v.rank());
    out.classical = integrate(integrand, m) * eta_like_product(-1, false, nt - nl, order);
    out.match = out.classical == out.pell * Rational(out.sign);
    return out;
}

} // namespace ellgen
