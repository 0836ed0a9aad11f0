#pragma once

#include "ellgen/bundleops.hpp"
#include "ellgen/cohring.hpp"
#include "ellgen/qseries.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ellgen {

enum class GenusKind { AHat, Witten, PEll, PEll1, PEll2, PEll3 };
enum class Method { Definition, ThetaProduct };
enum class Group { SL2Z, Gamma0_2, Gamma_up0_2, GammaTheta, None };

std::string_view to_string(GenusKind kind);
std::string_view to_string(Method method);
std::string_view to_string(Group group);
GenusKind parse_genus_kind(std::string_view name);
Method parse_method(std::string_view name);

struct ReportCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct GenusReport {
    GenusKind kind = GenusKind::PEll;
    std::string manifold;
    std::string bundle;
    Method method = Method::ThetaProduct;
    HalfQSeries series;
    int weight = 0;
    Group group = Group::None;
    std::vector<ReportCheck> checks;
};

/// Integral of prod over tangent roots of x / (e^{x/2} - e^{-x/2}).
Rational a_hat_integral(const Manifold& m);
/// The A-hat class itself, built by inverting sinh(x/2)/(x/2) in the ring.
CohElement a_hat_class(const Manifold& m, std::size_t order = 0);

/// Integral of prod over tangent roots of the normalized Theta factor
/// (the reduced Witten bundle convention).
HalfQSeries witten_genus(const Manifold& m, std::size_t order);

/// p1(TZ) = sum x_i^2 == sum (y_j + b)^2.
bool p1_matched(const Manifold& m, const ProjBundle& e);
/// Congruence group of a kind per the modularity statement (None for A-hat).
Group natural_group(GenusKind kind);

/// PEll, PEll1, PEll2, PEll3. ThetaProduct integrates prod T(x_i) * prod F(w_j):
///   PEll : F(w) = (e^{-w/2} - e^{w/2}) prod (1-q^n e^w)(1-q^n e^{-w})/(1-q^n)^2
///   PEll1: F(w) = 2 * Theta1 factor;  PEll2/3: F(w) = Theta2/3 factor.
/// Definition expands the prefactor, A-hat, Ch(Theta(T_C Z)), the square
/// root of the determinant and the graded twisted Chern character; it throws
/// GuardExceeded past the decomposition guards.
GenusReport pell(const Manifold& m, const ProjBundle& e, GenusKind kind, Method method, std::size_t order);

/// Any kind; AHat and Witten ignore the bundle and the method.
GenusReport compute_genus(GenusKind kind, Method method, const Manifold& m, const std::optional<ProjBundle>& e,
                          std::size_t order);

/// Operator data reduced to the associated bundle E. With a nonzero
/// multiplicity exponent k, the operator's bundle is E^{(+) 2^k} and the
/// genera use the 2^k-th root of its characters.
struct PseudoDiffSpec {
    Manifold manifold;
    ProjBundle bundle;
    std::string label;
    unsigned multiplicity_exponent = 0;
};

GenusReport pseudodiff_genus(const PseudoDiffSpec& spec, GenusKind kind, std::size_t order,
                             Method method = Method::ThetaProduct);

/// RHS variants for the degree-12 cancellation. Literal uses {A-hat Ch_H(E)};
/// Realified uses {A-hat (Ch_H(E) + Ch_H(Ebar))}.
enum class CancellationForm { Literal, Realified };

struct CancellationResult {
    int rank = 0;
    bool relation_imposed = false;
    CancellationForm form = CancellationForm::Literal;
    bool equal = false;
    /// LHS - RHS in degree 12, after the substitution if imposed.
    CohElement residual;
    /// Whether the unsubstituted residual vanishes under s2T := s2E.
    bool residual_divisible = false;
};

/// l in {2, 4}, otherwise UnsupportedRank. Works in power_sum_ring().
CancellationResult cancellation12_check(int l, bool impose_relation,
                                        CancellationForm form = CancellationForm::Literal);

struct ClassicalRecovery {
    bool match = false;
    /// (-1)^l relating PEll to the classical Delta^+ - Delta^- form.
    int sign = 1;
    HalfQSeries pell;
    HalfQSeries classical;
};

/// b must be zero (InputError otherwise).
ClassicalRecovery classical_recovery_check(const Manifold& m, const ProjBundle& v, std::size_t order);

} // namespace ellgen
