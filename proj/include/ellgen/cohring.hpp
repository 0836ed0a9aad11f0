#pragma once

#include "ellgen/qseries.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ellgen {

struct Generator {
    std::string name;
    int degree = 2; ///< cohomological degree, even and >= 2
};

/// Exponent vector over the generators of a presentation.
using Monomial = std::vector<int>;

/// Graded-lexicographic order: total degree first, then exponents in
/// generator declaration order.
struct MonomialOrder {
    const std::vector<Generator>* generators = nullptr;
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// H^even of a manifold, presented as a truncated polynomial ring: generators
/// of even degree, monomials above top_degree are zero, plus an explicit list
/// of vanishing monomials (every multiple of one vanishes too). Integration
/// pairs top-degree monomials with rationals; unlisted ones integrate to 0.
class RingPresentation {
public:
    RingPresentation(std::vector<Generator> generators, int top_degree, std::vector<Monomial> vanishing = {},
                     std::vector<std::pair<Monomial, Rational>> integration = {});

    const std::vector<Generator>& generators() const noexcept { return generators_; }
    int top_degree() const noexcept { return top_degree_; }
    const std::vector<Monomial>& vanishing() const noexcept { return vanishing_; }
    const std::vector<std::pair<Monomial, Rational>>& integration_table() const noexcept { return integration_; }

    std::size_t size() const noexcept { return generators_.size(); }
    int degree(const Monomial& m) const;
    /// True if m is zero in the quotient (too high a degree or in the vanishing ideal).
    bool is_zero(const Monomial& m) const;
    Rational integral(const Monomial& m) const;
    std::optional<std::size_t> index_of(std::string_view name) const;
    Monomial unit() const { return Monomial(generators_.size(), 0); }

    std::string monomial_string(const Monomial& m) const;

    friend bool operator==(const RingPresentation& a, const RingPresentation& b);

private:
    std::vector<Generator> generators_;
    int top_degree_;
    std::vector<Monomial> vanishing_;
    std::vector<std::pair<Monomial, Rational>> integration_;
};

using PresentationPtr = std::shared_ptr<const RingPresentation>;

class LinearClass;

/// Element of the quotient ring with HalfQSeries coefficients. All
/// coefficients share one u-order; binary operations truncate to the smaller.
class CohElement {
public:
    using Terms = std::map<Monomial, HalfQSeries, MonomialOrder>;

    CohElement(PresentationPtr presentation, std::size_t order);

    static CohElement scalar(PresentationPtr presentation, const HalfQSeries& value);
    static CohElement constant(PresentationPtr presentation, const Rational& value, std::size_t order);
    static CohElement monomial(PresentationPtr presentation, const Monomial& m, const Rational& value,
                               std::size_t order);
    static CohElement generator(PresentationPtr presentation, std::size_t index, std::size_t order);

    const PresentationPtr& presentation() const noexcept { return pres_; }
    std::size_t order() const noexcept { return order_; }
    const Terms& terms() const noexcept { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Coefficient series of a monomial (zero series if absent).
    HalfQSeries coefficient(const Monomial& m) const;
    /// The degree-0 part as a series.
    HalfQSeries scalar_part() const { return coefficient(pres_->unit()); }
    CohElement degree_component(int degree) const;
    /// Smallest degree carrying a nonzero term (top_degree + 2 if zero).
    int min_degree() const;
    /// Keeps only u-power k of every coefficient, as an order-0 element.
    CohElement u_coefficient(std::size_t k) const;

    CohElement truncated(std::size_t order) const;

    CohElement& operator+=(const CohElement& other);
    CohElement& operator-=(const CohElement& other);
    CohElement& operator*=(const CohElement& other);
    CohElement& operator*=(const HalfQSeries& s);
    CohElement& operator*=(const Rational& s);

    friend CohElement operator+(CohElement a, const CohElement& b) { return a += b; }
    friend CohElement operator-(CohElement a, const CohElement& b) { return a -= b; }
    friend CohElement operator*(const CohElement& a, const CohElement& b);
    friend CohElement operator*(CohElement a, const HalfQSeries& s) { return a *= s; }
    friend CohElement operator*(CohElement a, const Rational& s) { return a *= s; }
    friend CohElement operator*(const Rational& s, CohElement a) { return a *= s; }
    CohElement operator-() const;

    friend bool operator==(const CohElement& a, const CohElement& b);

    CohElement pow(unsigned exponent) const;
    /// Inverse of an element whose degree-0 part is an invertible series.
    CohElement inverse() const;
    /// log of an element whose u^0 degree-0 coefficient is 1.
    CohElement log_unipotent() const;
    /// a^{1/root} for an element whose u^0 degree-0 coefficient is a perfect
    /// root-th power of a positive rational; the branch with that positive
    /// constant term is returned.
    CohElement fractional_power(unsigned root) const;
    /// Replaces generator `index` by `value` (same degree expected) everywhere.
    CohElement substitute(std::size_t index, const CohElement& value) const;

    /// Multiplication via the serial reference kernel; used by tests to pin the parallel path.
    CohElement multiply_serial(const CohElement& other) const;

private:
    void insert(const Monomial& m, HalfQSeries coeff);
    void drop_zeros();
    CohElement multiply(const CohElement& other, bool serial) const;

    PresentationPtr pres_;
    std::size_t order_;
    Terms terms_;
};

CohElement ring_mul(const CohElement& a, const CohElement& b);

/// exp(a) = sum a^k/k!; throws NonNilpotentScalar if the u^0 degree-0
/// coefficient of a is nonzero (the sum would not terminate).
CohElement exp_nilpotent(const CohElement& a);

/// Rational linear combination of degree-2 generators: a Chern root, a twist
/// shift b, or any other degree-2 class.
class LinearClass {
public:
    explicit LinearClass(PresentationPtr presentation);
    LinearClass(PresentationPtr presentation, std::vector<Rational> coefficients);
    static LinearClass generator(PresentationPtr presentation, std::size_t index, const Rational& scale = 1);

    const PresentationPtr& presentation() const noexcept { return pres_; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const;

    LinearClass& operator+=(const LinearClass& other);
    LinearClass& operator-=(const LinearClass& other);
    LinearClass& operator*=(const Rational& s);
    friend LinearClass operator+(LinearClass a, const LinearClass& b) { return a += b; }
    friend LinearClass operator-(LinearClass a, const LinearClass& b) { return a -= b; }
    friend LinearClass operator*(const Rational& s, LinearClass a) { return a *= s; }
    LinearClass operator-() const;
    friend bool operator==(const LinearClass& a, const LinearClass& b) { return a.coeffs_ == b.coeffs_; }

    CohElement to_element(std::size_t order) const;
    std::string to_string() const;

private:
    PresentationPtr pres_;
    std::vector<Rational> coeffs_;
};

/// A closed oriented manifold of dimension 4r, given by its cohomology
/// presentation and a list of stable tangent Chern roots.
struct Manifold {
    std::string name;
    PresentationPtr presentation;
    std::vector<LinearClass> tangent_roots;

    int dimension() const { return presentation->top_degree(); }
    /// Throws InputError if the dimension is not divisible by 4 or a root
    /// belongs to another presentation.
    void validate() const;
};

HalfQSeries integrate(const CohElement& a, const Manifold& m);
/// Pairs the top-degree component with the presentation's integration table.
HalfQSeries integrate(const CohElement& a);

/// CP^n for even n: x of degree 2, x^{n+1} = 0, integral of x^n is 1,
/// tangent roots n+1 copies of x (from c(T + C) = (1+x)^{n+1}).
Manifold projective_space(int n);

/// Relation-free ring over the listed generators, truncated at top_degree.
Manifold free_manifold(std::string name, std::vector<Generator> generators, int top_degree);

/// The power-sum ring used by the dimension-12 cancellation check:
/// s2T, s4T, s6T (tangent) and s1E..s6E (bundle), top degree 12.
Manifold power_sum_ring();

/// "CP2", "CP4" (any "CP<even n>") or "free" (the power-sum ring).
Manifold builtin_manifold(std::string_view name);

std::string to_string(const CohElement& a);

} // namespace ellgen
