#include "ellgen/cohring.hpp"

#include "ellgen/errors.hpp"
#include "ellgen/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ellgen {

// --- RingPresentation -------------------------------------------------------

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const
{
    int da = 0;
    int db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        da += a[i] * (*generators)[i].degree;
        db += b[i] * (*generators)[i].degree;
    }
    if (da != db)
        return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), std::greater<>{});
}

RingPresentation::RingPresentation(std::vector<Generator> generators, int top_degree, std::vector<Monomial> vanishing,
                                   std::vector<std::pair<Monomial, Rational>> integration)
    : generators_(std::move(generators)), top_degree_(top_degree), vanishing_(std::move(vanishing)),
      integration_(std::move(integration))
{
    if (top_degree_ < 0 || top_degree_ % 2 != 0)
        throw InputError("top degree must be a non-negative even integer");
    for (const auto& g : generators_)
        if (g.degree < 2 || g.degree % 2 != 0)
            throw InputError("generator '" + g.name + "' must have even degree >= 2");
    for (std::size_t i = 0; i < generators_.size(); ++i)
        for (std::size_t j = i + 1; j < generators_.size(); ++j)
            if (generators_[i].name == generators_[j].name)
                throw InputError("duplicate generator '" + generators_[i].name + "'");
    for (const auto& m : vanishing_)
        if (m.size() != generators_.size())
            throw InputError("vanishing monomial has the wrong number of exponents");
    for (const auto& [m, value] : integration_) {
        if (m.size() != generators_.size())
            throw InputError("integration monomial has the wrong number of exponents");
        if (degree(m) != top_degree_)
            throw InputError("integration table entry " + monomial_string(m) + " is not of top degree");
    }
}

int RingPresentation::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        d += m[i] * generators_[i].degree;
    return d;
}

bool RingPresentation::is_zero(const Monomial& m) const
{
    if (degree(m) > top_degree_)
        return true;
    for (const auto& v : vanishing_) {
        bool divides = true;
        for (std::size_t i = 0; i < m.size() && divides; ++i)
            divides = v[i] <= m[i];
        if (divides)
            return true;
    }
    return false;
}

Rational RingPresentation::integral(const Monomial& m) const
{
    for (const auto& [key, value] : integration_)
        if (key == m)
            return value;
    return 0;
}

std::optional<std::size_t> RingPresentation::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name)
            return i;
    return std::nullopt;
}

std::string RingPresentation::monomial_string(const Monomial& m) const
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += generators_[i].name;
        if (m[i] > 1)
            out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

bool operator==(const RingPresentation& a, const RingPresentation& b)
{
    if (a.generators_.size() != b.generators_.size() || a.top_degree_ != b.top_degree_)
        return false;
    for (std::size_t i = 0; i < a.generators_.size(); ++i)
        if (a.generators_[i].name != b.generators_[i].name || a.generators_[i].degree != b.generators_[i].degree)
            return false;
    return a.vanishing_ == b.vanishing_ && a.integration_ == b.integration_;
}

// --- CohElement -------------------------------------------------------------

CohElement::CohElement(PresentationPtr presentation, std::size_t order)
    : pres_(std::move(presentation)), order_(order), terms_(MonomialOrder{&pres_->generators()})
{
}

CohElement CohElement::scalar(PresentationPtr presentation, const HalfQSeries& value)
{
    CohElement e(std::move(presentation), value.order());
    e.insert(e.pres_->unit(), value);
    return e;
}

CohElement CohElement::constant(PresentationPtr presentation, const Rational& value, std::size_t order)
{
    return scalar(std::move(presentation), HalfQSeries::constant(value, order));
}

CohElement CohElement::monomial(PresentationPtr presentation, const Monomial& m, const Rational& value,
                                std::size_t order)
{
    CohElement e(std::move(presentation), order);
    if (m.size() != e.pres_->size())
        throw InputError("monomial has the wrong number of exponents");
    e.insert(m, HalfQSeries::constant(value, order));
    return e;
}

CohElement CohElement::generator(PresentationPtr presentation, std::size_t index, std::size_t order)
{
    Monomial m = presentation->unit();
    m.at(index) = 1;
    return monomial(std::move(presentation), m, 1, order);
}

void CohElement::insert(const Monomial& m, HalfQSeries coeff)
{
    if (pres_->is_zero(m) || coeff.is_zero())
        return;
    if (coeff.order() != order_)
        coeff = coeff.truncated(std::min(order_, coeff.order()));
    auto [it, inserted] = terms_.try_emplace(m, std::move(coeff));
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void CohElement::drop_zeros()
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

HalfQSeries CohElement::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    if (it == terms_.end())
        return HalfQSeries(order_);
    return it->second;
}

CohElement CohElement::degree_component(int degree) const
{
    CohElement out(pres_, order_);
    for (const auto& [m, c] : terms_)
        if (pres_->degree(m) == degree)
            out.terms_.emplace(m, c);
    return out;
}

int CohElement::min_degree() const
{
    int d = pres_->top_degree() + 2;
    for (const auto& [m, c] : terms_)
        d = std::min(d, pres_->degree(m));
    return d;
}

CohElement CohElement::u_coefficient(std::size_t k) const
{
    CohElement out(pres_, 0);
    if (k > order_)
        throw std::out_of_range("u-power beyond the tracked order");
    for (const auto& [m, c] : terms_)
        if (sgn(c[k]) != 0)
            out.terms_.emplace(m, HalfQSeries::constant(c[k], 0));
    return out;
}

CohElement CohElement::truncated(std::size_t order) const
{
    CohElement out(pres_, order);
    for (const auto& [m, c] : terms_)
        out.insert(m, c.truncated(order));
    return out;
}

namespace {

void require_same(const CohElement& a, const CohElement& b)
{
    if (a.presentation() != b.presentation() && !(*a.presentation() == *b.presentation()))
        throw PresentationMismatch();
}

} // namespace

CohElement& CohElement::operator+=(const CohElement& other)
{
    require_same(*this, other);
    if (other.order_ < order_)
        *this = truncated(other.order_);
    for (const auto& [m, c] : other.terms_)
        insert(m, c.truncated(order_));
    return *this;
}

CohElement& CohElement::operator-=(const CohElement& other)
{
    require_same(*this, other);
    if (other.order_ < order_)
        *this = truncated(other.order_);
    for (const auto& [m, c] : other.terms_)
        insert(m, -c.truncated(order_));
    return *this;
}

CohElement& CohElement::operator*=(const CohElement& other)
{
    *this = multiply(other, false);
    return *this;
}

CohElement& CohElement::operator*=(const HalfQSeries& s)
{
    if (s.order() < order_)
        *this = truncated(s.order());
    for (auto& [m, c] : terms_)
        c *= s;
    drop_zeros();
    return *this;
}

CohElement& CohElement::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c *= s;
    return *this;
}

CohElement operator*(const CohElement& a, const CohElement& b)
{
    return a.multiply(b, false);
}

CohElement CohElement::multiply_serial(const CohElement& other) const
{
    return multiply(other, true);
}

CohElement CohElement::multiply(const CohElement& other, bool serial) const
{
    require_same(*this, other);
    const std::size_t order = std::min(order_, other.order_);
    CohElement out(pres_, order);
    if (terms_.empty() || other.terms_.empty())
        return out;

    kernels::SeriesBlock left;
    kernels::SeriesBlock right;
    std::vector<const Monomial*> left_mono;
    std::vector<const Monomial*> right_mono;
    for (const auto& [m, c] : terms_) {
        left.push_back(c.coefficients());
        left_mono.push_back(&m);
    }
    for (const auto& [m, c] : other.terms_) {
        right.push_back(c.coefficients());
        right_mono.push_back(&m);
    }

    std::map<Monomial, std::size_t, MonomialOrder> slots(MonomialOrder{&pres_->generators()});
    std::vector<kernels::PairJob> jobs;
    Monomial prod(pres_->size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
            for (std::size_t g = 0; g < prod.size(); ++g)
                prod[g] = (*left_mono[i])[g] + (*right_mono[j])[g];
            if (pres_->is_zero(prod))
                continue;
            auto [it, inserted] = slots.try_emplace(prod, slots.size());
            jobs.push_back({i, j, it->second});
        }
    }

    const std::size_t n = order + 1;
    auto block = serial ? kernels::pair_products_serial(left, right, jobs, slots.size(), n)
                        : kernels::pair_products(left, right, jobs, slots.size(), n);
    for (const auto& [m, slot] : slots) {
        HalfQSeries s(std::move(block[slot]));
        if (!s.is_zero())
            out.terms_.emplace(m, std::move(s));
    }
    return out;
}

CohElement CohElement::operator-() const
{
    CohElement out(*this);
    for (auto& [m, c] : out.terms_)
        c = -c;
    return out;
}

bool operator==(const CohElement& a, const CohElement& b)
{
    if (a.order_ != b.order_ || a.terms_.size() != b.terms_.size())
        return false;
    for (const auto& [m, c] : a.terms_) {
        auto it = b.terms_.find(m);
        if (it == b.terms_.end() || !(it->second == c))
            return false;
    }
    return true;
}

CohElement CohElement::pow(unsigned exponent) const
{
    CohElement result = constant(pres_, 1, order_);
    CohElement base = *this;
    while (exponent > 0) {
        if (exponent & 1u)
            result *= base;
        exponent >>= 1;
        if (exponent > 0)
            base *= base;
    }
    return result;
}

CohElement CohElement::inverse() const
{
    // a = c (1 + n) with c the degree-0 series and n of positive degree.
    const HalfQSeries c_inv = scalar_part().inverse();
    CohElement n = *this * c_inv;
    n -= constant(pres_, 1, order_);
    const CohElement minus_n = -n;
    CohElement result = constant(pres_, 1, order_);
    CohElement term = result;
    for (int k = 1; k <= pres_->top_degree() / 2; ++k) {
        term *= minus_n;
        if (term.is_zero())
            break;
        result += term;
    }
    return result * c_inv;
}

CohElement CohElement::log_unipotent() const
{
    const auto s = scalar_part();
    if (s[0] != 1)
        throw NonNilpotentScalar();
    CohElement n = *this - constant(pres_, 1, order_);
    CohElement result(pres_, order_);
    CohElement term = constant(pres_, 1, order_);
    // n has zero u^0 degree-0 part, so n^k vanishes for k > order + top/2.
    for (long k = 1;; ++k) {
        term *= n;
        if (term.is_zero())
            break;
        result += term * Rational(k % 2 == 1 ? 1 : -1, k);
    }
    return result;
}

CohElement CohElement::fractional_power(unsigned root) const
{
    if (root == 0)
        throw std::invalid_argument("fractional_power: root must be positive");
    const Rational c0 = scalar_part()[0];
    if (sgn(c0) <= 0)
        throw InputError("fractional power needs a positive constant term");
    Integer num;
    Integer den;
    const bool exact_num = mpz_root(num.get_mpz_t(), c0.get_num().get_mpz_t(), root) != 0;
    const bool exact_den = mpz_root(den.get_mpz_t(), c0.get_den().get_mpz_t(), root) != 0;
    if (!exact_num || !exact_den)
        throw InputError("constant term " + ellgen::to_string(c0) + " has no rational root of order " +
                         std::to_string(root));
    const Rational c_root(num, den);
    CohElement unit = *this * (1 / c0);
    CohElement log = unit.log_unipotent() * Rational(1, root);
    return exp_nilpotent(log) * c_root;
}

CohElement CohElement::substitute(std::size_t index, const CohElement& value) const
{
    require_same(*this, value);
    CohElement out(pres_, std::min(order_, value.order_));
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        const int e = rest.at(index);
        rest[index] = 0;
        CohElement term = monomial(pres_, rest, 1, out.order_) * c.truncated(out.order_);
        if (e > 0)
            term *= value.pow(static_cast<unsigned>(e));
        out += term;
    }
    return out;
}

CohElement ring_mul(const CohElement& a, const CohElement& b)
{
    return a * b;
}

CohElement exp_nilpotent(const CohElement& a)
{
    if (sgn(a.scalar_part()[0]) != 0)
        throw NonNilpotentScalar();
    CohElement result = CohElement::constant(a.presentation(), 1, a.order());
    CohElement term = result;
    for (long k = 1;; ++k) {
        term *= a;
        term *= Rational(1, k);
        if (term.is_zero())
            break;
        result += term;
    }
    return result;
}

// --- LinearClass ------------------------------------------------------------

LinearClass::LinearClass(PresentationPtr presentation)
    : pres_(std::move(presentation)), coeffs_(pres_->size())
{
}

LinearClass::LinearClass(PresentationPtr presentation, std::vector<Rational> coefficients)
    : pres_(std::move(presentation)), coeffs_(std::move(coefficients))
{
    if (coeffs_.size() != pres_->size())
        throw InputError("linear class has the wrong number of coefficients");
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0 && pres_->generators()[i].degree != 2)
            throw InputError("linear class uses generator '" + pres_->generators()[i].name +
                             "' which is not of degree 2");
}

LinearClass LinearClass::generator(PresentationPtr presentation, std::size_t index, const Rational& scale)
{
    std::vector<Rational> c(presentation->size());
    c.at(index) = scale;
    return LinearClass(std::move(presentation), std::move(c));
}

bool LinearClass::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return sgn(r) == 0; });
}

LinearClass& LinearClass::operator+=(const LinearClass& other)
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += other.coeffs_.at(i);
    return *this;
}

LinearClass& LinearClass::operator-=(const LinearClass& other)
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= other.coeffs_.at(i);
    return *this;
}

LinearClass& LinearClass::operator*=(const Rational& s)
{
    for (auto& c : coeffs_)
        c *= s;
    return *this;
}

LinearClass LinearClass::operator-() const
{
    LinearClass out(*this);
    out *= -1;
    return out;
}

CohElement LinearClass::to_element(std::size_t order) const
{
    CohElement e(pres_, order);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0)
            e += CohElement::generator(pres_, i, order) * coeffs_[i];
    return e;
}

std::string LinearClass::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto& c = coeffs_[i];
        if (sgn(c) == 0)
            continue;
        const auto& name = pres_->generators()[i].name;
        if (!out.empty())
            out += sgn(c) > 0 ? " + " : " - ";
        else if (sgn(c) < 0)
            out += "-";
        const Rational mag = abs(c);
        if (mag != 1)
            out += ellgen::to_string(mag) + "*";
        out += name;
    }
    return out.empty() ? "0" : out;
}

// --- Manifold ---------------------------------------------------------------

void Manifold::validate() const
{
    if (dimension() % 4 != 0)
        throw InputError("manifold '" + name + "' has dimension " + std::to_string(dimension()) +
                         ", not divisible by 4");
    for (const auto& root : tangent_roots)
        if (!(*root.presentation() == *presentation))
            throw InputError("tangent root of '" + name + "' lives in another presentation");
}

HalfQSeries integrate(const CohElement& a)
{
    const auto& pres = *a.presentation();
    HalfQSeries total(a.order());
    for (const auto& [m, c] : a.terms())
        if (pres.degree(m) == pres.top_degree()) {
            const Rational w = pres.integral(m);
            if (sgn(w) != 0)
                total += c * w;
        }
    return total;
}

HalfQSeries integrate(const CohElement& a, const Manifold& m)
{
    if (!(*a.presentation() == *m.presentation))
        throw PresentationMismatch();
    return integrate(a);
}

Manifold projective_space(int n)
{
    if (n < 2 || n % 2 != 0)
        throw InputError("CP^n needs even n >= 2 so that the dimension is divisible by 4");
    auto pres = std::make_shared<const RingPresentation>(std::vector<Generator>{{"x", 2}}, 2 * n,
                                                         std::vector<Monomial>{{n + 1}},
                                                         std::vector<std::pair<Monomial, Rational>>{{{n}, 1}});
    Manifold m{"CP" + std::to_string(n), pres, {}};
    for (int i = 0; i <= n; ++i)
        m.tangent_roots.push_back(LinearClass::generator(pres, 0));
    return m;
}

Manifold free_manifold(std::string name, std::vector<Generator> generators, int top_degree)
{
    auto pres = std::make_shared<const RingPresentation>(std::move(generators), top_degree);
    return Manifold{std::move(name), pres, {}};
}

Manifold power_sum_ring()
{
    std::vector<Generator> gens{{"s2T", 4}, {"s4T", 8}, {"s6T", 12}};
    for (int k = 1; k <= 6; ++k)
        gens.push_back({"s" + std::to_string(k) + "E", 2 * k});
    return free_manifold("free", std::move(gens), 12);
}

Manifold builtin_manifold(std::string_view name)
{
    if (name == "free")
        return power_sum_ring();
    if (name.size() > 2 && (name.substr(0, 2) == "CP" || name.substr(0, 2) == "cp")) {
        int n = 0;
        auto digits = name.substr(2);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && n >= 2 && n % 2 == 0)
            return projective_space(n);
    }
    throw UnknownManifold(std::string(name));
}

std::string to_string(const CohElement& a)
{
    if (a.is_zero())
        return "0";
    std::string out;
    const auto& pres = *a.presentation();
    for (const auto& [m, c] : a.terms()) {
        if (!out.empty())
            out += " + ";
        std::string coeff;
        std::size_t nonzero = 0;
        for (std::size_t k = 0; k <= c.order(); ++k)
            if (sgn(c[k]) != 0)
                ++nonzero;
        if (nonzero == 1 && sgn(c[0]) != 0) {
            coeff = to_string(c[0]);
        } else {
            coeff = "(";
            bool first = true;
            for (std::size_t k = 0; k <= c.order(); ++k) {
                if (sgn(c[k]) == 0)
                    continue;
                if (!first)
                    coeff += " + ";
                first = false;
                coeff += to_string(c[k]);
                if (k > 0)
                    coeff += "*" + q_power_label(k);
            }
            coeff += ")";
        }
        out += coeff;
        if (pres.degree(m) > 0)
            out += "*" + pres.monomial_string(m);
    }
    return out;
}

} // namespace ellgen
