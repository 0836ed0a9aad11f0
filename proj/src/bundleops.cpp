#include "ellgen/bundleops.hpp"

#include "ellgen/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace ellgen {

// --- ProjBundle -------------------------------------------------------------

ProjBundle::ProjBundle(std::vector<LinearClass> roots_, LinearClass twist)
    : roots(std::move(roots_)), twist_b(std::move(twist))
{
    for (const auto& r : roots)
        if (!(*r.presentation() == *twist_b.presentation()))
            throw InputError("bundle roots and twist live in different presentations");
}

ProjBundle ProjBundle::trivial(PresentationPtr presentation, std::size_t rank)
{
    std::vector<LinearClass> roots(rank, LinearClass(presentation));
    return ProjBundle(std::move(roots), LinearClass(presentation));
}

std::vector<LinearClass> ProjBundle::shifted_roots() const
{
    std::vector<LinearClass> out;
    out.reserve(roots.size());
    for (const auto& y : roots)
        out.push_back(y + twist_b);
    return out;
}

CohElement ProjBundle::p1(std::size_t order) const
{
    CohElement out(presentation(), order);
    for (const auto& w : shifted_roots()) {
        const auto e = w.to_element(order);
        out += e * e;
    }
    return out;
}

ProjBundle ProjBundle::direct_sum(const ProjBundle& other) const
{
    if (!(twist_b == other.twist_b))
        throw InputError("direct sum needs equal twists");
    auto r = roots;
    r.insert(r.end(), other.roots.begin(), other.roots.end());
    return ProjBundle(std::move(r), twist_b);
}

std::string ProjBundle::describe() const
{
    std::string s = "rank " + std::to_string(rank()) + ", roots [";
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (i > 0)
            s += ", ";
        s += roots[i].to_string();
    }
    return s + "], b = " + twist_b.to_string();
}

// --- characters -------------------------------------------------------------

namespace {

CohElement sum_elements(const std::vector<LinearClass>& classes, std::size_t order, const PresentationPtr& pres)
{
    CohElement s(pres, order);
    for (const auto& c : classes)
        s += c.to_element(order);
    return s;
}

int level_sign(ThetaKind kind)
{
    return kind == ThetaKind::Theta || kind == ThetaKind::Theta2 ? -1 : 1;
}

Levels level_kind(ThetaKind kind)
{
    return kind == ThetaKind::Theta2 || kind == ThetaKind::Theta3 ? Levels::HalfIntegral : Levels::Integral;
}

std::vector<std::size_t> level_powers(Levels levels, std::size_t order)
{
    std::vector<std::size_t> out;
    for (std::size_t j = 1;; ++j) {
        const std::size_t p = levels == Levels::HalfIntegral ? 2 * j - 1 : 2 * j;
        if (p > order)
            break;
        out.push_back(p);
    }
    return out;
}

} // namespace

Character ch(const ProjBundle& e, std::size_t order, int weight)
{
    const auto& pres = e.presentation();
    CohElement s(pres, order);
    for (const auto& y : e.roots)
        s += exp_nilpotent(y.to_element(order));
    if (weight != 0 && !e.twist_b.is_zero())
        s *= exp_nilpotent(e.twist_b.to_element(order) * Rational(weight));
    return s;
}

CohElement log_lambda_sum(const std::vector<LinearClass>& roots, int sign, Levels levels, std::size_t order,
                          const PresentationPtr& presentation)
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("log_lambda_sum: sign must be +1 or -1");
    CohElement result(presentation, order);
    if (roots.empty())
        return result;
    const auto powers = level_powers(levels, order);
    if (powers.empty())
        return result;

    std::vector<CohElement> exp_roots;
    for (const auto& r : roots)
        exp_roots.push_back(exp_nilpotent(r.to_element(order)));
    std::vector<CohElement> exp_k = exp_roots;

    for (std::size_t k = 1; powers.front() * k <= order; ++k) {
        if (k > 1)
            for (std::size_t i = 0; i < exp_k.size(); ++i)
                exp_k[i] *= exp_roots[i];
        // (-1)^{k+1} sign^k / k
        Rational c(1, static_cast<long>(k));
        if (k % 2 == 0)
            c = -c;
        if (sign < 0 && k % 2 == 1)
            c = -c;
        HalfQSeries t(order);
        for (std::size_t p : powers)
            if (p * k <= order)
                t += HalfQSeries::monomial(p * k, c, order);
        CohElement power_sum(presentation, order);
        for (const auto& e : exp_k)
            power_sum += e;
        result += power_sum * t;
    }
    return result;
}

Character witten_bundle_ch(ThetaKind kind, const ProjBundle& e, std::size_t order)
{
    auto roots = e.shifted_roots();
    const std::size_t l = roots.size();
    for (std::size_t i = 0; i < l; ++i)
        roots.push_back(-roots[i]);
    return exp_nilpotent(log_lambda_sum(roots, level_sign(kind), level_kind(kind), order, e.presentation()));
}

// --- graded decomposition ---------------------------------------------------

std::string_view to_string(GradedKind kind)
{
    switch (kind) {
    case GradedKind::W: return "W";
    case GradedKind::A: return "A";
    case GradedKind::B: return "B";
    case GradedKind::C: return "C";
    }
    return "?";
}

std::size_t GradedTable::u_power(std::size_t n) const
{
    return kind == GradedKind::W || kind == GradedKind::A ? 2 * n : n;
}

std::size_t GradedTable::levels() const
{
    return kind == GradedKind::W || kind == GradedKind::A ? order / 2 + 1 : order + 1;
}

CohElement GradedTable::entry(int m, std::size_t n) const
{
    auto it = by_weight.find(m);
    if (it == by_weight.end())
        return CohElement(presentation, 0);
    return it->second.u_coefficient(u_power(n));
}

std::vector<int> GradedTable::weights_at(std::size_t n) const
{
    std::vector<int> out;
    for (const auto& [m, e] : by_weight)
        if (!e.u_coefficient(u_power(n)).is_zero())
            out.push_back(m);
    return out;
}

namespace {

using WeightPoly = std::map<int, CohElement>;

// p *= (1 + c w^shift)
void multiply_binomial(WeightPoly& p, const CohElement& c, int shift)
{
    WeightPoly next = p;
    for (const auto& [m, x] : p) {
        CohElement term = x * c;
        if (term.is_zero())
            continue;
        auto [it, inserted] = next.try_emplace(m + shift, term);
        if (!inserted)
            it->second += term;
    }
    for (auto it = next.begin(); it != next.end();) {
        if (it->second.is_zero())
            it = next.erase(it);
        else
            ++it;
    }
    p = std::move(next);
}

ThetaKind theta_of(GradedKind kind)
{
    switch (kind) {
    case GradedKind::W: return ThetaKind::Theta;
    case GradedKind::A: return ThetaKind::Theta1;
    case GradedKind::B: return ThetaKind::Theta2;
    case GradedKind::C: return ThetaKind::Theta3;
    }
    return ThetaKind::Theta;
}

} // namespace

GradedTable graded_decompose(GradedKind kind, const ProjBundle& e, std::size_t order)
{
    if (e.rank() > kMaxDecomposeRank)
        throw GuardExceeded("decompose.rank", "rank " + std::to_string(e.rank()) + " > " +
                                                  std::to_string(kMaxDecomposeRank));
    if (order > kMaxDecomposeOrder)
        throw GuardExceeded("decompose.order", "u-order " + std::to_string(order) + " > " +
                                                   std::to_string(kMaxDecomposeOrder));
    const auto& pres = e.presentation();
    const ThetaKind theta = theta_of(kind);
    const int s = level_sign(theta);
    const auto powers = level_powers(level_kind(theta), order);

    WeightPoly poly;
    poly.emplace(0, CohElement::constant(pres, 1, order));
    for (const auto& y : e.roots) {
        const CohElement ey = exp_nilpotent(y.to_element(order));
        const CohElement ey_inv = exp_nilpotent(-y.to_element(order));
        if (kind == GradedKind::W)
            multiply_binomial(poly, -ey, 1);
        else if (kind == GradedKind::A)
            multiply_binomial(poly, ey, 1);
        for (std::size_t p : powers) {
            const HalfQSeries t = HalfQSeries::monomial(p, s, order);
            multiply_binomial(poly, ey * t, 1);
            multiply_binomial(poly, ey_inv * t, -1);
        }
    }

    GradedTable table{kind, order, pres, {}};
    const CohElement b = e.twist_b.to_element(order);
    for (auto& [m, x] : poly) {
        if (m != 0 && !e.twist_b.is_zero())
            x *= exp_nilpotent(b * Rational(m));
        table.by_weight.emplace(m, std::move(x));
    }
    return table;
}

Character gch(const GradedTable& table)
{
    CohElement s(table.presentation, table.order);
    for (const auto& [m, x] : table.by_weight)
        s += x;
    return s;
}

Character gch(GradedKind kind, const ProjBundle& e, std::size_t order)
{
    return gch(graded_decompose(kind, e, order));
}

Character gch_closed_form(GradedKind kind, const ProjBundle& e, std::size_t order)
{
    Character result = witten_bundle_ch(theta_of(kind), e, order);
    if (kind == GradedKind::W || kind == GradedKind::A) {
        const auto& pres = e.presentation();
        const Rational sign = kind == GradedKind::W ? -1 : 1;
        for (const auto& w : e.shifted_roots())
            result *= CohElement::constant(pres, 1, order) + exp_nilpotent(w.to_element(order)) * sign;
    }
    return result;
}

Character det_sqrt_ch(const ProjBundle& e, std::size_t order)
{
    return exp_nilpotent(sum_elements(e.shifted_roots(), order, e.presentation()) * Rational(-1, 2));
}

std::vector<Character> adams_power_sums(const std::vector<LinearClass>& roots, std::size_t max_k, std::size_t order)
{
    if (roots.empty())
        throw std::invalid_argument("adams_power_sums: empty root list");
    const auto& pres = roots.front().presentation();
    std::vector<Character> out;
    std::vector<CohElement> base;
    for (const auto& r : roots)
        base.push_back(exp_nilpotent(r.to_element(order)));
    std::vector<CohElement> cur = base;
    for (std::size_t k = 1; k <= max_k; ++k) {
        if (k > 1)
            for (std::size_t i = 0; i < cur.size(); ++i)
                cur[i] *= base[i];
        CohElement s(pres, order);
        for (const auto& c : cur)
            s += c;
        out.push_back(std::move(s));
    }
    return out;
}

// --- Schur functors ---------------------------------------------------------

namespace {

void partitions_rec(int remaining, int max_part, int rows_left, Partition& cur, std::vector<Partition>& out)
{
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    if (rows_left == 0)
        return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions_rec(remaining - part, part, rows_left - 1, cur, out);
        cur.pop_back();
    }
}

CohElement determinant(const std::vector<std::vector<CohElement>>& m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    CohElement det(m[0][0].presentation(), m[0][0].order());
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero())
            continue;
        std::vector<std::vector<CohElement>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<CohElement> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col)
                    row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        CohElement term = m[0][col] * determinant(minor);
        if (col % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

} // namespace

std::vector<Partition> partitions(int n, int max_rows, int max_part)
{
    std::vector<Partition> out;
    if (n < 0)
        return out;
    Partition cur;
    partitions_rec(n, max_part, max_rows, cur, out);
    return out;
}

Partition conjugate(const Partition& lambda)
{
    Partition c;
    if (lambda.empty())
        return c;
    for (int i = 1; i <= lambda.front(); ++i) {
        int count = 0;
        for (int p : lambda)
            if (p >= i)
                ++count;
        c.push_back(count);
    }
    return c;
}

Character schur_character(const Partition& lambda, const std::vector<Character>& power_sums, std::size_t rank)
{
    if (power_sums.empty())
        throw std::invalid_argument("schur_character: no power sums supplied");
    if (lambda.size() > rank)
        throw PartitionTooTall(lambda.size(), rank);
    const auto& pres = power_sums.front().presentation();
    const std::size_t order = power_sums.front().order();
    int size = 0;
    for (int p : lambda) {
        if (p <= 0)
            throw InputError("partition parts must be positive");
        size += p;
    }
    if (!std::is_sorted(lambda.begin(), lambda.end(), std::greater<>{}))
        throw InputError("partition parts must be non-increasing");
    if (lambda.empty())
        return CohElement::constant(pres, 1, order);
    if (power_sums.size() < static_cast<std::size_t>(size))
        throw std::invalid_argument("schur_character: need power sums up to |lambda|");

    // Newton: k h_k = sum_{i=1}^k p_i h_{k-i}
    std::vector<CohElement> h{CohElement::constant(pres, 1, order)};
    for (int k = 1; k <= size; ++k) {
        CohElement acc(pres, order);
        for (int i = 1; i <= k; ++i)
            acc += power_sums[static_cast<std::size_t>(i - 1)] * h[static_cast<std::size_t>(k - i)];
        h.push_back(acc * Rational(1, k));
    }

    const std::size_t n = lambda.size();
    std::vector<std::vector<CohElement>> jt(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int idx = lambda[i] - static_cast<int>(i) + static_cast<int>(j);
            jt[i].push_back(idx < 0 ? CohElement(pres, order) : h[static_cast<std::size_t>(idx)]);
        }
    return determinant(jt);
}

bool tensor_exterior_identity_check(std::size_t rank_u, std::size_t rank_v, int n, int top_degree)
{
    if (rank_u == 0 || rank_v == 0 || rank_u > kMaxSchurRank || rank_v > kMaxSchurRank)
        throw GuardExceeded("schur.rank", "ranks must lie in 1.." + std::to_string(kMaxSchurRank));
    if (n < 0)
        throw InputError("exterior power degree must be non-negative");

    std::vector<Generator> gens;
    for (std::size_t i = 1; i <= rank_u; ++i)
        gens.push_back({"a" + std::to_string(i), 2});
    for (std::size_t j = 1; j <= rank_v; ++j)
        gens.push_back({"b" + std::to_string(j), 2});
    auto ring = free_manifold("generic", std::move(gens), top_degree);
    const auto& pres = ring.presentation;

    std::vector<LinearClass> u_roots;
    std::vector<LinearClass> v_roots;
    for (std::size_t i = 0; i < rank_u; ++i)
        u_roots.push_back(LinearClass::generator(pres, i));
    for (std::size_t j = 0; j < rank_v; ++j)
        v_roots.push_back(LinearClass::generator(pres, rank_u + j));

    const std::size_t kmax = static_cast<std::size_t>(std::max(n, 1));
    const auto pu = adams_power_sums(u_roots, kmax, 0);
    const auto pv = adams_power_sums(v_roots, kmax, 0);

    // e_n of the roots a_i + b_j by Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    std::vector<CohElement> e{CohElement::constant(pres, 1, 0)};
    for (int k = 1; k <= n; ++k) {
        CohElement acc(pres, 0);
        for (int i = 1; i <= k; ++i) {
            CohElement term = e[static_cast<std::size_t>(k - i)] * pu[static_cast<std::size_t>(i - 1)] *
                              pv[static_cast<std::size_t>(i - 1)];
            if (i % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        e.push_back(acc * Rational(1, k));
    }
    const CohElement& lhs = e[static_cast<std::size_t>(n)];

    CohElement rhs(pres, 0);
    for (const auto& lambda : partitions(n, static_cast<int>(rank_u), static_cast<int>(rank_v)))
        rhs += schur_character(lambda, pu, rank_u) * schur_character(conjugate(lambda), pv, rank_v);
    return lhs == rhs;
}

} // namespace ellgen
