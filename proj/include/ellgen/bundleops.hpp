#pragma once

#include "ellgen/cohring.hpp"
#include "ellgen/theta.hpp"

#include <map>
#include <string>
#include <vector>

namespace ellgen {

/// A projective bundle at the level of characters: Chern roots y_j and a
/// rational degree-2 twist b. b = 0 is an honest bundle.
struct ProjBundle {
    std::vector<LinearClass> roots;
    LinearClass twist_b;

    ProjBundle(std::vector<LinearClass> roots, LinearClass twist_b);
    /// Rank-l bundle with all roots zero and no twist.
    static ProjBundle trivial(PresentationPtr presentation, std::size_t rank);

    std::size_t rank() const noexcept { return roots.size(); }
    const PresentationPtr& presentation() const noexcept { return twist_b.presentation(); }
    /// w_j = y_j + b.
    std::vector<LinearClass> shifted_roots() const;
    /// Sum of (y_j + b)^2 as a degree-4 element.
    CohElement p1(std::size_t order = 0) const;
    /// Direct sum: roots concatenated; the twists must agree.
    ProjBundle direct_sum(const ProjBundle& other) const;
    std::string describe() const;
};

using Character = CohElement;

/// exp(weight * b) * sum_j exp(y_j). weight 1 gives the twisted Chern character
/// of E itself, sum_j exp(y_j + b).
Character ch(const ProjBundle& e, std::size_t order, int weight = 1);

/// Which q-levels a Witten-bundle factor runs over.
enum class Levels { Integral, HalfIntegral };

/// log of the character of the tensor product over levels t of
/// Lambda_{sign t}(V), V the bundle with the given exponential roots:
/// sum_t sum_{k>=1} (-1)^{k+1} sign^k t^k / k * sum_roots e^{k root}.
/// Integral levels are q^1, q^2, ...; half-integral q^{1/2}, q^{3/2}, ...
CohElement log_lambda_sum(const std::vector<LinearClass>& roots, int sign, Levels levels, std::size_t order,
                          const PresentationPtr& presentation);

/// Character of Theta(E), Theta1(E), Theta2(E) or Theta3(E), the tensor
/// product over E and its conjugate (roots -(y_j + b)).
Character witten_bundle_ch(ThetaKind kind, const ProjBundle& e, std::size_t order);

/// W: (Lambda^ev - Lambda^odd)E (x) Theta(E); A: (Lambda^ev + Lambda^odd)E (x) Theta1(E);
/// B: Theta2(E); C: Theta3(E).
enum class GradedKind { W, A, B, C };

std::string_view to_string(GradedKind kind);

inline constexpr std::size_t kMaxDecomposeRank = 6;
inline constexpr std::size_t kMaxDecomposeOrder = 24;

/// The determinant-weight decomposition. by_weight[m] holds, as one
/// u-series-valued element, sum_n Ch_{mH}(X_{m,n}) q^{n or n/2}, with the
/// twist factor exp(m b) applied.
struct GradedTable {
    GradedKind kind;
    std::size_t order = 0;
    PresentationPtr presentation;
    std::map<int, CohElement> by_weight;

    /// u-power carrying level n: u^{2n} for W/A, u^n for B/C.
    std::size_t u_power(std::size_t n) const;
    /// Number of levels n tracked at this u-order.
    std::size_t levels() const;
    /// Ch_{mH}(X_{m,n}) as an order-0 element (zero if absent).
    CohElement entry(int m, std::size_t n) const;
    /// Weights m with a nonzero entry at level n.
    std::vector<int> weights_at(std::size_t n) const;
};

/// Throws GuardExceeded beyond rank 6 or u-order 24.
GradedTable graded_decompose(GradedKind kind, const ProjBundle& e, std::size_t order);

/// Sum over m of the table, i.e. the graded twisted Chern character.
Character gch(GradedKind kind, const ProjBundle& e, std::size_t order);
Character gch(const GradedTable& table);
/// The same quantity from shifted roots directly (no tracking weight).
Character gch_closed_form(GradedKind kind, const ProjBundle& e, std::size_t order);

/// sqrt(Ch_{-lH}(det Ebar)) = exp(-1/2 sum_j (y_j + b)).
Character det_sqrt_ch(const ProjBundle& e, std::size_t order);

/// Characters of the Adams operations psi^k E, k = 1..max_k: sum_j e^{k w_j}.
std::vector<Character> adams_power_sums(const std::vector<LinearClass>& roots, std::size_t max_k, std::size_t order);

using Partition = std::vector<int>;

/// All partitions of n, largest part first, with at most max_rows rows and
/// parts at most max_part.
std::vector<Partition> partitions(int n, int max_rows, int max_part);
Partition conjugate(const Partition& lambda);

/// Schur polynomial s_lambda on the exponential roots, from power sums
/// p_1..p_|lambda| through Newton (to h_k) and the Jacobi-Trudi determinant.
/// Throws PartitionTooTall if lambda has more rows than rank.
Character schur_character(const Partition& lambda, const std::vector<Character>& power_sums, std::size_t rank);

inline constexpr std::size_t kMaxSchurRank = 4;

/// ch Lambda^n(U (x) V) == sum over lambda of s_lambda(U) s_lambda'(V) with
/// independent generic roots, in a relation-free ring truncated at
/// top_degree. Throws GuardExceeded for ranks above 4.
bool tensor_exterior_identity_check(std::size_t rank_u, std::size_t rank_v, int n, int top_degree = 6);

} // namespace ellgen
