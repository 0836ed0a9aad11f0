#pragma once

// Inner loops shared by the series and cohomology-ring arithmetic. Each kernel
// has a serial reference and an OpenMP version; the dispatching entry points
// pick the parallel path above a size threshold. Tests assert the two paths
// agree bit for bit (exact arithmetic, so "agree" means equal).

#include "ellgen/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ellgen::kernels {

/// Below this many output coefficients the parallel path is not worth the
/// thread start-up.
inline constexpr std::size_t kParallelCauchyThreshold = 48;

/// c[k] = sum_{i<=k} a[i] b[k-i] for k < n. Requires a.size(), b.size() >= n.
std::vector<Rational> cauchy_product_serial(std::span<const Rational> a, std::span<const Rational> b, std::size_t n);
std::vector<Rational> cauchy_product_parallel(std::span<const Rational> a, std::span<const Rational> b, std::size_t n);
std::vector<Rational> cauchy_product(std::span<const Rational> a, std::span<const Rational> b, std::size_t n);

/// One pairwise product job of the ring multiplication: the product of two
/// coefficient series lands on output slot `target`.
struct PairJob {
    std::size_t left;
    std::size_t right;
    std::size_t target;
};

/// Accumulates sum over jobs of cauchy(left_coeffs[job.left], right_coeffs[job.right])
/// into slot job.target of a vector with `targets` entries, each of length n.
using SeriesBlock = std::vector<std::vector<Rational>>;

SeriesBlock pair_products_serial(const SeriesBlock& left, const SeriesBlock& right, std::span<const PairJob> jobs,
                                 std::size_t targets, std::size_t n);
SeriesBlock pair_products_parallel(const SeriesBlock& left, const SeriesBlock& right, std::span<const PairJob> jobs,
                                   std::size_t targets, std::size_t n);
SeriesBlock pair_products(const SeriesBlock& left, const SeriesBlock& right, std::span<const PairJob> jobs,
                          std::size_t targets, std::size_t n);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

} // namespace ellgen::kernels
