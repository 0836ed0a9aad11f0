#include "ellgen/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ellgen::kernels {

namespace {

void cauchy_term(std::span<const Rational> a, std::span<const Rational> b, std::size_t k, Rational& out)
{
    Rational acc;
    for (std::size_t i = 0; i <= k; ++i) {
        if (sgn(a[i]) == 0 || sgn(b[k - i]) == 0)
            continue;
        acc += a[i] * b[k - i];
    }
    out = std::move(acc);
}

bool all_zero(const std::vector<Rational>& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
}

} // namespace

std::vector<Rational> cauchy_product_serial(std::span<const Rational> a, std::span<const Rational> b, std::size_t n)
{
    std::vector<Rational> c(n);
    for (std::size_t k = 0; k < n; ++k)
        cauchy_term(a, b, k, c[k]);
    return c;
}

std::vector<Rational> cauchy_product_parallel(std::span<const Rational> a, std::span<const Rational> b, std::size_t n)
{
    std::vector<Rational> c(n);
    const auto count = static_cast<long>(n);
    // Later coefficients cost more; dynamic scheduling evens that out.
#pragma omp parallel for schedule(dynamic, 4)
    for (long k = 0; k < count; ++k)
        cauchy_term(a, b, static_cast<std::size_t>(k), c[static_cast<std::size_t>(k)]);
    return c;
}

std::vector<Rational> cauchy_product(std::span<const Rational> a, std::span<const Rational> b, std::size_t n)
{
    if (n >= kParallelCauchyThreshold && max_threads() > 1)
        return cauchy_product_parallel(a, b, n);
    return cauchy_product_serial(a, b, n);
}

SeriesBlock pair_products_serial(const SeriesBlock& left, const SeriesBlock& right, std::span<const PairJob> jobs,
                                 std::size_t targets, std::size_t n)
{
    SeriesBlock out(targets, std::vector<Rational>(n));
    for (const auto& job : jobs) {
        auto prod = cauchy_product_serial(left[job.left], right[job.right], n);
        auto& dst = out[job.target];
        for (std::size_t k = 0; k < n; ++k)
            dst[k] += prod[k];
    }
    return out;
}

SeriesBlock pair_products_parallel(const SeriesBlock& left, const SeriesBlock& right, std::span<const PairJob> jobs,
                                   std::size_t targets, std::size_t n)
{
    // Products are independent; only the accumulation into shared targets
    // needs ordering, so compute first and reduce serially.
    std::vector<std::vector<Rational>> products(jobs.size());
    const auto count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long j = 0; j < count; ++j) {
        const auto& job = jobs[static_cast<std::size_t>(j)];
        products[static_cast<std::size_t>(j)] = cauchy_product_serial(left[job.left], right[job.right], n);
    }

    SeriesBlock out(targets, std::vector<Rational>(n));
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (all_zero(products[j]))
            continue;
        auto& dst = out[jobs[j].target];
        for (std::size_t k = 0; k < n; ++k)
            dst[k] += products[j][k];
    }
    return out;
}

SeriesBlock pair_products(const SeriesBlock& left, const SeriesBlock& right, std::span<const PairJob> jobs,
                          std::size_t targets, std::size_t n)
{
    if (jobs.size() * n >= 4096 && max_threads() > 1)
        return pair_products_parallel(left, right, jobs, targets, n);
    return pair_products_serial(left, right, jobs, targets, n);
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace ellgen::kernels
