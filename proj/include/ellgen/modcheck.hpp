#pragma once

#include "ellgen/genera.hpp"
#include "ellgen/theta.hpp"
#include "ellgen/qseries.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace ellgen {

using Complex = std::complex<double>;

/// Integer 2x2 matrix of determinant 1 acting by Mobius transformations.
struct SL2Matrix {
    long a = 1, b = 0, c = 0, d = 1;

    SL2Matrix() = default;
    /// Throws InputError unless ad - bc = 1.
    SL2Matrix(long a, long b, long c, long d);

    static SL2Matrix S() { return {0, -1, 1, 0}; }
    static SL2Matrix T(long n = 1) { return {1, n, 0, 1}; }

    Complex apply(Complex tau) const;
    /// (c tau + d)^weight.
    Complex automorphy(Complex tau, int weight) const;
    std::string to_string() const;

    friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y);
    friend bool operator==(const SL2Matrix&, const SL2Matrix&) = default;
};

/// Generator list of a congruence group (empty for Group::None).
std::vector<SL2Matrix> group_generators(Group group);

inline const std::vector<Complex> kDefaultSamples{{0.0, 1.1}, {0.3, 1.2}};

/// tau_plus_one(f) == expected.
bool check_T_exact(const HalfQSeries& f, const HalfQSeries& expected);
/// tau_plus_one(f) == f.
bool check_T_exact(const HalfQSeries& f);

/// f(tau) q^c with q^c = exp(2 pi i c tau); throws TailTooLarge if the
/// truncation tail exceeds tail_limit.
Complex evaluate_series(const HalfQSeries& f, Complex tau, const Rational& q_power = 0, double tail_limit = 1e-9);

struct SampleRatio {
    Complex tau;
    Complex ratio;
};

struct NumericReport {
    bool passed = false;
    /// Common ratio f(g tau) / ((c tau + d)^w f(tau)), the measured character.
    Complex chi;
    double dispersion = 0.0;
    double modulus_error = 0.0;
    std::vector<SampleRatio> samples;
    std::string detail;
};

/// Ratios at each sample must agree within tol and have modulus 1 within tol.
/// An identically zero series passes trivially.
NumericReport check_numeric(const HalfQSeries& f, const SL2Matrix& g, int weight,
                            const std::vector<Complex>& samples = kDefaultSamples, double tol = 1e-8,
                            const Rational& q_power = 0);

struct GroupReport {
    bool passed = true;
    std::vector<std::pair<SL2Matrix, NumericReport>> generators;
};

GroupReport check_group(const HalfQSeries& f, Group group, int weight,
                        const std::vector<Complex>& samples = kDefaultSamples, double tol = 1e-8,
                        const Rational& q_power = 0);

/// S applied twice (the matrix -I) leaves f unchanged up to (-1)^weight.
NumericReport check_s_squared(const HalfQSeries& f, int weight, const std::vector<Complex>& samples = kDefaultSamples,
                              double tol = 1e-8);

/// |f(-1/tau) - tau^weight g(tau)| at each sample, with both sides carrying
/// the optional q^c prefactor at their own argument.
struct RelationReport {
    bool passed = false;
    double max_residual = 0.0;
    /// f(-1/tau) / (tau^weight g(tau)) per sample.
    std::vector<SampleRatio> ratios;
};

RelationReport check_s_relation(const HalfQSeries& f, const HalfQSeries& g, int weight,
                                const std::vector<Complex>& samples = kDefaultSamples, double tol = 1e-8,
                                const Rational& q_power = 0);

/// Scans c in (1/24)Z within [-1, 1] and returns the exponent minimizing the
/// spread of the S-relation ratios across samples.
struct QPowerFit {
    Rational exponent;
    double spread = 0.0;
};

QPowerFit best_q_power(const HalfQSeries& f, const HalfQSeries& g, int weight,
                       const std::vector<Complex>& samples = kDefaultSamples);

struct ThetaLawResult {
    std::string name;
    double max_residual = 0.0;
    bool passed = false;
};

/// The eight tau+1 and -1/tau laws at three (v, tau) samples.
std::vector<ThetaLawResult> check_theta_laws(double tol = 1e-8, int terms = kDefaultThetaTerms);

/// -(1/8 pi^2)(theta1''(0)/theta1(0) - theta'''(0)/theta'(0)) at real q in (0, 1).
double pell1_cp2_closed_form(double q, int terms = kDefaultThetaTerms);

/// Given F(q) = a0 + a1 q + a2 q^2 + ... with a0 known, eliminates a2 from
/// two samples: a1 ~ (q2 c(q1) - q1 c(q2)) / (q2 - q1), c(q) = (F(q) - a0)/q.
double richardson_q1(const std::function<double(double)>& f, double a0, double q1, double q2);

} // namespace ellgen
