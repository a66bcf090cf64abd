#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace trendsym {

// Empirical distribution function of a sample.
//   F_n(x)  = #{values <= x} / n
//   F_n(x-) = #{values <  x} / n
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> values);

    double operator()(double x) const;
    double left_limit(double x) const;
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& sorted_values() const { return values_; }

private:
    std::vector<double> values_;  // ascending
};

struct TnValue {
    double statistic = 0.0;         // >= 0, finite
    std::size_t n_effective = 0;    // sample size after dropping exact zeros
    std::size_t zeros_dropped = 0;
};

// Empirical-likelihood statistic of Einmahl & McKeague for symmetry about
// zero. Small values support symmetry; the statistic is exactly zero for a
// mirror-symmetric sample. Exact zeros carry no sign information and are
// dropped (and counted) before evaluation.
//
// Deterministic, permutation-invariant (terms are accumulated in ascending
// |x| order with compensated summation), scale- and mirror-invariant.
//
// Throws AllZerosError / InsufficientDataError when fewer than two nonzero
// values remain, std::invalid_argument on non-finite input.
TnValue tn(std::span<const double> sample);

// tn of the sample shifted by candidate symmetry point c; bit-identical to
// calling tn on the explicitly shifted sample.
TnValue tn_shifted(std::span<const double> sample, double c);

// Evaluates Tn(c) repeatedly over one sample. Sorts once; each evaluation
// costs O(n log n) without re-sorting (shifting preserves order).
class ShiftedTnEvaluator {
public:
    explicit ShiftedTnEvaluator(std::span<const double> sample);

    TnValue at(double c) const;
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted_sample() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

}  // namespace trendsym
