#include "trendsym/tn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trendsym/errors.hpp"
#include "trendsym/numeric.hpp"

namespace trendsym {

EmpiricalCdf::EmpiricalCdf(std::vector<double> values)
    : values_(std::move(values)) {
    if (values_.empty())
        throw InsufficientDataError("empirical CDF of empty sample");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite sample value");
    std::sort(values_.begin(), values_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) /
           static_cast<double>(values_.size());
}

double EmpiricalCdf::left_limit(double x) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) /
           static_cast<double>(values_.size());
}

namespace {

// Core evaluation on an ascending sample. Zeros are dropped here so both the
// direct and the shifted paths share one code path bit for bit.
TnValue tn_from_sorted(std::span<const double> sorted) {
    const auto zero_lo = std::lower_bound(sorted.begin(), sorted.end(), 0.0);
    const auto zero_hi = std::upper_bound(sorted.begin(), sorted.end(), 0.0);
    const std::size_t zeros = static_cast<std::size_t>(zero_hi - zero_lo);

    TnValue out;
    out.zeros_dropped = zeros;
    out.n_effective = sorted.size() - zeros;
    if (out.n_effective == 0) throw AllZerosError("all sample values are zero");
    if (out.n_effective < 2)
        throw InsufficientDataError("fewer than 2 nonzero values");

    // Nonzero values, still ascending.
    std::vector<double> vals;
    vals.reserve(out.n_effective);
    vals.insert(vals.end(), sorted.begin(), zero_lo);
    vals.insert(vals.end(), zero_hi, sorted.end());

    const std::size_t neg = static_cast<std::size_t>(zero_lo - sorted.begin());
    const std::size_t n = vals.size();
    const double nd = static_cast<double>(n);

    // |values| in ascending order: merge the negative part (abs-descending
    // when read forward) with the positive part.
    std::vector<double> abs_sorted;
    abs_sorted.reserve(n);
    std::size_t li = neg;  // walks negative part backwards via li-1
    std::size_t ri = neg;  // walks positive part forwards
    while (li > 0 || ri < n) {
        if (li == 0) {
            abs_sorted.push_back(vals[ri++]);
        } else if (ri == n) {
            abs_sorted.push_back(-vals[--li]);
        } else if (-vals[li - 1] <= vals[ri]) {
            abs_sorted.push_back(-vals[--li]);
        } else {
            abs_sorted.push_back(vals[ri++]);
        }
    }

    // Tn = -2 * sum_i [ p log((p+q)/(2p)) + q log((p+q)/(2q)) ] with
    // p = F_n(-|x_i|), q = 1 - F_n(|x_i|-); 0*log(.) := 0 at the boundary.
    KahanSum acc;
    for (const double a : abs_sorted) {
        const auto le_it = std::upper_bound(vals.begin(), vals.end(), -a);
        const auto lt_it = std::lower_bound(vals.begin(), vals.end(), a);
        const double p =
            static_cast<double>(le_it - vals.begin()) / nd;  // F_n(-a)
        const double q =
            static_cast<double>(vals.end() - lt_it) / nd;  // 1 - F_n(a-)
        const double m = p + q;
        double term = 0.0;
        if (p > 0.0) term += p * std::log(m / (2.0 * p));
        if (q > 0.0) term += q * std::log(m / (2.0 * q));
        acc.add(term);
    }
    out.statistic = -2.0 * acc.value() + 0.0;  // +0.0 normalizes -0
    return out;
}

}  // namespace

TnValue tn(std::span<const double> sample) {
    std::vector<double> sorted(sample.begin(), sample.end());
    for (double v : sorted)
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite sample value");
    std::sort(sorted.begin(), sorted.end());
    return tn_from_sorted(sorted);
}

TnValue tn_shifted(std::span<const double> sample, double c) {
    return ShiftedTnEvaluator(sample).at(c);
}

ShiftedTnEvaluator::ShiftedTnEvaluator(std::span<const double> sample)
    : sorted_(sample.begin(), sample.end()) {
    for (double v : sorted_)
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite sample value");
    std::sort(sorted_.begin(), sorted_.end());
}

TnValue ShiftedTnEvaluator::at(double c) const {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite shift");
    // x - c is monotone in x, so the shifted copy of a sorted sample is
    // already sorted; this is what makes at(c) bit-identical to
    // tn(sample - c) while skipping the sort.
    std::vector<double> shifted(sorted_.size());
    for (std::size_t i = 0; i < sorted_.size(); ++i)
        shifted[i] = sorted_[i] - c;
    return tn_from_sorted(shifted);
}

}  // namespace trendsym
