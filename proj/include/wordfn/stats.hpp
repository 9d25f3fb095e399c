#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "errors.hpp"
#include "numeric.hpp"

namespace wordfn {

struct ChiSquareResult {
    double statistic = 0;
    int dof = 0;
    double pValue = 1;
    int cells = 0;  // after merging
};

/// Pearson goodness of fit of observed counts against exact probabilities.
/// Cells are taken in increasing value order and adjacent cells are merged
/// until each expected count is at least `minExpected`.
inline ChiSquareResult chi_square_gof(const std::map<std::int64_t, std::uint64_t>& observed,
                                      const std::map<std::int64_t, Rational>& probability, double minExpected = 5.0) {
    std::uint64_t total = 0;
    for (auto& [v, c] : observed) {
        total += c;
        if (!probability.count(v)) throw InputError("observed value " + std::to_string(v) + " has probability zero");
    }
    if (total == 0) throw InputError("no observations");
    std::vector<std::pair<double, double>> cells;  // (observed, expected)
    double obs = 0, exp = 0;
    for (auto& [v, p] : probability) {
        auto it = observed.find(v);
        obs += it == observed.end() ? 0.0 : static_cast<double>(it->second);
        exp += from_rational<double>(p) * static_cast<double>(total);
        if (exp >= minExpected) {
            cells.emplace_back(obs, exp);
            obs = exp = 0;
        }
    }
    if (exp > 0 || obs > 0) {
        if (cells.empty()) cells.emplace_back(obs, exp);
        else {
            cells.back().first += obs;
            cells.back().second += exp;
        }
    }
    ChiSquareResult r;
    r.cells = static_cast<int>(cells.size());
    for (auto& [o, e] : cells) r.statistic += (o - e) * (o - e) / e;
    r.dof = r.cells - 1;
    if (r.dof < 1) {
        r.pValue = 1.0;
        return r;
    }
    boost::math::chi_squared dist(r.dof);
    r.pValue = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

struct SampleMoments {
    double mean = 0, variance = 0, skewness = 0, kurtosis = 0;  // kurtosis is not excess
};

inline SampleMoments sample_moments(const std::vector<double>& x) {
    if (x.size() < 2) throw InputError("need at least two samples");
    const double n = static_cast<double>(x.size());
    SampleMoments m;
    for (double v : x) m.mean += v;
    m.mean /= n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        const double d = v - m.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    m.variance = m2 * n / (n - 1);
    m.skewness = m3 / std::pow(m2, 1.5);
    m.kurtosis = m4 / (m2 * m2);
    return m;
}

} // namespace wordfn
