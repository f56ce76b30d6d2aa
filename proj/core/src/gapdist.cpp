#include "opqsl/gapdist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace opqsl {
namespace {

double weighted_sum(const WeightedGapDistribution& g, auto&& f) {
    double acc = 0.0;
    for (const auto& e : g.entries()) acc += e.weight * f(e.delta);
    return acc;
}

double require_weight(const WeightedGapDistribution& g, const char* what) {
    const double total = g.total_weight();
    if (!(total > 0.0)) throw std::domain_error(std::string(what) + ": zero total weight");
    return total;
}

}  // namespace

WeightedGapDistribution::WeightedGapDistribution(std::vector<GapWeight> entries, bool normalized)
    : entries_(std::move(entries)), normalized_(normalized) {
    for (const auto& e : entries_) {
        if (!(e.weight >= 0.0) || !std::isfinite(e.delta)) {
            throw std::invalid_argument("WeightedGapDistribution: weights must be nonnegative, gaps finite");
        }
        total_ += e.weight;
    }
    if (normalized_ && std::abs(total_ - 1.0) > 1e-12) {
        throw std::invalid_argument("WeightedGapDistribution: normalized weights must sum to 1");
    }
}

WeightedGapDistribution overlap_distribution(const EnergyBasisOperator& op) {
    const auto& o = op.elements();
    const double norm2 = o.squaredNorm();
    if (norm2 == 0.0) throw std::invalid_argument("overlap_distribution: zero operator");
    const Eigen::Index d = op.dim();
    std::vector<GapWeight> entries;
    entries.reserve(static_cast<std::size_t>(d * d));
    double total = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const double w = std::norm(o(j, k)) / norm2;
            if (w == 0.0) continue;
            entries.push_back({op.gap(j, k), w});
            total += w;
        }
    }
    // Rescale away the last-ulp drift of the division.
    for (auto& e : entries) e.weight /= total;
    return WeightedGapDistribution(std::move(entries), true);
}

WeightedGapDistribution correlation_distribution(const EnergyBasisOperator& op,
                                                 const StationaryState& rho) {
    if (rho.dim() != op.dim()) throw std::invalid_argument("correlation_distribution: dimension mismatch");
    const auto& o = op.elements();
    const Eigen::Index d = op.dim();
    std::vector<GapWeight> entries;
    entries.reserve(static_cast<std::size_t>(d * d));
    for (Eigen::Index k = 0; k < d; ++k) {
        const double pk = rho[k];
        if (pk == 0.0) continue;
        for (Eigen::Index j = 0; j < d; ++j) {
            const double w = std::norm(o(j, k)) * pk;
            if (w == 0.0) continue;
            entries.push_back({-op.gap(j, k), w});
        }
    }
    return WeightedGapDistribution(std::move(entries), false);
}

WeightedGapDistribution compact(const WeightedGapDistribution& g, double merge_tol, double drop_rel) {
    std::vector<GapWeight> sorted = g.entries();
    std::sort(sorted.begin(), sorted.end(),
              [](const GapWeight& a, const GapWeight& b) { return a.delta < b.delta; });
    const double cutoff = drop_rel * g.total_weight();

    std::vector<GapWeight> merged;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double anchor = sorted[i].delta;
        double w = 0.0;
        double wd = 0.0;
        std::size_t j = i;
        for (; j < sorted.size() && sorted[j].delta - anchor <= merge_tol; ++j) {
            w += sorted[j].weight;
            wd += sorted[j].weight * sorted[j].delta;
        }
        if (w > cutoff && w > 0.0) merged.push_back({wd / w, w});
        i = j;
    }
    if (g.normalized()) {
        double total = 0.0;
        for (const auto& e : merged) total += e.weight;
        for (auto& e : merged) e.weight /= total;
    }
    return WeightedGapDistribution(std::move(merged), g.normalized());
}

Complex char_function(const WeightedGapDistribution& g, double t) {
    double re = 0.0;
    double im = 0.0;
    for (const auto& e : g.entries()) {
        const double x = e.delta * t;
        re += e.weight * std::cos(x);
        im += e.weight * std::sin(x);
    }
    return {re, im};
}

double first_moment(const WeightedGapDistribution& g) {
    const double total = require_weight(g, "first_moment");
    return weighted_sum(g, [](double d) { return d; }) / total;
}

double abs_moment(const WeightedGapDistribution& g) {
    const double total = require_weight(g, "abs_moment");
    return weighted_sum(g, [](double d) { return std::abs(d); }) / total;
}

double second_moment(const WeightedGapDistribution& g) {
    const double total = require_weight(g, "second_moment");
    return weighted_sum(g, [](double d) { return d * d; }) / total;
}

double anchored_sum(const EnergyBasisOperator& op, const StationaryState& rho, double ground_energy) {
    if (rho.dim() != op.dim()) throw std::invalid_argument("anchored_sum: dimension mismatch");
    const auto& e = op.energies();
    const double e_min = e.minCoeff();
    if (ground_energy > e_min + 1e-12 * std::max(1.0, std::abs(e_min))) {
        throw std::invalid_argument("anchored_sum: anchor lies above the lowest energy level");
    }
    const auto& o = op.elements();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < op.dim(); ++k) {
        const double pk = rho[k];
        if (pk == 0.0) continue;
        double col = 0.0;
        for (Eigen::Index j = 0; j < op.dim(); ++j) {
            col += std::norm(o(j, k)) * (e(j) + e(k) - 2.0 * ground_energy);
        }
        acc += pk * col;
    }
    return acc;
}

double anchored_trace(const EnergyBasisOperator& op, double ground_energy) {
    const Eigen::Index d = op.dim();
    const StationaryState uniform(RealVector::Constant(d, 1.0 / static_cast<double>(d)));
    return static_cast<double>(d) * anchored_sum(op, uniform, ground_energy);
}

}  // namespace opqsl
