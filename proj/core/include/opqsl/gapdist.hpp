#pragma once

#include <vector>

#include "opqsl/linops.hpp"

namespace opqsl {

struct GapWeight {
    double delta;   // Bohr frequency
    double weight;  // >= 0
};

/// Weighted distribution of Bohr frequencies. Overlaps and autocorrelation
/// functions are its characteristic function; QSL speeds are its moments.
class WeightedGapDistribution {
public:
    WeightedGapDistribution() = default;
    WeightedGapDistribution(std::vector<GapWeight> entries, bool normalized);

    const std::vector<GapWeight>& entries() const { return entries_; }
    bool normalized() const { return normalized_; }
    double total_weight() const { return total_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<GapWeight> entries_;
    bool normalized_ = false;
    double total_ = 0.0;
};

/// Weights |O_jk|^2 / ||O||^2 at gaps E_j - E_k. Throws on the zero operator.
WeightedGapDistribution overlap_distribution(const EnergyBasisOperator& op);

/// Weights |O_jk|^2 p_k at gaps -(E_j - E_k); total weight equals C_O(0), and
/// the characteristic function is C_O(t) = Tr(O_t^dagger O rho).
WeightedGapDistribution correlation_distribution(const EnergyBasisOperator& op,
                                                 const StationaryState& rho);

/// Sort by gap, merge gaps closer than `merge_tol` (weighted mean gap) and drop
/// weights below `drop_rel * total_weight`.
WeightedGapDistribution compact(const WeightedGapDistribution& g,
                                double merge_tol = 1e-12,
                                double drop_rel = 1e-15);

/// sum_n w_n exp(i delta_n t)
Complex char_function(const WeightedGapDistribution& g, double t);

// Moments of the weight-normalized distribution. All throw on zero total weight.
double first_moment(const WeightedGapDistribution& g);
double abs_moment(const WeightedGapDistribution& g);
double second_moment(const WeightedGapDistribution& g);

/// sum_jk |O_jk|^2 p_k (E_j + E_k - 2 E0) = Tr(rho O^dagger {H - E0, O}).
/// `ground_energy` may not exceed the lowest level of the operator's basis.
double anchored_sum(const EnergyBasisOperator& op, const StationaryState& rho,
                    double ground_energy);

/// Same double sum with unit populations: Tr(O^dagger {H - E0, O}).
double anchored_trace(const EnergyBasisOperator& op, double ground_energy);

}  // namespace opqsl
