#pragma once

#include <cstdint>
#include <vector>

#include "opqsl/linops.hpp"
#include "opqsl/types.hpp"

namespace opqsl {

/// Normalized pure state, amplitudes c_j in the energy eigenbasis.
class PureState {
public:
    explicit PureState(ComplexVector amplitudes);

    const ComplexVector& amplitudes() const { return c_; }
    Eigen::Index dim() const { return c_.size(); }

private:
    ComplexVector c_;
};

/// <psi_0|psi_t> = sum_j |c_j|^2 exp(-i E_j t)
Complex state_overlap(const PureState& psi, const Spectrum& s, double t);

/// |psi><psi| as an energy-basis operator.
EnergyBasisOperator projector(const PureState& psi, const Spectrum& s);

double mean_energy(const PureState& psi, const Spectrum& s);
double energy_variance(const PureState& psi, const Spectrum& s);

// Minimal times to reach Bures angle `bures_angle` in [0, pi/2]; +inf when unreachable.
double mt_state_min_time(const PureState& psi, const Spectrum& s, double bures_angle);
double ml_state_min_time(const PureState& psi, const Spectrum& s, double bures_angle);

/// Ratios of the reduced bounds to the textbook orthogonalization times:
/// 2/pi for MT and 1/(pi alpha) for ML.
double mt_orthogonalization_ratio();
double ml_orthogonalization_ratio();

struct VarianceRelation {
    double liouvillian_second_moment = 0.0;  // (Delta L)^2 of the projector flow
    double hamiltonian_variance = 0.0;       // (Delta H)^2
};

VarianceRelation variance_relation_check(const PureState& psi, const Spectrum& s);

/// c_n = exp(-beta E_n / 2) / sqrt(Z)
PureState coherent_gibbs(const Spectrum& s, double beta);

/// Z(beta + i t) / Z(beta), evaluated on energies shifted by E_0.
Complex partition_overlap(const Spectrum& s, double beta, double t);

struct FidelityCurve {
    std::vector<double> grid;
    std::vector<double> values;  // |<psi_0|psi_t>|
};

struct GoeFidelityResult {
    FidelityCurve fidelity;
    std::vector<double> ml_floor;  // 1 - 2 alpha (<H> - E0) t
    double tau = 0.0;              // 1 / (sigma sqrt(8 d))
    double mean_energy_gap = 0.0;  // <H> - E0
    std::size_t violations = 0;    // floor > fidelity on grid points t <= tau
    double min_margin = 0.0;       // min(fidelity - floor) over t <= tau
};

/// Coherent Gibbs state of a GOE Hamiltonian against the ML state floor.
GoeFidelityResult goe_fidelity_experiment(int dim, double sigma, double beta, std::uint64_t seed,
                                          const TimeGrid& grid);

}  // namespace opqsl
