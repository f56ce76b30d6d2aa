#pragma once

#include <vector>

#include "opqsl/gapdist.hpp"
#include "opqsl/linops.hpp"
#include "opqsl/types.hpp"

namespace opqsl {

/// Sampled autocorrelation C_O(t) = Tr(O_t^dagger O_0 rho).
struct CorrelationCurve {
    std::vector<double> grid;
    std::vector<Complex> values;
    double c0 = 0.0;
    bool normalized = false;

    /// Copy divided by C_O(0).
    CorrelationCurve normalized_copy() const;
};

CorrelationCurve autocorr_curve(const EnergyBasisOperator& op, const StationaryState& rho,
                                const TimeGrid& grid);

/// <dO/dt^2> = ||[H, O sqrt(rho)]||^2.
double velocity_moment(const EnergyBasisOperator& op, const StationaryState& rho);

/// C_O(0) <O~| |L| |O~> = sum_jk |O_jk|^2 p_k |E_j - E_k|, the Liouvillian
/// counterpart of the anchored sum.
double liouvillian_ml_velocity(const EnergyBasisOperator& op, const StationaryState& rho);

/// Re C(t) >= c0 - <dO/dt^2> t^2 / 2
double mt_autocorr_floor(double c0, double velocity, double t);

/// Re C(t) >= c0 - alpha <O {H - E0, O}> t
double ml_autocorr_floor(double c0, double anchored, double t);

/// Time at which the two floors cross. Throws when the velocity vanishes.
double autocorr_crossover(double velocity, double anchored);

/// |Im C(t)| <= <O {H - E0, O}> t
double im_autocorr_ceiling(double anchored, double t);

/// H = k 1 + a sigma_x + b sigma_y + c sigma_z at inverse temperature beta,
/// observed through O = sigma_x.
struct QubitParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double k = 0.0;
    double beta = 0.0;

    double r() const;
};

HermitianMatrix qubit_hamiltonian(const QubitParams& q);

struct QubitReference {
    double re = 0.0;
    double im = 0.0;
    double mt_scale = 0.0;              // <dO/dt^2> = 4 (b^2 + c^2)
    double ml_scale = 0.0;              // <O {H - E0, O}>
    double liouvillian_ml_scale = 0.0;  // (2/r)(b^2 + c^2)
};

/// Closed forms for the qubit. Im C carries the sign of the direct trace
/// Tr(O_t O rho): Im C = -((b^2 + c^2)/r^2) tanh(beta r) sin(2 r t).
QubitReference qubit_reference(const QubitParams& q, double t);

}  // namespace opqsl
