#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opqsl/linops.hpp"
#include "opqsl/types.hpp"

namespace opqsl {

/// Unperturbed Hamiltonian H0 diagonalized once, with its Gibbs state.
class ThermalSystem {
public:
    ThermalSystem(const HermitianMatrix& h0, double beta);

    const Spectrum& spectrum() const { return spectrum_; }
    const StationaryState& state() const { return state_; }
    double beta() const { return beta_; }
    /// k_B T; +inf at beta = 0.
    double temperature() const;

    EnergyBasisOperator in_energy_basis(const HermitianMatrix& op) const;
    double expectation(const HermitianMatrix& op) const;
    double variance(const HermitianMatrix& op) const;
    /// <[V, [H0, V]]>_0
    double double_commutator(const HermitianMatrix& v) const;
    /// <V {H0 - E0, V}>_0
    double anchored(const HermitianMatrix& v) const;

private:
    Spectrum spectrum_;
    StationaryState state_;
    double beta_;
};

struct SusceptibilityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::string pair;
    /// Largest |Im(-i <[A_t, V]>)| seen while sampling; zero up to roundoff.
    double max_imag_residual = 0.0;
};

/// chi_AV(t) = -i Tr(rho0 [A_I(t), V]) for t >= 0 (theta(0) = 1).
SusceptibilityCurve susceptibility_curve(const HermitianMatrix& a, const HermitianMatrix& v,
                                         const ThermalSystem& sys, const TimeGrid& grid);

/// lambda int_0^t chi(t - s) f(s) ds by the trapezoid rule on the common uniform
/// grid starting at 0. drive[0] is read as f(0+); |f| <= 1 is enforced.
TimeSeries kubo_response(const SusceptibilityCurve& chi, const std::vector<double>& drive,
                         double lambda);

/// 2 Delta_0 A Delta_0 V
double heisenberg_ceiling(const HermitianMatrix& a, const HermitianMatrix& v,
                          const ThermalSystem& sys);

/// T_B = <A^2> <[V,[H0,V]]> / (4 (Delta_0 A Delta_0 V)^2)
double bogoliubov_temperature(const HermitianMatrix& a, const HermitianMatrix& v,
                              const ThermalSystem& sys);

enum class BogoliubovVariant {
    derived,     // 2 sqrt(T_B/T) Delta A Delta V = sqrt(<A^2> <[V,[H0,V]]> / T)
    as_printed,  // 2 sqrt(T/T_B) Delta A Delta V; comparison only, not a valid bound
};

double bogoliubov_ceiling(const HermitianMatrix& a, const HermitianMatrix& v,
                          const ThermalSystem& sys,
                          BogoliubovVariant variant = BogoliubovVariant::derived);

/// |chi_VV(t)| <= 2 t <V {H0 - E0, V}>_0
double qsl_ceiling(const HermitianMatrix& v, const ThermalSystem& sys, double t);

/// <V {H0 - E0, V}>_0^{-1/3}
double tau_qsl(const HermitianMatrix& v, const ThermalSystem& sys);

struct CrossoverTimes {
    double tau_h = 0.0;          // qsl ceiling meets the Heisenberg ceiling
    double tau_b_printed = 0.0;  // (Delta V)^2 sqrt(T/T_B) tau_qsl^3
    double tau_b_derived = 0.0;  // qsl ceiling meets the derived Bogoliubov ceiling
};

CrossoverTimes crossover_times(const HermitianMatrix& v, const HermitianMatrix& a,
                               const ThermalSystem& sys);

struct CeilingEntry {
    double heisenberg = 0.0;
    double bogoliubov = 0.0;            // derived variant
    std::optional<double> qsl_slope;    // ceiling = slope * t, diagonal A_i == V_i only
};

/// Elementwise ceilings for chi_{A_i V_j}.
std::vector<std::vector<CeilingEntry>> bound_tensor(const std::vector<HermitianMatrix>& as,
                                                    const std::vector<HermitianMatrix>& vs,
                                                    const ThermalSystem& sys);

}  // namespace opqsl
