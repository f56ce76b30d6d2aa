#pragma once

#include <vector>

#include "opqsl/gapdist.hpp"
#include "opqsl/types.hpp"

namespace opqsl {

/// Slope of the line 1 - alpha x tangent to cos x for x > 0
/// (alpha = sin x*, cos x* + x* sin x* = 1). Computed once, then cached.
double alpha_constant();

/// The tangency point x* belonging to alpha_constant().
double alpha_tangent_point();

/// Speeds of an operator flow.
struct QslVelocities {
    double abs_liouvillian = 0.0;  // <|L|>
    double second_moment = 0.0;    // <L^2>
    double alpha = 0.0;

    static QslVelocities from(const WeightedGapDistribution& g);
};

double ml_overlap_floor(const QslVelocities& v, double t);
double mt_overlap_floor(const QslVelocities& v, double t);

// Minimal times to reach Re<O_0|O_t> = target. +inf when the target is
// unreachable at zero speed.
double ml_min_time(const QslVelocities& v, double target_overlap);
double mt_min_time(const QslVelocities& v, double target_overlap);

// Weaker variants from the trigonometric inequalities
// cos x >= 1 - (2/pi)(x + sin x) and cos x >= 1 - (4/pi^2) x sin x - (2/pi^2) x^2.
double trig_ml_min_time(const QslVelocities& v, double target_overlap);
double trig_mt_min_time(const QslVelocities& v, double target_overlap);

/// 2 alpha <|L|> / <L^2>; +inf for a zero second moment.
double crossover_time(const QslVelocities& v);

/// ML bound with the Liouvillian mean replaced by the ground-anchored trace
/// Tr(O^dagger {H - E0, O}) / ||O||^2. Never tighter than ml_min_time.
double ml_hamiltonian_min_time(const EnergyBasisOperator& op, const Spectrum& s,
                               double target_overlap);

/// mu |E_max><E_0| + nu |E_0><E_max| in the computational basis.
ComplexMatrix max_speed_operator(const Spectrum& s, Complex mu, Complex nu);

/// arccos of the real overlap; inputs within 1e-9 outside [-1, 1] are clamped.
double operator_angle(double overlap_re);

enum class BoundKind { ml, mt, trig_ml, trig_mt, driven_ml };

struct BoundCurve {
    std::vector<double> grid;
    std::vector<double> values;
    BoundKind kind;
};

/// Static overlap floor of the requested kind sampled on `grid`.
/// `BoundKind::driven_ml` is rejected here; use driven_ml_curve.
BoundCurve overlap_floor_curve(BoundKind kind, const QslVelocities& v, const TimeGrid& grid);

/// Level energies E_j(s) of a Hamiltonian with a fixed eigenbasis, sampled on
/// an increasing grid. Row i holds the energies at grid[i].
struct EnergyTrajectories {
    std::vector<double> grid;
    Eigen::MatrixXd energies;
};

/// Accumulated phases int_0^t E_j(s) ds (trapezoid on the caller's grid; the
/// last partial interval uses linear interpolation).
RealVector integrated_energies(const EnergyTrajectories& traj, double t);

/// 1 - alpha sum_jk w_jk |int_0^t Delta_jk(s) ds|, with w from the overlap
/// distribution of `op`. Only valid for commuting H(s) with stationary eigenvectors.
double driven_ml_floor(const EnergyBasisOperator& op, const EnergyTrajectories& traj, double t);

/// The overlap <O_0|O_t> realized by the same driven flow.
Complex driven_overlap(const EnergyBasisOperator& op, const EnergyTrajectories& traj, double t);

BoundCurve driven_ml_curve(const EnergyBasisOperator& op, const EnergyTrajectories& traj,
                           const TimeGrid& grid);

}  // namespace opqsl
