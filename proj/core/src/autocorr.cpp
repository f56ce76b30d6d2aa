#include "opqsl/autocorr.hpp"

#include <cmath>
#include <stdexcept>

#include "opqsl/qsl.hpp"

namespace opqsl {

CorrelationCurve CorrelationCurve::normalized_copy() const {
    if (!(c0 > 0.0)) throw std::domain_error("CorrelationCurve: C_O(0) vanishes, cannot normalize");
    CorrelationCurve out{grid, values, 1.0, true};
    for (auto& v : out.values) v /= c0;
    return out;
}

CorrelationCurve autocorr_curve(const EnergyBasisOperator& op, const StationaryState& rho,
                                const TimeGrid& grid) {
    const WeightedGapDistribution g = compact(correlation_distribution(op, rho));
    CorrelationCurve curve;
    curve.grid = grid.points();
    curve.values.reserve(grid.size());
    for (double t : curve.grid) curve.values.push_back(char_function(g, t));
    curve.c0 = g.total_weight();
    return curve;
}

double velocity_moment(const EnergyBasisOperator& op, const StationaryState& rho) {
    if (rho.dim() != op.dim()) throw std::invalid_argument("velocity_moment: dimension mismatch");
    const auto& o = op.elements();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < op.dim(); ++k) {
        for (Eigen::Index j = 0; j < op.dim(); ++j) {
            const double gap = op.gap(j, k);
            acc += gap * gap * std::norm(o(j, k)) * rho[k];
        }
    }
    return acc;
}

double liouvillian_ml_velocity(const EnergyBasisOperator& op, const StationaryState& rho) {
    if (rho.dim() != op.dim()) throw std::invalid_argument("liouvillian_ml_velocity: dimension mismatch");
    const auto& o = op.elements();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < op.dim(); ++k) {
        for (Eigen::Index j = 0; j < op.dim(); ++j) {
            acc += std::abs(op.gap(j, k)) * std::norm(o(j, k)) * rho[k];
        }
    }
    return acc;
}

double mt_autocorr_floor(double c0, double velocity, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("mt_autocorr_floor: negative time");
    return c0 - 0.5 * velocity * t * t;
}

double ml_autocorr_floor(double c0, double anchored, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("ml_autocorr_floor: negative time");
    if (anchored < 0.0) throw std::invalid_argument("ml_autocorr_floor: negative anchored expectation");
    return c0 - alpha_constant() * anchored * t;
}

double autocorr_crossover(double velocity, double anchored) {
    if (!(velocity > 0.0)) {
        throw std::domain_error("autocorr_crossover: zero velocity, the operator commutes with H");
    }
    return 2.0 * alpha_constant() * anchored / velocity;
}

double im_autocorr_ceiling(double anchored, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("im_autocorr_ceiling: negative time");
    return anchored * t;
}

double QubitParams::r() const { return std::sqrt(a * a + b * b + c * c); }

HermitianMatrix qubit_hamiltonian(const QubitParams& q) {
    ComplexMatrix h = q.k * ComplexMatrix::Identity(2, 2) + q.a * pauli_x() + q.b * pauli_y() + q.c * pauli_z();
    return HermitianMatrix(std::move(h));
}

QubitReference qubit_reference(const QubitParams& q, double t) {
    const double r = q.r();
    if (!(r > 0.0)) throw std::domain_error("qubit_reference: r = |(a, b, c)| vanishes");
    const double perp = q.b * q.b + q.c * q.c;
    const double a2 = q.a * q.a;
    // 1 / (1 + e^{2 beta r}), overflow-safe
    const double excited = 1.0 / (1.0 + std::exp(2.0 * q.beta * r));

    QubitReference out;
    out.re = (a2 + perp * std::cos(2.0 * r * t)) / (r * r);
    out.im = -(perp / (r * r)) * std::tanh(q.beta * r) * std::sin(2.0 * r * t);
    out.mt_scale = 4.0 * perp;
    out.ml_scale = (2.0 / r) * (2.0 * a2 * excited + perp);
    out.liouvillian_ml_scale = (2.0 / r) * perp;
    return out;
}

}  // namespace opqsl
