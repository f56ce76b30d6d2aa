#include "opqsl/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "opqsl/ensembles.hpp"
#include "opqsl/gapdist.hpp"
#include "opqsl/qsl.hpp"

namespace opqsl {
namespace {

void require_dim(const PureState& psi, const Spectrum& s, const char* what) {
    if (psi.dim() != s.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_angle(double angle, const char* what) {
    if (!(angle >= 0.0 && angle <= std::numbers::pi / 2.0)) {
        throw std::invalid_argument(std::string(what) + ": Bures angle must lie in [0, pi/2]");
    }
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : c_(std::move(amplitudes)) {
    if (c_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
    if (std::abs(c_.squaredNorm() - 1.0) > 1e-12) throw std::invalid_argument("PureState: state is not normalized");
}

Complex state_overlap(const PureState& psi, const Spectrum& s, double t) {
    require_dim(psi, s, "state_overlap");
    Complex acc(0.0);
    for (Eigen::Index j = 0; j < psi.dim(); ++j) {
        acc += std::norm(psi.amplitudes()(j)) * std::polar(1.0, -s.energies(j) * t);
    }
    return acc;
}

EnergyBasisOperator projector(const PureState& psi, const Spectrum& s) {
    require_dim(psi, s, "projector");
    return EnergyBasisOperator(psi.amplitudes() * psi.amplitudes().adjoint(), s.energies);
}

double mean_energy(const PureState& psi, const Spectrum& s) {
    require_dim(psi, s, "mean_energy");
    return (psi.amplitudes().cwiseAbs2().array() * s.energies.array()).sum();
}

double energy_variance(const PureState& psi, const Spectrum& s) {
    const double mean = mean_energy(psi, s);
    const double second = (psi.amplitudes().cwiseAbs2().array() * s.energies.array().square()).sum();
    return std::max(second - mean * mean, 0.0);
}

double mt_state_min_time(const PureState& psi, const Spectrum& s, double bures_angle) {
    require_angle(bures_angle, "mt_state_min_time");
    const double spread = std::sqrt(energy_variance(psi, s));
    const double reach = std::sin(bures_angle);
    if (reach == 0.0) return 0.0;
    if (spread == 0.0) return std::numeric_limits<double>::infinity();
    return reach / spread;
}

double ml_state_min_time(const PureState& psi, const Spectrum& s, double bures_angle) {
    require_angle(bures_angle, "ml_state_min_time");
    const double excess = mean_energy(psi, s) - s.ground_energy();
    const double reach = std::pow(std::sin(bures_angle), 2);
    if (reach == 0.0) return 0.0;
    if (!(excess > 0.0)) return std::numeric_limits<double>::infinity();
    return reach / (2.0 * alpha_constant() * excess);
}

// (1 / Delta H) / (pi / (2 Delta H)) and (1 / (2 alpha E)) / (pi / (2 E)).
double mt_orthogonalization_ratio() { return 2.0 / std::numbers::pi; }
double ml_orthogonalization_ratio() { return 1.0 / (std::numbers::pi * alpha_constant()); }

VarianceRelation variance_relation_check(const PureState& psi, const Spectrum& s) {
    const WeightedGapDistribution g = overlap_distribution(projector(psi, s));
    return VarianceRelation{second_moment(g), energy_variance(psi, s)};
}

PureState coherent_gibbs(const Spectrum& s, double beta) {
    const StationaryState p = gibbs(s, beta);
    ComplexVector c = p.populations().cwiseSqrt().cast<Complex>();
    c /= c.norm();
    return PureState(std::move(c));
}

Complex partition_overlap(const Spectrum& s, double beta, double t) {
    if (!(beta >= 0.0)) throw std::invalid_argument("partition_overlap: beta must be nonnegative");
    const double e0 = s.ground_energy();
    // Z(beta + i t) = e^{-(beta + i t) E0} sum_n e^{-(beta + i t)(E_n - E0)}
    const Complex z(beta, t);
    Complex numerator(0.0);
    double denominator = 0.0;
    for (Eigen::Index n = 0; n < s.dim(); ++n) {
        const double shifted = s.energies(n) - e0;
        numerator += std::exp(-z * shifted);
        denominator += std::exp(-beta * shifted);
    }
    return std::polar(1.0, -t * e0) * numerator / denominator;
}

GoeFidelityResult goe_fidelity_experiment(int dim, double sigma, double beta, std::uint64_t seed,
                                          const TimeGrid& grid) {
    if (dim < 2) throw std::invalid_argument("goe_fidelity_experiment: dimension must be at least 2");
    if (!(sigma > 0.0)) throw std::invalid_argument("goe_fidelity_experiment: sigma must be positive");
    const GoeSpec spec{dim, sigma, seed};
    const Spectrum s = eigh(sample_goe(spec));
    const PureState psi = coherent_gibbs(s, beta);

    GoeFidelityResult out;
    out.tau = 1.0 / semicircle_radius(spec);
    out.mean_energy_gap = mean_energy(psi, s) - s.ground_energy();
    out.fidelity.grid = grid.points();
    out.min_margin = std::numeric_limits<double>::infinity();
    const double slope = 2.0 * alpha_constant() * out.mean_energy_gap;
    for (double t : out.fidelity.grid) {
        const double fid = std::abs(partition_overlap(s, beta, t));
        const double floor = 1.0 - slope * t;
        out.fidelity.values.push_back(fid);
        out.ml_floor.push_back(floor);
        if (t <= out.tau) {
            out.min_margin = std::min(out.min_margin, fid - floor);
            if (floor > fid + 1e-9) ++out.violations;
        }
    }
    return out;
}

}  // namespace opqsl
