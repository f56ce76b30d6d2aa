#include "opqsl/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "opqsl/gapdist.hpp"

namespace opqsl {
namespace {

void require_dim(const HermitianMatrix& op, const ThermalSystem& sys, const char* what) {
    if (op.dim() != sys.spectrum().dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Expectations of products of Hermitian operators can pick up roundoff of
// either sign; anything below this relative size is treated as zero.
double clamp_nonnegative(double value, double scale, const char* what) {
    if (value >= 0.0) return value;
    if (value > -1e-10 * std::max(scale, 1.0)) return 0.0;
    throw std::domain_error(std::string(what) + ": expected a nonnegative expectation value");
}

}  // namespace

ThermalSystem::ThermalSystem(const HermitianMatrix& h0, double beta)
    : spectrum_(eigh(h0)), state_(gibbs(spectrum_, beta)), beta_(beta) {}

double ThermalSystem::temperature() const {
    return beta_ > 0.0 ? 1.0 / beta_ : std::numeric_limits<double>::infinity();
}

EnergyBasisOperator ThermalSystem::in_energy_basis(const HermitianMatrix& op) const {
    return to_energy_basis(op.matrix(), spectrum_);
}

double ThermalSystem::expectation(const HermitianMatrix& op) const {
    require_dim(op, *this, "expectation");
    const EnergyBasisOperator e = in_energy_basis(op);
    return (state_.populations().array() * e.elements().diagonal().real().array()).sum();
}

double ThermalSystem::variance(const HermitianMatrix& op) const {
    require_dim(op, *this, "variance");
    const double mean = expectation(op);
    ComplexMatrix centered = in_energy_basis(op).elements();
    centered.diagonal().array() -= mean;
    double acc = 0.0;
    for (Eigen::Index k = 0; k < centered.cols(); ++k) acc += state_[k] * centered.col(k).squaredNorm();
    return acc;
}

double ThermalSystem::double_commutator(const HermitianMatrix& v) const {
    require_dim(v, *this, "double_commutator");
    const EnergyBasisOperator e = in_energy_basis(v);
    const auto& o = e.elements();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < o.cols(); ++k) {
        for (Eigen::Index j = 0; j < o.rows(); ++j) {
            acc += std::norm(o(j, k)) * e.gap(j, k) * (state_[k] - state_[j]);
        }
    }
    return acc;
}

double ThermalSystem::anchored(const HermitianMatrix& v) const {
    require_dim(v, *this, "anchored");
    return anchored_sum(in_energy_basis(v), state_, spectrum_.ground_energy());
}

SusceptibilityCurve susceptibility_curve(const HermitianMatrix& a, const HermitianMatrix& v,
                                         const ThermalSystem& sys, const TimeGrid& grid) {
    require_dim(a, sys, "susceptibility_curve");
    require_dim(v, sys, "susceptibility_curve");
    if (grid.t_min() < 0.0) throw std::invalid_argument("susceptibility_curve: grid must lie in [0, inf)");

    const ComplexMatrix ae = sys.in_energy_basis(a).elements();
    const ComplexMatrix ve = sys.in_energy_basis(v).elements();
    const auto& e = sys.spectrum().energies;
    const auto& p = sys.state().populations();

    // <[A_t, V]> = sum_jk (p_k - p_j) e^{i (E_k - E_j) t} A_kj V_jk
    struct Term {
        double gap;
        Complex coeff;
    };
    std::vector<Term> terms;
    for (Eigen::Index k = 0; k < ae.rows(); ++k) {
        for (Eigen::Index j = 0; j < ae.cols(); ++j) {
            const double dp = p(k) - p(j);
            if (dp == 0.0) continue;
            const Complex c = dp * ae(k, j) * ve(j, k);
            if (c != Complex(0.0)) terms.push_back({e(k) - e(j), c});
        }
    }

    SusceptibilityCurve curve;
    curve.grid = grid.points();
    curve.values.reserve(grid.size());
    for (double t : curve.grid) {
        Complex expect(0.0);
        for (const auto& term : terms) expect += term.coeff * std::polar(1.0, term.gap * t);
        const Complex chi = Complex(0.0, -1.0) * expect;
        curve.values.push_back(chi.real());
        curve.max_imag_residual = std::max(curve.max_imag_residual, std::abs(chi.imag()));
    }
    return curve;
}

TimeSeries kubo_response(const SusceptibilityCurve& chi, const std::vector<double>& drive, double lambda) {
    const auto& g = chi.grid;
    if (drive.size() != g.size()) throw std::invalid_argument("kubo_response: drive and susceptibility grids differ");
    if (g.size() < 2 || g.front() != 0.0) throw std::invalid_argument("kubo_response: grid must start at t = 0");
    const double h = g[1] - g[0];
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (std::abs((g[i] - g[i - 1]) - h) > 1e-9 * std::max(h, 1.0)) {
            throw std::invalid_argument("kubo_response: grid is not uniform");
        }
    }
    for (double f : drive) {
        if (!(std::abs(f) <= 1.0)) throw std::invalid_argument("kubo_response: drive must satisfy |f| <= 1");
    }

    TimeSeries out{g, std::vector<double>(g.size(), 0.0)};
    for (std::size_t n = 1; n < g.size(); ++n) {
        double acc = 0.5 * (chi.values[n] * drive[0] + chi.values[0] * drive[n]);
        for (std::size_t m = 1; m < n; ++m) acc += chi.values[n - m] * drive[m];
        out.values[n] = lambda * h * acc;
    }
    return out;
}

double heisenberg_ceiling(const HermitianMatrix& a, const HermitianMatrix& v, const ThermalSystem& sys) {
    return 2.0 * std::sqrt(sys.variance(a)) * std::sqrt(sys.variance(v));
}

double bogoliubov_temperature(const HermitianMatrix& a, const HermitianMatrix& v, const ThermalSystem& sys) {
    const double var_a = sys.variance(a);
    const double var_v = sys.variance(v);
    const double a2 = var_a + std::pow(sys.expectation(a), 2);
    const double v2 = var_v + std::pow(sys.expectation(v), 2);
    constexpr double kZeroVariance = 1e-20;
    if (var_a <= kZeroVariance * a2 || var_v <= kZeroVariance * v2) {
        throw std::domain_error("bogoliubov_temperature: zero variance");
    }
    const double dc = clamp_nonnegative(sys.double_commutator(v), a2, "bogoliubov_temperature");
    return a2 * dc / (4.0 * var_a * var_v);
}

double bogoliubov_ceiling(const HermitianMatrix& a, const HermitianMatrix& v, const ThermalSystem& sys,
                          BogoliubovVariant variant) {
    if (!(sys.beta() > 0.0)) throw std::invalid_argument("bogoliubov_ceiling: beta must be positive");
    if (variant == BogoliubovVariant::derived) {
        const double a2 = sys.variance(a) + std::pow(sys.expectation(a), 2);
        const double dc = clamp_nonnegative(sys.double_commutator(v), a2, "bogoliubov_ceiling");
        return std::sqrt(a2 * dc * sys.beta());
    }
    const double tb = bogoliubov_temperature(a, v, sys);
    return 2.0 * std::sqrt(sys.temperature() / tb) * std::sqrt(sys.variance(a) * sys.variance(v));
}

double qsl_ceiling(const HermitianMatrix& v, const ThermalSystem& sys, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("qsl_ceiling: negative time");
    return 2.0 * t * sys.anchored(v);
}

double tau_qsl(const HermitianMatrix& v, const ThermalSystem& sys) {
    const double anch = sys.anchored(v);
    if (!(anch > 0.0)) throw std::domain_error("tau_qsl: anchored expectation vanishes");
    return std::cbrt(1.0 / anch);
}

CrossoverTimes crossover_times(const HermitianMatrix& v, const HermitianMatrix& a, const ThermalSystem& sys) {
    const double tau = tau_qsl(v, sys);
    const double tau3 = tau * tau * tau;
    const double var_v = sys.variance(v);
    const double tb = bogoliubov_temperature(a, v, sys);
    const double t = sys.temperature();

    CrossoverTimes out;
    out.tau_h = var_v * tau3;
    out.tau_b_printed = tb > 0.0 ? var_v * std::sqrt(t / tb) * tau3 : std::numeric_limits<double>::infinity();
    out.tau_b_derived = var_v * std::sqrt(tb / t) * tau3;
    return out;
}

std::vector<std::vector<CeilingEntry>> bound_tensor(const std::vector<HermitianMatrix>& as,
                                                    const std::vector<HermitianMatrix>& vs,
                                                    const ThermalSystem& sys) {
    if (as.empty() || as.size() != vs.size()) {
        throw std::invalid_argument("bound_tensor: observable and perturbation lists must be non-empty and equally long");
    }
    std::vector<std::vector<CeilingEntry>> out(as.size(), std::vector<CeilingEntry>(vs.size()));
    for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t j = 0; j < vs.size(); ++j) {
            CeilingEntry& entry = out[i][j];
            entry.heisenberg = heisenberg_ceiling(as[i], vs[j], sys);
            entry.bogoliubov = bogoliubov_ceiling(as[i], vs[j], sys, BogoliubovVariant::derived);
            const double scale = std::max(as[i].matrix().cwiseAbs().maxCoeff(), 1.0);
            if (i == j && (as[i].matrix() - vs[j].matrix()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
                entry.qsl_slope = 2.0 * sys.anchored(vs[j]);
            }
        }
    }
    return out;
}

}  // namespace opqsl
