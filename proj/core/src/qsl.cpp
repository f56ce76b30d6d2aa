#include "opqsl/qsl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "opqsl/diagnostics.hpp"

namespace opqsl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Root of cos x + x sin x - 1 on (2, 3): bisection to a narrow bracket, then
// Newton on f'(x) = x cos x.
double solve_tangent_point() {
    auto f = [](double x) { return std::cos(x) + x * std::sin(x) - 1.0; };
    double lo = 2.0;
    double hi = 3.0;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) lo = mid; else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const double step = f(x) / (x * std::cos(x));
        x -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return x;
}

void require_target(double target, const char* what) {
    if (!(target >= -1.0 && target <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": target overlap must lie in [-1, 1]");
    }
}

void require_time(double t, const char* what) {
    if (!(t >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative time");
}

double safe_ratio(double num, double den) {
    if (num == 0.0) return 0.0;
    if (den == 0.0) return kInf;
    return num / den;
}

}  // namespace

double alpha_tangent_point() {
    static const double x = solve_tangent_point();
    return x;
}

double alpha_constant() {
    static const double a = std::sin(alpha_tangent_point());
    return a;
}

QslVelocities QslVelocities::from(const WeightedGapDistribution& g) {
    return QslVelocities{opqsl::abs_moment(g), opqsl::second_moment(g), alpha_constant()};
}

double ml_overlap_floor(const QslVelocities& v, double t) {
    require_time(t, "ml_overlap_floor");
    return 1.0 - v.alpha * v.abs_liouvillian * t;
}

double mt_overlap_floor(const QslVelocities& v, double t) {
    require_time(t, "mt_overlap_floor");
    return 1.0 - 0.5 * v.second_moment * t * t;
}

double ml_min_time(const QslVelocities& v, double target) {
    require_target(target, "ml_min_time");
    return safe_ratio(1.0 - target, v.alpha * v.abs_liouvillian);
}

double mt_min_time(const QslVelocities& v, double target) {
    require_target(target, "mt_min_time");
    return std::sqrt(safe_ratio(2.0 * (1.0 - target), v.second_moment));
}

double trig_ml_min_time(const QslVelocities& v, double target) {
    require_target(target, "trig_ml_min_time");
    return std::numbers::pi / 4.0 * safe_ratio(1.0 - target, v.abs_liouvillian);
}

double trig_mt_min_time(const QslVelocities& v, double target) {
    require_target(target, "trig_mt_min_time");
    return std::numbers::pi / std::sqrt(6.0) * std::sqrt(safe_ratio(1.0 - target, v.second_moment));
}

double crossover_time(const QslVelocities& v) {
    if (v.second_moment == 0.0) return kInf;
    return 2.0 * v.alpha * v.abs_liouvillian / v.second_moment;
}

double ml_hamiltonian_min_time(const EnergyBasisOperator& op, const Spectrum& s, double target) {
    require_target(target, "ml_hamiltonian_min_time");
    const double denom = anchored_trace(op, s.ground_energy());
    if (!(denom > 0.0)) throw std::domain_error("ml_hamiltonian_min_time: anchored trace vanishes");
    return op.elements().squaredNorm() * (1.0 - target) / (alpha_constant() * denom);
}

ComplexMatrix max_speed_operator(const Spectrum& s, Complex mu, Complex nu) {
    const Eigen::Index d = s.dim();
    if (d < 2) throw std::invalid_argument("max_speed_operator: need at least two levels");
    if (mu == Complex(0.0) && nu == Complex(0.0)) {
        throw std::invalid_argument("max_speed_operator: mu and nu both vanish");
    }
    const double scale = std::max(1.0, s.energies.cwiseAbs().maxCoeff());
    const bool ground_degenerate = s.energies(1) - s.energies(0) <= 1e-12 * scale;
    const bool top_degenerate = s.energies(d - 1) - s.energies(d - 2) <= 1e-12 * scale;
    if (ground_degenerate || top_degenerate) {
        warn("max_speed_operator: degenerate extremal level; using the first eigenvector of each block");
    }
    // Lowest-index column of the top block.
    Eigen::Index top = d - 1;
    while (top > 0 && s.energies(d - 1) - s.energies(top - 1) <= 1e-12 * scale) --top;
    const ComplexVector ground = s.eigenvectors.col(0);
    const ComplexVector highest = s.eigenvectors.col(top);
    return mu * highest * ground.adjoint() + nu * ground * highest.adjoint();
}

double operator_angle(double overlap_re) {
    constexpr double kClampTol = 1e-9;
    if (!std::isfinite(overlap_re) || std::abs(overlap_re) > 1.0 + kClampTol) {
        std::ostringstream os;
        os << "operator_angle: overlap " << overlap_re << " outside [-1, 1]";
        throw std::domain_error(os.str());
    }
    return std::acos(std::clamp(overlap_re, -1.0, 1.0));
}

BoundCurve overlap_floor_curve(BoundKind kind, const QslVelocities& v, const TimeGrid& grid) {
    BoundCurve curve{grid.points(), {}, kind};
    curve.values.reserve(grid.size());
    for (double t : curve.grid) {
        const double tt = std::max(t, 0.0);
        switch (kind) {
            case BoundKind::ml: curve.values.push_back(1.0 - v.alpha * v.abs_liouvillian * tt); break;
            case BoundKind::mt: curve.values.push_back(1.0 - 0.5 * v.second_moment * tt * tt); break;
            case BoundKind::trig_ml:
                curve.values.push_back(1.0 - 4.0 / std::numbers::pi * v.abs_liouvillian * tt);
                break;
            case BoundKind::trig_mt:
                curve.values.push_back(1.0 - 6.0 / (std::numbers::pi * std::numbers::pi) * v.second_moment * tt * tt);
                break;
            case BoundKind::driven_ml:
                throw std::invalid_argument("overlap_floor_curve: use driven_ml_curve for driven flows");
        }
    }
    return curve;
}

RealVector integrated_energies(const EnergyTrajectories& traj, double t) {
    const auto& g = traj.grid;
    if (g.size() < 2 || static_cast<Eigen::Index>(g.size()) != traj.energies.rows()) {
        throw std::invalid_argument("integrated_energies: grid and energy samples disagree");
    }
    if (g.front() != 0.0 || t < 0.0 || g.back() < t) {
        throw std::invalid_argument("integrated_energies: grid does not cover [0, t]");
    }
    RealVector phase = RealVector::Zero(traj.energies.cols());
    for (std::size_t i = 0; i + 1 < g.size() && g[i] < t; ++i) {
        const double h = g[i + 1] - g[i];
        if (!(h > 0.0)) throw std::invalid_argument("integrated_energies: grid not strictly increasing");
        const RealVector left = traj.energies.row(static_cast<Eigen::Index>(i)).transpose();
        const RealVector right = traj.energies.row(static_cast<Eigen::Index>(i + 1)).transpose();
        if (g[i + 1] <= t) {
            phase += 0.5 * h * (left + right);
        } else {
            const double part = t - g[i];
            const RealVector at_t = left + (right - left) * (part / h);
            phase += 0.5 * part * (left + at_t);
        }
    }
    return phase;
}

namespace {

template <typename F>
void for_each_weighted_phase(const EnergyBasisOperator& op, const RealVector& phase, F&& f) {
    const auto& o = op.elements();
    const double norm2 = o.squaredNorm();
    if (norm2 == 0.0) throw std::invalid_argument("driven flow: zero operator");
    if (phase.size() != op.dim()) throw std::invalid_argument("driven flow: trajectory dimension mismatch");
    for (Eigen::Index k = 0; k < op.dim(); ++k) {
        for (Eigen::Index j = 0; j < op.dim(); ++j) {
            const double w = std::norm(o(j, k)) / norm2;
            if (w != 0.0) f(w, phase(j) - phase(k));
        }
    }
}

}  // namespace

double driven_ml_floor(const EnergyBasisOperator& op, const EnergyTrajectories& traj, double t) {
    const RealVector phase = integrated_energies(traj, t);
    double acc = 0.0;
    for_each_weighted_phase(op, phase, [&](double w, double phi) { acc += w * std::abs(phi); });
    return 1.0 - alpha_constant() * acc;
}

Complex driven_overlap(const EnergyBasisOperator& op, const EnergyTrajectories& traj, double t) {
    const RealVector phase = integrated_energies(traj, t);
    Complex acc(0.0);
    for_each_weighted_phase(op, phase, [&](double w, double phi) { acc += w * std::polar(1.0, phi); });
    return acc;
}

BoundCurve driven_ml_curve(const EnergyBasisOperator& op, const EnergyTrajectories& traj,
                           const TimeGrid& grid) {
    BoundCurve curve{grid.points(), {}, BoundKind::driven_ml};
    curve.values.reserve(grid.size());
    for (double t : curve.grid) curve.values.push_back(driven_ml_floor(op, traj, t));
    return curve;
}

}  // namespace opqsl
