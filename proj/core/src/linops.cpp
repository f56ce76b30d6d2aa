#include "opqsl/linops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace opqsl {
namespace {

std::string describe_violation(double violation, double scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |A_jk - conj(A_kj)| = " << violation
       << " (max |A_jk| = " << scale << ")";
    return os.str();
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) + ": expected a non-empty square matrix");
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

}  // namespace

TimeGrid::TimeGrid(double t_min, double t_max, std::size_t n_points)
    : t_min_(t_min), t_max_(t_max), n_(n_points) {
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_max > t_min)) {
        throw std::invalid_argument("time grid: need finite t_min < t_max");
    }
    if (n_points < 2) throw std::invalid_argument("time grid: need at least 2 points");
}

double TimeGrid::operator[](std::size_t i) const {
    if (i + 1 == n_) return t_max_;
    return t_min_ + step() * static_cast<double>(i);
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
    return out;
}

NonHermitianError::NonHermitianError(double violation, double scale)
    : std::invalid_argument(describe_violation(violation, scale)), violation_(violation), scale_(scale) {}

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    require_square(entries_, "HermitianMatrix");
    if (!entries_.allFinite()) throw std::invalid_argument("HermitianMatrix: non-finite entries");
    const double scale = entries_.cwiseAbs().maxCoeff();
    const double violation = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (violation > kTolerance * std::max(scale, 1e-300)) {
        throw NonHermitianError(violation, scale);
    }
}

HermitianMatrix HermitianMatrix::from_real(const Eigen::MatrixXd& entries) {
    return HermitianMatrix(entries.cast<Complex>());
}

StationaryState::StationaryState(RealVector populations) : p_(std::move(populations)) {
    if (p_.size() == 0) throw std::invalid_argument("StationaryState: empty populations");
    if (!p_.allFinite() || (p_.array() < 0.0).any()) {
        throw std::invalid_argument("StationaryState: populations must be finite and nonnegative");
    }
    if (std::abs(p_.sum() - 1.0) > 1e-12) {
        throw std::invalid_argument("StationaryState: populations must sum to 1");
    }
}

EnergyBasisOperator::EnergyBasisOperator(ComplexMatrix elements, RealVector energies)
    : elements_(std::move(elements)), energies_(std::move(energies)) {
    if (elements_.rows() != energies_.size() || elements_.cols() != energies_.size()) {
        throw std::invalid_argument("EnergyBasisOperator: dimension does not match the spectrum");
    }
}

bool EnergyBasisOperator::is_hermitian(double tol) const {
    const double scale = std::max(elements_.cwiseAbs().maxCoeff(), 1e-300);
    return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Spectrum eigh(const HermitianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: eigendecomposition did not converge");
    }
    // Eigen returns ascending eigenvalues.
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

EnergyBasisOperator to_energy_basis(const ComplexMatrix& op, const Spectrum& s) {
    if (op.rows() != s.dim() || op.cols() != s.dim()) {
        throw std::invalid_argument("to_energy_basis: dimension mismatch");
    }
    return EnergyBasisOperator(s.eigenvectors.adjoint() * op * s.eigenvectors, s.energies);
}

ComplexMatrix from_energy_basis(const EnergyBasisOperator& op, const Spectrum& s) {
    if (op.dim() != s.dim()) throw std::invalid_argument("from_energy_basis: dimension mismatch");
    return s.eigenvectors * op.elements() * s.eigenvectors.adjoint();
}

EnergyBasisOperator evolve_heisenberg(const EnergyBasisOperator& op, double t) {
    const auto& e = op.energies();
    const Eigen::Index d = op.dim();
    ComplexVector phase(d);
    for (Eigen::Index j = 0; j < d; ++j) phase(j) = std::polar(1.0, e(j) * t);
    // e^{i(E_j - E_k)t} = phase_j * conj(phase_k)
    ComplexMatrix out = phase.asDiagonal() * op.elements() * phase.conjugate().asDiagonal();
    return EnergyBasisOperator(std::move(out), e);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "hs_inner");
    return (a.conjugate().array() * b.array()).sum();
}

double hs_norm(const ComplexMatrix& a) { return a.norm(); }

ComplexVector vectorize(const ComplexMatrix& a) {
    const double n = hs_norm(a);
    if (n == 0.0) throw std::invalid_argument("vectorize: zero operator");
    const Eigen::Index d = a.rows();
    ComplexVector v(a.rows() * a.cols());
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j) / n;
    }
    return v;
}

ComplexMatrix build_liouvillian(const HermitianMatrix& h) {
    const Eigen::Index d = h.dim();
    const ComplexMatrix& m = h.matrix();
    ComplexMatrix l = ComplexMatrix::Zero(d * d, d * d);
    const Complex i_unit(0.0, 1.0);
    // row (i,j), column (k,l): H_ik delta_jl - delta_ik H^T_jl
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const Eigen::Index row = i * d + j;
            for (Eigen::Index k = 0; k < d; ++k) l(row, k * d + j) += i_unit * m(i, k);
            for (Eigen::Index q = 0; q < d; ++q) l(row, i * d + q) -= i_unit * m(q, j);
        }
    }
    return l;
}

StationaryState gibbs(const Spectrum& s, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("gibbs: beta must be finite and nonnegative");
    }
    const double e0 = s.ground_energy();
    RealVector p = (-beta * (s.energies.array() - e0)).exp().matrix();
    p /= p.sum();
    return StationaryState(std::move(p));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "anticommutator");
    return a * b + b * a;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

}  // namespace opqsl
