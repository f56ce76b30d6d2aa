#pragma once

#include <stdexcept>
#include <string>

#include "opqsl/types.hpp"

namespace opqsl {

/// Thrown when a matrix handed to a Hermitian-only routine is not Hermitian.
class NonHermitianError : public std::invalid_argument {
public:
    NonHermitianError(double violation, double scale);
    /// max |A_jk - conj(A_kj)|
    double violation() const { return violation_; }
    /// max |A_jk|, the reference the violation was measured against
    double scale() const { return scale_; }

private:
    double violation_;
    double scale_;
};

/// Dense complex Hermitian matrix. Hermiticity is checked on construction
/// relative to the largest entry magnitude (tolerance 1e-12).
class HermitianMatrix {
public:
    static constexpr double kTolerance = 1e-12;

    explicit HermitianMatrix(ComplexMatrix entries);
    static HermitianMatrix from_real(const Eigen::MatrixXd& entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const ComplexMatrix& matrix() const { return entries_; }

private:
    ComplexMatrix entries_;
};

/// Energies in ascending order and the matching orthonormal eigenvectors
/// (columns of `eigenvectors`).
struct Spectrum {
    RealVector energies;
    ComplexMatrix eigenvectors;

    Eigen::Index dim() const { return energies.size(); }
    double ground_energy() const { return energies(0); }
    double max_energy() const { return energies(energies.size() - 1); }
};

/// A stationary state, diagonal in the energy eigenbasis.
class StationaryState {
public:
    explicit StationaryState(RealVector populations);

    const RealVector& populations() const { return p_; }
    Eigen::Index dim() const { return p_.size(); }
    double operator[](Eigen::Index k) const { return p_(k); }

private:
    RealVector p_;
};

/// Matrix elements O_jk of an operator in the eigenbasis of a Hamiltonian,
/// together with the energies of that basis.
class EnergyBasisOperator {
public:
    EnergyBasisOperator(ComplexMatrix elements, RealVector energies);

    const ComplexMatrix& elements() const { return elements_; }
    const RealVector& energies() const { return energies_; }
    Eigen::Index dim() const { return energies_.size(); }
    double gap(Eigen::Index j, Eigen::Index k) const { return energies_(j) - energies_(k); }
    bool is_hermitian(double tol = 1e-12) const;

private:
    ComplexMatrix elements_;
    RealVector energies_;
};

Spectrum eigh(const HermitianMatrix& h);

/// V^dagger O V for the eigenvector matrix V of `s`.
EnergyBasisOperator to_energy_basis(const ComplexMatrix& op, const Spectrum& s);

/// V O_e V^dagger: back to the computational basis.
ComplexMatrix from_energy_basis(const EnergyBasisOperator& op, const Spectrum& s);

/// Heisenberg picture O_t = U_t^dagger O U_t, i.e. (O_t)_jk = e^{i (E_j - E_k) t} O_jk.
EnergyBasisOperator evolve_heisenberg(const EnergyBasisOperator& op, double t);

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double hs_norm(const ComplexMatrix& a);

/// Row-major vectorization |A> = sum_ij A_ij |i>|j> / ||A||.
ComplexVector vectorize(const ComplexMatrix& a);

/// i (H (x) 1 - 1 (x) H^T), acting on row-major vectorized operators.
ComplexMatrix build_liouvillian(const HermitianMatrix& h);

/// Gibbs populations exp(-beta (E_k - E_0)) / Z.
StationaryState gibbs(const Spectrum& s, double beta);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Pauli matrices in the computational basis.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace opqsl
