#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "opqsl/autocorr.hpp"
#include "opqsl/gapdist.hpp"
#include "opqsl/qsl.hpp"
#include "test_support.hpp"

using namespace opqsl;
using opqsl::testing::Rng;

namespace {

// mpmath, O = sigma_x, H = 10 sigma_x + sigma_y + sigma_z, beta = 10.
constexpr double kQubitAnchored = 0.39605901719066972;
constexpr double kQubitCrossover = 0.0717472151555009607;

struct Prepared {
    Spectrum spectrum;
    StationaryState rho;
    EnergyBasisOperator op;
};

Prepared prepare(const HermitianMatrix& h, const ComplexMatrix& o, double beta) {
    Spectrum s = eigh(h);
    StationaryState rho = gibbs(s, beta);
    EnergyBasisOperator op = to_energy_basis(o, s);
    return {std::move(s), std::move(rho), std::move(op)};
}

}  // namespace

TEST(QubitClosedForm, MatchesDenseTraceIncludingImaginarySign) {
    const std::vector<double> coeffs{0.0, 1.0, -1.0, 10.0};
    for (double a : coeffs)
        for (double b : coeffs)
            for (double c : coeffs)
                for (double beta : {0.0, 1.0, 10.0}) {
                    const QubitParams q{a, b, c, 0.0, beta};
                    if (q.r() == 0.0) continue;
                    const ComplexMatrix h = qubit_hamiltonian(q).matrix();
                    const ComplexMatrix rho = opqsl::testing::dense_gibbs(h, beta);
                    for (double t : {0.0, 0.013, 0.1, 0.77, 2.5}) {
                        const Complex dense = opqsl::testing::dense_autocorr(h, pauli_x(), rho, t);
                        const QubitReference ref = qubit_reference(q, t);
                        EXPECT_NEAR(ref.re, dense.real(), 1e-10) << a << ' ' << b << ' ' << c << ' ' << beta << ' ' << t;
                        EXPECT_NEAR(ref.im, dense.imag(), 1e-10) << a << ' ' << b << ' ' << c << ' ' << beta << ' ' << t;
                    }
                }
}

TEST(QubitClosedForm, CurveMatchesReference) {
    const QubitParams q{10.0, 1.0, 1.0, 0.0, 10.0};
    const Prepared p = prepare(qubit_hamiltonian(q), pauli_x(), q.beta);
    const TimeGrid grid(0.0, 1.0, 1001);
    const CorrelationCurve c = autocorr_curve(p.op, p.rho, grid);
    EXPECT_NEAR(c.c0, 1.0, 1e-12);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const QubitReference ref = qubit_reference(q, grid[i]);
        EXPECT_NEAR(c.values[i].real(), ref.re, 1e-10);
        EXPECT_NEAR(c.values[i].imag(), ref.im, 1e-10);
    }
}

TEST(QubitClosedForm, IdentityShiftDropsOut) {
    const TimeGrid grid(0.0, 2.0, 41);
    QubitParams base{0.7, -0.4, 1.3, 0.0, 2.0};
    const Prepared p0 = prepare(qubit_hamiltonian(base), pauli_x(), base.beta);
    const CorrelationCurve c0 = autocorr_curve(p0.op, p0.rho, grid);
    for (double k : {-5.0, 0.5, 100.0}) {
        QubitParams q = base;
        q.k = k;
        const Prepared p = prepare(qubit_hamiltonian(q), pauli_x(), q.beta);
        const CorrelationCurve c = autocorr_curve(p.op, p.rho, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LE(std::abs(c.values[i] - c0.values[i]), 1e-10);
        EXPECT_NEAR(anchored_sum(p.op, p.rho, p.spectrum.ground_energy()),
                    anchored_sum(p0.op, p0.rho, p0.spectrum.ground_energy()), 1e-10);
    }
}

TEST(QubitClosedForm, ScalesAndVelocities) {
    const QubitParams q{10.0, 1.0, 1.0, 0.0, 10.0};
    const Prepared p = prepare(qubit_hamiltonian(q), pauli_x(), q.beta);
    const QubitReference ref = qubit_reference(q, 0.0);
    EXPECT_NEAR(velocity_moment(p.op, p.rho), 8.0, 1e-10);
    EXPECT_DOUBLE_EQ(ref.mt_scale, 8.0);
    const double anchored = anchored_sum(p.op, p.rho, p.spectrum.ground_energy());
    EXPECT_NEAR(anchored, kQubitAnchored, 1e-12);
    EXPECT_NEAR(ref.ml_scale, kQubitAnchored, 1e-14);
    EXPECT_NEAR(liouvillian_ml_velocity(p.op, p.rho), ref.liouvillian_ml_scale, 1e-12);
    EXPECT_NEAR(autocorr_crossover(8.0, anchored), kQubitCrossover, 1e-12);
    EXPECT_NEAR(autocorr_crossover(8.0, anchored), 0.0718, 1e-3);
    EXPECT_THROW(qubit_reference(QubitParams{}, 0.0), std::domain_error);
}

TEST(QubitClosedForm, VelocityIsCommutatorNorm) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const HermitianMatrix h = opqsl::testing::random_hermitian(6, rng);
        const ComplexMatrix o = opqsl::testing::random_complex(6, rng);
        const double beta = 0.3 * trial / 10.0;
        const Prepared p = prepare(h, o, beta);
        const ComplexMatrix rho = opqsl::testing::dense_gibbs(h.matrix(), beta);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
        const ComplexMatrix sqrt_rho = es.operatorSqrt();
        const double dense = commutator(h.matrix(), o * sqrt_rho).squaredNorm();
        EXPECT_NEAR(velocity_moment(p.op, p.rho), dense, 1e-8 * std::max(1.0, dense));
    }
}

TEST(Floors, CrossoverFlipsOrdering) {
    const double c0 = 1.0;
    const double v = 8.0;
    const double anchored = kQubitAnchored;
    const double tc = autocorr_crossover(v, anchored);
    EXPECT_GT(mt_autocorr_floor(c0, v, tc - 1e-6), ml_autocorr_floor(c0, anchored, tc - 1e-6));
    EXPECT_LT(mt_autocorr_floor(c0, v, tc + 1e-6), ml_autocorr_floor(c0, anchored, tc + 1e-6));
    EXPECT_THROW(autocorr_crossover(0.0, 1.0), std::domain_error);
    EXPECT_THROW(ml_autocorr_floor(1.0, -1.0, 0.1), std::invalid_argument);
    EXPECT_THROW(mt_autocorr_floor(1.0, 1.0, -0.1), std::invalid_argument);
}

TEST(Floors, HoldOnRandomSystems) {
    Rng rng(32);
    const TimeGrid grid(0.0, 4.0, 201);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index d = 2 + trial % 7;
        const HermitianMatrix h = opqsl::testing::random_hermitian(d, rng, 0.2 + 0.1 * (trial % 5));
        const ComplexMatrix o = opqsl::testing::random_complex(d, rng);
        const double beta = (trial % 4) * 1.5;
        const Prepared p = prepare(h, o, beta);
        const CorrelationCurve c = autocorr_curve(p.op, p.rho, grid);
        const double vel = velocity_moment(p.op, p.rho);
        const double anchored = anchored_sum(p.op, p.rho, p.spectrum.ground_energy());
        const double lml = liouvillian_ml_velocity(p.op, p.rho);
        EXPECT_LE(lml, anchored + 1e-10);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double t = grid[i];
            const double re = c.values[i].real();
            const double tol = 1e-10 * std::max(1.0, c.c0);
            EXPECT_GE(re + tol, mt_autocorr_floor(c.c0, vel, t));
            EXPECT_GE(re + tol, ml_autocorr_floor(c.c0, anchored, t));
            EXPECT_GE(re + tol, c.c0 - alpha_constant() * lml * t);
            EXPECT_LE(std::abs(c.values[i].imag()), im_autocorr_ceiling(anchored, t) + tol);
        }
    }
}

TEST(Curve, MatchesDenseOracle) {
    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const HermitianMatrix h = opqsl::testing::random_hermitian(5, rng);
        const ComplexMatrix o = opqsl::testing::random_complex(5, rng);
        const double beta = 0.5 * trial;
        const Prepared p = prepare(h, o, beta);
        const ComplexMatrix rho = opqsl::testing::dense_gibbs(h.matrix(), beta);
        const TimeGrid grid(0.0, 3.0, 7);
        const CorrelationCurve c = autocorr_curve(p.op, p.rho, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Complex dense = opqsl::testing::dense_autocorr(h.matrix(), o, rho, grid[i]);
            EXPECT_LE(std::abs(c.values[i] - dense), 1e-9);
        }
    }
}

TEST(Curve, NegativeTimesAreConjugates) {
    Rng rng(34);
    const HermitianMatrix h = opqsl::testing::random_hermitian(4, rng);
    const Prepared p = prepare(h, opqsl::testing::random_hermitian(4, rng).matrix(), 1.3);
    const CorrelationCurve fwd = autocorr_curve(p.op, p.rho, TimeGrid(0.0, 2.0, 21));
    const CorrelationCurve bwd = autocorr_curve(p.op, p.rho, TimeGrid(-2.0, 0.0, 21));
    for (std::size_t i = 0; i < 21; ++i) {
        EXPECT_LE(std::abs(fwd.values[i] - std::conj(bwd.values[20 - i])), 1e-12);
    }
}

TEST(Curve, InfiniteTemperatureIsReal) {
    Rng rng(35);
    const HermitianMatrix h = opqsl::testing::random_hermitian(6, rng);
    const Prepared p = prepare(h, opqsl::testing::random_hermitian(6, rng).matrix(), 0.0);
    const CorrelationCurve c = autocorr_curve(p.op, p.rho, TimeGrid(0.0, 5.0, 51));
    for (const Complex& v : c.values) EXPECT_LE(std::abs(v.imag()), 1e-12);
}

TEST(Curve, NormalizedCopy) {
    const QubitParams q{0.0, 0.0, 1.0, 0.0, 0.0};
    const Prepared p = prepare(qubit_hamiltonian(q), 3.0 * pauli_x(), 0.0);
    const CorrelationCurve c = autocorr_curve(p.op, p.rho, TimeGrid(0.0, 1.0, 3));
    EXPECT_NEAR(c.c0, 9.0, 1e-12);
    const CorrelationCurve n = c.normalized_copy();
    EXPECT_TRUE(n.normalized);
    EXPECT_NEAR(n.values[0].real(), 1.0, 1e-14);
    EXPECT_NEAR(n.values[2].real(), std::cos(2.0), 1e-12);
    CorrelationCurve zero;
    EXPECT_THROW(zero.normalized_copy(), std::domain_error);
}
