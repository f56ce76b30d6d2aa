#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "opqsl/diagnostics.hpp"
#include "opqsl/qsl.hpp"
#include "test_support.hpp"

using namespace opqsl;
using opqsl::testing::Rng;

namespace {

// Frozen from an independent mpmath root solve of cos x + x sin x = 1.
constexpr double kTangentPoint = 2.33112237041442261;
constexpr double kAlpha = 0.724611353776708476;

QslVelocities qubit_velocities() {
    const Spectrum s = eigh(HermitianMatrix(pauli_z()));
    return QslVelocities::from(overlap_distribution(to_energy_basis(pauli_x(), s)));
}

double bisect_tangent_point() {
    double lo = 2.0;
    double hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::cos(mid) + mid * std::sin(mid) - 1.0 > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(Alpha, MatchesIndependentRootAndTangency) {
    const double a = alpha_constant();
    const double x = alpha_tangent_point();
    EXPECT_GE(a, 0.7236);
    EXPECT_LE(a, 0.7256);
    EXPECT_NEAR(a, 0.724, 1e-3);
    EXPECT_NEAR(x, kTangentPoint, 1e-12);
    EXPECT_NEAR(a, kAlpha, 1e-12);
    EXPECT_NEAR(x, bisect_tangent_point(), 1e-12);
    EXPECT_NEAR(std::cos(x), 1.0 - a * x, 1e-12);
    EXPECT_LE(std::abs(std::cos(x) + x * std::sin(x) - 1.0), 1e-12);
}

TEST(Alpha, LineStaysBelowCosine) {
    const double a = alpha_constant();
    for (int i = 0; i <= 20000; ++i) {
        const double x = 0.001 * i;
        EXPECT_GE(std::cos(x) - (1.0 - a * x), -1e-12) << x;
    }
}

TEST(Floors, QubitFlow) {
    const QslVelocities v = qubit_velocities();
    EXPECT_DOUBLE_EQ(v.abs_liouvillian, 2.0);
    EXPECT_DOUBLE_EQ(v.second_moment, 4.0);
    for (int i = 0; i <= 1000; ++i) {
        const double t = 0.005 * i;
        EXPECT_NEAR(ml_overlap_floor(v, t), 1.0 - 2.0 * kAlpha * t, 1e-12);
        EXPECT_NEAR(mt_overlap_floor(v, t), 1.0 - 2.0 * t * t, 1e-12);
        EXPECT_GE(std::cos(2.0 * t) + 1e-12, std::max(ml_overlap_floor(v, t), mt_overlap_floor(v, t)));
    }
    EXPECT_DOUBLE_EQ(ml_overlap_floor(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(mt_overlap_floor(v, 0.0), 1.0);
    EXPECT_THROW(ml_overlap_floor(v, -0.1), std::invalid_argument);
}

TEST(Floors, StationaryFlowIsFlat) {
    const QslVelocities v = QslVelocities::from(WeightedGapDistribution({{0.0, 1.0}}, true));
    EXPECT_DOUBLE_EQ(ml_overlap_floor(v, 5.0), 1.0);
    EXPECT_DOUBLE_EQ(mt_overlap_floor(v, 5.0), 1.0);
}

TEST(MinTimes, QubitOrthogonalization) {
    const QslVelocities v = qubit_velocities();
    const double actual = std::numbers::pi / 4.0;  // first zero of cos 2t
    EXPECT_NEAR(mt_min_time(v, 0.0), 1.0 / std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(ml_min_time(v, 0.0), 0.690025069844650474, 1e-12);
    EXPECT_LE(std::max(mt_min_time(v, 0.0), ml_min_time(v, 0.0)), actual);
    EXPECT_DOUBLE_EQ(mt_min_time(v, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(ml_min_time(v, 1.0), 0.0);
    EXPECT_THROW(ml_min_time(v, 1.5), std::invalid_argument);
}

TEST(MinTimes, UnreachableTargetIsInfinite) {
    const QslVelocities v{0.0, 0.0, alpha_constant()};
    EXPECT_TRUE(std::isinf(ml_min_time(v, 0.5)));
    EXPECT_TRUE(std::isinf(mt_min_time(v, 0.5)));
    EXPECT_TRUE(std::isinf(crossover_time(v)));
}

TEST(Crossover, ValuesAndFlip) {
    const QslVelocities v = qubit_velocities();
    EXPECT_NEAR(crossover_time(v), kAlpha, 1e-12);
    const QslVelocities same{1.7, 1.7, alpha_constant()};
    EXPECT_NEAR(crossover_time(same), 2.0 * kAlpha, 1e-12);

    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index d = 2 + trial % 10;
        const Spectrum s = eigh(opqsl::testing::random_hermitian(d, rng));
        const QslVelocities w = QslVelocities::from(
            overlap_distribution(to_energy_basis(opqsl::testing::random_complex(d, rng), s)));
        const double tc = crossover_time(w);
        EXPECT_GE(mt_overlap_floor(w, tc - 1e-6), ml_overlap_floor(w, tc - 1e-6));
        EXPECT_LE(mt_overlap_floor(w, tc + 1e-6), ml_overlap_floor(w, tc + 1e-6));
    }
}

TEST(HamiltonianMl, QubitEqualsLiouvillianForm) {
    const Spectrum s = eigh(HermitianMatrix(pauli_z()));
    const EnergyBasisOperator o = to_energy_basis(pauli_x(), s);
    EXPECT_NEAR(ml_hamiltonian_min_time(o, s, 0.0), 1.0 / (2.0 * kAlpha), 1e-12);
}

TEST(HamiltonianMl, ExtremalSupportSaturates) {
    RealVector e(4);
    e << -1.0, 0.2, 0.9, 3.0;
    ComplexMatrix o = ComplexMatrix::Zero(4, 4);
    o(3, 0) = Complex(0.6, 0.2);
    o(0, 3) = Complex(-0.3, 1.0);
    const EnergyBasisOperator op(o, e);
    Spectrum s{e, ComplexMatrix::Identity(4, 4)};
    const QslVelocities v = QslVelocities::from(overlap_distribution(op));
    for (double target : {0.9, 0.0, -0.5}) {
        EXPECT_NEAR(ml_hamiltonian_min_time(op, s, target), ml_min_time(v, target), 1e-12);
    }
}

TEST(HamiltonianMl, NeverTighterThanLiouvillianForm) {
    Rng rng(22);
    for (int seed = 0; seed < 100; ++seed) {
        const Spectrum s = eigh(opqsl::testing::random_hermitian(8, rng));
        const EnergyBasisOperator o = to_energy_basis(opqsl::testing::random_complex(8, rng), s);
        const QslVelocities v = QslVelocities::from(overlap_distribution(o));
        EXPECT_LE(ml_hamiltonian_min_time(o, s, 0.0), ml_min_time(v, 0.0) + 1e-12);
    }
}

TEST(HamiltonianMl, ZeroDenominator) {
    RealVector e(2);
    e << 0.0, 0.0;
    ComplexMatrix o = ComplexMatrix::Identity(2, 2);
    Spectrum s{e, ComplexMatrix::Identity(2, 2)};
    EXPECT_THROW(ml_hamiltonian_min_time(EnergyBasisOperator(o, e), s, 0.0), std::domain_error);
}

TEST(MaxSpeed, ThreeLevelSpectrum) {
    RealVector e(3);
    e << 0.0, 1.0, 3.0;
    const Spectrum s = eigh(HermitianMatrix(e.cast<Complex>().asDiagonal().toDenseMatrix()));
    const double r = 1.0 / std::numbers::sqrt2;
    const ComplexMatrix omax = max_speed_operator(s, r, r);
    const QslVelocities v = QslVelocities::from(overlap_distribution(to_energy_basis(omax, s)));
    EXPECT_NEAR(v.abs_liouvillian, 3.0, 1e-12);
    EXPECT_NEAR(std::sqrt(v.second_moment), 3.0, 1e-12);
    EXPECT_NO_THROW(HermitianMatrix{omax});
    EXPECT_NO_THROW(HermitianMatrix{max_speed_operator(s, Complex(0.3, 0.4), Complex(0.3, -0.4))});
    EXPECT_THROW(max_speed_operator(s, 0.0, 0.0), std::invalid_argument);
}

TEST(MaxSpeed, BeatsRandomOperators) {
    Rng rng(23);
    const HermitianMatrix h = opqsl::testing::random_hermitian(6, rng);
    const Spectrum s = eigh(h);
    const double top = s.max_energy() - s.ground_energy();
    const double fastest = std::sqrt(second_moment(
        overlap_distribution(to_energy_basis(max_speed_operator(s, 1.0, 1.0), s))));
    EXPECT_NEAR(fastest, top, 1e-10);
    for (int i = 0; i < 1000; ++i) {
        const QslVelocities v = QslVelocities::from(
            overlap_distribution(to_energy_basis(opqsl::testing::random_complex(6, rng), s)));
        EXPECT_LE(std::sqrt(v.second_moment), fastest + 1e-10);
        EXPECT_LE(v.abs_liouvillian, fastest + 1e-10);
    }
}

TEST(MaxSpeed, DegenerateExtremesWarn) {
    std::string seen;
    set_warning_handler([&](std::string_view msg) { seen = msg; });
    RealVector e(3);
    e << -1.0, -1.0, 2.0;
    Spectrum s{e, ComplexMatrix::Identity(3, 3)};
    const ComplexMatrix omax = max_speed_operator(s, 1.0, 1.0);
    set_warning_handler(nullptr);
    EXPECT_NE(seen.find("degenerate"), std::string::npos);
    EXPECT_EQ(omax(2, 0), Complex(1.0));
    EXPECT_EQ(omax(0, 2), Complex(1.0));
    EXPECT_THROW(max_speed_operator(Spectrum{RealVector::Zero(1), ComplexMatrix::Identity(1, 1)}, 1.0, 1.0),
                 std::invalid_argument);
}

TEST(TrigVariants, QubitValuesAndOrdering) {
    const QslVelocities v = qubit_velocities();
    EXPECT_NEAR(trig_ml_min_time(v, 0.0), std::numbers::pi / 8.0, 1e-12);
    EXPECT_NEAR(trig_mt_min_time(v, 0.0), 0.641274915080932048, 1e-12);
    EXPECT_LT(trig_ml_min_time(v, 0.0), ml_min_time(v, 0.0));
    EXPECT_LT(trig_mt_min_time(v, 0.0), mt_min_time(v, 0.0));
    EXPECT_DOUBLE_EQ(trig_ml_min_time(v, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(trig_mt_min_time(v, 1.0), 0.0);
}

TEST(TrigVariants, FloorCurvesAreBelowTheOverlap) {
    Rng rng(24);
    const HermitianMatrix h = opqsl::testing::random_hermitian(5, rng);
    const Spectrum s = eigh(h);
    const WeightedGapDistribution g =
        overlap_distribution(to_energy_basis(opqsl::testing::random_hermitian(5, rng).matrix(), s));
    const QslVelocities v = QslVelocities::from(g);
    const TimeGrid grid(0.0, 3.0, 301);
    for (BoundKind kind : {BoundKind::ml, BoundKind::mt, BoundKind::trig_ml, BoundKind::trig_mt}) {
        const BoundCurve c = overlap_floor_curve(kind, v, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            EXPECT_LE(c.values[i], char_function(g, c.grid[i]).real() + 1e-9);
        }
    }
    EXPECT_THROW(overlap_floor_curve(BoundKind::driven_ml, v, grid), std::invalid_argument);
}

TEST(OperatorAngle, EndpointsAndClamping) {
    EXPECT_DOUBLE_EQ(operator_angle(1.0), 0.0);
    EXPECT_NEAR(operator_angle(0.0), std::numbers::pi / 2.0, 1e-15);
    EXPECT_NEAR(operator_angle(-1.0), std::numbers::pi, 1e-15);
    EXPECT_DOUBLE_EQ(operator_angle(1.0 + 5e-10), 0.0);
    EXPECT_THROW(operator_angle(1.0 + 1e-8), std::domain_error);
    EXPECT_THROW(operator_angle(-1.1), std::domain_error);
}

namespace {

EnergyTrajectories ramp_qubit(double t_end, int n) {
    EnergyTrajectories traj;
    traj.energies.resize(n, 2);
    for (int i = 0; i < n; ++i) {
        const double s = t_end * i / (n - 1);
        traj.grid.push_back(s);
        traj.energies(i, 0) = -s;
        traj.energies(i, 1) = s;
    }
    return traj;
}

}  // namespace

TEST(Driven, ConstantSpectrumReducesToStaticFloor) {
    Rng rng(25);
    const Spectrum s = eigh(opqsl::testing::random_hermitian(5, rng));
    const EnergyBasisOperator o = to_energy_basis(opqsl::testing::random_hermitian(5, rng).matrix(), s);
    EnergyTrajectories traj;
    const int n = 401;
    traj.energies.resize(n, 5);
    for (int i = 0; i < n; ++i) {
        traj.grid.push_back(0.01 * i);
        traj.energies.row(i) = s.energies.transpose();
    }
    const QslVelocities v = QslVelocities::from(overlap_distribution(o));
    for (double t : {0.0, 0.013, 1.0, 2.555, 4.0}) {
        EXPECT_NEAR(driven_ml_floor(o, traj, t), ml_overlap_floor(v, t), 1e-10);
        EXPECT_LE(std::abs(driven_overlap(o, traj, t) - char_function(overlap_distribution(o), t)), 1e-10);
    }
}

TEST(Driven, LinearRampQubit) {
    const EnergyTrajectories traj = ramp_qubit(3.0, 2000);
    RealVector e0(2);
    e0 << 0.0, 0.0;
    const EnergyBasisOperator o(pauli_x(), e0);
    for (int i = 0; i < 2000; ++i) {
        const double t = traj.grid[static_cast<std::size_t>(i)];
        const double floor = driven_ml_floor(o, traj, t);
        const double overlap = driven_overlap(o, traj, t).real();
        // Trapezoid is exact for linear E_j(s).
        EXPECT_NEAR(overlap, std::cos(t * t), 1e-10);
        EXPECT_NEAR(floor, 1.0 - kAlpha * t * t, 1e-10);
        EXPECT_GE(overlap + 1e-12, floor);
    }
}

TEST(Driven, DiagonalOperatorFloorIsOne) {
    const EnergyTrajectories traj = ramp_qubit(1.0, 11);
    RealVector e0 = RealVector::Zero(2);
    const EnergyBasisOperator o(pauli_z(), e0);
    EXPECT_DOUBLE_EQ(driven_ml_floor(o, traj, 0.7), 1.0);
}

TEST(Driven, GridMustCoverInterval) {
    const EnergyTrajectories traj = ramp_qubit(1.0, 11);
    const EnergyBasisOperator o(pauli_x(), RealVector::Zero(2));
    EXPECT_THROW(driven_ml_floor(o, traj, 1.5), std::invalid_argument);
    EnergyTrajectories late = traj;
    late.grid.front() = 0.05;
    EXPECT_THROW(driven_ml_floor(o, late, 0.5), std::invalid_argument);
}

TEST(Driven, CurveMatchesPointwise) {
    const EnergyTrajectories traj = ramp_qubit(2.0, 201);
    const EnergyBasisOperator o(pauli_x(), RealVector::Zero(2));
    const BoundCurve c = driven_ml_curve(o, traj, TimeGrid(0.0, 2.0, 17));
    EXPECT_EQ(c.kind, BoundKind::driven_ml);
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
        EXPECT_DOUBLE_EQ(c.values[i], driven_ml_floor(o, traj, c.grid[i]));
    }
}
