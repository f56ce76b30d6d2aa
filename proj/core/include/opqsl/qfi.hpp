#pragma once

#include <functional>
#include <span>

#include "opqsl/linops.hpp"

namespace opqsl {

/// Multiplier that maps the raw csch-kernel integral
/// -16 T int_0^inf csch(pi T t) Im C_O(t) dt onto the spectral QFI, with
/// Im C_O taken from the direct trace Tr(O_t O rho). Fixed against
/// qfi_spectral; the raw integral equals 2 F_Q for every system.
inline constexpr double kIntegralRouteCalibration = 0.5;

enum class QfiRoute { spectral, integral };

struct QfiResult {
    double value = 0.0;        // raw * calibration
    double raw = 0.0;          // kernel constant as printed, uncalibrated
    QfiRoute route = QfiRoute::spectral;
    double temperature = 0.0;
    double calibration = 1.0;
};

/// 2 sum_{n != m} (p_n - p_m)^2 / (p_n + p_m) |O_nm|^2 for the Gibbs state.
double qfi_spectral(const Spectrum& s, double beta, const HermitianMatrix& op);

/// Smallest t_max with csch(pi T t_max) <= tol.
double kernel_cutoff(double temperature, double tol = 1e-12);

/// Integral route with Im C supplied as a function of time. Composite
/// Gauss-Legendre panels on [0, t_max], at least 20 nodes per period of
/// `max_frequency`.
QfiResult qfi_from_autocorr(const std::function<double(double)>& im_c, double temperature,
                            double t_max, double max_frequency,
                            double calibration = kIntegralRouteCalibration);

/// Integral route on uniformly sampled Im C (samples[i] = Im C(i * dt), from
/// t = 0). Composite Simpson; the t -> 0 limit of the integrand is taken from
/// a one-sided derivative estimate. Needs an odd sample count >= 3.
QfiResult qfi_from_autocorr(std::span<const double> im_c_samples, double dt, double temperature,
                            double calibration = kIntegralRouteCalibration);

/// int_0^inf x csch(pi q x) dx by the same panel quadrature.
double csch_kernel_moment(double q);

/// 4 beta <O {H - E0, O}>
double qfi_ceiling(const HermitianMatrix& op, const Spectrum& s, double beta);

/// T / (4 M <O {H - E0, O}>)
double cramer_rao_floor(const HermitianMatrix& op, const Spectrum& s, double beta, int measurements);

}  // namespace opqsl
