#include "opqsl/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "opqsl/gapdist.hpp"

namespace opqsl {
namespace {

constexpr double kKernelTailTol = 1e-12;

using Rule = boost::math::quadrature::gauss<double, 20>;

double csch(double x) { return 1.0 / std::sinh(x); }

void require_temperature(double temperature, const char* what) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument(std::string(what) + ": temperature must be positive and finite");
    }
}

void require_tail(double temperature, double t_max, const char* what) {
    if (!(csch(std::numbers::pi * temperature * t_max) <= kKernelTailTol)) {
        throw std::invalid_argument(std::string(what) + ": t_max too short, csch kernel tail above 1e-12");
    }
}

// Composite Gauss-Legendre over [0, t_max] with panels no wider than `width`.
template <typename F>
double panel_integral(F&& f, double t_max, double width) {
    const auto panels = static_cast<std::size_t>(std::ceil(t_max / width));
    const double h = t_max / static_cast<double>(panels);
    double acc = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double lo = h * static_cast<double>(i);
        acc += Rule::integrate(f, lo, lo + h);
    }
    return acc;
}

double panel_width(double temperature, double max_frequency) {
    // One shortest period per 20-node panel, and no wider than the kernel decay length.
    double width = 1.0 / (std::numbers::pi * temperature);
    if (max_frequency > 0.0) width = std::min(width, 2.0 * std::numbers::pi / max_frequency);
    return width;
}

}  // namespace

double qfi_spectral(const Spectrum& s, double beta, const HermitianMatrix& op) {
    if (!(beta > 0.0)) throw std::invalid_argument("qfi_spectral: beta must be positive");
    if (op.dim() != s.dim()) throw std::invalid_argument("qfi_spectral: dimension mismatch");
    const StationaryState rho = gibbs(s, beta);
    const ComplexMatrix o = to_energy_basis(op.matrix(), s).elements();
    double acc = 0.0;
    for (Eigen::Index n = 0; n < s.dim(); ++n) {
        for (Eigen::Index m = 0; m < s.dim(); ++m) {
            if (n == m) continue;
            const double sum = rho[n] + rho[m];
            if (sum == 0.0) continue;
            const double diff = rho[n] - rho[m];
            acc += diff * diff / sum * std::norm(o(n, m));
        }
    }
    return 2.0 * acc;
}

double kernel_cutoff(double temperature, double tol) {
    require_temperature(temperature, "kernel_cutoff");
    // Nudged past the exact crossing so the tail check is not decided by roundoff.
    return (1.0 + 1e-12) * std::asinh(1.0 / tol) / (std::numbers::pi * temperature);
}

QfiResult qfi_from_autocorr(const std::function<double(double)>& im_c, double temperature, double t_max,
                            double max_frequency, double calibration) {
    require_temperature(temperature, "qfi_from_autocorr");
    require_tail(temperature, t_max, "qfi_from_autocorr");
    const double q = std::numbers::pi * temperature;
    auto integrand = [&](double t) { return csch(q * t) * im_c(t); };
    const double integral = panel_integral(integrand, t_max, panel_width(temperature, max_frequency));

    QfiResult out;
    out.raw = -16.0 * temperature * integral;
    out.value = out.raw * calibration;
    out.route = QfiRoute::integral;
    out.temperature = temperature;
    out.calibration = calibration;
    return out;
}

QfiResult qfi_from_autocorr(std::span<const double> im_c_samples, double dt, double temperature,
                            double calibration) {
    require_temperature(temperature, "qfi_from_autocorr");
    const std::size_t n = im_c_samples.size();
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("qfi_from_autocorr: need an odd number (>= 3) of samples");
    if (!(dt > 0.0)) throw std::invalid_argument("qfi_from_autocorr: dt must be positive");
    require_tail(temperature, dt * static_cast<double>(n - 1), "qfi_from_autocorr");

    const double q = std::numbers::pi * temperature;
    // Im C is odd in t: Im C(t) = c1 t + c3 t^3 + ..., so c1 = (8 s1 - s2) / (6 dt) to O(dt^4).
    const double slope = (8.0 * im_c_samples[1] - im_c_samples[2]) / (6.0 * dt);
    auto f = [&](std::size_t i) {
        if (i == 0) return slope / q;
        return csch(q * dt * static_cast<double>(i)) * im_c_samples[i];
    };
    double acc = f(0) + f(n - 1);
    for (std::size_t i = 1; i + 1 < n; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(i);
    const double integral = acc * dt / 3.0;

    QfiResult out;
    out.raw = -16.0 * temperature * integral;
    out.value = out.raw * calibration;
    out.route = QfiRoute::integral;
    out.temperature = temperature;
    out.calibration = calibration;
    return out;
}

double csch_kernel_moment(double q) {
    require_temperature(q, "csch_kernel_moment");
    const double t_max = kernel_cutoff(q, 1e-18);
    auto integrand = [&](double x) { return x * csch(std::numbers::pi * q * x); };
    return panel_integral(integrand, t_max, panel_width(q, 0.0));
}

double qfi_ceiling(const HermitianMatrix& op, const Spectrum& s, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("qfi_ceiling: beta must be positive");
    const double anchored = anchored_sum(to_energy_basis(op.matrix(), s), gibbs(s, beta), s.ground_energy());
    return 4.0 * beta * anchored;
}

double cramer_rao_floor(const HermitianMatrix& op, const Spectrum& s, double beta, int measurements) {
    if (!(beta > 0.0)) throw std::invalid_argument("cramer_rao_floor: beta must be positive");
    if (measurements < 1) throw std::invalid_argument("cramer_rao_floor: need at least one measurement");
    const double anchored = anchored_sum(to_energy_basis(op.matrix(), s), gibbs(s, beta), s.ground_energy());
    if (!(anchored > 0.0)) throw std::domain_error("cramer_rao_floor: anchored expectation vanishes");
    return 1.0 / (beta * 4.0 * measurements * anchored);
}

}  // namespace opqsl
