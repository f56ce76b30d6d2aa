#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace opqsl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Natural units: hbar = k_B = 1 everywhere in the library.

/// Uniform time grid t_min, t_min + h, ..., t_max with `n_points` samples.
class TimeGrid {
public:
    TimeGrid(double t_min, double t_max, std::size_t n_points);

    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    std::size_t size() const { return n_; }
    double step() const { return (t_max_ - t_min_) / static_cast<double>(n_ - 1); }

    // Endpoint is returned exactly as t_max.
    double operator[](std::size_t i) const;
    std::vector<double> points() const;

private:
    double t_min_;
    double t_max_;
    std::size_t n_;
};

/// A sampled real function of time.
struct TimeSeries {
    std::vector<double> grid;
    std::vector<double> values;
};

}  // namespace opqsl
