#include "opqsl/ensembles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "opqsl/diagnostics.hpp"

namespace opqsl {

HermitianMatrix sample_goe(const GoeSpec& spec) {
    if (spec.dim < 2) throw std::invalid_argument("sample_goe: dimension must be at least 2");
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("sample_goe: sigma must be positive");
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, spec.sigma);
    Eigen::MatrixXd m(spec.dim, spec.dim);
    // Column-major fill order is part of the reproducibility contract.
    for (int j = 0; j < spec.dim; ++j) {
        for (int i = 0; i < spec.dim; ++i) m(i, j) = normal(rng);
    }
    const Eigen::MatrixXd h = m + m.transpose();
    return HermitianMatrix::from_real(h);
}

std::pair<HermitianMatrix, HermitianMatrix> sample_goe_pair(const GoeSpec& spec, std::uint64_t seed2) {
    if (seed2 == spec.seed) warn("sample_goe_pair: identical seeds give identical (correlated) draws");
    GoeSpec second = spec;
    second.seed = seed2;
    return {sample_goe(spec), sample_goe(second)};
}

double semicircle_radius(const GoeSpec& spec) { return spec.sigma * std::sqrt(8.0 * spec.dim); }

}  // namespace opqsl
