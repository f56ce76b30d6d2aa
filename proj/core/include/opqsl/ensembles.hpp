#pragma once

#include <cstdint>
#include <utility>

#include "opqsl/linops.hpp"

namespace opqsl {

struct GoeSpec {
    int dim = 2;
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

/// H = M + M^T with M_ij ~ N(0, sigma^2) i.i.d. drawn from a seeded
/// std::mt19937_64 stream. Off-diagonal variance 2 sigma^2, diagonal
/// 4 sigma^2, semicircle radius sigma sqrt(8 d).
HermitianMatrix sample_goe(const GoeSpec& spec);

/// Two independent draws (H from spec.seed, O from seed2).
std::pair<HermitianMatrix, HermitianMatrix> sample_goe_pair(const GoeSpec& spec, std::uint64_t seed2);

/// sigma sqrt(8 d)
double semicircle_radius(const GoeSpec& spec);

}  // namespace opqsl
