#pragma once

// Seeded random generators for matrices and manifold points. Draws depend only
// on the seed and call order, so every randomized check is reproducible.

#include <cstddef>
#include <cstdint>
#include <random>

#include "tracemetric/manifold.hpp"

namespace tracemetric {

using Rng = std::mt19937_64;

// Uniform on [lo, hi) from the top 53 bits of one draw.
double uniform(Rng& rng, double lo, double hi);

// Entries uniform in [-range, range].
SymMatrix random_symmetric(std::size_t n, Rng& rng, double range = 1.0);

// Entries uniform in [-1, 1], redrawn until sigma_min / sigma_max >= 0.05.
Matrix random_gl(std::size_t n, Rng& rng);

Matrix random_orthogonal(std::size_t n, Rng& rng);

// C C^T with C from random_gl.
ManifoldPoint random_spd(std::size_t n, Rng& rng);

// C J_p C^T with C from random_gl.
ManifoldPoint random_point(std::size_t n, std::size_t p, Rng& rng);

// random_point rescaled onto det = (-1)^{n-p}.
ManifoldPoint random_unit_det_point(std::size_t n, std::size_t p, Rng& rng);

/// K^{1/2} S K^{1/2} with S = random_symmetric(n, rng, range): a tangent
/// vector whose size is measured by g_K rather than by its entries. SPD K only.
SymMatrix random_tangent(const ManifoldPoint& k, Rng& rng, double range = 1.0);

}  // namespace tracemetric
