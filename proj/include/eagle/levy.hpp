#pragma once

#include <cstddef>
#include <vector>

#include "eagle/rng.hpp"

namespace eagle {

/// Parameters of the symmetric stable law with characteristic function
/// exp(-alpha |k|^beta) and a multiplier applied to every drawn step.
struct LevyConfig {
    double beta = 1.5;       ///< tail index, 0 < beta <= 2
    double alpha = 1.0;      ///< scale in the characteristic exponent, > 0
    double step_scale = 1.0; ///< multiplier in decision-variable units, >= 0

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

/// Standard deviation of the numerator draw in Mantegna's transform.
double mantegna_sigma(double beta);

/// One scalar draw from the stable law of `cfg` (step_scale not applied).
///   beta == 2 : exact Gaussian, variance 2 alpha
///   beta == 1 : exact Cauchy, scale alpha
///   otherwise : Mantegna ratio u / |v|^(1/beta), scaled by alpha^(1/beta)
double levy_draw(Rng& rng, const LevyConfig& cfg);

/// `dim` independent draws, each multiplied by cfg.step_scale.
std::vector<double> levy_step(Rng& rng, const LevyConfig& cfg, std::size_t dim);

} // namespace eagle
