#include "eagle/levy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eagle {

void LevyConfig::validate() const
{
    if (!(beta > 0.0 && beta <= 2.0))
        throw std::invalid_argument("LevyConfig: beta must lie in (0, 2]");
    if (!(alpha > 0.0))
        throw std::invalid_argument("LevyConfig: alpha must be positive");
    if (!(step_scale >= 0.0) || !std::isfinite(step_scale))
        throw std::invalid_argument("LevyConfig: step_scale must be finite and non-negative");
}

double mantegna_sigma(double beta)
{
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

double levy_draw(Rng& rng, const LevyConfig& cfg)
{
    if (cfg.beta == 2.0)
        return rng.normal(0.0, std::sqrt(2.0 * cfg.alpha));
    if (cfg.beta == 1.0) {
        // Tangent transform; (0, 1) open so tan never sees +-pi/2.
        double u;
        do {
            u = rng.uniform01();
        } while (u == 0.0);
        return cfg.alpha * std::tan(std::numbers::pi * (u - 0.5));
    }
    const double u = rng.normal(0.0, mantegna_sigma(cfg.beta));
    double v;
    do {
        v = rng.normal(0.0, 1.0);
    } while (v == 0.0);
    return std::pow(cfg.alpha, 1.0 / cfg.beta) * u / std::pow(std::abs(v), 1.0 / cfg.beta);
}

std::vector<double> levy_step(Rng& rng, const LevyConfig& cfg, std::size_t dim)
{
    cfg.validate();
    if (dim == 0)
        throw std::invalid_argument("levy_step: dim must be at least 1");
    std::vector<double> step(dim);
    for (auto& s : step)
        s = cfg.step_scale * levy_draw(rng, cfg);
    return step;
}

} // namespace eagle
