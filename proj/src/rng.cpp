#include "eagle/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eagle {

std::uint64_t mix_seed(std::uint64_t root, std::uint64_t stream) noexcept
{
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t Rng::next_u64()
{
    return engine_();
}

double Rng::uniform01()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
    if (!(lo <= hi))
        throw std::invalid_argument("Rng::uniform: lo > hi");
    if (lo == hi)
        return lo;
    const double x = lo + (hi - lo) * uniform01();
    // Rounding can land exactly on hi for wide intervals.
    return x < hi ? x : std::nextafter(hi, lo);
}

double Rng::normal(double mu, double sigma)
{
    if (!(sigma >= 0.0))
        throw std::invalid_argument("Rng::normal: sigma must be non-negative");
    double z;
    if (spare_normal_) {
        z = *spare_normal_;
        spare_normal_.reset();
    }
    else {
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_normal_ = v * m;
        z = u * m;
    }
    if (sigma == 0.0)
        return mu;
    return mu + sigma * z;
}

std::size_t Rng::index(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("Rng::index: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

Rng Rng::split(std::uint64_t stream) const
{
    return Rng(mix_seed(seed_, stream));
}

} // namespace eagle
