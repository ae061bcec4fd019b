#ifndef UPCM_RNG_HPP
#define UPCM_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace upcm {

/// Seeded random source used for every stochastic step in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, so a seed reproduces the same stream on every conforming
/// platform. The std distributions are implementation-defined, so the
/// conversions are done here:
///   - uniform():  top 53 bits of one engine draw, scaled by 2^-53, in [0, 1).
///   - normal():   Box-Muller on two uniforms, u1 mapped to (0, 1] via 1 - u1,
///                 returning the cosine branch first and caching the sine branch.
///   - below(n):   rejection sampling on the raw 64-bit draw (no modulo bias).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double normal();
    std::uint64_t below(std::uint64_t n);

    /// k distinct indices from [0, n), returned in ascending order
    /// (partial Fisher-Yates followed by a sort).
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace upcm

#endif  // UPCM_RNG_HPP
