#ifndef TPTD_SEEDING_HPP
#define TPTD_SEEDING_HPP

#include <cstdint>
#include <initializer_list>
#include <span>

namespace tptd {

/// Pipeline stages that own a distinct seed stream.
enum class SeedStage : std::uint64_t {
    kTrial = 1,
    kIdeal = 2,
    kTch = 3,
    kMtch = 4,
    kBoundary = 5,
    kInterior = 6,
    kEdge = 7,  // m = 2 subproblems
};

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Folds `parts` into `seed` one word at a time. Order matters.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
    return h;
}

[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t seed, SeedStage stage, std::span<const int> key,
                                               std::uint64_t index = 0) noexcept {
    std::uint64_t h = derive_seed(seed, {static_cast<std::uint64_t>(stage), key.size()});
    for (int k : key) h = mix64(h ^ mix64(static_cast<std::uint64_t>(static_cast<std::int64_t>(k))));
    return mix64(h ^ mix64(index));
}

}  // namespace tptd

#endif  // TPTD_SEEDING_HPP
