#include "zitau/rng.hpp"

namespace zitau {

namespace {

// splitmix64 finalizer: bijective, well-mixed, cheap.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t domain,
                          std::uint64_t scenario, std::uint64_t replication) {
    std::uint64_t z = mix(base);
    z = mix(z ^ domain);
    z = mix(z ^ scenario);
    z = mix(z ^ replication);
    return z;
}

} // namespace zitau
