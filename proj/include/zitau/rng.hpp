#pragma once

#include <cstdint>
#include <random>

namespace zitau {

// One reproducible uniform stream. Backed by std::mt19937_64, whose output
// sequence is fixed by the C++ standard, so identical seeds give identical
// draws on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0,1): the top 53 bits of the engine output
    // shifted to the midpoints of a 2^53 grid. Never returns 0 or 1, so
    // quantile transforms are always well-defined.
    double uniform01() {
        const std::uint64_t x = engine_();
        return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Keyed derivation of independent sub-stream seeds: (base, domain, scenario,
// replication) is folded through the splitmix64 finalizer stage by stage.
// Neighbouring keys land far apart in seed space, and the derivation is a
// pure function, so replications can be generated in any order or in
// parallel and still see identical streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t domain,
                          std::uint64_t scenario, std::uint64_t replication);

inline RngStream derive_stream(std::uint64_t base, std::uint64_t domain,
                               std::uint64_t scenario, std::uint64_t replication) {
    return RngStream(derive_seed(base, domain, scenario, replication));
}

} // namespace zitau
