#include "dmmsat/rng.hpp"

namespace dmmsat {

std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t instance_idx,
                       std::uint64_t repeat_idx) {
    std::uint64_t z = master_seed;
    z = mix64(z + 0x9E3779B97F4A7C15ull * (instance_idx + 1));
    z = mix64(z + 0x9E3779B97F4A7C15ull * (repeat_idx + 1));
    return z;
}

} // namespace dmmsat
