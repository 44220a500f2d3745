// rng.cpp — Deterministic random streams

#include "thermobath/rng.hpp"

namespace thermobath {

RandomStream::RandomStream(std::uint64_t master_seed, StreamFamily family, std::uint64_t index) {
    const auto fam = static_cast<std::uint64_t>(family);
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(fam), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
}

void RandomStream::fill_normal(Eigen::Ref<Eigen::ArrayXd> out) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = normal_(engine_);
}

} // namespace thermobath
