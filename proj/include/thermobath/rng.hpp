// rng.hpp — Deterministic, splittable random streams for ensemble work

#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace thermobath {

// Stream families keep different simulators from sharing streams when they
// are driven by the same master seed.
enum class StreamFamily : std::uint64_t {
    langevin = 1,
    micro_one = 2,
    micro_two = 3,
    analysis = 4,
};

// One independent stream per (master seed, family, index). The engine is
// seeded through seed_seq, so neighbouring indices are decorrelated and the
// stream a work unit sees does not depend on which thread runs it.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, StreamFamily family, std::uint64_t index);

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    void fill_normal(Eigen::Ref<Eigen::ArrayXd> out);

private:
    std::mt19937_64 engine_;
    boost::random::normal_distribution<double> normal_;
    boost::random::uniform_01<double> uniform_;
};

} // namespace thermobath
