#pragma once

#include "dersched/simulator.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dersched
{

    using DayRun = std::vector<IntervalRecord>;

    /// Runs independent day-runs across OpenMP threads. Each run owns its
    /// record buffer and sampler, so the output matches RunBatchSerial
    /// bit for bit. The first exception raised by any run is rethrown.
    std::vector<DayRun>
    RunBatch(std::span<Scenario const> scenarios, RunOptions const& options = {});

    /// Serial reference for RunBatch.
    std::vector<DayRun>
    RunBatchSerial(std::span<Scenario const> scenarios, RunOptions const& options = {});

    /// One scenario per seed, otherwise identical to `base`.
    std::vector<Scenario>
    SeedSweep(Scenario const& base, std::span<std::uint64_t const> seeds);

}
