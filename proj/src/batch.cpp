#include "dersched/batch.hpp"

#include <exception>

namespace dersched
{

    std::vector<DayRun>
    RunBatch(std::span<Scenario const> scenarios, RunOptions const& options)
    {
        std::vector<DayRun> runs(scenarios.size());
        std::vector<std::exception_ptr> errors(scenarios.size());
        auto const n = static_cast<long>(scenarios.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i)
        {
            try
            {
                runs[i] = RunDayAhead(scenarios[i], options);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
        for (auto const& e : errors)
        {
            if (e)
            {
                std::rethrow_exception(e);
            }
        }
        return runs;
    }

    std::vector<DayRun>
    RunBatchSerial(std::span<Scenario const> scenarios, RunOptions const& options)
    {
        std::vector<DayRun> runs;
        runs.reserve(scenarios.size());
        for (auto const& s : scenarios)
        {
            runs.push_back(RunDayAhead(s, options));
        }
        return runs;
    }

    std::vector<Scenario>
    SeedSweep(Scenario const& base, std::span<std::uint64_t const> seeds)
    {
        std::vector<Scenario> out;
        out.reserve(seeds.size());
        for (auto seed : seeds)
        {
            Scenario s = base;
            s.reserve_consumption.rng_seed = seed;
            out.push_back(std::move(s));
        }
        return out;
    }

}
