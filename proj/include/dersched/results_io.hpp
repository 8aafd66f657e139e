#pragma once

#include "dersched/simulator.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace dersched
{

    /// Decimal with 6 significant digits, '.' separator, independent of
    /// the process locale.
    std::string
    FormatNumber(double value);

    std::vector<std::string>
    IntervalsHeader(std::span<IntervalRecord const> records);

    std::string
    IntervalsCsv(std::span<IntervalRecord const> records);

    std::string
    SummaryCsv(std::span<IntervalRecord const> records, double interval_hours);

    /// Writes intervals.csv, summary.csv and plotdata/ under `out_dir` and
    /// returns the written paths. Throws std::invalid_argument on an empty
    /// record list and std::runtime_error naming the path on I/O failure.
    std::vector<std::filesystem::path>
    EmitResults(std::span<IntervalRecord const> records, std::filesystem::path const& out_dir);

}
