#pragma once

#include "dersched/factors.hpp"
#include "dersched/model.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dersched
{

    /// Malformed input: syntax errors, missing keys, wrong types, unknown
    /// keys. The message carries the line or key path.
    class ScenarioParseError : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    /// Parses scenario JSON text. Named built-in profiles expand to full
    /// day series and defaults are applied. Throws ScenarioParseError on
    /// malformed input and ScenarioError when the result fails validation.
    Scenario
    ParseScenarioText(std::string_view text, std::string const& name_hint = "scenario");

    Scenario
    ParseScenarioFile(std::filesystem::path const& path);

    /// Resolves `ref` as a file path first, then as a bundled scenario
    /// name such as "table1_summer".
    Scenario
    LoadScenario(std::string const& ref);

    std::vector<std::string>
    BundledScenarioNames();

    std::optional<std::string>
    BundledScenarioText(std::string_view name);

    /// Canonical JSON with every series written out explicitly. Parsing the
    /// dump yields an equal Scenario.
    std::string
    DumpScenario(Scenario const& s);

    SizingInputs
    ParseSizingInputsText(std::string_view text);

    SizingInputs
    ParseSizingInputsFile(std::filesystem::path const& path);

}
