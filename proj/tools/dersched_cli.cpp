#include "dersched/factors.hpp"
#include "dersched/results_io.hpp"
#include "dersched/scenario_io.hpp"
#include "dersched/simulator.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace dersched;

namespace
{
    constexpr int ExitOk = 0;
    constexpr int ExitValidation = 1;
    constexpr int ExitIo = 2;

    int
    ReportViolations(std::vector<Violation> const& issues)
    {
        for (auto const& v : issues)
        {
            std::cerr << "violation: " << ToString(v) << "\n";
        }
        return ExitValidation;
    }

    std::string
    Clock(double hours)
    {
        int minutes = static_cast<int>(hours * 60.0 + 0.5);
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%02d:%02d", minutes / 60, minutes % 60);
        return buf;
    }

    int
    RunCommand(std::string const& ref, std::string const& out_dir, std::optional<std::uint64_t> seed,
               std::optional<double> tsrp)
    {
        Scenario s = LoadScenario(ref);
        if (seed)
        {
            s.reserve_consumption.rng_seed = *seed;
        }
        if (tsrp)
        {
            s.tsrp_kw.assign(s.tsrp_kw.size(), *tsrp);
        }
        for (auto const& w : ScenarioWarnings(s))
        {
            std::cerr << "warning: " << ToString(w) << "\n";
        }
        auto records = RunDayAhead(s);
        std::size_t unmet = 0;
        for (auto const& r : records)
        {
            if (r.TsrpUnmet())
            {
                ++unmet;
                std::cerr << "interval " << r.index << " (" << Clock(r.time_hours) << "): TSRP "
                          << FormatNumber(r.tsrp_kw) << " kW unmet, running at minimum reserve\n";
            }
        }
        auto files = EmitResults(records, out_dir);
        std::cout << "scenario " << s.name << ": " << records.size() << " intervals, " << unmet
                  << " with TSRP unmet; wrote " << files.size() << " files to " << out_dir << "\n";
        return ExitOk;
    }

    int
    CheckCommand(std::string const& ref)
    {
        Scenario s = LoadScenario(ref);
        auto records = RunDayAhead(s);
        std::size_t infeasible = 0;
        std::cout << "index,time,tsrp_kw,lo_kw,hi_kw,feasible\n";
        for (auto const& r : records)
        {
            bool ok = r.tsrp_window.Contains(r.tsrp_kw, 1e-9 * std::max(1.0, r.tsrp_kw));
            infeasible += ok ? 0 : 1;
            std::cout << r.index << "," << Clock(r.time_hours) << "," << FormatNumber(r.tsrp_kw) << ","
                      << FormatNumber(r.tsrp_window.lo_kw) << "," << FormatNumber(r.tsrp_window.hi_kw) << ","
                      << (ok ? "yes" : "no") << "\n";
        }
        if (infeasible > 0)
        {
            std::cerr << infeasible << " of " << records.size() << " intervals cannot meet TSRP\n";
            return ExitValidation;
        }
        return ExitOk;
    }
}

int
main(int argc, char** argv)
{
    CLI::App app{"Day-ahead unit commitment and spinning reserve scheduler for solar-plus-storage DER fleets"};
    app.require_subcommand(1);

    std::string scenario_ref;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> tsrp;
    auto* run = app.add_subcommand("run", "Simulate one day and write result tables");
    run->add_option("scenario", scenario_ref, "Scenario file or bundled name")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--seed", seed, "Reserve consumption RNG seed");
    run->add_option("--tsrp", tsrp, "Constant TSRP override, kW")->check(CLI::NonNegativeNumber);

    auto* check = app.add_subcommand("check", "Validate a scenario and print per-interval TSRP windows");
    check->add_option("scenario", scenario_ref, "Scenario file or bundled name")->required();

    double pv_kw = 0.0;
    double dr_kw = 0.0;
    double headroom = 0.0;
    auto* size = app.add_subcommand("size", "Inverter rating from peak PV and discharge ceiling");
    size->add_option("--pv-kw", pv_kw, "Peak predicted PV, kW")->required()->check(CLI::NonNegativeNumber);
    size->add_option("--dr-kw", dr_kw, "Storage discharge ceiling, kW")->required()->check(CLI::NonNegativeNumber);
    size->add_option("--headroom", headroom, "Upgrade headroom fraction")->check(CLI::NonNegativeNumber);

    std::string sizing_file;
    auto* size_storage = app.add_subcommand("size-storage", "Storage size in Ah from a JSON sizing file");
    size_storage->add_option("sizing-inputs", sizing_file, "JSON file with sizing inputs")->required();

    auto* dump = app.add_subcommand("dump", "Print the canonical form of a scenario");
    dump->add_option("scenario", scenario_ref, "Scenario file or bundled name")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        return code == 0 ? ExitOk : ExitIo;
    }

    try
    {
        if (*run)
        {
            return RunCommand(scenario_ref, out_dir, seed, tsrp);
        }
        if (*check)
        {
            return CheckCommand(scenario_ref);
        }
        if (*size)
        {
            std::cout << FormatNumber(SizeInverter(pv_kw, dr_kw, headroom)) << "\n";
            return ExitOk;
        }
        if (*size_storage)
        {
            SizingInputs in = ParseSizingInputsFile(sizing_file);
            if (auto issues = ValidateSizingInputs(in); !issues.empty())
            {
                for (auto const& i : issues)
                {
                    std::cerr << "violation: " << i << "\n";
                }
                return ExitValidation;
            }
            std::cout << FormatNumber(SizeStorageAh(in)) << "\n";
            return ExitOk;
        }
        if (*dump)
        {
            std::cout << DumpScenario(LoadScenario(scenario_ref));
            return ExitOk;
        }
    }
    catch (ScenarioError const& e)
    {
        return ReportViolations(e.Violations());
    }
    catch (std::domain_error const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return ExitValidation;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return ExitIo;
    }
    return ExitOk;
}
