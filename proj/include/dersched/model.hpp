#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dersched
{

    enum class StorageMode
    {
        Charging,
        Discharging,
        Idle
    };

    enum class ChargeSource
    {
        PvOnly,
        Grid
    };

    std::string
    ToString(StorageMode mode);

    std::string
    ToString(ChargeSource source);

    std::optional<StorageMode>
    ParseStorageMode(std::string const& text);

    std::optional<ChargeSource>
    ParseChargeSource(std::string const& text);

    /// Static description of one solar-plus-storage DER behind a single
    /// inverter. SoC quantities are percentages (0-100).
    struct DerSpec
    {
        int id = 0;
        std::string bus_label;
        double inverter_rating_kw = 0.0;
        std::vector<double> pv_predicted_kw;
        double storage_capacity_kwh = 0.0;
        double soc_init_pct = 0.0;
        double soc_min_pct = 0.0;
        double soc_max_pct = 100.0;
        // Duration that divides usable energy in the availability factor.
        double discharge_hours = 1.0;
        // Power ceiling on storage discharge.
        double discharge_rate_max_kw = 0.0;
        double charge_rate_max_kw = 0.0;
        double srf_min = 0.0;
        double srf_max = 0.0;
        std::optional<double> saf_setpoint;
        // Mode at interval 0. Absent means discharging unless the storage
        // starts at its floor.
        std::optional<StorageMode> initial_mode;

        bool
        operator==(DerSpec const&) const = default;

        double
        UsableEnergy_kWh(double soc_pct) const
        {
            return (soc_pct - soc_min_pct) / 100.0 * storage_capacity_kwh;
        }
    };

    /// Dynamic battery state. A single enum keeps charge and discharge
    /// mutually exclusive.
    struct StorageState
    {
        double soc_pct = 0.0;
        StorageMode mode = StorageMode::Idle;

        bool
        operator==(StorageState const&) const = default;
    };

    /// Per-interval factors, all normalized by inverter rating.
    struct OperationalFactors
    {
        double af = 0.0;
        double df = 0.0;
        double srf = 0.0;
        double saf = 0.0;
        double ndf = 0.0;

        bool
        operator==(OperationalFactors const&) const = default;
    };

    struct ReserveConsumption
    {
        double mean_fraction = 0.5;
        double sigma_fraction = 0.1;
        std::uint64_t rng_seed = 1;

        bool
        operator==(ReserveConsumption const&) const = default;
    };

    /// Utility-scale storage at the substation feeding the availability
    /// factor of the aggregated fleet.
    struct UtilityStorage
    {
        double capacity_kwh = 0.0;
        double soc_pct = 0.0;
        double soc_min_pct = 0.0;
        double discharge_hours = 1.0;
        double inverter_kw = 0.0;

        bool
        operator==(UtilityStorage const&) const = default;
    };

    struct SimulationOptions
    {
        ChargeSource charge_source = ChargeSource::PvOnly;
        double bulk_threshold_pct = 80.0;
        // Charging stops once SoC is within this band of soc_max; the
        // absorption taper only approaches the ceiling asymptotically.
        double full_band_pct = 0.5;
        double headroom_fraction = 0.0;

        bool
        operator==(SimulationOptions const&) const = default;
    };

    struct Scenario
    {
        std::string name;
        std::vector<DerSpec> ders;
        std::vector<double> load_kw;
        std::vector<double> tsrp_kw;
        double interval_hours = 0.25;
        ReserveConsumption reserve_consumption;
        std::optional<UtilityStorage> utility_storage;
        SimulationOptions options;

        bool
        operator==(Scenario const&) const = default;

        std::size_t
        IntervalCount() const
        {
            return load_kw.size();
        }
    };

    struct Violation
    {
        std::optional<int> der_id;
        std::string field;
        std::string message;

        bool
        operator==(Violation const&) const = default;
    };

    std::string
    ToString(Violation const& v);

    /// Every type-invariant violation in the scenario. Empty means valid.
    std::vector<Violation>
    ValidateScenario(Scenario const& s);

    /// Soft consistency findings that never block a run, such as a
    /// discharge power ceiling that disagrees with usable energy over the
    /// discharge duration.
    std::vector<Violation>
    ScenarioWarnings(Scenario const& s);

    class ScenarioError : public std::runtime_error
    {
      public:
        explicit ScenarioError(std::vector<Violation> violations);

        std::vector<Violation> const&
        Violations() const
        {
            return Issues;
        }

      private:
        std::vector<Violation> Issues;
    };

    /// Number of intervals in a 24 h day at the given step.
    std::size_t
    IntervalsPerDay(double interval_hours);

}
