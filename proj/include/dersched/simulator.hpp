#pragma once

#include "dersched/dispatch.hpp"
#include "dersched/model.hpp"
#include "dersched/storage.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace dersched
{

    struct DerInterval
    {
        int id = 0;
        StorageMode mode = StorageMode::Idle;
        double pv_kw = 0.0;
        OperationalFactors factors;
        double ucp_kw = 0.0;
        double nd_kw = 0.0;
        double srp_kw = 0.0;
        double arb_kw = 0.0;
        double reserve_consumed_kw = 0.0;
        // Power actually exchanged with the battery, + discharge.
        double storage_kw = 0.0;
        // SoC at the end of the interval.
        double soc_pct = 0.0;
    };

    struct IntervalRecord
    {
        std::size_t index = 0;
        double time_hours = 0.0;
        std::vector<DerInterval> ders;
        double total_ucp_kw = 0.0;
        double total_nd_kw = 0.0;
        double total_srp_kw = 0.0;
        double total_arb_kw = 0.0;
        double reserve_consumed_kw = 0.0;
        double load_kw = 0.0;
        double feeder_kw = 0.0;
        double tsrp_kw = 0.0;
        TsrpWindow tsrp_window;
        DispatchStatus dispatch_status = DispatchStatus::Optimal;
        std::optional<double> utility_af;

        bool
        TsrpUnmet() const
        {
            return dispatch_status == DispatchStatus::Infeasible;
        }

        /// Net DER injection: committed plus non-dispatchable plus consumed
        /// reserve, less arbitrage charging.
        double
        DerNet_kW() const
        {
            return total_ucp_kw + total_nd_kw + reserve_consumed_kw - total_arb_kw;
        }
    };

    struct ChargeSplit
    {
        double nd_kw = 0.0;
        double arb_kw = 0.0;
    };

    /// Splits PV between direct injection and storage charging. At night
    /// the whole charge comes from the grid and ND is zero.
    ChargeSplit
    SplitChargingPower(double pv_now_kw, double cr_kw, ChargeSource source);

    /// Seeded sampler of consumed spinning reserve. One standard-normal
    /// draw per call regardless of SRP, so draw order is fixed by the
    /// number of calls.
    class ReserveSampler
    {
      public:
        explicit ReserveSampler(ReserveConsumption cfg);

        double
        Draw(double srp_kw);

      private:
        ReserveConsumption Config;
        std::mt19937_64 Engine;
        std::normal_distribution<double> Normal{0.0, 1.0};
    };

    double
    FeederPower(double load_kw, double ucp_kw, double nd_kw, double arb_kw, double consumed_kw);

    struct RunOptions
    {
        ModeFunction mode_policy = DecideMode;
    };

    /// Simulates the day interval by interval. Throws ScenarioError when
    /// the scenario fails validation.
    std::vector<IntervalRecord>
    RunDayAhead(Scenario const& s, RunOptions const& options = {});

}
