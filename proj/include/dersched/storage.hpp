#pragma once

#include "dersched/model.hpp"

#include <functional>
#include <stdexcept>

namespace dersched
{

    /// Two-stage charger: constant rate below the bulk threshold, then a
    /// linear taper that reaches zero at 100 % SoC.
    struct ChargeCurve
    {
        double bulk_threshold_pct = 80.0;
        double cr_max_kw = 0.0;
    };

    double
    ChargeRate(double soc_pct, ChargeCurve const& curve, double pv_now_kw, ChargeSource source);

    class RateLimitError : public std::logic_error
    {
      public:
        using std::logic_error::logic_error;
    };

    /// Largest discharge power the storage may deliver at this SoC: the
    /// power ceiling or usable energy over the discharge duration,
    /// whichever is lower.
    double
    DischargeLimit_kW(DerSpec const& spec, double soc_pct);

    /// Discharge duration that makes usable energy / duration equal to
    /// DischargeLimit_kW. Feeding this to the availability factor keeps the
    /// storage term inside the power ceiling.
    double
    EffectiveDischargeHours(DerSpec const& spec, double soc_pct);

    struct StepResult
    {
        StorageState state;
        // Energy that left the battery, kWh. Negative while charging.
        double delivered_kwh = 0.0;
        bool clamped = false;
    };

    /// Advance SoC by `power_kw` (+discharge, -charge) over `dt_hours`,
    /// clamping to [soc_min, soc_max]. The returned energy is what the
    /// battery actually exchanged. Throws RateLimitError when the request
    /// exceeds the discharge limit or the charge ceiling.
    StepResult
    StepSoc(StorageState const& state, DerSpec const& spec, double power_kw, double dt_hours);

    struct ModePolicy
    {
        ChargeSource charge_source = ChargeSource::PvOnly;
        double bulk_threshold_pct = 80.0;
        double full_band_pct = 0.5;
    };

    /// SoC below which the storage can no longer back the DER's minimum
    /// spinning reserve. Never below soc_min; soc_max when the discharge
    /// ceiling alone cannot carry the minimum reserve.
    double
    ReserveFloorPct(DerSpec const& spec);

    /// Hysteresis policy. Full storage discharges; storage at its reserve
    /// floor charges; in between the previous mode is kept. Charging with
    /// PV only and no sun is reported as Idle.
    StorageMode
    DecideMode(StorageState const& state, DerSpec const& spec, double pv_now_kw, ModePolicy const& policy);

    using ModeFunction =
        std::function<StorageMode(StorageState const&, DerSpec const&, double, ModePolicy const&)>;

    StorageMode
    InitialMode(DerSpec const& spec);

}
