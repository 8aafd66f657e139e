#include "dersched/storage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dersched
{

    double
    ChargeRate(double soc_pct, ChargeCurve const& curve, double pv_now_kw, ChargeSource source)
    {
        double cr = 0.0;
        if (soc_pct >= 100.0)
        {
            cr = 0.0;
        }
        else if (soc_pct < curve.bulk_threshold_pct)
        {
            cr = curve.cr_max_kw;
        }
        else
        {
            cr = curve.cr_max_kw * (100.0 - soc_pct) / (100.0 - curve.bulk_threshold_pct);
        }
        if (source == ChargeSource::PvOnly)
        {
            cr = std::min(cr, std::max(pv_now_kw, 0.0));
        }
        return std::clamp(cr, 0.0, curve.cr_max_kw);
    }

    double
    DischargeLimit_kW(DerSpec const& spec, double soc_pct)
    {
        double usable = std::max(spec.UsableEnergy_kWh(soc_pct), 0.0);
        return std::min(spec.discharge_rate_max_kw, usable / spec.discharge_hours);
    }

    double
    EffectiveDischargeHours(DerSpec const& spec, double soc_pct)
    {
        if (spec.discharge_rate_max_kw <= 0.0)
        {
            return std::numeric_limits<double>::infinity();
        }
        double usable = std::max(spec.UsableEnergy_kWh(soc_pct), 0.0);
        return std::max(spec.discharge_hours, usable / spec.discharge_rate_max_kw);
    }

    StepResult
    StepSoc(StorageState const& state, DerSpec const& spec, double power_kw, double dt_hours)
    {
        if (!(dt_hours > 0.0))
        {
            throw std::invalid_argument("dt_hours must be positive");
        }
        StepResult r{state, 0.0, false};
        if (power_kw == 0.0)
        {
            return r;
        }
        double limit = power_kw > 0.0 ? DischargeLimit_kW(spec, state.soc_pct) : spec.charge_rate_max_kw;
        if (spec.storage_capacity_kwh <= 0.0)
        {
            limit = 0.0;
        }
        double slack = 1e-9 * std::max(1.0, limit);
        if (std::abs(power_kw) > limit + slack)
        {
            std::ostringstream oss;
            oss << "DER " << spec.id << ": " << (power_kw > 0.0 ? "discharge" : "charge")
                << " request " << std::abs(power_kw) << " kW exceeds limit " << limit << " kW";
            throw RateLimitError(oss.str());
        }
        double soc = state.soc_pct - 100.0 * power_kw * dt_hours / spec.storage_capacity_kwh;
        double clamped = std::clamp(soc, spec.soc_min_pct, spec.soc_max_pct);
        r.clamped = clamped != soc;
        r.state.soc_pct = clamped;
        r.delivered_kwh = spec.storage_capacity_kwh * (state.soc_pct - clamped) / 100.0;
        return r;
    }

    double
    ReserveFloorPct(DerSpec const& spec)
    {
        double reserve_kw = spec.srf_min * spec.inverter_rating_kw;
        if (reserve_kw <= 0.0)
        {
            return spec.soc_min_pct;
        }
        if (spec.storage_capacity_kwh <= 0.0 || spec.discharge_rate_max_kw < reserve_kw)
        {
            return spec.soc_max_pct;
        }
        double floor = spec.soc_min_pct
            + 100.0 * reserve_kw * spec.discharge_hours / spec.storage_capacity_kwh;
        return std::min(floor, spec.soc_max_pct);
    }

    StorageMode
    DecideMode(StorageState const& state, DerSpec const& spec, double pv_now_kw, ModePolicy const& policy)
    {
        StorageMode next = state.mode == StorageMode::Idle ? StorageMode::Charging : state.mode;
        if (state.soc_pct >= spec.soc_max_pct - policy.full_band_pct)
        {
            next = StorageMode::Discharging;
        }
        else if (state.soc_pct <= ReserveFloorPct(spec))
        {
            next = StorageMode::Charging;
        }
        if (next == StorageMode::Charging && policy.charge_source == ChargeSource::PvOnly
            && pv_now_kw <= 0.0)
        {
            return StorageMode::Idle;
        }
        return next;
    }

    StorageMode
    InitialMode(DerSpec const& spec)
    {
        if (spec.initial_mode.has_value())
        {
            return *spec.initial_mode;
        }
        return spec.soc_init_pct <= ReserveFloorPct(spec) ? StorageMode::Charging
                                                           : StorageMode::Discharging;
    }

}
