#pragma once

#include "dersched/model.hpp"

#include <span>

namespace dersched
{

    /// Availability factor of a DER with behind-the-meter storage: usable
    /// storage power over the discharge duration plus predicted PV, per
    /// unit of inverter rating. Unclamped; may exceed 1.
    /// Throws std::domain_error when soc_pct < soc_min_pct or
    /// discharge_hours / inverter_kw are not positive.
    double
    AvailabilityFactorBtm(
        double soc_pct,
        double soc_min_pct,
        double esc_kwh,
        double discharge_hours,
        double pv_pred_kw,
        double inverter_kw
    );

    /// Availability factor of an aggregated fleet backed only by one
    /// utility-scale storage unit at the substation.
    double
    AvailabilityFactorUtility(
        double soc_pct,
        double soc_min_pct,
        double esc_kwh,
        double discharge_hours,
        std::span<double const> pv_pred_kw,
        std::span<double const> inverter_kw,
        double utility_inverter_kw
    );

    /// DF, SRF, SAF and NDF from allocated powers. `af` is left at 0.
    /// Throws std::invalid_argument if discharge-side (ucp, srp) and
    /// charge-side (arb, nd) powers are both positive.
    OperationalFactors
    FactorsFromPowers(double ucp_kw, double srp_kw, double arb_kw, double nd_kw, double inverter_kw);

    /// Inverter rating covering peak PV plus the storage discharge
    /// ceiling, scaled up by an optional upgrade headroom.
    double
    SizeInverter(double pv_max_pred_kw, double dr_max_kw, double headroom_fraction = 0.0);

    struct SizingInputs
    {
        double k_p = 1.0;
        double pv_size_w = 0.0;
        double dr_max_hours = 0.0;
        double ssv_volts = 0.0;
        double k_t = 1.0;
        double eta_s = 1.0;
        double eta_cc = 1.0;
        double eta_w = 1.0;
        double dod = 1.0;
        double d_t = 1.0;
    };

    std::vector<std::string>
    ValidateSizingInputs(SizingInputs const& in);

    /// Storage size in amp-hours. PV size is in W and the DC bus voltage
    /// in V so the result comes out in Ah.
    double
    SizeStorageAh(SizingInputs const& in);

}
