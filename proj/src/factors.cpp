#include "dersched/factors.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dersched
{

    namespace
    {
        double
        StoragePower_kW(double soc_pct, double soc_min_pct, double esc_kwh, double discharge_hours)
        {
            if (soc_pct < soc_min_pct)
            {
                std::ostringstream oss;
                oss << "soc_pct " << soc_pct << " below soc_min_pct " << soc_min_pct;
                throw std::domain_error(oss.str());
            }
            if (!(discharge_hours > 0.0))
            {
                throw std::domain_error("discharge_hours must be positive");
            }
            return (soc_pct - soc_min_pct) / 100.0 * esc_kwh / discharge_hours;
        }
    }

    double
    AvailabilityFactorBtm(
        double soc_pct,
        double soc_min_pct,
        double esc_kwh,
        double discharge_hours,
        double pv_pred_kw,
        double inverter_kw
    )
    {
        if (!(inverter_kw > 0.0))
        {
            throw std::domain_error("inverter_kw must be positive");
        }
        double storage_kw = StoragePower_kW(soc_pct, soc_min_pct, esc_kwh, discharge_hours);
        return (storage_kw + pv_pred_kw) / inverter_kw;
    }

    double
    AvailabilityFactorUtility(
        double soc_pct,
        double soc_min_pct,
        double esc_kwh,
        double discharge_hours,
        std::span<double const> pv_pred_kw,
        std::span<double const> inverter_kw,
        double utility_inverter_kw
    )
    {
        if (pv_pred_kw.empty() || pv_pred_kw.size() != inverter_kw.size())
        {
            throw std::domain_error("PV and inverter lists must be nonempty and of equal length");
        }
        double storage_kw = StoragePower_kW(soc_pct, soc_min_pct, esc_kwh, discharge_hours);
        double pv_total = std::accumulate(pv_pred_kw.begin(), pv_pred_kw.end(), 0.0);
        double rating_total =
            std::accumulate(inverter_kw.begin(), inverter_kw.end(), 0.0) + utility_inverter_kw;
        if (!(rating_total > 0.0))
        {
            throw std::domain_error("total inverter rating must be positive");
        }
        return (storage_kw + pv_total) / rating_total;
    }

    OperationalFactors
    FactorsFromPowers(double ucp_kw, double srp_kw, double arb_kw, double nd_kw, double inverter_kw)
    {
        if (!(inverter_kw > 0.0))
        {
            throw std::domain_error("inverter_kw must be positive");
        }
        if (ucp_kw < 0.0 || srp_kw < 0.0 || arb_kw < 0.0 || nd_kw < 0.0)
        {
            throw std::domain_error("powers must be nonnegative");
        }
        if ((ucp_kw + srp_kw) > 0.0 && (arb_kw + nd_kw) > 0.0)
        {
            throw std::invalid_argument(
                "discharge-side and charge-side powers cannot both be positive"
            );
        }
        OperationalFactors f;
        f.df = ucp_kw / inverter_kw;
        f.srf = srp_kw / inverter_kw;
        f.saf = arb_kw / inverter_kw;
        f.ndf = nd_kw / inverter_kw;
        return f;
    }

    double
    SizeInverter(double pv_max_pred_kw, double dr_max_kw, double headroom_fraction)
    {
        return (pv_max_pred_kw + dr_max_kw) * (1.0 + headroom_fraction);
    }

    std::vector<std::string>
    ValidateSizingInputs(SizingInputs const& in)
    {
        std::vector<std::string> issues;
        auto positive = [&](double v, char const* name) {
            if (!(v > 0.0))
            {
                issues.push_back(std::string{name} + " must be > 0");
            }
        };
        auto unit = [&](double v, char const* name) {
            if (!(v > 0.0 && v <= 1.0))
            {
                issues.push_back(std::string{name} + " must be in (0, 1]");
            }
        };
        positive(in.k_p, "k_p");
        positive(in.pv_size_w, "pv_size_w");
        positive(in.dr_max_hours, "dr_max_hours");
        positive(in.ssv_volts, "ssv_volts");
        unit(in.k_t, "k_t");
        unit(in.eta_s, "eta_s");
        unit(in.eta_cc, "eta_cc");
        unit(in.eta_w, "eta_w");
        unit(in.dod, "dod");
        unit(in.d_t, "d_t");
        return issues;
    }

    double
    SizeStorageAh(SizingInputs const& in)
    {
        double denom = in.ssv_volts * in.k_t * in.eta_s * in.eta_cc * in.eta_w * in.dod * in.d_t;
        if (!(denom > 0.0))
        {
            throw std::domain_error("storage sizing denominator must be positive");
        }
        return in.k_p * in.pv_size_w * in.dr_max_hours / denom;
    }

}
