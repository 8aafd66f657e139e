#include "dersched/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace dersched
{

    std::string
    ToString(StorageMode mode)
    {
        switch (mode)
        {
            case StorageMode::Charging:
                return "charging";
            case StorageMode::Discharging:
                return "discharging";
            case StorageMode::Idle:
                return "idle";
        }
        return "idle";
    }

    std::string
    ToString(ChargeSource source)
    {
        return source == ChargeSource::Grid ? "grid" : "pv_only";
    }

    std::optional<StorageMode>
    ParseStorageMode(std::string const& text)
    {
        if (text == "charging")
        {
            return StorageMode::Charging;
        }
        if (text == "discharging")
        {
            return StorageMode::Discharging;
        }
        if (text == "idle")
        {
            return StorageMode::Idle;
        }
        return std::nullopt;
    }

    std::optional<ChargeSource>
    ParseChargeSource(std::string const& text)
    {
        if (text == "pv_only")
        {
            return ChargeSource::PvOnly;
        }
        if (text == "grid")
        {
            return ChargeSource::Grid;
        }
        return std::nullopt;
    }

    std::string
    ToString(Violation const& v)
    {
        std::ostringstream oss;
        if (v.der_id.has_value())
        {
            oss << "DER " << *v.der_id << ": ";
        }
        oss << v.field << ": " << v.message;
        return oss.str();
    }

    std::size_t
    IntervalsPerDay(double interval_hours)
    {
        if (!(interval_hours > 0.0))
        {
            return 0;
        }
        return static_cast<std::size_t>(std::llround(24.0 / interval_hours));
    }

    namespace
    {
        class Collector
        {
          public:
            explicit Collector(std::vector<Violation>& out) : Out(out) { }

            void
            Add(std::optional<int> id, std::string field, std::string msg)
            {
                Out.push_back({id, std::move(field), std::move(msg)});
            }

            template<typename T>
            void
            Require(bool ok, std::optional<int> id, std::string field, T const& value, std::string const& rule)
            {
                if (!ok)
                {
                    std::ostringstream oss;
                    oss << "value " << value << " violates " << rule;
                    Add(id, std::move(field), oss.str());
                }
            }

          private:
            std::vector<Violation>& Out;
        };

        void
        CheckLength(Collector& c, std::optional<int> id, std::string const& field, std::size_t actual, std::size_t expected)
        {
            if (actual != expected)
            {
                std::ostringstream oss;
                oss << "series length " << actual << " does not match the "
                    << expected << " intervals of the day";
                c.Add(id, field, oss.str());
            }
        }

        void
        ValidateDer(Collector& c, DerSpec const& d, std::size_t expected)
        {
            std::optional<int> id = d.id;
            c.Require(d.inverter_rating_kw > 0.0, id, "inverter_rating_kw", d.inverter_rating_kw, "> 0");
            c.Require(d.storage_capacity_kwh >= 0.0, id, "storage_capacity_kwh", d.storage_capacity_kwh, ">= 0");
            c.Require(d.discharge_hours > 0.0, id, "discharge_hours", d.discharge_hours, "> 0");
            c.Require(d.discharge_rate_max_kw >= 0.0, id, "discharge_rate_max_kw", d.discharge_rate_max_kw, ">= 0");
            c.Require(d.charge_rate_max_kw >= 0.0, id, "charge_rate_max_kw", d.charge_rate_max_kw, ">= 0");
            c.Require(d.soc_min_pct >= 0.0, id, "soc_min_pct", d.soc_min_pct, ">= 0");
            c.Require(d.soc_max_pct <= 100.0, id, "soc_max_pct", d.soc_max_pct, "<= 100");
            c.Require(d.soc_min_pct < d.soc_max_pct, id, "soc_min_pct", d.soc_min_pct, "< soc_max_pct");
            if (d.soc_min_pct < d.soc_max_pct)
            {
                c.Require(d.soc_init_pct >= d.soc_min_pct, id, "soc_init_pct", d.soc_init_pct, ">= soc_min_pct");
                c.Require(d.soc_init_pct <= d.soc_max_pct, id, "soc_init_pct", d.soc_init_pct, "<= soc_max_pct");
            }
            c.Require(d.srf_min >= 0.0, id, "srf_min", d.srf_min, ">= 0");
            c.Require(d.srf_max <= 1.0, id, "srf_max", d.srf_max, "<= 1");
            c.Require(d.srf_min <= d.srf_max, id, "srf_min", d.srf_min, "<= srf_max");
            if (d.saf_setpoint.has_value())
            {
                double saf = *d.saf_setpoint;
                c.Require(saf >= 0.0 && saf <= 1.0, id, "saf_setpoint", saf, "[0, 1]");
            }
            CheckLength(c, id, "pv_predicted_kw", d.pv_predicted_kw.size(), expected);
            for (std::size_t t = 0; t < d.pv_predicted_kw.size(); ++t)
            {
                double pv = d.pv_predicted_kw[t];
                if (!(pv >= 0.0 && pv <= d.inverter_rating_kw))
                {
                    std::ostringstream oss;
                    oss << "entry " << t << " = " << pv
                        << " outside [0, inverter_rating_kw]";
                    c.Add(id, "pv_predicted_kw", oss.str());
                }
            }
        }
    }

    std::vector<Violation>
    ValidateScenario(Scenario const& s)
    {
        std::vector<Violation> out;
        Collector c{out};
        std::size_t expected = IntervalsPerDay(s.interval_hours);
        c.Require(s.interval_hours > 0.0, std::nullopt, "interval_hours", s.interval_hours, "> 0");
        if (s.interval_hours > 0.0
            && std::abs(static_cast<double>(expected) * s.interval_hours - 24.0) > 1e-9)
        {
            c.Add(std::nullopt, "interval_hours", "must divide 24 h evenly");
        }
        std::set<int> ids;
        for (auto const& d : s.ders)
        {
            if (!ids.insert(d.id).second)
            {
                c.Add(d.id, "id", "duplicate DER id");
            }
            ValidateDer(c, d, expected);
        }
        CheckLength(c, std::nullopt, "load_kw", s.load_kw.size(), expected);
        CheckLength(c, std::nullopt, "tsrp_kw", s.tsrp_kw.size(), expected);
        for (std::size_t t = 0; t < s.tsrp_kw.size(); ++t)
        {
            if (!(s.tsrp_kw[t] >= 0.0))
            {
                c.Add(std::nullopt, "tsrp_kw", "entry " + std::to_string(t) + " is negative");
            }
        }
        auto const& rc = s.reserve_consumption;
        c.Require(rc.mean_fraction >= 0.0 && rc.mean_fraction <= 1.0, std::nullopt,
                  "reserve_consumption.mean_fraction", rc.mean_fraction, "[0, 1]");
        c.Require(rc.sigma_fraction >= 0.0 && rc.sigma_fraction <= 1.0, std::nullopt,
                  "reserve_consumption.sigma_fraction", rc.sigma_fraction, "[0, 1]");
        auto const& o = s.options;
        c.Require(o.bulk_threshold_pct > 0.0 && o.bulk_threshold_pct < 100.0, std::nullopt,
                  "options.bulk_threshold_pct", o.bulk_threshold_pct, "(0, 100)");
        c.Require(o.full_band_pct >= 0.0 && o.full_band_pct < 100.0, std::nullopt,
                  "options.full_band_pct", o.full_band_pct, "[0, 100)");
        c.Require(o.headroom_fraction >= 0.0, std::nullopt, "options.headroom_fraction", o.headroom_fraction, ">= 0");
        if (s.utility_storage.has_value())
        {
            auto const& u = *s.utility_storage;
            c.Require(u.capacity_kwh >= 0.0, std::nullopt, "utility_storage.capacity_kwh", u.capacity_kwh, ">= 0");
            c.Require(u.soc_pct >= u.soc_min_pct, std::nullopt, "utility_storage.soc_pct", u.soc_pct, ">= soc_min_pct");
            c.Require(u.soc_min_pct >= 0.0 && u.soc_pct <= 100.0, std::nullopt,
                      "utility_storage.soc_pct", u.soc_pct, "[0, 100]");
            c.Require(u.discharge_hours > 0.0, std::nullopt, "utility_storage.discharge_hours", u.discharge_hours, "> 0");
            c.Require(u.inverter_kw >= 0.0, std::nullopt, "utility_storage.inverter_kw", u.inverter_kw, ">= 0");
        }
        return out;
    }

    std::vector<Violation>
    ScenarioWarnings(Scenario const& s)
    {
        std::vector<Violation> out;
        for (auto const& d : s.ders)
        {
            if (d.discharge_hours <= 0.0 || d.storage_capacity_kwh <= 0.0)
            {
                continue;
            }
            double full_usable = d.UsableEnergy_kWh(d.soc_max_pct);
            double implied_kw = full_usable / d.discharge_hours;
            if (std::abs(implied_kw - d.discharge_rate_max_kw) > 1e-6 * std::max(1.0, implied_kw))
            {
                std::ostringstream oss;
                oss << "usable energy / discharge_hours = " << implied_kw
                    << " kW differs from discharge_rate_max_kw = "
                    << d.discharge_rate_max_kw << " kW";
                out.push_back({d.id, "discharge_rate_max_kw", oss.str()});
            }
            if (d.discharge_rate_max_kw < d.srf_min * d.inverter_rating_kw)
            {
                out.push_back({d.id, "srf_min",
                               "minimum reserve exceeds the storage discharge ceiling"});
            }
        }
        return out;
    }

    namespace
    {
        std::string
        Summarize(std::vector<Violation> const& v)
        {
            std::ostringstream oss;
            oss << "scenario has " << v.size() << " violation(s)";
            if (!v.empty())
            {
                oss << "; first: " << ToString(v.front());
            }
            return oss.str();
        }
    }

    ScenarioError::ScenarioError(std::vector<Violation> violations)
        : std::runtime_error(Summarize(violations)), Issues(std::move(violations))
    {
    }

}
