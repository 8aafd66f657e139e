#pragma once

#include "dersched/model.hpp"

#include <vector>

namespace dersched::testing
{

    inline DerSpec
    MakeDer(int id, double inverter_kw, double pv_kw, double esc_kwh, double soc, double soc_min)
    {
        DerSpec d;
        d.id = id;
        d.inverter_rating_kw = inverter_kw;
        d.pv_predicted_kw.assign(96, pv_kw);
        d.storage_capacity_kwh = esc_kwh;
        d.soc_init_pct = soc;
        d.soc_min_pct = soc_min;
        d.soc_max_pct = 100.0;
        d.discharge_hours = 1.0;
        d.discharge_rate_max_kw = esc_kwh;
        d.charge_rate_max_kw = 0.25 * esc_kwh;
        d.srf_min = 0.0;
        d.srf_max = 0.2;
        return d;
    }

    inline Scenario
    MakeScenario(std::vector<DerSpec> ders, double load_kw = 0.0, double tsrp_kw = 0.0)
    {
        Scenario s;
        s.name = "fixture";
        s.ders = std::move(ders);
        s.load_kw.assign(96, load_kw);
        s.tsrp_kw.assign(96, tsrp_kw);
        return s;
    }

}
