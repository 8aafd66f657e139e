#include "dersched/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dersched
{

    double
    DispatchEntry::SrfCap() const
    {
        return std::min(srf_max, af_clamped - pv_pred_kw / inverter_kw);
    }

    DispatchProblem
    BuildProblem(std::vector<FleetMember> const& fleet, double tsrp_kw)
    {
        DispatchProblem p;
        p.tsrp_kw = tsrp_kw;
        for (auto const& m : fleet)
        {
            if (m.state.mode != StorageMode::Discharging)
            {
                continue;
            }
            DispatchEntry e;
            e.der_id = m.spec->id;
            e.inverter_kw = m.spec->inverter_rating_kw;
            e.af_raw = m.af_raw;
            e.af_clamped = std::clamp(m.af_raw, 0.0, 1.0);
            e.pv_pred_kw = m.pv_pred_kw;
            e.srf_min = m.spec->srf_min;
            e.srf_max = m.spec->srf_max;
            p.entries.push_back(e);
        }
        std::stable_sort(p.entries.begin(), p.entries.end(), [](auto const& a, auto const& b) {
            return a.der_id < b.der_id;
        });
        return p;
    }

    TsrpWindow
    FeasibleTsrpRange(DispatchProblem const& p)
    {
        TsrpWindow w;
        for (auto const& e : p.entries)
        {
            double cap = e.SrfCap();
            w.lo_kw += e.srf_min * e.inverter_kw;
            w.hi_kw += cap * e.inverter_kw;
            if (cap < e.srf_min)
            {
                w.per_der_feasible = false;
            }
        }
        return w;
    }

    namespace
    {
        DispatchSolution
        FromSrf(DispatchProblem const& p, std::vector<double> const& srf, DispatchStatus status)
        {
            DispatchSolution s;
            s.status = status;
            s.allocations.reserve(p.entries.size());
            for (std::size_t i = 0; i < p.entries.size(); ++i)
            {
                auto const& e = p.entries[i];
                DispatchAllocation a;
                a.der_id = e.der_id;
                a.srf = srf[i];
                a.df = e.af_clamped - srf[i];
                a.ucp_kw = a.df * e.inverter_kw;
                a.srp_kw = a.srf * e.inverter_kw;
                s.total_ucp_kw += a.ucp_kw;
                s.total_srp_kw += a.srp_kw;
                s.allocations.push_back(a);
            }
            return s;
        }
    }

    DispatchSolution
    Solve(DispatchProblem const& p)
    {
        TsrpWindow w = FeasibleTsrpRange(p);
        double tol = 1e-9 * std::max(1.0, p.tsrp_kw);
        if (!w.Contains(p.tsrp_kw, tol))
        {
            return DispatchSolution{};
        }
        std::vector<double> srf(p.entries.size());
        double residual = p.tsrp_kw;
        for (std::size_t i = 0; i < p.entries.size(); ++i)
        {
            srf[i] = p.entries[i].srf_min;
            residual -= srf[i] * p.entries[i].inverter_kw;
        }
        for (std::size_t i = 0; i < p.entries.size() && residual > 0.0; ++i)
        {
            auto const& e = p.entries[i];
            double room_kw = (e.SrfCap() - srf[i]) * e.inverter_kw;
            double take_kw = std::min(room_kw, residual);
            if (take_kw <= 0.0)
            {
                continue;
            }
            srf[i] += take_kw / e.inverter_kw;
            residual -= take_kw;
        }
        // Window tolerance admits a TSRP a hair above the caps; the last
        // DER with room absorbs the leftover.
        if (std::abs(residual) > 0.0 && !p.entries.empty())
        {
            std::size_t last = p.entries.size() - 1;
            srf[last] += residual / p.entries[last].inverter_kw;
        }
        return FromSrf(p, srf, DispatchStatus::Optimal);
    }

    DispatchSolution
    MinimumReserveFallback(DispatchProblem const& p)
    {
        std::vector<double> srf(p.entries.size());
        for (std::size_t i = 0; i < p.entries.size(); ++i)
        {
            srf[i] = std::min(p.entries[i].srf_min, p.entries[i].af_clamped);
        }
        return FromSrf(p, srf, DispatchStatus::Infeasible);
    }

    ConstraintResiduals
    Residuals(DispatchProblem const& p, DispatchSolution const& s)
    {
        ConstraintResiduals r;
        double srp_total = 0.0;
        for (std::size_t i = 0; i < p.entries.size() && i < s.allocations.size(); ++i)
        {
            auto const& e = p.entries[i];
            auto const& a = s.allocations[i];
            r.af_balance = std::max(r.af_balance, std::abs(a.df + a.srf - e.af_clamped));
            r.pv_floor = std::max(r.pv_floor, e.pv_pred_kw - a.df * e.inverter_kw);
            r.srf_bounds = std::max({r.srf_bounds, e.srf_min - a.srf, a.srf - e.srf_max});
            srp_total += a.srf * e.inverter_kw;
        }
        r.tsrp_balance = std::abs(srp_total - p.tsrp_kw);
        return r;
    }

}
