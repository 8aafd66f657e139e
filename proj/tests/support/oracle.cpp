#include "oracle.hpp"

#include <cmath>

namespace dersched::testing
{

    namespace
    {
        constexpr std::size_t MaxDers = 4;

        void
        CheckPreconditions(DispatchProblem const& p, double grid_step)
        {
            if (p.entries.size() > MaxDers)
            {
                throw OracleSizeError("oracle handles at most 4 DERs");
            }
            if (!(grid_step >= 1e-4))
            {
                throw std::invalid_argument("grid_step must be at least 1e-4");
            }
        }

        std::vector<double>
        Grid(double lo, double hi, double step)
        {
            std::vector<double> g;
            if (hi < lo)
            {
                return g;
            }
            auto n = static_cast<std::size_t>(std::floor((hi - lo) / step));
            for (std::size_t k = 0; k <= n; ++k)
            {
                g.push_back(lo + static_cast<double>(k) * step);
            }
            if (hi - g.back() > 1e-12)
            {
                g.push_back(hi);
            }
            return g;
        }

        // Checks one full allocation directly against the constraint list.
        bool
        Feasible(DispatchProblem const& p, std::vector<double> const& srf, double last_slack)
        {
            std::size_t last = p.entries.size() - 1;
            for (std::size_t i = 0; i < p.entries.size(); ++i)
            {
                auto const& e = p.entries[i];
                double slack = i == last ? last_slack : 1e-12;
                double af = std::min(e.af_raw, 1.0);
                double df = af - srf[i];
                if (srf[i] < e.srf_min - slack || srf[i] > e.srf_max + slack)
                {
                    return false;
                }
                if (df * e.inverter_kw < e.pv_pred_kw - slack * e.inverter_kw)
                {
                    return false;
                }
                if (df * e.inverter_kw > af * e.inverter_kw + 1e-9)
                {
                    return false;
                }
            }
            return true;
        }

        double
        TotalUcp(DispatchProblem const& p, std::vector<double> const& srf)
        {
            double total = 0.0;
            for (std::size_t i = 0; i < p.entries.size(); ++i)
            {
                total += p.entries[i].inverter_kw * (std::min(p.entries[i].af_raw, 1.0) - srf[i]);
            }
            return total;
        }

        // Enumerates DERs [level, n-1) below a fixed prefix.
        void
        Walk(DispatchProblem const& p, std::vector<std::vector<double>> const& grids, std::vector<double>& srf,
             std::size_t level, double placed_kw, double step, std::optional<OracleResult>& best)
        {
            std::size_t last = p.entries.size() - 1;
            if (level == last)
            {
                auto const& e = p.entries[last];
                srf[last] = (p.tsrp_kw - placed_kw) / e.inverter_kw;
                if (!Feasible(p, srf, step))
                {
                    return;
                }
                double total = TotalUcp(p, srf);
                if (!best)
                {
                    best = OracleResult{total, srf, 0};
                }
                best->feasible_points += 1;
                if (total > best->best_total_ucp_kw)
                {
                    best->best_total_ucp_kw = total;
                    best->srf = srf;
                }
                return;
            }
            for (double v : grids[level])
            {
                srf[level] = v;
                Walk(p, grids, srf, level + 1, placed_kw + v * p.entries[level].inverter_kw, step, best);
            }
        }

        std::vector<std::vector<double>>
        Grids(DispatchProblem const& p, double step)
        {
            std::vector<std::vector<double>> grids;
            for (auto const& e : p.entries)
            {
                grids.push_back(Grid(e.srf_min, e.srf_max, step));
            }
            return grids;
        }

        void
        Merge(std::optional<OracleResult>& into, std::optional<OracleResult> const& part)
        {
            if (!part)
            {
                return;
            }
            if (!into)
            {
                into = part;
                return;
            }
            std::size_t points = into->feasible_points + part->feasible_points;
            if (part->best_total_ucp_kw > into->best_total_ucp_kw)
            {
                into = part;
            }
            into->feasible_points = points;
        }
    }

    std::optional<OracleResult>
    OracleEnumerate(DispatchProblem const& p, double grid_step)
    {
        CheckPreconditions(p, grid_step);
        if (p.entries.empty())
        {
            if (std::abs(p.tsrp_kw) <= 1e-9)
            {
                return OracleResult{0.0, {}, 1};
            }
            return std::nullopt;
        }
        auto grids = Grids(p, grid_step);
        std::vector<double> srf(p.entries.size());
        std::optional<OracleResult> best;
        Walk(p, grids, srf, 0, 0.0, grid_step, best);
        return best;
    }

    std::optional<OracleResult>
    OracleEnumerateParallel(DispatchProblem const& p, double grid_step)
    {
        CheckPreconditions(p, grid_step);
        if (p.entries.size() <= 1)
        {
            return OracleEnumerate(p, grid_step);
        }
        auto grids = Grids(p, grid_step);
        auto const& outer = grids[0];
        auto const n = static_cast<long>(outer.size());
        std::vector<std::optional<OracleResult>> parts(outer.size());
#pragma omp parallel for schedule(static)
        for (long k = 0; k < n; ++k)
        {
            std::vector<double> srf(p.entries.size());
            srf[0] = outer[k];
            Walk(p, grids, srf, 1, outer[k] * p.entries[0].inverter_kw, grid_step, parts[k]);
        }
        // Ordered reduction keeps the result identical to the serial walk.
        std::optional<OracleResult> best;
        for (auto const& part : parts)
        {
            Merge(best, part);
        }
        return best;
    }

}
