#pragma once

#include "dersched/model.hpp"

#include <vector>

namespace dersched
{

    struct DispatchEntry
    {
        int der_id = 0;
        double inverter_kw = 0.0;
        double af_raw = 0.0;
        double af_clamped = 0.0;
        double pv_pred_kw = 0.0;
        double srf_min = 0.0;
        double srf_max = 0.0;

        /// Upper SRF bound once DF is held at or above the PV floor.
        double
        SrfCap() const;
    };

    /// Per-interval reserve allocation problem over the discharging DERs.
    struct DispatchProblem
    {
        std::vector<DispatchEntry> entries;
        double tsrp_kw = 0.0;
    };

    /// One DER of the fleet as seen by the problem builder.
    struct FleetMember
    {
        DerSpec const* spec = nullptr;
        StorageState state;
        double af_raw = 0.0;
        double pv_pred_kw = 0.0;
    };

    /// Keeps only discharging members, clamping AF to 1.
    DispatchProblem
    BuildProblem(std::vector<FleetMember> const& fleet, double tsrp_kw);

    struct TsrpWindow
    {
        double lo_kw = 0.0;
        double hi_kw = 0.0;
        // False when some DER's cap sits below its own srf_min, which
        // leaves no feasible allocation for any TSRP.
        bool per_der_feasible = true;

        bool
        Contains(double tsrp_kw, double tol_kw = 1e-9) const
        {
            return per_der_feasible && tsrp_kw >= lo_kw - tol_kw && tsrp_kw <= hi_kw + tol_kw;
        }
    };

    TsrpWindow
    FeasibleTsrpRange(DispatchProblem const& p);

    enum class DispatchStatus
    {
        Optimal,
        Infeasible
    };

    struct DispatchAllocation
    {
        int der_id = 0;
        double df = 0.0;
        double srf = 0.0;
        double ucp_kw = 0.0;
        double srp_kw = 0.0;
    };

    struct DispatchSolution
    {
        std::vector<DispatchAllocation> allocations;
        double total_ucp_kw = 0.0;
        double total_srp_kw = 0.0;
        DispatchStatus status = DispatchStatus::Infeasible;
    };

    /// Maximizes committed power for the pinned TSRP. With DF + SRF = AF
    /// per DER the objective equals sum(AF x P_inv) - TSRP, so only the
    /// allocation is free; it is filled from srf_min upward in ascending
    /// DER id order. Infeasible TSRP yields an empty Infeasible solution.
    DispatchSolution
    Solve(DispatchProblem const& p);

    /// Allocation used when TSRP cannot be met: every DER at srf_min
    /// (or at its AF when that is lower). Status stays Infeasible.
    DispatchSolution
    MinimumReserveFallback(DispatchProblem const& p);

    struct ConstraintResiduals
    {
        double af_balance = 0.0;     // max |DF + SRF - AF|
        double pv_floor = 0.0;       // max shortfall of DF x P_inv below PV, kW
        double srf_bounds = 0.0;     // max SRF excursion outside its bounds
        double tsrp_balance = 0.0;   // |sum SRF x P_inv - TSRP|, kW
    };

    ConstraintResiduals
    Residuals(DispatchProblem const& p, DispatchSolution const& s);

}
