#include "dersched/simulator.hpp"

#include "dersched/factors.hpp"

#include <algorithm>

namespace dersched
{

    ChargeSplit
    SplitChargingPower(double pv_now_kw, double cr_kw, ChargeSource source)
    {
        double pv = std::max(pv_now_kw, 0.0);
        double cr = std::max(cr_kw, 0.0);
        ChargeSplit out;
        out.arb_kw = source == ChargeSource::PvOnly ? std::min(cr, pv) : cr;
        out.nd_kw = std::max(pv - std::min(out.arb_kw, pv), 0.0);
        return out;
    }

    ReserveSampler::ReserveSampler(ReserveConsumption cfg) : Config(cfg), Engine(cfg.rng_seed) { }

    double
    ReserveSampler::Draw(double srp_kw)
    {
        double z = Normal(Engine);
        if (srp_kw <= 0.0)
        {
            return 0.0;
        }
        double sample = srp_kw * (Config.mean_fraction + Config.sigma_fraction * z);
        return std::clamp(sample, 0.0, srp_kw);
    }

    double
    FeederPower(double load_kw, double ucp_kw, double nd_kw, double arb_kw, double consumed_kw)
    {
        return load_kw - (ucp_kw + nd_kw + consumed_kw - arb_kw);
    }

    std::vector<IntervalRecord>
    RunDayAhead(Scenario const& s, RunOptions const& options)
    {
        if (auto issues = ValidateScenario(s); !issues.empty())
        {
            throw ScenarioError(std::move(issues));
        }
        std::size_t const n_der = s.ders.size();
        std::size_t const n_t = s.IntervalCount();
        double const dt = s.interval_hours;

        ModePolicy policy;
        policy.charge_source = s.options.charge_source;
        policy.bulk_threshold_pct = s.options.bulk_threshold_pct;
        policy.full_band_pct = s.options.full_band_pct;

        std::vector<StorageState> states(n_der);
        for (std::size_t i = 0; i < n_der; ++i)
        {
            states[i] = {s.ders[i].soc_init_pct, InitialMode(s.ders[i])};
        }
        ReserveSampler sampler{s.reserve_consumption};

        std::vector<IntervalRecord> records;
        records.reserve(n_t);
        std::vector<FleetMember> fleet(n_der);
        std::vector<double> pv_now(n_der);
        std::vector<double> inverter(n_der);

        for (std::size_t t = 0; t < n_t; ++t)
        {
            IntervalRecord rec;
            rec.index = t;
            rec.time_hours = static_cast<double>(t) * dt;
            rec.load_kw = s.load_kw[t];
            rec.tsrp_kw = s.tsrp_kw[t];
            rec.ders.resize(n_der);

            for (std::size_t i = 0; i < n_der; ++i)
            {
                DerSpec const& d = s.ders[i];
                double pv = d.pv_predicted_kw[t];
                pv_now[i] = pv;
                inverter[i] = d.inverter_rating_kw;
                states[i].mode = options.mode_policy(states[i], d, pv, policy);
                double af = AvailabilityFactorBtm(
                    states[i].soc_pct,
                    d.soc_min_pct,
                    d.storage_capacity_kwh,
                    EffectiveDischargeHours(d, states[i].soc_pct),
                    pv,
                    d.inverter_rating_kw
                );
                fleet[i] = {&d, states[i], af, pv};
                auto& out = rec.ders[i];
                out.id = d.id;
                out.mode = states[i].mode;
                out.pv_kw = pv;
                out.factors.af = af;
            }

            DispatchProblem problem = BuildProblem(fleet, rec.tsrp_kw);
            rec.tsrp_window = FeasibleTsrpRange(problem);
            DispatchSolution solution = Solve(problem);
            if (solution.status != DispatchStatus::Optimal)
            {
                solution = MinimumReserveFallback(problem);
            }
            rec.dispatch_status = solution.status;

            for (auto const& a : solution.allocations)
            {
                auto it = std::find_if(rec.ders.begin(), rec.ders.end(), [&](auto const& x) {
                    return x.id == a.der_id;
                });
                it->factors.df = a.df;
                it->factors.srf = a.srf;
                it->ucp_kw = a.ucp_kw;
                it->srp_kw = a.srp_kw;
                rec.total_srp_kw += a.srp_kw;
            }

            rec.reserve_consumed_kw = sampler.Draw(rec.total_srp_kw);

            for (std::size_t i = 0; i < n_der; ++i)
            {
                DerSpec const& d = s.ders[i];
                auto& out = rec.ders[i];
                double request_kw = 0.0;
                if (out.mode == StorageMode::Discharging)
                {
                    if (rec.total_srp_kw > 0.0)
                    {
                        out.reserve_consumed_kw =
                            rec.reserve_consumed_kw * out.srp_kw / rec.total_srp_kw;
                    }
                    // PV covers the committed block first; storage tops up.
                    request_kw = std::max(out.ucp_kw + out.reserve_consumed_kw - out.pv_kw, 0.0);
                    request_kw = std::min(request_kw, DischargeLimit_kW(d, states[i].soc_pct));
                }
                else if (out.mode == StorageMode::Charging)
                {
                    ChargeCurve curve{s.options.bulk_threshold_pct, d.charge_rate_max_kw};
                    double cr = ChargeRate(states[i].soc_pct, curve, out.pv_kw, s.options.charge_source);
                    if (d.saf_setpoint.has_value())
                    {
                        cr = std::min(cr, *d.saf_setpoint * d.inverter_rating_kw);
                    }
                    request_kw = -SplitChargingPower(out.pv_kw, cr, s.options.charge_source).arb_kw;
                }

                StepResult step = StepSoc(states[i], d, request_kw, dt);
                states[i].soc_pct = step.state.soc_pct;
                out.soc_pct = step.state.soc_pct;
                out.storage_kw = step.delivered_kwh / dt;

                if (out.mode != StorageMode::Discharging)
                {
                    // Report what the battery actually absorbed so the
                    // energy balance holds when the ceiling clamps a step.
                    ChargeSplit split = SplitChargingPower(
                        out.pv_kw, std::max(-out.storage_kw, 0.0), ChargeSource::Grid
                    );
                    out.arb_kw = split.arb_kw;
                    out.nd_kw = split.nd_kw;
                    out.factors.saf = out.arb_kw / d.inverter_rating_kw;
                    out.factors.ndf = out.nd_kw / d.inverter_rating_kw;
                }
                rec.total_ucp_kw += out.ucp_kw;
                rec.total_nd_kw += out.nd_kw;
                rec.total_arb_kw += out.arb_kw;
            }

            rec.feeder_kw = FeederPower(
                rec.load_kw, rec.total_ucp_kw, rec.total_nd_kw, rec.total_arb_kw, rec.reserve_consumed_kw
            );
            if (s.utility_storage.has_value())
            {
                auto const& u = *s.utility_storage;
                rec.utility_af = AvailabilityFactorUtility(
                    u.soc_pct, u.soc_min_pct, u.capacity_kwh, u.discharge_hours, pv_now, inverter, u.inverter_kw
                );
            }
            records.push_back(std::move(rec));
        }
        return records;
    }

}
