#include "dersched/results_io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace dersched
{

    std::string
    FormatNumber(double value)
    {
        if (value == 0.0)
        {
            value = 0.0;
        }
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 6);
        return std::string(buf, res.ptr);
    }

    namespace
    {
        std::string const DerFields[] = {"mode", "soc", "ucp", "nd", "srp", "arb", "af", "df", "srf", "saf", "ndf"};

        void
        WriteFile(std::filesystem::path const& path, std::string const& content)
        {
            std::ofstream out{path, std::ios::binary | std::ios::trunc};
            if (!out)
            {
                throw std::runtime_error("cannot open '" + path.string() + "' for writing");
            }
            out << content;
            out.close();
            if (!out)
            {
                throw std::runtime_error("failed writing '" + path.string() + "'");
            }
        }

        void
        RequireRecords(std::span<IntervalRecord const> records)
        {
            if (records.empty())
            {
                throw std::invalid_argument("no interval records to emit");
            }
        }

        double
        IntervalHours(std::span<IntervalRecord const> records)
        {
            if (records.size() >= 2)
            {
                return records[1].time_hours - records[0].time_hours;
            }
            return 24.0;
        }
    }

    std::vector<std::string>
    IntervalsHeader(std::span<IntervalRecord const> records)
    {
        std::vector<std::string> cols = {
            "index", "time_h", "load_kw", "feeder_kw", "total_ucp_kw", "total_nd_kw",
            "total_srp_kw", "total_arb_kw", "reserve_consumed_kw",
        };
        if (!records.empty())
        {
            for (auto const& d : records.front().ders)
            {
                for (auto const& f : DerFields)
                {
                    cols.push_back("d" + std::to_string(d.id) + "_" + f);
                }
            }
        }
        return cols;
    }

    std::string
    IntervalsCsv(std::span<IntervalRecord const> records)
    {
        RequireRecords(records);
        std::string out;
        auto header = IntervalsHeader(records);
        for (std::size_t i = 0; i < header.size(); ++i)
        {
            out += (i ? "," : "") + header[i];
        }
        out += "\n";
        for (auto const& r : records)
        {
            out += std::to_string(r.index);
            for (double v : {r.time_hours, r.load_kw, r.feeder_kw, r.total_ucp_kw, r.total_nd_kw, r.total_srp_kw,
                             r.total_arb_kw, r.reserve_consumed_kw})
            {
                out += "," + FormatNumber(v);
            }
            for (auto const& d : r.ders)
            {
                out += "," + ToString(d.mode);
                for (double v : {d.soc_pct, d.ucp_kw, d.nd_kw, d.srp_kw, d.arb_kw, d.factors.af, d.factors.df,
                                 d.factors.srf, d.factors.saf, d.factors.ndf})
                {
                    out += "," + FormatNumber(v);
                }
            }
            out += "\n";
        }
        return out;
    }

    std::string
    SummaryCsv(std::span<IntervalRecord const> records, double interval_hours)
    {
        RequireRecords(records);
        struct Row
        {
            char const* name;
            std::function<double(IntervalRecord const&)> get;
        };
        Row const rows[] = {
            {"ucp", [](auto const& r) { return r.total_ucp_kw; }},
            {"nd", [](auto const& r) { return r.total_nd_kw; }},
            {"srp", [](auto const& r) { return r.total_srp_kw; }},
            {"arb", [](auto const& r) { return r.total_arb_kw; }},
            {"reserve_consumed", [](auto const& r) { return r.reserve_consumed_kw; }},
            {"der_net", [](auto const& r) { return r.DerNet_kW(); }},
            {"load", [](auto const& r) { return r.load_kw; }},
            {"feeder", [](auto const& r) { return r.feeder_kw; }},
        };
        std::string out = "category,energy_kwh\n";
        for (auto const& row : rows)
        {
            double total = 0.0;
            for (auto const& r : records)
            {
                total += row.get(r) * interval_hours;
            }
            out += std::string{row.name} + "," + FormatNumber(total) + "\n";
        }
        return out;
    }

    std::vector<std::filesystem::path>
    EmitResults(std::span<IntervalRecord const> records, std::filesystem::path const& out_dir)
    {
        RequireRecords(records);
        std::error_code ec;
        std::filesystem::create_directories(out_dir / "plotdata", ec);
        if (ec)
        {
            throw std::runtime_error("cannot create '" + (out_dir / "plotdata").string() + "': " + ec.message());
        }
        std::vector<std::filesystem::path> written;
        auto emit = [&](std::filesystem::path const& p, std::string const& content) {
            WriteFile(p, content);
            written.push_back(p);
        };
        emit(out_dir / "intervals.csv", IntervalsCsv(records));
        emit(out_dir / "summary.csv", SummaryCsv(records, IntervalHours(records)));

        using Getter = std::function<double(IntervalRecord const&)>;
        auto series = [&](std::string const& file, std::string const& column, Getter const& get) {
            std::string content = "time_h," + column + "\n";
            for (auto const& r : records)
            {
                content += FormatNumber(r.time_hours) + "," + FormatNumber(get(r)) + "\n";
            }
            emit(out_dir / "plotdata" / (file + ".csv"), content);
        };

        // Single-DER profiles and factors track the first DER of the fleet.
        if (!records.front().ders.empty())
        {
            std::string const tag = "der" + std::to_string(records.front().ders.front().id);
            auto der = [](IntervalRecord const& r) -> DerInterval const& { return r.ders.front(); };
            series("fig1_" + tag + "_pv", "pv_kw", [&](auto const& r) { return der(r).pv_kw; });
            series("fig1_" + tag + "_ucp", "ucp_kw", [&](auto const& r) { return der(r).ucp_kw; });
            series("fig1_" + tag + "_nd", "nd_kw", [&](auto const& r) { return der(r).nd_kw; });
            series("fig1_" + tag + "_srp", "srp_kw", [&](auto const& r) { return der(r).srp_kw; });
            series("fig1_" + tag + "_arb", "arb_kw", [&](auto const& r) { return der(r).arb_kw; });
            series("fig1_" + tag + "_soc", "soc_pct", [&](auto const& r) { return der(r).soc_pct; });
            series("fig2_" + tag + "_af", "af", [&](auto const& r) { return der(r).factors.af; });
            series("fig2_" + tag + "_df", "df", [&](auto const& r) { return der(r).factors.df; });
            series("fig2_" + tag + "_srf", "srf", [&](auto const& r) { return der(r).factors.srf; });
            series("fig2_" + tag + "_saf", "saf", [&](auto const& r) { return der(r).factors.saf; });
            series("fig2_" + tag + "_ndf", "ndf", [&](auto const& r) { return der(r).factors.ndf; });
        }
        series("fig3_total_ucp", "ucp_kw", [](auto const& r) { return r.total_ucp_kw; });
        series("fig3_total_nd", "nd_kw", [](auto const& r) { return r.total_nd_kw; });
        series("fig3_total_srp", "srp_kw", [](auto const& r) { return r.total_srp_kw; });
        series("fig3_total_arb", "arb_kw", [](auto const& r) { return r.total_arb_kw; });
        series("fig4_load", "load_kw", [](auto const& r) { return r.load_kw; });
        series("fig4_der_net", "der_net_kw", [](auto const& r) { return r.DerNet_kW(); });
        series("fig4_feeder", "feeder_kw", [](auto const& r) { return r.feeder_kw; });
        return written;
    }

}
