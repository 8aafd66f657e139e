#include "dersched/scenario_io.hpp"

#include "dersched/profiles.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dersched
{

    namespace
    {
        using Json = nlohmann::json;
        using OrderedJson = nlohmann::ordered_json;

        struct BundledEntry
        {
            char const* name;
            char const* text;
        };

        BundledEntry const Bundled[] = {
#include "bundled_scenarios.inc"
        };

        [[noreturn]] void
        Fail(std::string const& path, std::string const& what)
        {
            throw ScenarioParseError("key '" + path + "': " + what);
        }

        std::string
        Join(std::string const& path, std::string const& key)
        {
            return path.empty() ? key : path + "." + key;
        }

        void
        CheckKnownKeys(Json const& obj, std::set<std::string> const& known, std::string const& path)
        {
            for (auto it = obj.begin(); it != obj.end(); ++it)
            {
                if (!known.contains(it.key()))
                {
                    Fail(Join(path, it.key()), "unknown key");
                }
            }
        }

        Json const&
        RequireObject(Json const& j, std::string const& path)
        {
            if (!j.is_object())
            {
                Fail(path, "expected an object");
            }
            return j;
        }

        Json const&
        Require(Json const& obj, std::string const& key, std::string const& path)
        {
            auto it = obj.find(key);
            if (it == obj.end())
            {
                Fail(Join(path, key), "missing required key");
            }
            return *it;
        }

        double
        AsNumber(Json const& j, std::string const& path)
        {
            if (!j.is_number())
            {
                Fail(path, "expected a number");
            }
            return j.get<double>();
        }

        double
        Number(Json const& obj, std::string const& key, std::string const& path)
        {
            return AsNumber(Require(obj, key, path), Join(path, key));
        }

        std::optional<double>
        OptNumber(Json const& obj, std::string const& key, std::string const& path)
        {
            auto it = obj.find(key);
            if (it == obj.end() || it->is_null())
            {
                return std::nullopt;
            }
            return AsNumber(*it, Join(path, key));
        }

        std::string
        AsString(Json const& j, std::string const& path)
        {
            if (!j.is_string())
            {
                Fail(path, "expected a string");
            }
            return j.get<std::string>();
        }

        std::uint64_t
        AsSeed(Json const& j, std::string const& path)
        {
            if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
            {
                Fail(path, "expected a nonnegative integer");
            }
            return j.get<std::uint64_t>();
        }

        std::vector<double>
        AsSeries(Json const& j, std::string const& path)
        {
            if (!j.is_array())
            {
                Fail(path, "expected an array of numbers");
            }
            std::vector<double> out;
            out.reserve(j.size());
            for (std::size_t i = 0; i < j.size(); ++i)
            {
                out.push_back(AsNumber(j[i], path + "[" + std::to_string(i) + "]"));
            }
            return out;
        }

        std::vector<double>
        Scaled(std::vector<double> shape, double peak)
        {
            for (auto& v : shape)
            {
                v *= peak;
            }
            return shape;
        }

        Season
        AsSeason(Json const& j, std::string const& path)
        {
            auto season = ParseSeason(AsString(j, path));
            if (!season)
            {
                Fail(path, "unknown built-in profile (expected \"summer\" or \"winter\")");
            }
            return *season;
        }

        struct RawDer
        {
            DerSpec spec;
            std::optional<double> pv_peak_kw;
            bool inverter_given = false;
        };

        RawDer
        ParseDer(Json const& j, std::string const& path)
        {
            RequireObject(j, path);
            CheckKnownKeys(
                j,
                {"id", "bus_label", "inverter_rating_kw", "pv_peak_kw", "pv_predicted_kw",
                 "storage_capacity_kwh", "soc_init_pct", "soc_min_pct", "soc_max_pct",
                 "discharge_hours", "discharge_rate_max_kw", "charge_rate_max_kw", "srf_min",
                 "srf_max", "saf_setpoint", "initial_mode"},
                path
            );
            RawDer raw;
            DerSpec& d = raw.spec;
            Json const& id = Require(j, "id", path);
            if (!id.is_number_integer())
            {
                Fail(Join(path, "id"), "expected an integer");
            }
            d.id = id.get<int>();
            if (auto it = j.find("bus_label"); it != j.end())
            {
                d.bus_label = AsString(*it, Join(path, "bus_label"));
            }
            if (auto v = OptNumber(j, "inverter_rating_kw", path))
            {
                d.inverter_rating_kw = *v;
                raw.inverter_given = true;
            }
            raw.pv_peak_kw = OptNumber(j, "pv_peak_kw", path);
            if (auto it = j.find("pv_predicted_kw"); it != j.end())
            {
                d.pv_predicted_kw = AsSeries(*it, Join(path, "pv_predicted_kw"));
            }
            d.storage_capacity_kwh = Number(j, "storage_capacity_kwh", path);
            d.soc_init_pct = Number(j, "soc_init_pct", path);
            d.soc_min_pct = Number(j, "soc_min_pct", path);
            d.soc_max_pct = OptNumber(j, "soc_max_pct", path).value_or(100.0);
            d.discharge_hours = OptNumber(j, "discharge_hours", path).value_or(1.0);
            d.discharge_rate_max_kw = OptNumber(j, "discharge_rate_max_kw", path)
                                          .value_or(d.UsableEnergy_kWh(d.soc_max_pct) / d.discharge_hours);
            d.charge_rate_max_kw = Number(j, "charge_rate_max_kw", path);
            d.srf_min = Number(j, "srf_min", path);
            d.srf_max = Number(j, "srf_max", path);
            d.saf_setpoint = OptNumber(j, "saf_setpoint", path);
            if (auto it = j.find("initial_mode"); it != j.end() && !it->is_null())
            {
                auto mode = ParseStorageMode(AsString(*it, Join(path, "initial_mode")));
                if (!mode)
                {
                    Fail(Join(path, "initial_mode"), "expected charging, discharging or idle");
                }
                d.initial_mode = mode;
            }
            return raw;
        }

        void
        ApplyPvProfiles(std::vector<RawDer>& ders, Json const* pv, double dt)
        {
            std::string const path = "profiles.pv";
            if (pv == nullptr)
            {
                for (std::size_t i = 0; i < ders.size(); ++i)
                {
                    if (ders[i].spec.pv_predicted_kw.empty())
                    {
                        Fail("ders[" + std::to_string(i) + "].pv_predicted_kw",
                             "missing; give it per DER or via profiles.pv");
                    }
                }
                return;
            }
            for (std::size_t i = 0; i < ders.size(); ++i)
            {
                if (!ders[i].spec.pv_predicted_kw.empty())
                {
                    Fail("ders[" + std::to_string(i) + "].pv_predicted_kw",
                         "conflicts with profiles.pv");
                }
            }
            if (pv->is_string())
            {
                Season season = AsSeason(*pv, path);
                auto shape = PvShape(season, dt);
                for (std::size_t i = 0; i < ders.size(); ++i)
                {
                    if (!ders[i].pv_peak_kw)
                    {
                        Fail("ders[" + std::to_string(i) + "].pv_peak_kw",
                             "required with a built-in PV profile");
                    }
                    ders[i].spec.pv_predicted_kw = Scaled(shape, *ders[i].pv_peak_kw);
                }
            }
            else if (pv->is_array())
            {
                if (pv->size() != ders.size())
                {
                    Fail(path, "expected one series per DER");
                }
                for (std::size_t i = 0; i < ders.size(); ++i)
                {
                    ders[i].spec.pv_predicted_kw = AsSeries((*pv)[i], path + "[" + std::to_string(i) + "]");
                }
            }
            else if (pv->is_object())
            {
                for (auto& d : ders)
                {
                    std::string key = std::to_string(d.spec.id);
                    d.spec.pv_predicted_kw = AsSeries(Require(*pv, key, path), Join(path, key));
                }
                if (pv->size() != ders.size())
                {
                    Fail(path, "series keyed by unknown DER id");
                }
            }
            else
            {
                Fail(path, "expected a built-in name, an array of series or an object keyed by DER id");
            }
        }

        std::vector<double>
        ParseLoad(Json const& profiles, double dt)
        {
            Json const& load = Require(profiles, "load", "profiles");
            if (load.is_string())
            {
                Season season = AsSeason(load, "profiles.load");
                double peak = Number(profiles, "load_peak_kw", "profiles");
                return Scaled(LoadShape(season, dt), peak);
            }
            if (profiles.contains("load_peak_kw"))
            {
                Fail("profiles.load_peak_kw", "only valid with a built-in load profile");
            }
            return AsSeries(load, "profiles.load");
        }

        std::string
        LineContext(std::string_view text, std::size_t byte)
        {
            std::size_t line = 1;
            std::size_t col = 1;
            for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                {
                    ++col;
                }
            }
            return "line " + std::to_string(line) + ", column " + std::to_string(col);
        }

        Json
        ParseJson(std::string_view text)
        {
            try
            {
                return Json::parse(text.begin(), text.end());
            }
            catch (Json::parse_error const& e)
            {
                throw ScenarioParseError("syntax error at " + LineContext(text, e.byte) + ": " + e.what());
            }
        }

        std::string
        ReadFile(std::filesystem::path const& path)
        {
            std::ifstream in{path, std::ios::binary};
            if (!in)
            {
                throw std::runtime_error("cannot open '" + path.string() + "'");
            }
            std::ostringstream oss;
            oss << in.rdbuf();
            return oss.str();
        }
    }

    Scenario
    ParseScenarioText(std::string_view text, std::string const& name_hint)
    {
        Json root = ParseJson(text);
        RequireObject(root, "<root>");
        CheckKnownKeys(
            root,
            {"name", "ders", "profiles", "tsrp", "reserve_consumption", "utility_storage", "options"},
            ""
        );
        Scenario s;
        s.name = name_hint;
        if (auto it = root.find("name"); it != root.end())
        {
            s.name = AsString(*it, "name");
        }

        std::optional<std::uint64_t> seed_override;
        if (auto it = root.find("options"); it != root.end())
        {
            Json const& o = RequireObject(*it, "options");
            CheckKnownKeys(
                o,
                {"interval_hours", "charge_source", "headroom_fraction", "rng_seed", "bulk_threshold_pct",
                 "full_band_pct"},
                "options"
            );
            s.interval_hours = OptNumber(o, "interval_hours", "options").value_or(s.interval_hours);
            if (auto cs = o.find("charge_source"); cs != o.end())
            {
                auto src = ParseChargeSource(AsString(*cs, "options.charge_source"));
                if (!src)
                {
                    Fail("options.charge_source", "expected pv_only or grid");
                }
                s.options.charge_source = *src;
            }
            s.options.headroom_fraction =
                OptNumber(o, "headroom_fraction", "options").value_or(s.options.headroom_fraction);
            s.options.bulk_threshold_pct =
                OptNumber(o, "bulk_threshold_pct", "options").value_or(s.options.bulk_threshold_pct);
            s.options.full_band_pct = OptNumber(o, "full_band_pct", "options").value_or(s.options.full_band_pct);
            if (auto rs = o.find("rng_seed"); rs != o.end())
            {
                seed_override = AsSeed(*rs, "options.rng_seed");
            }
        }
        double const dt = s.interval_hours;
        std::size_t const n = IntervalsPerDay(dt);

        Json const& ders = Require(root, "ders", "");
        if (!ders.is_array())
        {
            Fail("ders", "expected an array");
        }
        std::vector<RawDer> raw;
        for (std::size_t i = 0; i < ders.size(); ++i)
        {
            raw.push_back(ParseDer(ders[i], "ders[" + std::to_string(i) + "]"));
        }

        Json const& profiles = RequireObject(Require(root, "profiles", ""), "profiles");
        CheckKnownKeys(profiles, {"pv", "load", "load_peak_kw"}, "profiles");
        auto pv_it = profiles.find("pv");
        ApplyPvProfiles(raw, pv_it == profiles.end() ? nullptr : &*pv_it, dt);
        s.load_kw = ParseLoad(profiles, dt);

        for (auto& r : raw)
        {
            if (!r.inverter_given)
            {
                double pv_max = r.spec.pv_predicted_kw.empty()
                    ? 0.0
                    : *std::max_element(r.spec.pv_predicted_kw.begin(), r.spec.pv_predicted_kw.end());
                r.spec.inverter_rating_kw =
                    SizeInverter(pv_max, r.spec.discharge_rate_max_kw, s.options.headroom_fraction);
            }
            s.ders.push_back(std::move(r.spec));
        }

        Json const& tsrp = Require(root, "tsrp", "");
        if (tsrp.is_number())
        {
            s.tsrp_kw.assign(n, tsrp.get<double>());
        }
        else
        {
            s.tsrp_kw = AsSeries(tsrp, "tsrp");
        }

        if (auto it = root.find("reserve_consumption"); it != root.end())
        {
            Json const& rc = RequireObject(*it, "reserve_consumption");
            CheckKnownKeys(rc, {"mean_fraction", "sigma_fraction", "rng_seed"}, "reserve_consumption");
            auto& cfg = s.reserve_consumption;
            cfg.mean_fraction = OptNumber(rc, "mean_fraction", "reserve_consumption").value_or(cfg.mean_fraction);
            cfg.sigma_fraction =
                OptNumber(rc, "sigma_fraction", "reserve_consumption").value_or(cfg.sigma_fraction);
            if (auto rs = rc.find("rng_seed"); rs != rc.end())
            {
                cfg.rng_seed = AsSeed(*rs, "reserve_consumption.rng_seed");
            }
        }
        if (seed_override)
        {
            s.reserve_consumption.rng_seed = *seed_override;
        }

        if (auto it = root.find("utility_storage"); it != root.end() && !it->is_null())
        {
            Json const& u = RequireObject(*it, "utility_storage");
            std::string const p = "utility_storage";
            CheckKnownKeys(u, {"capacity_kwh", "soc_pct", "soc_min_pct", "discharge_hours", "inverter_kw"}, p);
            UtilityStorage us;
            us.capacity_kwh = Number(u, "capacity_kwh", p);
            us.soc_pct = Number(u, "soc_pct", p);
            us.soc_min_pct = Number(u, "soc_min_pct", p);
            us.discharge_hours = Number(u, "discharge_hours", p);
            us.inverter_kw = Number(u, "inverter_kw", p);
            s.utility_storage = us;
        }

        if (auto issues = ValidateScenario(s); !issues.empty())
        {
            throw ScenarioError(std::move(issues));
        }
        return s;
    }

    Scenario
    ParseScenarioFile(std::filesystem::path const& path)
    {
        return ParseScenarioText(ReadFile(path), path.stem().string());
    }

    std::vector<std::string>
    BundledScenarioNames()
    {
        std::vector<std::string> names;
        for (auto const& e : Bundled)
        {
            names.emplace_back(e.name);
        }
        return names;
    }

    std::optional<std::string>
    BundledScenarioText(std::string_view name)
    {
        for (auto const& e : Bundled)
        {
            if (name == e.name)
            {
                return std::string{e.text};
            }
        }
        return std::nullopt;
    }

    Scenario
    LoadScenario(std::string const& ref)
    {
        std::filesystem::path path{ref};
        if (std::filesystem::is_regular_file(path))
        {
            return ParseScenarioFile(path);
        }
        if (auto text = BundledScenarioText(ref))
        {
            return ParseScenarioText(*text, ref);
        }
        throw std::runtime_error("no scenario file or bundled scenario named '" + ref + "'");
    }

    std::string
    DumpScenario(Scenario const& s)
    {
        OrderedJson root;
        root["name"] = s.name;
        OrderedJson ders = OrderedJson::array();
        for (auto const& d : s.ders)
        {
            OrderedJson j;
            j["id"] = d.id;
            j["bus_label"] = d.bus_label;
            j["inverter_rating_kw"] = d.inverter_rating_kw;
            j["storage_capacity_kwh"] = d.storage_capacity_kwh;
            j["soc_init_pct"] = d.soc_init_pct;
            j["soc_min_pct"] = d.soc_min_pct;
            j["soc_max_pct"] = d.soc_max_pct;
            j["discharge_hours"] = d.discharge_hours;
            j["discharge_rate_max_kw"] = d.discharge_rate_max_kw;
            j["charge_rate_max_kw"] = d.charge_rate_max_kw;
            j["srf_min"] = d.srf_min;
            j["srf_max"] = d.srf_max;
            j["saf_setpoint"] = d.saf_setpoint ? OrderedJson(*d.saf_setpoint) : OrderedJson(nullptr);
            j["initial_mode"] = d.initial_mode ? OrderedJson(ToString(*d.initial_mode)) : OrderedJson(nullptr);
            j["pv_predicted_kw"] = d.pv_predicted_kw;
            ders.push_back(std::move(j));
        }
        root["ders"] = std::move(ders);
        root["profiles"] = {{"load", s.load_kw}};
        root["tsrp"] = s.tsrp_kw;
        root["reserve_consumption"] = {
            {"mean_fraction", s.reserve_consumption.mean_fraction},
            {"sigma_fraction", s.reserve_consumption.sigma_fraction},
            {"rng_seed", s.reserve_consumption.rng_seed},
        };
        if (s.utility_storage)
        {
            auto const& u = *s.utility_storage;
            root["utility_storage"] = {
                {"capacity_kwh", u.capacity_kwh},
                {"soc_pct", u.soc_pct},
                {"soc_min_pct", u.soc_min_pct},
                {"discharge_hours", u.discharge_hours},
                {"inverter_kw", u.inverter_kw},
            };
        }
        root["options"] = {
            {"interval_hours", s.interval_hours},
            {"charge_source", ToString(s.options.charge_source)},
            {"headroom_fraction", s.options.headroom_fraction},
            {"bulk_threshold_pct", s.options.bulk_threshold_pct},
            {"full_band_pct", s.options.full_band_pct},
        };
        return root.dump(2) + "\n";
    }

    SizingInputs
    ParseSizingInputsText(std::string_view text)
    {
        Json root = ParseJson(text);
        RequireObject(root, "<root>");
        CheckKnownKeys(
            root, {"k_p", "pv_size_w", "dr_max_hours", "ssv_volts", "k_t", "eta_s", "eta_cc", "eta_w", "dod", "d_t"}, ""
        );
        SizingInputs in;
        in.k_p = OptNumber(root, "k_p", "").value_or(1.0);
        in.pv_size_w = Number(root, "pv_size_w", "");
        in.dr_max_hours = Number(root, "dr_max_hours", "");
        in.ssv_volts = Number(root, "ssv_volts", "");
        in.k_t = OptNumber(root, "k_t", "").value_or(1.0);
        in.eta_s = OptNumber(root, "eta_s", "").value_or(1.0);
        in.eta_cc = OptNumber(root, "eta_cc", "").value_or(1.0);
        in.eta_w = OptNumber(root, "eta_w", "").value_or(1.0);
        in.dod = OptNumber(root, "dod", "").value_or(1.0);
        in.d_t = OptNumber(root, "d_t", "").value_or(1.0);
        return in;
    }

    SizingInputs
    ParseSizingInputsFile(std::filesystem::path const& path)
    {
        return ParseSizingInputsText(ReadFile(path));
    }

}
