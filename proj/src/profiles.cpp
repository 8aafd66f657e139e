#include "dersched/profiles.hpp"

#include "dersched/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dersched
{

    std::optional<Season>
    ParseSeason(std::string const& name)
    {
        if (name == "summer")
        {
            return Season::Summer;
        }
        if (name == "winter")
        {
            return Season::Winter;
        }
        return std::nullopt;
    }

    SunWindow
    SunHours(Season season)
    {
        return season == Season::Summer ? SunWindow{5.5, 20.0} : SunWindow{7.0, 17.0};
    }

    std::vector<double>
    PvShape(Season season, double interval_hours)
    {
        SunWindow sun = SunHours(season);
        std::size_t n = IntervalsPerDay(interval_hours);
        std::vector<double> out(n, 0.0);
        for (std::size_t t = 0; t < n; ++t)
        {
            double h = static_cast<double>(t) * interval_hours;
            if (h > sun.sunrise_h && h < sun.sunset_h)
            {
                double x = (h - sun.sunrise_h) / (sun.sunset_h - sun.sunrise_h);
                out[t] = std::sin(std::numbers::pi * x);
            }
        }
        return out;
    }

    namespace
    {
        double
        Bump(double h, double center, double width)
        {
            double z = (h - center) / width;
            return std::exp(-0.5 * z * z);
        }
    }

    std::vector<double>
    LoadShape(Season season, double interval_hours)
    {
        std::size_t n = IntervalsPerDay(interval_hours);
        std::vector<double> out(n, 0.0);
        for (std::size_t t = 0; t < n; ++t)
        {
            double h = static_cast<double>(t) * interval_hours;
            if (season == Season::Summer)
            {
                out[t] = 0.5 - 0.1 * Bump(h, 4.0, 2.0) + 0.2 * Bump(h, 13.5, 3.0)
                    + 0.45 * Bump(h, 18.75, 1.2);
            }
            else
            {
                out[t] = 0.5 - 0.1 * Bump(h, 3.0, 2.0) + 0.35 * Bump(h, 8.5, 0.9)
                    + 0.45 * Bump(h, 17.75, 1.1);
            }
        }
        double peak = *std::max_element(out.begin(), out.end());
        for (auto& v : out)
        {
            v /= peak;
        }
        return out;
    }

}
