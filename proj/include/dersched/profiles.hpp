#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dersched
{

    /// Synthetic stand-in day shapes. No measured series ship with the
    /// project; these only reproduce the qualitative timing of sun hours
    /// and load peaks.
    enum class Season
    {
        Summer,
        Winter
    };

    std::optional<Season>
    ParseSeason(std::string const& name);

    struct SunWindow
    {
        double sunrise_h;
        double sunset_h;

        double
        SolarNoon_h() const
        {
            return 0.5 * (sunrise_h + sunset_h);
        }
    };

    SunWindow
    SunHours(Season season);

    /// Half-sine between sunrise and sunset, peak 1 at solar noon.
    std::vector<double>
    PvShape(Season season, double interval_hours);

    /// Load normalized to a daily maximum of 1. Summer peaks in the evening;
    /// winter has a morning and an evening peak.
    std::vector<double>
    LoadShape(Season season, double interval_hours);

}
