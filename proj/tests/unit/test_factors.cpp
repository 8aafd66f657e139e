#include "dersched/factors.hpp"

#include <doctest.h>

#include <array>
#include <random>

using namespace dersched;

TEST_CASE("BTM availability factor worked examples")
{
    // (0.35 x 16 / 1 + 45) / 60
    CHECK(AvailabilityFactorBtm(65, 30, 16, 1, 45, 60) == doctest::Approx(50.6 / 60.0).epsilon(1e-12));
    // Battery term vanishes at the floor.
    CHECK(AvailabilityFactorBtm(30, 30, 123, 1, 45, 60) == 0.75);
    // (0.70 x 22 + 75) / 82.5 exceeds one.
    double af4 = AvailabilityFactorBtm(90, 20, 22, 1, 75, 82.5);
    CHECK(af4 == doctest::Approx(90.4 / 82.5).epsilon(1e-12));
    CHECK(af4 > 1.0);
}

TEST_CASE("BTM availability factor domain errors")
{
    CHECK_THROWS_AS(AvailabilityFactorBtm(20, 30, 16, 1, 45, 60), std::domain_error);
    CHECK_THROWS_AS(AvailabilityFactorBtm(50, 30, 16, 0, 45, 60), std::domain_error);
    CHECK_THROWS_AS(AvailabilityFactorBtm(50, 30, 16, 1, 45, 0), std::domain_error);
}

TEST_CASE("BTM availability factor monotonicity")
{
    std::mt19937_64 rng{11};
    std::uniform_real_distribution<double> u{0.0, 1.0};
    for (int k = 0; k < 500; ++k)
    {
        double soc_min = 50 * u(rng);
        double soc = soc_min + (100 - soc_min) * u(rng);
        double esc = 1 + 50 * u(rng);
        double dr = 0.25 + 4 * u(rng);
        double inv = 10 + 100 * u(rng);
        double pv = inv * u(rng);
        double base = AvailabilityFactorBtm(soc, soc_min, esc, dr, pv, inv);
        CHECK(base >= pv / inv);
        CHECK(AvailabilityFactorBtm(std::min(100.0, soc + 1), soc_min, esc, dr, pv, inv) >= base);
        CHECK(AvailabilityFactorBtm(soc, soc_min, esc * 1.1, dr, pv, inv) >= base);
        CHECK(AvailabilityFactorBtm(soc, soc_min, esc, dr, pv + 0.5, inv) >= base);
        CHECK(AvailabilityFactorBtm(soc, soc_min, esc, dr * 1.1, pv, inv) <= base);
        CHECK(AvailabilityFactorBtm(soc, soc_min, esc, dr, pv, inv * 1.1) <= base);
        CHECK(AvailabilityFactorBtm(soc_min, soc_min, esc, dr, pv, inv) == pv / inv);
    }
}

TEST_CASE("utility-scale availability factor")
{
    std::array<double, 2> pv{45, 60};
    std::array<double, 2> inv{60, 75};
    // (0.6 x 100 / 2 + 105) / (135 + 50)
    CHECK(AvailabilityFactorUtility(80, 20, 100, 2, pv, inv, 50) == doctest::Approx(135.0 / 185.0).epsilon(1e-12));

    std::array<double, 1> pv1{45};
    std::array<double, 1> inv1{60};
    CHECK(AvailabilityFactorUtility(65, 30, 16, 1, pv1, inv1, 0) == AvailabilityFactorBtm(65, 30, 16, 1, 45, 60));

    std::array<double, 2> dark{0, 0};
    CHECK(AvailabilityFactorUtility(20, 20, 100, 2, dark, inv, 50) == 0.0);

    std::array<double, 0> none{};
    CHECK_THROWS_AS(AvailabilityFactorUtility(80, 20, 100, 2, none, none, 50), std::domain_error);
    std::array<double, 1> zero{0};
    CHECK_THROWS_AS(AvailabilityFactorUtility(80, 20, 100, 2, zero, zero, 0), std::domain_error);
}

TEST_CASE("factors from powers")
{
    auto f = FactorsFromPowers(48, 6, 0, 0, 60);
    CHECK(f.df == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(f.srf == doctest::Approx(0.10).epsilon(1e-15));
    CHECK(f.saf == 0.0);
    CHECK(f.af == 0.0);

    auto g = FactorsFromPowers(0, 0, 24, 21, 60);
    CHECK(g.saf == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(g.ndf == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(g.saf + g.ndf == doctest::Approx(45.0 / 60.0).epsilon(1e-15));

    CHECK(FactorsFromPowers(0, 0, 0, 0, 60) == OperationalFactors{});
    CHECK_THROWS_AS(FactorsFromPowers(10, 0, 5, 0, 60), std::invalid_argument);
    CHECK_THROWS_AS(FactorsFromPowers(0, 1, 0, 1, 60), std::invalid_argument);
}

TEST_CASE("factors from powers round-trips to 1e-12 relative")
{
    std::mt19937_64 rng{5};
    std::uniform_real_distribution<double> u{0.0, 1.0};
    for (int k = 0; k < 1000; ++k)
    {
        double inv = 1 + 200 * u(rng);
        bool discharging = k % 2 == 0;
        double a = inv * u(rng);
        double b = inv * u(rng);
        auto f = discharging ? FactorsFromPowers(a, b, 0, 0, inv) : FactorsFromPowers(0, 0, a, b, inv);
        double back_a = (discharging ? f.df : f.saf) * inv;
        double back_b = (discharging ? f.srf : f.ndf) * inv;
        CHECK(std::abs(back_a - a) <= 1e-12 * a);
        CHECK(std::abs(back_b - b) <= 1e-12 * b);
    }
}

TEST_CASE("inverter sizing")
{
    CHECK(SizeInverter(50, 10) == 60.0);
    CHECK(SizeInverter(0, 0) == 0.0);
    CHECK(SizeInverter(50, 10, 0.1) == doctest::Approx(66.0).epsilon(1e-12));
}

TEST_CASE("storage sizing in Ah")
{
    SizingInputs in{1, 10000, 5, 48, 0.7, 0.9, 0.95, 0.98, 0.8, 1};
    CHECK(SizeStorageAh(in) == doctest::Approx(2219.9).epsilon(0.1 / 2219.9));
    CHECK(ValidateSizingInputs(in).empty());

    SizingInputs unit{1, 48, 1, 48, 1, 1, 1, 1, 1, 1};
    CHECK(SizeStorageAh(unit) == 1.0);

    SizingInputs doubled = in;
    doubled.k_p = 2;
    CHECK(SizeStorageAh(doubled) == doctest::Approx(2 * SizeStorageAh(in)).epsilon(1e-12));
    SizingInputs warmer = in;
    warmer.d_t = 0.5;
    CHECK(SizeStorageAh(warmer) == doctest::Approx(2 * SizeStorageAh(in)).epsilon(1e-12));
    SizingInputs longer = in;
    longer.dr_max_hours = 10;
    CHECK(SizeStorageAh(longer) == doctest::Approx(2 * SizeStorageAh(in)).epsilon(1e-12));

    SizingInputs broken = in;
    broken.ssv_volts = 0;
    CHECK_THROWS_AS(SizeStorageAh(broken), std::domain_error);
    CHECK(ValidateSizingInputs(broken).size() == 1);
    broken.dod = 1.5;
    CHECK(ValidateSizingInputs(broken).size() == 2);
}
