// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_SUSTAINABILITY_H
#define NAKASIM_SUSTAINABILITY_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nakasim {

class ZeroTransactions : public std::domain_error
{
public:
    ZeroTransactions() : std::domain_error("tx_count must be > 0") {}
};

/** Network power draw: hashrate * efficiency * overhead. */
struct EnergyModel {
    double network_hashrate_ths{0.0};
    double fleet_efficiency_j_per_th{0.0};
    double overhead_factor{1.0};
    double period_hours{0.0};

    /** Throws std::invalid_argument. */
    void Validate() const;
};

struct RegionMix {
    std::string region;
    double hashrate_share{0.0};
    double grid_factor_kg_co2e_per_kwh{0.0};
    double renewable_share{0.0};
};

/** Location-based emission mix; hashrate shares must sum to 1 within 1e-9. */
struct EmissionModel {
    std::vector<RegionMix> regions;

    void Validate() const;
};

/** Per-unit hardware factors for the waste and water indicators. */
struct WasteParams {
    double unit_mass_kg{0.0};
    double lifetime_years{0.0};
    double hazardous_fraction{0.0};
    double nonrecycled_pct{0.0};
    double water_litres_per_kwh{0.0};

    void Validate() const;
};

struct WasteAndWater {
    double weee_t{0.0};
    double nonrecycled_pct{0.0};
    double hazardous_t{0.0};
    double water_gl{0.0};
};

struct Intensities {
    double energy_kwh_per_tx{0.0};
    double ghg_kg_per_tx{0.0};
};

double TotalEnergyKwh(const EnergyModel& model);
/** Number of mining units needed to supply the network hashrate. */
double FleetEstimate(double network_hashrate_ths, double per_unit_ths);
/** Fleet size for display, e.g. "6.1 million". */
std::string FleetDisplay(double units);
double WeightedNonrenewableSharePct(const EmissionModel& model);
double Scope2EmissionsTco2e(double energy_kwh, const EmissionModel& model);
/** Throws ZeroTransactions. */
Intensities ComputeIntensities(double energy_kwh, double emissions_tco2e, uint64_t tx_count);
WasteAndWater ComputeWasteAndWater(const WasteParams& params, double fleet_units, double energy_kwh);

struct ReportingPeriod {
    /** ISO dates, YYYY-MM-DD. */
    std::string start;
    std::string end;

    bool operator==(const ReportingPeriod&) const = default;
};

struct SustainabilityIndicators {
    ReportingPeriod period;
    double energy_kwh{0.0};
    double nonrenewable_share_pct{0.0};
    double energy_intensity_kwh_per_tx{0.0};
    std::optional<double> scope1_tco2e;
    double scope2_tco2e{0.0};
    /** Optional market-based scope 2 figure; never populated by the models. */
    std::optional<double> scope2_market_tco2e;
    double ghg_intensity_kg_per_tx{0.0};
    double weee_t{0.0};
    double nonrecycled_weee_pct{0.0};
    double hazardous_waste_t{0.0};
    double water_gl{0.0};
    uint64_t tx_count{0};

    bool operator==(const SustainabilityIndicators&) const = default;
};

struct IndicatorModels {
    ReportingPeriod period;
    EnergyModel energy;
    EmissionModel emissions;
    /** Hashrate per mining unit, for the fleet estimate feeding WEEE. */
    double per_unit_ths{100.0};
    WasteParams waste;
    uint64_t tx_count{0};
};

/** Evaluate every model; the intensity identities hold exactly on the result. */
SustainabilityIndicators ComputeIndicators(const IndicatorModels& models);

/**
 * Name of the first violated intensity identity, if any. Values are compared
 * with a relative tolerance of 1e-9 so decimal JSON inputs are accepted.
 */
std::optional<std::string> CheckIndicatorIdentities(const SustainabilityIndicators& ind);

} // namespace nakasim

#endif // NAKASIM_SUSTAINABILITY_H
