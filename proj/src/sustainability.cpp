// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/sustainability.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nakasim {

void EnergyModel::Validate() const
{
    if (!(network_hashrate_ths > 0.0)) throw std::invalid_argument("network_hashrate_ths must be > 0");
    if (!(fleet_efficiency_j_per_th > 0.0)) throw std::invalid_argument("fleet_efficiency_j_per_th must be > 0");
    if (!(overhead_factor >= 1.0)) throw std::invalid_argument("overhead_factor must be >= 1");
    if (!(period_hours > 0.0)) throw std::invalid_argument("period_hours must be > 0");
}

void EmissionModel::Validate() const
{
    if (regions.empty()) throw std::invalid_argument("emission model needs at least one region");
    double total = 0.0;
    for (const auto& r : regions) {
        if (!(r.hashrate_share >= 0.0 && r.hashrate_share <= 1.0)) {
            throw std::invalid_argument("region '" + r.region + "': hashrate_share must be in [0, 1]");
        }
        if (!(r.grid_factor_kg_co2e_per_kwh >= 0.0)) {
            throw std::invalid_argument("region '" + r.region + "': grid factor must be >= 0");
        }
        if (!(r.renewable_share >= 0.0 && r.renewable_share <= 1.0)) {
            throw std::invalid_argument("region '" + r.region + "': renewable_share must be in [0, 1]");
        }
        total += r.hashrate_share;
    }
    if (std::fabs(total - 1.0) > 1e-9) throw std::invalid_argument("region hashrate shares must sum to 1");
}

void WasteParams::Validate() const
{
    if (!(unit_mass_kg >= 0.0)) throw std::invalid_argument("unit_mass_kg must be >= 0");
    if (!(lifetime_years >= 0.0)) throw std::invalid_argument("lifetime_years must be >= 0");
    if (!(hazardous_fraction >= 0.0)) throw std::invalid_argument("hazardous_fraction must be >= 0");
    if (!(nonrecycled_pct >= 0.0)) throw std::invalid_argument("nonrecycled_pct must be >= 0");
    if (!(water_litres_per_kwh >= 0.0)) throw std::invalid_argument("water_litres_per_kwh must be >= 0");
}

double TotalEnergyKwh(const EnergyModel& model)
{
    model.Validate();
    const double watts = model.network_hashrate_ths * model.fleet_efficiency_j_per_th * model.overhead_factor;
    return watts * model.period_hours / 1000.0;
}

double FleetEstimate(double network_hashrate_ths, double per_unit_ths)
{
    if (!(per_unit_ths > 0.0)) throw std::invalid_argument("per_unit_ths must be > 0");
    if (!(network_hashrate_ths >= 0.0)) throw std::invalid_argument("network_hashrate_ths must be >= 0");
    return network_hashrate_ths / per_unit_ths;
}

std::string FleetDisplay(double units)
{
    char buf[64];
    if (units >= 1e9) {
        std::snprintf(buf, sizeof(buf), "%.1f billion", units / 1e9);
    } else if (units >= 1e6) {
        std::snprintf(buf, sizeof(buf), "%.1f million", units / 1e6);
    } else if (units >= 1e3) {
        std::snprintf(buf, sizeof(buf), "%.1f thousand", units / 1e3);
    } else {
        std::snprintf(buf, sizeof(buf), "%.0f", units);
    }
    return buf;
}

double WeightedNonrenewableSharePct(const EmissionModel& model)
{
    model.Validate();
    double share = 0.0;
    for (const auto& r : model.regions) share += r.hashrate_share * (1.0 - r.renewable_share);
    return share * 100.0;
}

double Scope2EmissionsTco2e(double energy_kwh, const EmissionModel& model)
{
    if (!(energy_kwh >= 0.0)) throw std::invalid_argument("energy_kwh must be >= 0");
    model.Validate();
    double factor = 0.0;
    for (const auto& r : model.regions) factor += r.hashrate_share * r.grid_factor_kg_co2e_per_kwh;
    return energy_kwh * factor / 1000.0;
}

Intensities ComputeIntensities(double energy_kwh, double emissions_tco2e, uint64_t tx_count)
{
    if (tx_count == 0) throw ZeroTransactions();
    const double n = static_cast<double>(tx_count);
    return Intensities{energy_kwh / n, emissions_tco2e * 1000.0 / n};
}

WasteAndWater ComputeWasteAndWater(const WasteParams& params, double fleet_units, double energy_kwh)
{
    params.Validate();
    if (!(fleet_units >= 0.0)) throw std::invalid_argument("fleet_units must be >= 0");
    if (!(energy_kwh >= 0.0)) throw std::invalid_argument("energy_kwh must be >= 0");

    WasteAndWater out;
    if (fleet_units > 0.0) {
        if (!(params.lifetime_years > 0.0)) throw std::invalid_argument("lifetime_years must be > 0 for a non-empty fleet");
        out.weee_t = fleet_units * params.unit_mass_kg / params.lifetime_years / 1000.0;
    }
    out.hazardous_t = out.weee_t * params.hazardous_fraction;
    out.nonrecycled_pct = params.nonrecycled_pct;
    out.water_gl = energy_kwh * params.water_litres_per_kwh / 1e9;
    return out;
}

SustainabilityIndicators ComputeIndicators(const IndicatorModels& models)
{
    SustainabilityIndicators ind;
    ind.period = models.period;
    ind.tx_count = models.tx_count;
    ind.energy_kwh = TotalEnergyKwh(models.energy);
    ind.nonrenewable_share_pct = WeightedNonrenewableSharePct(models.emissions);
    ind.scope2_tco2e = Scope2EmissionsTco2e(ind.energy_kwh, models.emissions);

    const Intensities intensities = ComputeIntensities(ind.energy_kwh, ind.scope2_tco2e, models.tx_count);
    ind.energy_intensity_kwh_per_tx = intensities.energy_kwh_per_tx;
    ind.ghg_intensity_kg_per_tx = intensities.ghg_kg_per_tx;

    const double fleet = FleetEstimate(models.energy.network_hashrate_ths, models.per_unit_ths);
    const WasteAndWater waste = ComputeWasteAndWater(models.waste, fleet, ind.energy_kwh);
    ind.weee_t = waste.weee_t;
    ind.nonrecycled_weee_pct = waste.nonrecycled_pct;
    ind.hazardous_waste_t = waste.hazardous_t;
    ind.water_gl = waste.water_gl;
    return ind;
}

std::optional<std::string> CheckIndicatorIdentities(const SustainabilityIndicators& ind)
{
    const auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max(std::fabs(a), std::fabs(b)); };
    if (ind.tx_count == 0) return "tx_count > 0";
    const double n = static_cast<double>(ind.tx_count);
    if (!close(ind.energy_intensity_kwh_per_tx, ind.energy_kwh / n)) {
        return "energy_intensity_kwh_per_tx == energy_kwh / tx_count";
    }
    const double emissions = ind.scope2_tco2e + ind.scope1_tco2e.value_or(0.0);
    if (!close(ind.ghg_intensity_kg_per_tx, emissions * 1000.0 / n)) {
        return ind.scope1_tco2e ? "ghg_intensity_kg_per_tx == (scope1_tco2e + scope2_tco2e) * 1000 / tx_count"
                                : "ghg_intensity_kg_per_tx == scope2_tco2e * 1000 / tx_count";
    }
    if (!(ind.nonrenewable_share_pct >= 0.0 && ind.nonrenewable_share_pct <= 100.0)) {
        return "0 <= nonrenewable_share_pct <= 100";
    }
    return std::nullopt;
}

} // namespace nakasim
