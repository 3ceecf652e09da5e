// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <nakasim/report.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nakasim {

using nlohmann::json;

std::string FormatGrouped(double value, int decimals)
{
    if (!std::isfinite(value)) throw std::invalid_argument("cannot format a non-finite value");
    char buf[512];
    // + 0.0 folds negative zero.
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value + 0.0);
    std::string raw = buf;
    if (raw.find_first_not_of("-0.") == std::string::npos && raw.front() == '-') raw.erase(0, 1);

    std::string sign;
    if (!raw.empty() && raw.front() == '-') {
        sign = "-";
        raw.erase(0, 1);
    }
    const std::size_t dot = raw.find('.');
    const std::string integer = raw.substr(0, dot);
    const std::string fraction = dot == std::string::npos ? "" : raw.substr(dot);

    std::string grouped;
    for (std::size_t i = 0; i < integer.size(); ++i) {
        if (i > 0 && (integer.size() - i) % 3 == 0) grouped.push_back(',');
        grouped.push_back(integer[i]);
    }
    return sign + grouped + fraction;
}

std::string FormatReportDate(const std::string& iso)
{
    const bool shape = iso.size() == 10 && iso[4] == '-' && iso[7] == '-';
    if (!shape) throw std::invalid_argument("date must be YYYY-MM-DD: '" + iso + "'");
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (iso[i] < '0' || iso[i] > '9') throw std::invalid_argument("date must be YYYY-MM-DD: '" + iso + "'");
    }
    return iso.substr(8, 2) + "." + iso.substr(5, 2) + "." + iso.substr(0, 4);
}

std::string DefaultSource(const std::string& provider_name)
{
    return "Provided by " + provider_name + " as external party";
}

std::string DefaultMethodology()
{
    return "Parametric model over declared inputs";
}

namespace {

struct Row {
    const char* group;
    const char* indicator;
    std::string metric;
};

std::string Metric(double value, int decimals, const char* unit)
{
    return FormatGrouped(value, decimals) + unit;
}

} // namespace

std::string RenderPartJMarkdown(const ReportDocument& doc)
{
    const SustainabilityIndicators& ind = doc.indicators;
    std::vector<Row> rows = {
        {"Energy", "Energy consumption", Metric(ind.energy_kwh, 1, " kWh")},
        {"", "Non-renewable energy consumption", Metric(ind.nonrenewable_share_pct, 2, "%")},
        {"", "Energy intensity", Metric(ind.energy_intensity_kwh_per_tx, 2, " kWh")},
        {"GHG emissions", "Scope 1 – Controlled", ind.scope1_tco2e ? Metric(*ind.scope1_tco2e, 2, " tCO₂e") : "-"},
        {"", "Scope 2 – Purchased", Metric(ind.scope2_tco2e, 2, " tCO₂e")},
    };
    if (ind.scope2_market_tco2e) {
        rows.push_back({"", "Scope 2 – Purchased (market-based)", Metric(*ind.scope2_market_tco2e, 2, " tCO₂e")});
    }
    rows.push_back({"", "GHG intensity", Metric(ind.ghg_intensity_kg_per_tx, 2, " kg/Tx")});
    rows.push_back({"Waste production", "Generation of waste electrical and electronic equipment (WEEE)",
                    Metric(ind.weee_t, 0, " t")});
    rows.push_back({"", "Non-recycled WEEE ratio", Metric(ind.nonrecycled_weee_pct, 2, "%")});
    rows.push_back({"", "Generation of hazardous waste", Metric(ind.hazardous_waste_t, 0, " t")});
    rows.push_back({"Natural resources", "Impact of the use of equipment on natural resources", Metric(ind.water_gl, 0, " GL")});

    std::ostringstream out;
    out << "# Climate and other environment-related indicators\n\n";
    out << "Sustainability data provider: " << doc.provider_name << "\n\n";
    out << "Reporting period: " << FormatReportDate(ind.period.start) << " to " << FormatReportDate(ind.period.end) << "\n\n";
    out << "Transactions in period: " << FormatGrouped(static_cast<double>(ind.tx_count), 0) << "\n\n";
    out << "| | Adverse sustainability indicator | Metric | Source of information | Methodology |\n";
    out << "|---|---|---|---|---|\n";
    for (const Row& row : rows) {
        out << "| " << row.group << " | " << row.indicator << " | " << row.metric << " | " << doc.source_of_information
            << " | " << doc.methodology << " |\n";
    }
    return out.str();
}

json IndicatorsToJson(const SustainabilityIndicators& ind)
{
    const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return {
        {"energy_kwh", ind.energy_kwh},
        {"nonrenewable_share_pct", ind.nonrenewable_share_pct},
        {"energy_intensity_kwh_per_tx", ind.energy_intensity_kwh_per_tx},
        {"scope1_tco2e", opt(ind.scope1_tco2e)},
        {"scope2_tco2e", ind.scope2_tco2e},
        {"scope2_market_tco2e", opt(ind.scope2_market_tco2e)},
        {"ghg_intensity_kg_per_tx", ind.ghg_intensity_kg_per_tx},
        {"weee_t", ind.weee_t},
        {"nonrecycled_weee_pct", ind.nonrecycled_weee_pct},
        {"hazardous_waste_t", ind.hazardous_waste_t},
        {"water_gl", ind.water_gl},
        {"tx_count", ind.tx_count},
    };
}

namespace {

double Num(const json& obj, const char* key)
{
    if (!obj.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) throw std::invalid_argument(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::optional<double> OptNum(const json& obj, const char* key)
{
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return Num(obj, key);
}

std::string Str(const json& obj, const char* key)
{
    if (!obj.contains(key) || !obj.at(key).is_string()) {
        throw std::invalid_argument(std::string("field '") + key + "' must be a string");
    }
    return obj.at(key).get<std::string>();
}

uint64_t Count(const json& obj, const char* key)
{
    if (!obj.contains(key) || !obj.at(key).is_number_unsigned()) {
        throw std::invalid_argument(std::string("field '") + key + "' must be a non-negative integer");
    }
    return obj.at(key).get<uint64_t>();
}

ReportingPeriod PeriodFromJson(const json& doc)
{
    if (!doc.contains("period") || !doc.at("period").is_object()) {
        throw std::invalid_argument("field 'period' must be an object with start and end");
    }
    ReportingPeriod period{Str(doc.at("period"), "start"), Str(doc.at("period"), "end")};
    FormatReportDate(period.start);
    FormatReportDate(period.end);
    return period;
}

} // namespace

SustainabilityIndicators IndicatorsFromJson(const json& obj, const ReportingPeriod& period)
{
    if (!obj.is_object()) throw std::invalid_argument("indicators must be an object");
    SustainabilityIndicators ind;
    ind.period = period;
    ind.tx_count = Count(obj, "tx_count");
    ind.energy_kwh = Num(obj, "energy_kwh");
    ind.nonrenewable_share_pct = Num(obj, "nonrenewable_share_pct");
    ind.scope1_tco2e = OptNum(obj, "scope1_tco2e");
    ind.scope2_tco2e = Num(obj, "scope2_tco2e");
    ind.scope2_market_tco2e = OptNum(obj, "scope2_market_tco2e");
    ind.weee_t = Num(obj, "weee_t");
    ind.nonrecycled_weee_pct = Num(obj, "nonrecycled_weee_pct");
    ind.hazardous_waste_t = Num(obj, "hazardous_waste_t");
    ind.water_gl = Num(obj, "water_gl");

    // Intensities may be omitted and are then derived from the totals.
    const double n = static_cast<double>(ind.tx_count);
    if (obj.contains("energy_intensity_kwh_per_tx")) {
        ind.energy_intensity_kwh_per_tx = Num(obj, "energy_intensity_kwh_per_tx");
    } else {
        if (ind.tx_count == 0) throw ZeroTransactions();
        ind.energy_intensity_kwh_per_tx = ind.energy_kwh / n;
    }
    if (obj.contains("ghg_intensity_kg_per_tx")) {
        ind.ghg_intensity_kg_per_tx = Num(obj, "ghg_intensity_kg_per_tx");
    } else {
        if (ind.tx_count == 0) throw ZeroTransactions();
        ind.ghg_intensity_kg_per_tx = (ind.scope2_tco2e + ind.scope1_tco2e.value_or(0.0)) * 1000.0 / n;
    }
    return ind;
}

json RenderReportJson(const ReportDocument& doc)
{
    return {
        {"provider_name", doc.provider_name},
        {"source_of_information", doc.source_of_information},
        {"methodology", doc.methodology},
        {"period", {{"start", doc.indicators.period.start}, {"end", doc.indicators.period.end}}},
        {"indicators", IndicatorsToJson(doc.indicators)},
    };
}

ReportDocument ParseReportJson(const json& doc)
{
    ReportDocument out;
    out.provider_name = Str(doc, "provider_name");
    out.source_of_information = Str(doc, "source_of_information");
    out.methodology = Str(doc, "methodology");
    if (!doc.contains("indicators")) throw std::invalid_argument("missing field 'indicators'");
    out.indicators = IndicatorsFromJson(doc.at("indicators"), PeriodFromJson(doc));
    return out;
}

ReportInputs ParseReportInputs(const json& doc)
{
    if (!doc.is_object()) throw std::invalid_argument("report inputs must be a JSON object");
    ReportInputs in;
    in.provider_name = Str(doc, "provider_name");
    if (doc.contains("source_of_information")) in.source_of_information = Str(doc, "source_of_information");
    if (doc.contains("methodology")) in.methodology = Str(doc, "methodology");
    in.period = PeriodFromJson(doc);

    const bool has_ind = doc.contains("indicators");
    const bool has_models = doc.contains("models");
    if (has_ind == has_models) throw std::invalid_argument("exactly one of 'indicators' or 'models' is required");
    if (has_ind) {
        in.indicators = IndicatorsFromJson(doc.at("indicators"), in.period);
        return in;
    }

    const json& m = doc.at("models");
    if (!m.is_object()) throw std::invalid_argument("'models' must be an object");
    IndicatorModels models;
    models.period = in.period;
    models.tx_count = Count(m, "tx_count");

    if (!m.contains("energy")) throw std::invalid_argument("missing field 'models.energy'");
    const json& e = m.at("energy");
    models.energy.network_hashrate_ths = Num(e, "network_hashrate_ths");
    models.energy.fleet_efficiency_j_per_th = Num(e, "fleet_efficiency_j_per_th");
    models.energy.overhead_factor = OptNum(e, "overhead_factor").value_or(1.0);
    models.energy.period_hours = Num(e, "period_hours");

    if (!m.contains("emissions") || !m.at("emissions").contains("regions") || !m.at("emissions").at("regions").is_array()) {
        throw std::invalid_argument("'models.emissions.regions' must be an array");
    }
    for (const json& r : m.at("emissions").at("regions")) {
        models.emissions.regions.push_back(RegionMix{Str(r, "region"), Num(r, "hashrate_share"),
                                                     Num(r, "grid_factor_kg_co2e_per_kwh"), Num(r, "renewable_share")});
    }

    models.per_unit_ths = OptNum(m, "per_unit_ths").value_or(100.0);
    if (!m.contains("waste")) throw std::invalid_argument("missing field 'models.waste'");
    const json& w = m.at("waste");
    models.waste.unit_mass_kg = Num(w, "unit_mass_kg");
    models.waste.lifetime_years = Num(w, "lifetime_years");
    models.waste.hazardous_fraction = Num(w, "hazardous_fraction");
    models.waste.nonrecycled_pct = Num(w, "nonrecycled_pct");
    models.waste.water_litres_per_kwh = Num(w, "water_litres_per_kwh");
    in.models = models;
    return in;
}

} // namespace nakasim
