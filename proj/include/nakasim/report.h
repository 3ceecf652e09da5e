// Copyright (c) 2026 The nakasim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef NAKASIM_REPORT_H
#define NAKASIM_REPORT_H

#include <nakasim/sustainability.h>

#include <json.hpp>

#include <optional>
#include <string>

namespace nakasim {

/** Fixed-point with comma thousands separators: FormatGrouped(1234.5, 2) == "1,234.50". */
std::string FormatGrouped(double value, int decimals);

/** "2023-01-01" -> "01.01.2023". Throws std::invalid_argument on other shapes. */
std::string FormatReportDate(const std::string& iso_date);

struct ReportDocument {
    std::string provider_name;
    std::string source_of_information;
    std::string methodology;
    SustainabilityIndicators indicators;

    bool operator==(const ReportDocument&) const = default;
};

/** Defaults for the two descriptive columns when an input file leaves them out. */
std::string DefaultSource(const std::string& provider_name);
std::string DefaultMethodology();

/** Indicator table as markdown, five columns. Display precision is fixed per row. */
std::string RenderPartJMarkdown(const ReportDocument& doc);

/** Machine-readable form; ParseReportJson(RenderReportJson(d)) == d. */
nlohmann::json RenderReportJson(const ReportDocument& doc);
ReportDocument ParseReportJson(const nlohmann::json& doc);

nlohmann::json IndicatorsToJson(const SustainabilityIndicators& ind);
SustainabilityIndicators IndicatorsFromJson(const nlohmann::json& obj, const ReportingPeriod& period);

struct ReportInputs {
    std::string provider_name;
    std::optional<std::string> source_of_information;
    std::optional<std::string> methodology;
    ReportingPeriod period;
    /** Exactly one of these is set. */
    std::optional<SustainabilityIndicators> indicators;
    std::optional<IndicatorModels> models;
};

/** Throws std::invalid_argument describing the malformed field. */
ReportInputs ParseReportInputs(const nlohmann::json& doc);

} // namespace nakasim

#endif // NAKASIM_REPORT_H
