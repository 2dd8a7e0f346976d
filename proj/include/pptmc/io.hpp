// io.hpp — File formats: samples CSV, generator/spec/summary JSON.

#pragma once

#include "pptmc/gksl.hpp"
#include "pptmc/scenarios.hpp"
#include "pptmc/stats.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace pptmc::io {

inline constexpr const char* kVersion = "pptmc 0.1.0";

// Doubles are formatted with 9 significant digits ("%.9g").
std::string format_double(double v);

// samples.csv: header `sample_index,seed,x_ppt,censored`, UTF-8, LF endings,
// censored ∈ {0,1}.
void write_samples_csv(const std::filesystem::path& path, const scenarios::PpttSampleSet& set);

// Reads the samples back; scenario metadata is not stored in the CSV and is
// left default-initialized. Malformed input reports the offending line number.
scenarios::PpttSampleSet read_samples_csv(const std::filesystem::path& path);

nlohmann::json spec_to_json(const scenarios::ScenarioSpec& spec);
scenarios::ScenarioSpec spec_from_json(const nlohmann::json& j);

// Matrices serialize as nested arrays in row-major reading order with [re, im]
// entry pairs.
nlohmann::json matrix_to_json(const linalg::Matrix& m);
linalg::Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json generator_to_json(const gksl::GkslGenerator& gen,
                                 const nlohmann::json& provenance = nullptr);
gksl::GkslGenerator generator_from_json(const nlohmann::json& j);

nlohmann::json summary_stats_to_json(const stats::SummaryStats& s);
nlohmann::json gamma_fit_to_json(const stats::FitParams3PGamma& fit);
nlohmann::json lognormal_fit_to_json(const stats::FitParams3PLognormal& fit);

}  // namespace pptmc::io
