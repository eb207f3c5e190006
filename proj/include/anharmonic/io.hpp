#pragma once

// JSON and CSV serialization of potentials, spectra and expansion reports.
// Every JSON document carries schema_version; readers reject other versions.

#include <json.hpp>
#include <string>

#include "anharmonic/asymptotics.hpp"
#include "anharmonic/eigensolve.hpp"
#include "anharmonic/potential.hpp"

namespace anharmonic::io {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Parse failures and schema violations throw Error(Config).
[[nodiscard]] Json potential_to_json(const PotentialSpec& spec);
[[nodiscard]] PotentialSpec potential_from_json(const Json& j);
[[nodiscard]] PotentialSpec load_potential(const std::string& path);
[[nodiscard]] Json parse_json(const std::string& text);
[[nodiscard]] Json read_json_file(const std::string& path);

[[nodiscard]] Json perturbation_to_json(const Perturbation& V);
[[nodiscard]] Perturbation perturbation_from_json(const Json& j);

/// {schema_version, meta, eigenvalues: [{n, lambda, type, phi, est_error}]}
[[nodiscard]] Json spectrum_to_json(const Spectrum& s, const Json& meta = Json::object());
[[nodiscard]] Spectrum spectrum_from_json(const Json& j);
/// Header n,lambda,type,phi,est_error; one row per eigenvalue.
[[nodiscard]] std::string spectrum_to_csv(const Spectrum& s);
[[nodiscard]] Spectrum spectrum_from_csv(const std::string& text);

/// Header n,term1,term2,term3,term4,predicted,oracle,residual; missing values are empty.
[[nodiscard]] std::string report_to_csv(const ExpansionReport& r);
[[nodiscard]] Json report_to_json(const ExpansionReport& r, const Json& meta = Json::object());
[[nodiscard]] ExpansionReport report_from_json(const Json& j);

/// Shortest decimal text that reads back to the same double.
[[nodiscard]] std::string format_double(double x);

/// Splits one CSV line on commas (no quoting; the emitted formats never need it).
[[nodiscard]] std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace anharmonic::io
