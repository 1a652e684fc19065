#pragma once

// Text formats: distributions as six comma-separated values (decimals or
// fractions such as 1/6), angles as decimals or multiples of pi ("pi/3",
// "5pi/3", "-0.5*pi"). JSON uses the field names p, theta, alpha, beta,
// x, y, u, v, w, z; unbounded times are written as the string "inf".

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <string_view>

#include "fqsl/dynamics.hpp"
#include "fqsl/entanglement.hpp"
#include "fqsl/mapper.hpp"
#include "fqsl/orthogonality.hpp"
#include "fqsl/sampler.hpp"
#include "fqsl/speed_limit.hpp"
#include "fqsl/state.hpp"

namespace fqsl {

inline constexpr std::string_view kRecordCsvHeader = "p1,p2,p3,p4,p5,p6,alpha,beta,cf2,phi1,tau_qsl,ratio,family";

/// Shortest round-trip decimal; "inf" for +infinity.
std::string format_number(double value);

/// A decimal or a quotient "a/b" of decimals. Throws InvalidInput.
double parse_number(std::string_view text);

/// Decimal or rational multiple of pi. Throws InvalidInput.
double parse_angle(std::string_view text);

ProbabilityDistribution parse_distribution(std::string_view text);

/// First non-empty line not starting with '#'.
ProbabilityDistribution read_distribution_file(const std::string& path);

void to_json(nlohmann::json& j, const ProbabilityDistribution& dist);
void to_json(nlohmann::json& j, const PhasePair& phases);
void to_json(nlohmann::json& j, const DerivedCoordinates& c);
void to_json(nlohmann::json& j, const TwoFermionState& state);
void to_json(nlohmann::json& j, const ConcurrenceValue& value);
void to_json(nlohmann::json& j, const SpeedLimitReport& report);
void to_json(nlohmann::json& j, const OrthogonalityResult& result);
void to_json(nlohmann::json& j, const SampleRecord& record);
void to_json(nlohmann::json& j, const TimeSeries& series);

/// Numbers pass through; +infinity becomes "inf".
nlohmann::json json_number(double value);

void write_record_csv_row(std::ostream& out, const SampleRecord& record);
void write_records_csv(std::ostream& out, std::span<const SampleRecord> records);
void write_records_jsonl(std::ostream& out, std::span<const SampleRecord> records);

void write_series_csv(std::ostream& out, const TimeSeries& series);

/// Header coord1,coord2,value,tag. Excluded and unconstrained cells leave the
/// value empty.
void write_grid_csv(std::ostream& out, const GridMap& map);

/// Sidecar description of a grid: axes, resolution, units, parameters.
nlohmann::json grid_manifest(const GridMap& map, const nlohmann::json& parameters);

}  // namespace fqsl
