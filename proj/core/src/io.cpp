#include "fqsl/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <vector>

#include "fqsl/errors.hpp"

namespace fqsl {

namespace {

std::string normalized(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(static_cast<char>(std::tolower(ch)));
  }
  return out;
}

double parse_decimal(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidInput("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string format_number(double value) {
  if (value == kUnbounded) return "inf";
  return fmt::format("{}", value);
}

double parse_number(std::string_view text) {
  const std::string s = normalized(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);
  const double num = parse_decimal(std::string_view(s).substr(0, slash));
  const double den = parse_decimal(std::string_view(s).substr(slash + 1));
  if (den == 0.0) throw InvalidInput("division by zero in '" + s + "'");
  return num / den;
}

double parse_angle(std::string_view text) {
  const std::string s = normalized(text);
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return parse_number(s);

  std::string coefficient = s.substr(0, pi_pos);
  std::string rest = s.substr(pi_pos + 2);
  if (!coefficient.empty() && coefficient.back() == '*') coefficient.pop_back();
  double factor = 1.0;
  if (coefficient == "-") {
    factor = -1.0;
  } else if (!coefficient.empty() && coefficient != "+") {
    factor = parse_number(coefficient);
  }
  if (!rest.empty()) {
    if (rest.front() == '/') {
      const double den = parse_decimal(std::string_view(rest).substr(1));
      if (den == 0.0) throw InvalidInput("division by zero in '" + s + "'");
      factor /= den;
    } else if (rest.front() == '*') {
      factor *= parse_number(std::string_view(rest).substr(1));
    } else {
      throw InvalidInput("cannot parse angle '" + std::string(text) + "'");
    }
  }
  return factor * kPi;
}

ProbabilityDistribution parse_distribution(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != kLevels) {
    throw InvalidInput("expected 6 comma-separated populations, got " + std::to_string(parts.size()));
  }
  std::array<double, kLevels> p{};
  for (std::size_t n = 0; n < kLevels; ++n) p[n] = parse_number(parts[n]);
  return ProbabilityDistribution(p);
}

ProbabilityDistribution read_distribution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open distribution file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const std::string trimmed = normalized(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    return parse_distribution(trimmed);
  }
  throw InvalidInput("distribution file '" + path + "' is empty");
}

nlohmann::json json_number(double value) {
  if (value == kUnbounded) return "inf";
  return value;
}

void to_json(nlohmann::json& j, const ProbabilityDistribution& dist) { j = {{"p", dist.values()}}; }

void to_json(nlohmann::json& j, const PhasePair& phases) {
  j = {{"alpha", phases.alpha()}, {"beta", phases.beta()}};
}

void to_json(nlohmann::json& j, const DerivedCoordinates& c) {
  j = {{"x", c.x}, {"y", c.y}, {"u", c.u}, {"v", c.v}, {"w", c.w}, {"z", c.z}};
}

void to_json(nlohmann::json& j, const TwoFermionState& state) {
  const PhasePair phases = state.phases();
  j = {{"p", state.distribution().values()},
       {"theta", state.theta()},
       {"alpha", phases.alpha()},
       {"beta", phases.beta()}};
}

void to_json(nlohmann::json& j, const ConcurrenceValue& value) {
  j = {{"cf2", value.c_squared}, {"cf", value.concurrence()}};
}

void to_json(nlohmann::json& j, const SpeedLimitReport& report) {
  j = {{"m_index", report.m_index},
       {"M_index", report.M_index ? nlohmann::json(*report.M_index) : nlohmann::json(nullptr)},
       {"mean_rel_energy", report.mean_rel_energy},
       {"sigma", report.sigma},
       {"tau_mt", json_number(report.tau_mt)},
       {"tau_ml", json_number(report.tau_ml)},
       {"tau_qsl", json_number(report.tau_qsl)},
       {"active_bound", to_string(report.active_bound)}};
}

void to_json(nlohmann::json& j, const OrthogonalityResult& result) {
  nlohmann::json roots = nlohmann::json::array();
  for (std::size_t k = 0; k < result.roots.size(); ++k) {
    roots.push_back({{"phi", result.roots[k]},
                     {"phi_over_pi", result.roots[k] / kPi},
                     {"family", to_string(result.families[k])}});
  }
  j = {{"reachable", result.reachable},
       {"phi_1", result.phi_1 ? nlohmann::json(*result.phi_1) : nlohmann::json(nullptr)},
       {"roots", roots}};
}

void to_json(nlohmann::json& j, const SampleRecord& r) {
  const auto& p = r.dist.values();
  j = {{"p1", p[0]},
       {"p2", p[1]},
       {"p3", p[2]},
       {"p4", p[3]},
       {"p5", p[4]},
       {"p6", p[5]},
       {"alpha", r.phases.alpha()},
       {"beta", r.phases.beta()},
       {"cf2", r.c_squared},
       {"phi1", r.phi_1},
       {"tau_qsl", json_number(r.tau_qsl)},
       {"ratio", r.ratio},
       {"family", to_string(r.family)}};
}

void to_json(nlohmann::json& j, const TimeSeries& series) { j = {{"phi", series.times}, {"P", series.values}}; }

void write_record_csv_row(std::ostream& out, const SampleRecord& r) {
  for (double pn : r.dist.values()) out << format_number(pn) << ',';
  out << format_number(r.phases.alpha()) << ',' << format_number(r.phases.beta()) << ','
      << format_number(r.c_squared) << ',' << format_number(r.phi_1) << ',' << format_number(r.tau_qsl) << ','
      << format_number(r.ratio) << ',' << to_string(r.family) << '\n';
}

void write_records_csv(std::ostream& out, std::span<const SampleRecord> records) {
  out << kRecordCsvHeader << '\n';
  for (const auto& r : records) write_record_csv_row(out, r);
}

void write_records_jsonl(std::ostream& out, std::span<const SampleRecord> records) {
  for (const auto& r : records) out << nlohmann::json(r).dump() << '\n';
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  out << "phi,P\n";
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    out << format_number(series.times[k]) << ',' << format_number(series.values[k]) << '\n';
  }
}

void write_grid_csv(std::ostream& out, const GridMap& map) {
  out << "coord1,coord2,value,tag\n";
  for (const GridCell& cell : map.cells) {
    out << format_number(cell.coord1) << ',' << format_number(cell.coord2) << ',';
    if (cell.kind == CellKind::Finite || cell.kind == CellKind::Unbounded) out << format_number(cell.value);
    out << ',' << cell.tag << '\n';
  }
}

nlohmann::json grid_manifest(const GridMap& map, const nlohmann::json& parameters) {
  const auto& s = map.spec;
  return {
      {"map", map.name},
      {"coord1", {{"name", map.coord1_name}, {"min", s.first.lo}, {"max", s.first.hi}, {"resolution", s.first_resolution}}},
      {"coord2",
       {{"name", map.coord2_name}, {"min", s.second.lo}, {"max", s.second.hi}, {"resolution", s.second_resolution}}},
      {"units", map.units},
      {"order", "row-major, coord1 outer"},
      {"parameters", parameters},
      {"seed", nullptr},
      {"version", FQSL_VERSION_STRING},
  };
}

}  // namespace fqsl
