#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "fqsl/dynamics.hpp"
#include "fqsl/entanglement.hpp"
#include "fqsl/errors.hpp"
#include "fqsl/io.hpp"
#include "fqsl/mapper.hpp"
#include "fqsl/orthogonality.hpp"
#include "fqsl/sampler.hpp"
#include "fqsl/speed_limit.hpp"

namespace fqsl::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string dist_text;
  std::string input_path;
  std::string format;
  std::string out_path;
  std::string units = "hbar";
  std::string alpha = "0";
  std::string beta = "0";
  std::string phi_max = "2pi";
  std::size_t steps = 4096;
  double tol = kDefaultRootTolerance;
  std::string which;
  std::string branch = "plus";
  int m_index = 3;
  std::size_t resolution = kDefaultGridResolution;
  std::string class_name;
  std::string family = "I";
  std::string angles = "0,pi/4,pi/2,3pi/4,pi";
  std::size_t count = 300'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InvalidInput("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

ProbabilityDistribution load_distribution(const RunConfig& cfg) {
  if (cfg.dist_text.empty() == cfg.input_path.empty()) {
    throw InvalidInput("give exactly one of --dist or --input");
  }
  return cfg.dist_text.empty() ? read_distribution_file(cfg.input_path) : parse_distribution(cfg.dist_text);
}

void add_distribution_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--dist", cfg.dist_text, "six comma-separated populations p1..p6 (decimals or a/b)");
  cmd->add_option("--input", cfg.input_path, "file holding a distribution line");
}

void add_format_flag(CLI::App* cmd, RunConfig& cfg, std::vector<std::string> choices) {
  cmd->add_option("--format", cfg.format, "output format (default " + choices.front() + ")")
      ->check(CLI::IsMember(choices));
}

using Action = std::function<void(const RunConfig&, std::ostream&)>;

// Selects the subcommand's action once parsing has matched it.
void bind_action(CLI::App* cmd, RunConfig& cfg, Action& slot, Action action, std::string default_format) {
  cmd->callback([&cfg, &slot, action = std::move(action), default_format = std::move(default_format)] {
    if (cfg.format.empty()) cfg.format = default_format;
    slot = action;
  });
}

// Time in the requested unit: hbar/epsilon or pi hbar/epsilon.
std::string time_text(double phi, const std::string& units) {
  if (phi == kUnbounded) return "inf";
  return units == "pi" ? format_number(phi / kPi) : format_number(phi);
}

json time_json(double phi, const std::string& units) {
  if (phi == kUnbounded) return "inf";
  return units == "pi" ? phi / kPi : phi;
}

void cmd_qsl(const RunConfig& cfg, std::ostream& out) {
  const SpeedLimitReport r = speed_limit(load_distribution(cfg));
  Sink sink(cfg.out_path, out);
  auto& os = sink.get();
  const std::string M = r.M_index ? std::to_string(*r.M_index) : "";
  if (cfg.format == "json") {
    json j = r;
    for (const char* key : {"tau_mt", "tau_ml", "tau_qsl"}) {
      j[key] = time_json(key == std::string("tau_mt") ? r.tau_mt : key == std::string("tau_ml") ? r.tau_ml : r.tau_qsl,
                         cfg.units);
    }
    j["time_units"] = cfg.units == "pi" ? "pi*hbar/epsilon" : "hbar/epsilon";
    os << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    os << "m_index,M_index,mean_rel_energy,sigma,tau_mt,tau_ml,tau_qsl,active_bound\n"
       << r.m_index << ',' << M << ',' << format_number(r.mean_rel_energy) << ',' << format_number(r.sigma) << ','
       << time_text(r.tau_mt, cfg.units) << ',' << time_text(r.tau_ml, cfg.units) << ','
       << time_text(r.tau_qsl, cfg.units) << ',' << to_string(r.active_bound) << '\n';
  } else {
    const std::string unit = cfg.units == "pi" ? " pi*hbar/epsilon" : " hbar/epsilon";
    os << "m_index = " << r.m_index << "\nM_index = " << M << "\nmean_rel_energy = " << format_number(r.mean_rel_energy)
       << "\nsigma = " << format_number(r.sigma) << "\ntau_mt = " << time_text(r.tau_mt, cfg.units) << unit
       << "\ntau_ml = " << time_text(r.tau_ml, cfg.units) << unit << "\ntau_qsl = " << time_text(r.tau_qsl, cfg.units)
       << unit << "\nactive_bound = " << to_string(r.active_bound) << '\n';
  }
}

void cmd_ortho(const RunConfig& cfg, std::ostream& out) {
  const OrthogonalityResult r = solve_orthogonality(load_distribution(cfg), cfg.tol);
  Sink sink(cfg.out_path, out);
  auto& os = sink.get();
  if (cfg.format == "json") {
    os << json(r).dump(2) << '\n';
  } else if (cfg.format == "csv") {
    os << "root,phi,phi_over_pi,family\n";
    for (std::size_t k = 0; k < r.roots.size(); ++k) {
      os << k + 1 << ',' << format_number(r.roots[k]) << ',' << format_number(r.roots[k] / kPi) << ','
         << to_string(r.families[k]) << '\n';
    }
  } else if (!r.reachable) {
    os << "unreachable\n";
  } else {
    os << "reachable = true\nphi_1 = " << format_number(*r.phi_1) << " (" << format_number(*r.phi_1 / kPi)
       << " pi)\nroots in (0, 2pi]:\n";
    for (std::size_t k = 0; k < r.roots.size(); ++k) {
      os << "  " << format_number(r.roots[k]) << " (" << format_number(r.roots[k] / kPi) << " pi) family "
         << to_string(r.families[k]) << '\n';
    }
  }
}

void cmd_concurrence(const RunConfig& cfg, std::ostream& out) {
  const ProbabilityDistribution dist = load_distribution(cfg);
  const PhasePair phases(parse_angle(cfg.alpha), parse_angle(cfg.beta));
  const ConcurrenceValue c = concurrence_squared(dist, phases);
  Sink sink(cfg.out_path, out);
  auto& os = sink.get();
  if (cfg.format == "json") {
    json j = c;
    j["alpha"] = phases.alpha();
    j["beta"] = phases.beta();
    j["p"] = dist.values();
    os << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    os << "alpha,beta,cf2,cf\n"
       << format_number(phases.alpha()) << ',' << format_number(phases.beta()) << ',' << format_number(c.c_squared)
       << ',' << format_number(c.concurrence()) << '\n';
  } else {
    os << "cf2 = " << format_number(c.c_squared) << "\ncf = " << format_number(c.concurrence()) << '\n';
  }
}

void cmd_survival(const RunConfig& cfg, std::ostream& out) {
  const TimeSeries series = survival_series(load_distribution(cfg), parse_angle(cfg.phi_max), cfg.steps);
  Sink sink(cfg.out_path, out);
  if (cfg.format == "json") {
    sink.get() << json(series).dump() << '\n';
  } else {
    write_series_csv(sink.get(), series);
  }
}

void cmd_map(const RunConfig& cfg, std::ostream& out) {
  GridMap map;
  json parameters = json::object();
  if (cfg.which == "qsl") {
    map = map_qsl_plane(default_qsl_grid(cfg.resolution), cfg.m_index);
    parameters["m_index"] = cfg.m_index;
    parameters["display_cap"] = kQslDisplayCap;
  } else if (cfg.which == "xu") {
    const Branch branch = cfg.branch == "minus" ? Branch::Minus : Branch::Plus;
    map = map_xu_region(default_xu_grid(cfg.resolution), branch);
    parameters["branch"] = to_string(branch);
  } else {
    map = map_yv_region(default_yv_grid(cfg.resolution));
  }
  const json manifest = grid_manifest(map, parameters);

  Sink sink(cfg.out_path, out);
  if (cfg.format == "json") {
    json cells = json::array();
    for (const auto& cell : map.cells) {
      json value = nullptr;
      if (cell.kind == CellKind::Finite || cell.kind == CellKind::Unbounded) value = json_number(cell.value);
      cells.push_back({cell.coord1, cell.coord2, value, cell.tag});
    }
    sink.get() << json{{"manifest", manifest}, {"cells", cells}}.dump() << '\n';
    return;
  }
  write_grid_csv(sink.get(), map);
  if (!cfg.out_path.empty()) {
    std::ofstream side(cfg.out_path + ".json");
    if (!side) throw InvalidInput("cannot write manifest next to '" + cfg.out_path + "'");
    side << manifest.dump(2) << '\n';
  }
}

void write_records(std::ostream& os, const std::string& format, std::span<const SampleRecord> records) {
  if (format == "json") {
    write_records_jsonl(os, records);
  } else {
    write_records_csv(os, records);
  }
}

void cmd_scatter(const RunConfig& cfg, std::ostream& out) {
  if (cfg.class_name.size() != 1) throw InvalidInput("--class must be one of a, b, c, d, r");
  auto spec = preset_class(cfg.class_name.front(), cfg.count, cfg.seed);
  if (!spec) throw InvalidInput("--class must be one of a, b, c, d, r");
  if (cfg.count == 0) throw InvalidInput("--count must be at least 1");
  spec->threads = cfg.threads;
  const auto records = run_scatter_study(*spec);
  Sink sink(cfg.out_path, out);
  write_records(sink.get(), cfg.format, records);
}

std::vector<PhasePair> parse_angle_list(const std::string& text) {
  std::vector<PhasePair> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      const double a = parse_angle(item);
      out.emplace_back(a, a);
    } else {
      out.emplace_back(parse_angle(item.substr(0, colon)), parse_angle(item.substr(colon + 1)));
    }
  }
  if (out.empty()) throw InvalidInput("--angles is empty");
  return out;
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  SampleFamily family;
  if (cfg.family == "I") {
    family = SampleFamily::I;
  } else if (cfg.family == "II") {
    family = SampleFamily::II;
  } else if (cfg.family == "II_y0") {
    family = SampleFamily::IIYZero;
  } else {
    throw InvalidInput("--family must be I, II or II_y0");
  }
  if (cfg.count == 0) throw InvalidInput("--count must be at least 1");
  const auto angles = parse_angle_list(cfg.angles);
  const auto blocks = phase_sweep_study(family, angles, cfg.count, cfg.seed, cfg.threads);

  Sink sink(cfg.out_path, out);
  auto& os = sink.get();
  if (cfg.format == "json") {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (const auto& r : blocks[b]) {
        json j = r;
        j["block"] = b;
        os << j.dump() << '\n';
      }
    }
    return;
  }
  os << "block," << kRecordCsvHeader << '\n';
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (const auto& r : blocks[b]) {
      os << b << ',';
      write_record_csv_row(os, r);
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Speed limits, orthogonality times and fermionic entanglement of a two-fermion, six-level system"};
  app.name("fqsl");
  app.require_subcommand(1);
  RunConfig cfg;
  Action action;

  auto* qsl = app.add_subcommand("qsl", "quantum speed limit of one distribution");
  add_distribution_flags(qsl, cfg);
  add_format_flag(qsl, cfg, {"text", "csv", "json"});
  qsl->add_option("--units", cfg.units, "time units: hbar (hbar/eps) or pi (pi*hbar/eps)")
      ->check(CLI::IsMember({"hbar", "pi"}));
  qsl->add_option("--out", cfg.out_path, "output file");
  bind_action(qsl, cfg, action, cmd_qsl, "text");

  auto* ortho = app.add_subcommand("ortho", "orthogonality roots phi in (0, 2pi]");
  add_distribution_flags(ortho, cfg);
  add_format_flag(ortho, cfg, {"text", "csv", "json"});
  ortho->add_option("--tol", cfg.tol, "overlap tolerance for accepted roots");
  ortho->add_option("--out", cfg.out_path, "output file");
  bind_action(ortho, cfg, action, cmd_ortho, "text");

  auto* conc = app.add_subcommand("concurrence", "squared fermionic concurrence");
  add_distribution_flags(conc, cfg);
  add_format_flag(conc, cfg, {"text", "csv", "json"});
  conc->add_option("--alpha", cfg.alpha, "alpha = t1+t6-t2-t5 (decimal or multiple of pi)");
  conc->add_option("--beta", cfg.beta, "beta = t1+t6-t3-t4 (decimal or multiple of pi)");
  conc->add_option("--out", cfg.out_path, "output file");
  bind_action(conc, cfg, action, cmd_concurrence, "text");

  auto* surv = app.add_subcommand("survival", "survival probability series");
  add_distribution_flags(surv, cfg);
  add_format_flag(surv, cfg, {"csv", "json"});
  surv->add_option("--phi-max", cfg.phi_max, "end of the phase grid");
  surv->add_option("--steps", cfg.steps, "number of grid points");
  surv->add_option("--out", cfg.out_path, "output file");
  bind_action(surv, cfg, action, cmd_survival, "csv");

  auto* map = app.add_subcommand("map", "grid maps of the speed limit and solution regions");
  add_format_flag(map, cfg, {"csv", "json"});
  map->add_option("--which", cfg.which, "qsl, xu or yv")->required()->check(CLI::IsMember({"qsl", "xu", "yv"}));
  map->add_option("--res", cfg.resolution, "points per axis");
  map->add_option("--branch", cfg.branch, "xu map branch")->check(CLI::IsMember({"plus", "minus"}));
  map->add_option("--m", cfg.m_index, "occupied minimum m for the qsl map");
  map->add_option("--out", cfg.out_path, "output CSV; a manifest is written to <out>.json");
  bind_action(map, cfg, action, cmd_map, "csv");

  auto* scatter = app.add_subcommand("scatter", "Monte Carlo cf2 vs tau_1/tau_qsl study");
  add_format_flag(scatter, cfg, {"csv", "json"});
  scatter->add_option("--class", cfg.class_name, "a, b, c, d or r (random phases)")->required();
  scatter->add_option("--count", cfg.count, "number of samples");
  scatter->add_option("--seed", cfg.seed, "generator seed")->required();
  scatter->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  scatter->add_option("--out", cfg.out_path, "output file");
  bind_action(scatter, cfg, action, cmd_scatter, "csv");

  auto* sweep = app.add_subcommand("sweep", "one sample set evaluated over a list of phase pairs");
  add_format_flag(sweep, cfg, {"csv", "json"});
  sweep->add_option("--family", cfg.family, "I, II or II_y0");
  sweep->add_option("--angles", cfg.angles, "comma list of a (alpha = beta = a) or alpha:beta");
  sweep->add_option("--count", cfg.count, "number of samples");
  sweep->add_option("--seed", cfg.seed, "generator seed")->required();
  sweep->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  sweep->add_option("--out", cfg.out_path, "output file");
  bind_action(sweep, cfg, action, cmd_sweep, "csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    action(cfg, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kSuccess;
}

}  // namespace fqsl::cli
