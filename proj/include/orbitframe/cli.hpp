#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "orbitframe/disc.hpp"
#include "orbitframe/errors.hpp"
#include "orbitframe/frames.hpp"
#include "orbitframe/hardy.hpp"
#include "orbitframe/oprep.hpp"
#include "orbitframe/rng.hpp"
#include "orbitframe/testing/oracles.hpp"
#include "orbitframe/version.hpp"

namespace orbitframe::cli {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Result tables. CSV cells are printed with 17 significant digits so that
// doubles round-trip and golden comparisons can be byte-exact.

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::optional<std::vector<Cell>> csv_summary_row;           // aligned with columns
  std::vector<std::pair<std::string, Cell>> json_summary;     // free-form summary
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

inline std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  if (t.csv_summary_row) {
    const auto& row = *t.csv_summary_row;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline json cell_to_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return *std::get_if<std::string>(&c);
}

// JSON output is an array of row objects (numeric values stay numbers); a
// command with summary statistics appends one trailing {"summary": {...}}
// element.
inline json render_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  if (!t.json_summary.empty()) {
    json s = json::object();
    for (const auto& [k, v] : t.json_summary) s[k] = cell_to_json(v);
    rows.push_back(json{{"summary", std::move(s)}});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Config model. Unknown keys anywhere in the document are rejected before
// any computation runs.

struct OutputSpec {
  std::filesystem::path path;
  enum class Format { Csv, Json } format = Format::Csv;
};

struct Tolerances {
  double separation = disc::kDefaultSeparationTol;
  double rank = 1e-10;
  double residual = 1e-8;
};

struct SequenceSpec {
  disc::SequenceGenerator generator;
  std::optional<std::size_t> count;  // K
};

struct TargetSpec {
  std::optional<std::size_t> random_count;
  std::vector<Eigen::VectorXcd> explicit_targets;
};

struct FactoryFamilySpec {
  std::string name;
  std::size_t dimension = 0;
  std::size_t count = 0;
  std::optional<double> parameter;
};

struct OrbitFamilySpec {
  SequenceSpec sequence;
  std::size_t iterations = 0;
};

using FamilySpec = std::variant<FactoryFamilySpec, OrbitFamilySpec>;

struct ExperimentConfig {
  std::string command;
  std::optional<SequenceSpec> sequence;
  std::vector<std::size_t> truncations;       // K_list
  std::vector<std::size_t> iteration_counts;  // N_list
  Tolerances tolerances;
  OutputSpec output;
  std::uint64_t seed = 0;
  std::optional<double> ratio_certificate;
  std::optional<TargetSpec> targets;
  std::optional<std::size_t> degree;  // empty means automatic
  std::optional<FamilySpec> family;
  std::vector<std::string> checks;  // represent
  double kernel_tol = 1e-8;
  std::optional<std::string> example_name;
  std::optional<std::size_t> example_count;
  std::optional<double> parameter;
  std::string canonical_text;  // dump of the parsed document, hashed into the report
};

namespace detail {

inline void require_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + context);
  }
}

inline const json& require_field(const json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError(std::string("missing required key '") + key + "' in " + context);
  return *it;
}

inline double as_number(const json& v, const std::string& context) {
  if (!v.is_number()) throw ConfigError(context + " must be a number");
  return v.get<double>();
}

inline std::size_t as_count(const json& v, const std::string& context) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(context + " must be a non-negative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

inline std::string as_string(const json& v, const std::string& context) {
  if (!v.is_string()) throw ConfigError(context + " must be a string");
  return v.get<std::string>();
}

inline std::complex<double> as_complex(const json& v, const std::string& context) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(context + " must be a number or a [re, im] pair");
}

inline std::vector<std::size_t> as_count_list(const json& v, const std::string& context) {
  if (!v.is_array() || v.empty()) throw ConfigError(context + " must be a non-empty array");
  std::vector<std::size_t> out;
  for (const auto& e : v) out.push_back(as_count(e, context + " entry"));
  return out;
}

inline SequenceSpec parse_sequence(const json& v, bool allow_count, const std::string& context) {
  if (!v.is_object()) throw ConfigError(context + " must be an object");
  SequenceSpec spec;
  if (v.contains("generator")) {
    const std::string g = as_string(v.at("generator"), context + ".generator");
    if (g == "geometric") {
      require_keys(v, allow_count ? std::set<std::string>{"generator", "alpha", "K"}
                                  : std::set<std::string>{"generator", "alpha"},
                   context);
      spec.generator =
          disc::GeometricGenerator{as_number(require_field(v, "alpha", context), context + ".alpha")};
    } else if (g == "power") {
      require_keys(v, allow_count ? std::set<std::string>{"generator", "p", "K"}
                                  : std::set<std::string>{"generator", "p"},
                   context);
      spec.generator =
          disc::PowerGenerator{as_number(require_field(v, "p", context), context + ".p")};
    } else {
      throw ConfigError(context + ".generator must be 'geometric' or 'power'");
    }
  } else if (v.contains("values")) {
    require_keys(v, allow_count ? std::set<std::string>{"values", "K"}
                                : std::set<std::string>{"values"},
                 context);
    const json& vals = v.at("values");
    if (!vals.is_array() || vals.empty())
      throw ConfigError(context + ".values must be a non-empty array");
    disc::ExplicitGenerator e;
    for (const auto& entry : vals) e.values.push_back(as_complex(entry, context + ".values entry"));
    spec.generator = std::move(e);
  } else {
    throw ConfigError(context + " needs either 'generator' or 'values'");
  }
  if (allow_count && v.contains("K")) spec.count = as_count(v.at("K"), context + ".K");
  return spec;
}

inline std::size_t sequence_count(const SequenceSpec& spec, const std::string& context) {
  if (spec.count) return *spec.count;
  if (const auto* e = std::get_if<disc::ExplicitGenerator>(&spec.generator))
    return e->values.size();
  throw ConfigError(context + ": generator sequences need an explicit 'K'");
}

inline OutputSpec parse_output(const json& v) {
  if (!v.is_object()) throw ConfigError("'output' must be an object");
  require_keys(v, {"path", "format"}, "'output'");
  OutputSpec out;
  out.path = as_string(require_field(v, "path", "'output'"), "output.path");
  if (out.path.empty()) throw ConfigError("output.path must be non-empty");
  const std::string f = as_string(require_field(v, "format", "'output'"), "output.format");
  if (f == "csv") out.format = OutputSpec::Format::Csv;
  else if (f == "json") out.format = OutputSpec::Format::Json;
  else throw ConfigError("output.format must be 'csv' or 'json'");
  return out;
}

inline Tolerances parse_tolerances(const json& v) {
  if (!v.is_object()) throw ConfigError("'tolerances' must be an object");
  require_keys(v, {"separation", "rank", "residual"}, "'tolerances'");
  Tolerances t;
  if (v.contains("separation")) t.separation = as_number(v.at("separation"), "tolerances.separation");
  if (v.contains("rank")) t.rank = as_number(v.at("rank"), "tolerances.rank");
  if (v.contains("residual")) t.residual = as_number(v.at("residual"), "tolerances.residual");
  if (!(t.separation > 0.0) || !(t.rank > 0.0) || !(t.residual > 0.0))
    throw ConfigError("all tolerances must be positive");
  return t;
}

inline TargetSpec parse_targets(const json& v, const std::string& context) {
  if (!v.is_object()) throw ConfigError(context + " must be an object");
  require_keys(v, {"random", "values"}, context);
  TargetSpec t;
  const bool has_random = v.contains("random");
  const bool has_values = v.contains("values");
  if (has_random == has_values)
    throw ConfigError(context + " needs exactly one of 'random' or 'values'");
  if (has_random) {
    t.random_count = as_count(v.at("random"), context + ".random");
    if (*t.random_count == 0) throw ConfigError(context + ".random must be positive");
  } else {
    const json& vals = v.at("values");
    if (!vals.is_array() || vals.empty())
      throw ConfigError(context + ".values must be a non-empty array of target vectors");
    for (const auto& tv : vals) {
      if (!tv.is_array() || tv.empty())
        throw ConfigError(context + ".values entries must be non-empty arrays");
      Eigen::VectorXcd vec(static_cast<Eigen::Index>(tv.size()));
      Eigen::Index i = 0;
      for (const auto& entry : tv) vec(i++) = as_complex(entry, context + " target entry");
      t.explicit_targets.push_back(std::move(vec));
    }
  }
  return t;
}

inline FamilySpec parse_family(const json& v) {
  if (!v.is_object()) throw ConfigError("'family' must be an object");
  require_keys(v, {"factory", "orbit"}, "'family'");
  const bool has_factory = v.contains("factory");
  const bool has_orbit = v.contains("orbit");
  if (has_factory == has_orbit)
    throw ConfigError("'family' needs exactly one of 'factory' or 'orbit'");
  if (has_factory) {
    const json& f = v.at("factory");
    if (!f.is_object()) throw ConfigError("family.factory must be an object");
    require_keys(f, {"name", "dimension", "count", "parameter"}, "family.factory");
    FactoryFamilySpec spec;
    spec.name = as_string(require_field(f, "name", "family.factory"), "family.factory.name");
    spec.dimension =
        as_count(require_field(f, "dimension", "family.factory"), "family.factory.dimension");
    spec.count = as_count(require_field(f, "count", "family.factory"), "family.factory.count");
    if (f.contains("parameter"))
      spec.parameter = as_number(f.at("parameter"), "family.factory.parameter");
    return spec;
  }
  const json& o = v.at("orbit");
  if (!o.is_object()) throw ConfigError("family.orbit must be an object");
  require_keys(o, {"sequence", "iterations"}, "family.orbit");
  OrbitFamilySpec spec;
  spec.sequence =
      parse_sequence(require_field(o, "sequence", "family.orbit"), true, "family.orbit.sequence");
  spec.iterations =
      as_count(require_field(o, "iterations", "family.orbit"), "family.orbit.iterations");
  return spec;
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& doc) {
  using detail::as_count;
  using detail::as_number;
  using detail::as_string;
  using detail::require_field;
  using detail::require_keys;

  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.command = as_string(require_field(doc, "command", "config"), "command");
  cfg.canonical_text = doc.dump();

  static const std::set<std::string> kCommon = {"command", "output", "seed", "tolerances"};
  std::set<std::string> allowed = kCommon;

  if (cfg.command == "carleson") {
    allowed.insert({"sequence", "ratio_certificate"});
  } else if (cfg.command == "interpolate") {
    allowed.insert({"sequence", "targets", "degree"});
  } else if (cfg.command == "frame-sweep") {
    allowed.insert({"sequence", "K_list", "N_list"});
  } else if (cfg.command == "represent") {
    allowed.insert({"family", "checks", "kernel_tol"});
  } else if (cfg.command == "examples") {
    allowed.insert({"name", "count", "parameter"});
  } else {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  require_keys(doc, allowed, "config");

  cfg.output = detail::parse_output(require_field(doc, "output", "config"));
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      throw ConfigError("'seed' must be a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(s.get<long long>());
  }
  if (doc.contains("tolerances")) cfg.tolerances = detail::parse_tolerances(doc.at("tolerances"));

  if (cfg.command == "carleson") {
    cfg.sequence = detail::parse_sequence(require_field(doc, "sequence", "config"), true,
                                          "'sequence'");
    if (doc.contains("ratio_certificate"))
      cfg.ratio_certificate = as_number(doc.at("ratio_certificate"), "ratio_certificate");
  } else if (cfg.command == "interpolate") {
    cfg.sequence = detail::parse_sequence(require_field(doc, "sequence", "config"), true,
                                          "'sequence'");
    cfg.targets = detail::parse_targets(require_field(doc, "targets", "config"), "'targets'");
    if (doc.contains("degree")) {
      const json& d = doc.at("degree");
      if (d.is_string()) {
        if (d.get<std::string>() != "auto")
          throw ConfigError("'degree' must be \"auto\" or a non-negative integer");
      } else {
        cfg.degree = as_count(d, "degree");
      }
    }
  } else if (cfg.command == "frame-sweep") {
    cfg.sequence = detail::parse_sequence(require_field(doc, "sequence", "config"), false,
                                          "'sequence'");
    cfg.truncations = detail::as_count_list(require_field(doc, "K_list", "config"), "K_list");
    cfg.iteration_counts = detail::as_count_list(require_field(doc, "N_list", "config"), "N_list");
    for (std::size_t k : cfg.truncations)
      if (k == 0) throw ConfigError("K_list entries must be positive");
  } else if (cfg.command == "represent") {
    cfg.family = detail::parse_family(require_field(doc, "family", "config"));
    cfg.checks = {"ratios", "restricted_norm", "kernel"};
    if (doc.contains("checks")) {
      const json& c = doc.at("checks");
      if (!c.is_array() || c.empty()) throw ConfigError("'checks' must be a non-empty array");
      cfg.checks.clear();
      for (const auto& e : c) {
        const std::string name = as_string(e, "checks entry");
        if (name != "ratios" && name != "restricted_norm" && name != "kernel")
          throw ConfigError("unknown check '" + name + "'");
        cfg.checks.push_back(name);
      }
    }
    if (doc.contains("kernel_tol")) {
      cfg.kernel_tol = as_number(doc.at("kernel_tol"), "kernel_tol");
      if (!(cfg.kernel_tol > 0.0)) throw ConfigError("'kernel_tol' must be positive");
    }
  } else if (cfg.command == "examples") {
    cfg.example_name = as_string(require_field(doc, "name", "config"), "name");
    cfg.example_count = as_count(require_field(doc, "count", "config"), "count");
    if (*cfg.example_count == 0) throw ConfigError("'count' must be positive");
    if (doc.contains("parameter")) cfg.parameter = as_number(doc.at("parameter"), "parameter");
  }
  return cfg;
}

// ---------------------------------------------------------------------------

inline unsigned thread_cap_from_env() {
  const char* v = std::getenv("ORBITFRAME_THREADS");
  if (v == nullptr || *v == '\0') return 0;  // automatic
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1)
    throw ConfigError("ORBITFRAME_THREADS must be a positive integer");
  return static_cast<unsigned>(n);
}

inline std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct RunReport {
  std::string command;
  std::string config_hash;
  Table table;
  std::filesystem::path output_path;
  double duration_ms = 0.0;  // stdout only, never part of output files
  std::string library_version = ORBITFRAME_VERSION;

  json stdout_json() const {
    return json{{"command", command},       {"config_hash", config_hash},
                {"rows", table.rows.size()}, {"output", output_path.string()},
                {"duration_ms", duration_ms}, {"version", library_version}};
  }
};

namespace detail {

inline Table run_carleson(const ExperimentConfig& cfg) {
  const std::size_t count = sequence_count(*cfg.sequence, "carleson");
  const disc::DiscSequence seq =
      disc::generate_prefix(cfg.sequence->generator, count, cfg.tolerances.separation);
  const disc::CarlesonReport rep = disc::carleson_products(seq, cfg.ratio_certificate);

  Table t;
  t.columns = {"k", "lambda_re", "lambda_im", "delta_n", "ratio"};
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double ratio = k + 1 < seq.size() ? seq.gap(k + 1) / seq.gap(k) : 0.0;
    t.rows.push_back({static_cast<std::int64_t>(k + 1), seq.value(k).real(),
                      seq.value(k).imag(), rep.per_index_products[k], ratio});
  }
  t.csv_summary_row = {{std::string("summary"), std::string(), std::string(), rep.infimum,
                        rep.ratio_sup}};
  t.json_summary = {{"infimum", rep.infimum},
                    {"ratio_sup", rep.ratio_sup},
                    {"tail_sum", rep.tail_sum},
                    {"verdict", std::string(disc::to_string(rep.verdict))}};
  return t;
}

inline Table run_frame_sweep(const ExperimentConfig& cfg) {
  const auto rows = frames::carleson_frame_experiment(
      cfg.sequence->generator, cfg.truncations, cfg.iteration_counts, thread_cap_from_env());
  Table t;
  t.columns = {"K", "N", "A", "B", "delta"};
  for (const auto& r : rows)
    t.rows.push_back({static_cast<std::int64_t>(r.truncation),
                      static_cast<std::int64_t>(r.iterations), r.lower, r.upper,
                      r.carleson_infimum});
  return t;
}

inline Table run_interpolate(const ExperimentConfig& cfg) {
  const std::size_t count = sequence_count(*cfg.sequence, "interpolate");
  const disc::DiscSequence seq =
      disc::generate_prefix(cfg.sequence->generator, count, cfg.tolerances.separation);

  std::vector<Eigen::VectorXcd> targets;
  if (cfg.targets->random_count) {
    Rng rng(cfg.seed);
    for (std::size_t t = 0; t < *cfg.targets->random_count; ++t) {
      Eigen::VectorXcd c(static_cast<Eigen::Index>(seq.size()));
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = rng.uniform_complex(1.0);
      targets.push_back(std::move(c));
    }
  } else {
    targets = cfg.targets->explicit_targets;
    for (const auto& c : targets)
      if (static_cast<std::size_t>(c.size()) != seq.size())
        throw DimensionError("interpolate: target length must equal the sequence length");
  }

  Table t;
  t.columns = {"trial", "residual_rel", "degree", "interpolant_norm"};
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const hardy::HardyPoly f = hardy::interpolate(seq, targets[i], cfg.degree);
    const Eigen::VectorXcd achieved = hardy::phi_lambda(f, seq);
    const double target_norm = targets[i].norm();
    const double resid = (achieved - targets[i]).norm();
    t.rows.push_back({static_cast<std::int64_t>(i + 1),
                      target_norm > 0.0 ? resid / target_norm : resid,
                      static_cast<std::int64_t>(f.degree()), f.coeffs.norm()});
  }
  return t;
}

inline Table run_represent(const ExperimentConfig& cfg) {
  oprep::VectorFamily family = [&] {
    if (const auto* fac = std::get_if<FactoryFamilySpec>(&*cfg.family))
      return oprep::example_factory(fac->name, fac->dimension, fac->count, fac->parameter);
    const auto& orb = std::get<OrbitFamilySpec>(*cfg.family);
    const std::size_t count = sequence_count(orb.sequence, "represent");
    const disc::DiscSequence seq =
        disc::generate_prefix(orb.sequence.generator, count, cfg.tolerances.separation);
    const frames::DiagonalSystem sys(seq);
    return oprep::VectorFamily::raw(frames::orbit_matrix(sys, orb.iterations).entries, "orbit");
  }();

  Table t;
  t.columns = {"key", "value"};
  for (const auto& check : cfg.checks) {
    if (check == "ratios") {
      const Eigen::VectorXd ratios = oprep::norm_ratio_sequence(family);
      for (Eigen::Index k = 0; k < ratios.size(); ++k)
        t.rows.push_back({"norm_ratio_" + std::to_string(k + 1), ratios(k)});
    } else if (check == "restricted_norm") {
      t.rows.push_back({std::string("restricted_norm"),
                        oprep::restricted_norm_estimate(family, cfg.tolerances.rank)});
    } else {  // kernel
      const auto rep = oprep::kernel_shift_check(family, cfg.kernel_tol);
      t.rows.push_back({std::string("kernel_dimension"),
                        static_cast<std::int64_t>(rep.kernel_dimension)});
      t.rows.push_back({std::string("kernel_max_projection_residual"),
                        rep.max_projection_residual});
      t.rows.push_back({std::string("kernel_max_synthesis_residual"),
                        rep.max_synthesis_residual});
      t.rows.push_back({std::string("kernel_invariant_within_tol"),
                        static_cast<std::int64_t>(rep.invariant_within_tol ? 1 : 0)});
    }
  }
  return t;
}

inline Table run_examples(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"n", "value"};
  const std::string& name = *cfg.example_name;
  const std::size_t count = *cfg.example_count;
  if (name == "block") {
    const auto coeffs = oprep::block_orbit_coefficients(count);
    for (std::size_t n = 0; n < coeffs.size(); ++n)
      t.rows.push_back({static_cast<std::int64_t>(n), coeffs[n]});
    return t;
  }
  const std::size_t dim = name == "sum_basis" ? count + 1 : count;
  const oprep::VectorFamily family = oprep::example_factory(name, dim, count, cfg.parameter);
  for (Eigen::Index k = 0; k < family.size(); ++k)
    t.rows.push_back({static_cast<std::int64_t>(k + 1), family.matrix().col(k).norm()});
  return t;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace detail

inline RunReport run(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = cfg.command;
  rep.config_hash = fnv1a_hex(cfg.canonical_text);
  rep.output_path = cfg.output.path;

  if (cfg.command == "carleson") rep.table = detail::run_carleson(cfg);
  else if (cfg.command == "frame-sweep") rep.table = detail::run_frame_sweep(cfg);
  else if (cfg.command == "interpolate") rep.table = detail::run_interpolate(cfg);
  else if (cfg.command == "represent") rep.table = detail::run_represent(cfg);
  else rep.table = detail::run_examples(cfg);

  std::string text;
  if (cfg.output.format == OutputSpec::Format::Csv) {
    text = render_csv(rep.table);
  } else {
    text = render_json(rep.table).dump(2);
    text += '\n';
  }
  detail::write_text_file(cfg.output.path, text);

  rep.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline RunReport run_file(const std::filesystem::path& config_path) {
  std::ifstream in(config_path);
  if (!in) throw IoError("cannot read config file " + config_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return run(parse_config(doc));
}

// ---------------------------------------------------------------------------
// Golden regeneration. Every file starts with provenance comments; the date
// line is the only part expected to change between regenerations.

namespace detail {

inline std::string today_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[16];
  std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
  return buf;
}

inline std::string golden_header(const std::string& suite, const std::string& oracle,
                                 std::uint64_t seed) {
  std::string h;
  h += "# suite: " + suite + "\n";
  h += "# oracle: " + oracle + "\n";
  h += "# seed: " + std::to_string(seed) + "\n";
  h += "# date: " + today_utc() + "\n";
  return h;
}

}  // namespace detail

inline std::vector<std::filesystem::path> regenerate_goldens(const std::string& suite,
                                                             const std::filesystem::path& out_dir) {
  if (suite != "carleson" && suite != "frames" && suite != "repr" && suite != "hardy")
    throw ConfigError("unknown golden suite '" + suite +
                      "' (expected carleson, frames, repr or hardy)");

  std::vector<std::filesystem::path> written;
  const auto emit = [&](const std::string& file, const std::string& header, const Table& t) {
    const std::filesystem::path path = out_dir / file;
    detail::write_text_file(path, header + render_csv(t));
    written.push_back(path);
  };

  if (suite == "carleson") {
    Table t;
    t.columns = {"family", "K", "delta"};
    for (std::size_t K : {10u, 15u, 20u, 25u}) {
      const auto delta = testing::brute_force_infimum(testing::geometric_gaps(2.0L, K));
      t.rows.push_back({std::string("geometric_2"), static_cast<std::int64_t>(K),
                        static_cast<double>(delta)});
    }
    for (std::size_t K : {10u, 20u, 40u, 60u}) {
      const auto delta = testing::brute_force_infimum(testing::power_gaps(2.0L, K));
      t.rows.push_back({std::string("power_2"), static_cast<std::int64_t>(K),
                        static_cast<double>(delta)});
    }
    emit("carleson_deltas.csv",
         detail::golden_header("carleson", "brute-force pseudo-hyperbolic product (long double)", 0),
         t);
    return written;
  }

  if (suite == "frames") {
    Table t;
    t.columns = {"family", "K", "N", "A", "B"};
    const auto add = [&](const char* family, const disc::SequenceGenerator& gen,
                         std::initializer_list<std::size_t> Ks,
                         std::initializer_list<std::size_t> Ns) {
      for (std::size_t K : Ks) {
        for (std::size_t N : Ns) {
          const frames::DiagonalSystem sys(disc::generate_prefix(gen, K));
          const auto b = frames::frame_bounds(frames::orbit_matrix(sys, N));
          t.rows.push_back({std::string(family), static_cast<std::int64_t>(K),
                            static_cast<std::int64_t>(N), b.lower, b.upper});
        }
      }
    };
    add("geometric_2", disc::GeometricGenerator{2.0}, {5, 8}, {2000, 4000});
    add("power_2", disc::PowerGenerator{2.0}, {10, 20}, {800, 1600});
    emit("frame_grid.csv",
         detail::golden_header("frames", "run-and-freeze (Jacobi SVD of the orbit matrix)", 0), t);
    return written;
  }

  if (suite == "repr") {
    Table t;
    t.columns = {"family", "dimension", "count", "restricted_norm"};
    for (std::size_t n : {5u, 10u, 15u}) {
      const auto fam = oprep::example_factory("factorial", n, n);
      t.rows.push_back({std::string("factorial"), static_cast<std::int64_t>(n),
                        static_cast<std::int64_t>(n), oprep::restricted_norm_estimate(fam)});
    }
    {
      const auto fam = oprep::example_factory("sum_basis", 50, 49);
      t.rows.push_back({std::string("sum_basis"), std::int64_t(50), std::int64_t(49),
                        oprep::restricted_norm_estimate(fam)});
    }
    {
      const auto fam = oprep::example_factory("scaled", 10, 10, 0.5);
      t.rows.push_back({std::string("scaled_half"), std::int64_t(10), std::int64_t(10),
                        oprep::restricted_norm_estimate(fam)});
    }
    emit("restricted_norms.csv",
         detail::golden_header("repr", "quotient SVD against diagonal closed forms", 0), t);

    Table b;
    b.columns = {"n", "coefficient"};
    const auto coeffs = oprep::block_orbit_coefficients(20);
    for (std::size_t n = 0; n < coeffs.size(); ++n)
      b.rows.push_back({static_cast<std::int64_t>(n), coeffs[n]});
    emit("block_coefficients.csv",
         detail::golden_header("repr", "alternating block product, exact powers of two", 0), b);
    return written;
  }

  // hardy
  constexpr std::uint64_t kHardySeed = 2024;
  Table t;
  t.columns = {"case", "K", "trials", "max_residual_rel"};
  for (std::size_t K : {8u, 10u}) {
    const disc::DiscSequence seq = disc::generate_geometric(2.0, K);
    Rng rng(kHardySeed);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXcd c(static_cast<Eigen::Index>(K));
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = rng.uniform_complex(1.0);
      const auto f = hardy::interpolate(seq, c);
      worst = std::max(worst, (hardy::phi_lambda(f, seq) - c).norm() / c.norm());
    }
    t.rows.push_back({std::string("geometric_2_random"), static_cast<std::int64_t>(K),
                      std::int64_t(50), worst});
  }
  {
    const disc::DiscSequence seq = disc::generate_geometric(2.0, 8);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(8);
    c(2) = 1.0;
    const auto f = hardy::interpolate(seq, c);
    t.rows.push_back({std::string("geometric_2_delta3"), std::int64_t(8), std::int64_t(1),
                      (hardy::phi_lambda(f, seq) - c).norm()});
  }
  emit("interpolation_residuals.csv",
       detail::golden_header("hardy", "round-trip through direct polynomial evaluation",
                             kHardySeed),
       t);
  return written;
}

}  // namespace orbitframe::cli
