#include "cli.hpp"

#include "revolv/counterexamples.hpp"
#include "revolv/error.hpp"
#include "revolv/serialize.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

namespace revolv::cli {

namespace {

constexpr const char* kHeader = "s,A,M,P,h_star,x,y";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot write '" + path + "'");
  file << text;
}

double parse_number(const std::string& field) {
  if (field.empty()) throw DomainError("empty CSV field");
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size()) throw DomainError("bad CSV number '" + field + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void print_claims(std::ostream& out, const std::vector<ClaimResult>& claims) {
  for (const auto& c : claims) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << format_number(c.value)
        << (c.lower_bound ? " >= " : " <= ")
        << format_number(c.threshold) << ")\n";
  }
}

// Maps library exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& run) {
  try {
    return run();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

BonnesenPair make_pair(const RunConfig& config) {
  PairConfig pc;
  pc.eps0 = config.eps0;
  return build_bonnesen_pair(config.d, pc);
}

}  // namespace

void RunConfig::validate() const {
  if (d < 3) throw DomainError("--d must be at least 3");
  if (n < 2) throw DomainError("--n must be at least 2");
  if (!(lambda > 0.0)) throw DomainError("--lambda must be positive");
  if (!(tol_functional > 0.0)) throw DomainError("--tol-functional must be positive");
  if (!(eps0 > 0.0)) throw DomainError("--eps0 must be positive");
  if (!(cluster_threshold >= 0.0)) throw DomainError("--cluster-threshold must be >= 0");
  if (mode != "klee" && mode != "bonnesen") throw DomainError("--mode must be klee or bonnesen");
}

SlopeGridSpec RunConfig::grid_spec() const {
  SlopeGridSpec spec;
  spec.s_min = s_min.value_or(mode == "klee" ? 0.05 : 0.0);
  spec.s_max = s_max;
  spec.count = n;
  spec.cluster_half_width = cluster_threshold;
  // Small grids keep roughly a quarter of their points for the cluster.
  spec.cluster_count = cluster_threshold > 0.0 ? std::min(spec.cluster_count, n / 4) : 0;
  return spec;
}

void apply_json(RunConfig& c, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "d") c.d = value.get<int>();
      else if (key == "body") c.body = value.get<std::string>();
      else if (key == "lambda") c.lambda = value.get<double>();
      else if (key == "s_min") c.s_min = value.get<double>();
      else if (key == "s_max") c.s_max = value.get<double>();
      else if (key == "n") c.n = value.get<int>();
      else if (key == "cluster_threshold") c.cluster_threshold = value.get<double>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "report") c.report = value.get<std::string>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "tol_functional") c.tol_functional = value.get<double>();
      else if (key == "eps0") c.eps0 = value.get<double>();
      else if (key == "mode") c.mode = value.get<std::string>();
      else throw DomainError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad config value: ") + e.what());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

void write_sections_csv(std::ostream& os, const SectionTable& table) {
  os << kHeader << '\n';
  for (const auto& r : table.rows) {
    os << format_number(r.slope) << ',' << format_number(r.central) << ','
       << format_number(r.maximal) << ',' << format_number(r.projection) << ','
       << format_number(r.intercept) << ',' << format_number(r.x) << ',' << format_number(r.y)
       << '\n';
  }
  const AxisRow& a = table.axis;
  os << "axis," << format_number(a.central) << ',' << format_number(a.maximal) << ','
     << format_number(a.projection) << ',' << format_number(a.h_star) << ",nan,nan\n";
}

SectionTable read_sections_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kHeader) throw DomainError("missing CSV header");
  SectionTable table;
  bool have_axis = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (have_axis) throw DomainError("rows after the axis row");
    const auto f = split(line);
    if (f.size() != 7) throw DomainError("CSV row needs 7 fields: '" + line + "'");
    if (f[0] == "axis") {
      table.axis = AxisRow{parse_number(f[1]), parse_number(f[2]), parse_number(f[3]),
                           parse_number(f[4])};
      have_axis = true;
      continue;
    }
    table.rows.push_back(FunctionalRow{parse_number(f[0]), parse_number(f[1]),
                                       parse_number(f[2]), parse_number(f[3]),
                                       parse_number(f[4]), parse_number(f[5]),
                                       parse_number(f[6])});
  }
  if (!have_axis) throw DomainError("missing axis row");
  return table;
}

BodyOfRevolution make_body(const RunConfig& c) {
  if (c.body == "ball") return BodyOfRevolution::ball(c.d, c.lambda);
  if (c.body == "klee") {
    if (c.d != 4) throw DomainError("the klee body exists only for d = 4");
    const BodyOfRevolution unit = build_klee_body();
    return BodyOfRevolution(4, unit.profile(), c.lambda);
  }
  if (c.body == "bonnesen-plus" || c.body == "bonnesen-minus") {
    BonnesenPair pair = make_pair(c);
    const BodyOfRevolution& b = c.body == "bonnesen-plus" ? pair.plus : pair.minus;
    return BodyOfRevolution(c.d, b.profile(), c.lambda);
  }
  return body_from_json(read_file(c.body));
}

int run_sections(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const std::vector<double> grid = make_slope_grid(config.grid_spec());
    const BodyOfRevolution body = make_body(config);
    SectionTable table;
    table.rows = sweep(body, grid);
    const AxisFunctionals axis = axis_functionals(body);
    table.axis = AxisRow{axis.central, axis.maximal, axis.projection,
                         body.scale() * body.profile().argmax()};
    std::ostringstream csv;
    write_sections_csv(csv, table);
    emit(config.out, out, csv.str());
    return kExitOk;
  });
}

int run_klee(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (config.d != 4) throw DomainError("the klee construction needs --d 4");
    const BodyOfRevolution unit = build_klee_body();
    const BodyOfRevolution body(4, unit.profile(), config.lambda);
    emit(config.out, out, body_to_json(body) + "\n");
    return kExitOk;
  });
}

int run_bonnesen(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const BonnesenPair pair = make_pair(config);
    emit(config.out, out, pair_to_json(pair) + "\n");
    return kExitOk;
  });
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const std::vector<double> grid = make_slope_grid(config.grid_spec());
    std::string json;
    std::vector<ClaimResult> claims;
    bool pass = false;
    if (config.mode == "klee") {
      if (config.d != 4) throw DomainError("klee mode needs --d 4");
      KleeOptions options;
      options.tol_constant = config.tol_functional;
      const BodyOfRevolution unit = build_klee_body();
      const KleeReport report =
          verify_klee(BodyOfRevolution(4, unit.profile(), config.lambda), grid, options);
      json = report_to_json(report);
      claims = report.claims;
      pass = report.pass;
    } else {
      if (config.d % 2 != 0 || config.d < 4) {
        throw DomainError("bonnesen mode needs an even --d >= 4");
      }
      const BonnesenPair pair = make_pair(config);
      VerifyOptions options;
      options.tol_functional = config.tol_functional;
      options.seed = config.seed;
      const VerificationReport report =
          verify_pair(pair.plus, pair.minus, grid, options, &pair.solution);
      json = report_to_json(report);
      claims = report.claims;
      pass = report.pass;
    }
    if (!config.report.empty()) emit(config.report, out, json + "\n");
    print_claims(out, claims);
    out << (pass ? "PASS" : "FAIL") << " overall\n";
    return pass ? kExitOk : kExitClaimFailed;
  });
}

}  // namespace revolv::cli
