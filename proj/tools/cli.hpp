#pragma once

#include "revolv/body.hpp"
#include "revolv/functionals.hpp"
#include "revolv/slope_grid.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace revolv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  int d = 4;
  /// ball | klee | bonnesen-plus | bonnesen-minus | path to a body JSON file.
  std::string body = "ball";
  double lambda = 1.0;
  /// Unset means 0, or 0.05 in klee mode where slopes must be positive.
  std::optional<double> s_min;
  double s_max = 20.0;
  int n = 100;
  /// Half-width of the extra points around sqrt(7)/3; 0 disables them.
  double cluster_threshold = 0.05;
  std::string out;
  std::string report;
  std::uint64_t seed = 20120418;
  double tol_functional = 1e-6;
  double eps0 = 1e-2;
  /// klee | bonnesen
  std::string mode = "bonnesen";

  /// Throws DomainError when a field is out of range.
  void validate() const;
  SlopeGridSpec grid_spec() const;
};

/// Overwrites the fields present in a JSON object. Keys are the flag names
/// with '-' replaced by '_'. Throws DomainError on unknown keys or bad types.
void apply_json(RunConfig& config, const std::string& text);

struct AxisRow {
  double central;
  double maximal;
  double projection;
  double h_star;
};

struct SectionTable {
  std::vector<FunctionalRow> rows;
  AxisRow axis{};
};

/// Numbers are printed with 15 significant digits.
std::string format_number(double v);
void write_sections_csv(std::ostream& os, const SectionTable& table);
/// Throws DomainError on a malformed table.
SectionTable read_sections_csv(std::istream& is);

/// Resolves config.body to a body.
BodyOfRevolution make_body(const RunConfig& config);

int run_sections(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_klee(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_bonnesen(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace revolv::cli
