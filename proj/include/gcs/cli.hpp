#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gcs/observables.hpp"
#include "gcs/verify.hpp"

namespace gcs::cli {

enum class Command { uncertainty, density, energy, coeffs, verify };
enum class OutputFormat { csv, json };

/// lo:hi:count, evenly spaced and inclusive of both ends.
struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 2;

  static AxisSpec parse(const std::string& text);
  std::vector<double> values() const;
};

/// Custom ladder function f(n) = n^power for n > zeros, 0 otherwise.
struct CustomFamilySpec {
  double power = 0.0;
  int zeros = 0;
};

struct GridRequest {
  Command command = Command::uncertainty;
  FamilyKind family = FamilyKind::one;
  std::optional<CustomFamilySpec> custom;
  double b0 = 2.0;
  double k = 1.0;
  std::optional<Complex> alpha;
  std::optional<AxisSpec> grid_re;
  std::optional<AxisSpec> grid_im;
  std::optional<AxisSpec> x_axis;
  std::vector<double> r_list;
  std::vector<double> theta_list;
  double tol = kDefaultTolerance;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> output;

  /// Throws Error(invalid_request) on inconsistent or out-of-range fields.
  void validate() const;
  LadderFamily ladder_family() const;
  PhysicsConfig config() const;
  /// alpha points in emission order: a single point, the re/im grid (re fastest),
  /// or the r/theta lists (theta fastest).
  std::vector<Complex> alpha_points() const;
};

struct GridRow {
  std::vector<double> values;
  /// Replaces the first column in text output; used for summary rows.
  std::string label;
  std::optional<std::string> error;
};

struct GridResult {
  std::vector<std::string> columns;
  std::vector<GridRow> rows;
  nlohmann::json metadata;

  bool has_errors() const;
};

GridResult run_uncertainty(const GridRequest& req);
GridResult run_density(const GridRequest& req);
GridResult run_energy(const GridRequest& req);
GridResult run_coeffs(const GridRequest& req);
VerifyReport run_verify(const GridRequest& req);

/// 17 significant digits, "nan"/"inf" for non-finite values.
std::string format_double(double v);
/// Parses a real or a multiple/fraction of pi ("pi/4", "3pi/4", "-pi").
double parse_angle(const std::string& text);

std::string to_csv(const GridResult& result);
std::string to_json(const GridResult& result);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitInvalidRequest = 2;
inline constexpr int kExitNonConvergence = 3;

/// Full command-line entry point; writes data to out (or --output) and
/// diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcs::cli
