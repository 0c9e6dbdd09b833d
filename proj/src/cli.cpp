#include "gcs/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "gcs/errors.hpp"

namespace gcs::cli {

using nlohmann::json;

namespace {

Error invalid(const std::string& what) { return Error(ErrorKind::invalid_request, what); }

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw invalid("not a number: '" + text + "'");
  }
  if (used != text.size()) throw invalid("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

/// Evaluates fn(i) for i in [0, count) on up to hardware_concurrency threads.
/// Each result lands in its own slot, so emission order never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct BuiltState {
  std::optional<CoherentState> state;
  std::string error;
};

BuiltState try_build(const LadderFamily& family, Complex alpha, double tol, const PhysicsConfig& cfg) {
  try {
    return {build_coefficients(family, alpha, tol, cfg), {}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::non_convergence && e.kind() != ErrorKind::numerical) throw;
    return {std::nullopt, e.what()};
  }
}

json base_metadata(const GridRequest& req, std::string_view command) {
  const auto cfg = req.config();
  json meta{{"command", command},
            {"family", req.ladder_family().name()},
            {"config", {{"b0", cfg.b0()}, {"k", cfg.k()}, {"omega", cfg.omega()}}},
            {"tol", req.tol}};
  if (req.custom) meta["custom"] = {{"power", req.custom->power}, {"zeros", req.custom->zeros}};
  return meta;
}

void add_trunc_stats(json& meta, const std::vector<BuiltState>& states) {
  int lo = kMaxBasis + 1;
  int hi = -1;
  double tail = 0.0;
  for (const auto& s : states) {
    if (!s.state) continue;
    lo = std::min(lo, s.state->trunc_order());
    hi = std::max(hi, s.state->trunc_order());
    tail = std::max(tail, s.state->tail_bound());
  }
  if (hi >= 0) meta["trunc"] = {{"min_order", lo}, {"max_order", hi}, {"max_tail_bound", tail}};
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

AxisSpec AxisSpec::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw invalid("axis must be lo:hi:n, got '" + text + "'");
  AxisSpec a;
  a.lo = parse_real(parts[0]);
  a.hi = parse_real(parts[1]);
  const double n = parse_real(parts[2]);
  if (n != std::floor(n) || n < 2 || n > 1e7) throw invalid("axis step count must be an integer >= 2 in '" + text + "'");
  a.count = static_cast<int>(n);
  if (!(a.hi > a.lo)) throw invalid("axis needs lo < hi in '" + text + "'");
  return a;
}

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[i] = (i == count - 1) ? hi : lo + (hi - lo) * i / (count - 1);
  return v;
}

double parse_angle(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ') text += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  const auto pos = text.find("pi");
  if (pos == std::string::npos) return parse_real(text);
  std::string head = text.substr(0, pos);
  std::string tail = text.substr(pos + 2);
  if (!head.empty() && head.back() == '*') head.pop_back();
  double factor = 1.0;
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty() && head != "+") {
    factor = parse_real(head);
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw invalid("cannot parse angle '" + raw + "'");
    divisor = parse_real(tail.substr(1));
    if (divisor == 0.0) throw invalid("zero divisor in angle '" + raw + "'");
  }
  return factor * std::numbers::pi / divisor;
}

void GridRequest::validate() const {
  if (!std::isfinite(b0) || !(b0 > 0.0)) throw invalid("--b0 must be positive");
  if (!std::isfinite(k)) throw invalid("--k must be finite");
  if (!(tol > 0.0) || tol > 1e-8) throw invalid("--tol must lie in (0, 1e-8]");
  if (family == FamilyKind::custom && !custom) throw invalid("--family custom needs --custom-power");
  if (family != FamilyKind::custom && custom) throw invalid("--custom-* options need --family custom");
  if (custom && (custom->zeros < 0 || custom->zeros > 2)) throw invalid("--custom-zeros must be 0, 1 or 2");
  if (grid_re.has_value() != grid_im.has_value()) throw invalid("--grid-re and --grid-im go together");
  const int alpha_specs = (alpha ? 1 : 0) + (grid_re ? 1 : 0) + (!r_list.empty() || !theta_list.empty() ? 1 : 0);
  if (alpha_specs > 1) throw invalid("give alpha as a point, a re/im grid or r/theta lists, not several");
  for (double r : r_list) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw invalid("r values must be finite and non-negative");
  }
  for (double t : theta_list) {
    if (!std::isfinite(t)) throw invalid("theta values must be finite");
  }
  if (x_axis && command != Command::density) throw invalid("--x applies to the density command only");
  if (command == Command::density && grid_re) throw invalid("density takes r/theta lists, not an alpha grid");
  if (alpha && (!std::isfinite(alpha->real()) || !std::isfinite(alpha->imag()))) throw invalid("alpha must be finite");
}

LadderFamily GridRequest::ladder_family() const {
  if (family != FamilyKind::custom) return LadderFamily::builtin(family);
  const CustomFamilySpec spec = custom.value_or(CustomFamilySpec{});
  std::ostringstream name;
  name << "custom(n^" << format_double(spec.power) << ", zeros=" << spec.zeros << ")";
  try {
    return LadderFamily::custom(
        [spec](int n) { return n <= spec.zeros ? 0.0 : std::pow(static_cast<double>(n), spec.power); }, name.str());
  } catch (const Error& e) {
    throw invalid(e.what());
  }
}

PhysicsConfig GridRequest::config() const { return {b0, k}; }

std::vector<Complex> GridRequest::alpha_points() const {
  std::vector<Complex> points;
  if (alpha) {
    points.push_back(*alpha);
  } else if (grid_re) {
    for (double im : grid_im->values()) {
      for (double re : grid_re->values()) points.emplace_back(re, im);
    }
  } else if (!r_list.empty() || !theta_list.empty()) {
    const std::vector<double> rs = r_list.empty() ? std::vector<double>{1.0} : r_list;
    const std::vector<double> ts = theta_list.empty() ? std::vector<double>{0.0} : theta_list;
    for (double r : rs) {
      for (double t : ts) points.push_back(std::polar(r, t));
    }
  }
  return points;
}

bool GridResult::has_errors() const {
  return std::any_of(rows.begin(), rows.end(), [](const GridRow& r) { return r.error.has_value(); });
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

GridRequest with_default_plane(GridRequest req) {
  if (req.alpha_points().empty()) {
    req.grid_re = AxisSpec{-2.0, 2.0, 41};
    req.grid_im = AxisSpec{-2.0, 2.0, 41};
  }
  return req;
}

template <class RowFn>
GridResult alpha_sweep(const GridRequest& req, std::string_view command, std::vector<std::string> columns,
                       RowFn&& row_values) {
  const auto family = req.ladder_family();
  const auto cfg = req.config();
  const auto points = req.alpha_points();
  std::vector<BuiltState> states(points.size());
  std::vector<GridRow> rows(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    states[i] = try_build(family, points[i], req.tol, cfg);
    GridRow& row = rows[i];
    row.values = {points[i].real(), points[i].imag()};
    if (states[i].state) {
      for (double v : row_values(*states[i].state)) row.values.push_back(v);
    } else {
      row.values.resize(columns.size(), kNaN);
      row.error = states[i].error;
    }
  });
  GridResult result{std::move(columns), std::move(rows), base_metadata(req, command)};
  add_trunc_stats(result.metadata, states);
  return result;
}

}  // namespace

GridResult run_uncertainty(const GridRequest& req) {
  req.validate();
  return alpha_sweep(with_default_plane(req), "uncertainty", {"re_alpha", "im_alpha", "var_z", "var_p", "product"},
                     [](const CoherentState& s) {
                       const auto m = uncertainty_product(s);
                       return std::vector<double>{m.var_z, m.var_p, m.product};
                     });
}

GridResult run_energy(const GridRequest& req) {
  req.validate();
  return alpha_sweep(with_default_plane(req), "energy", {"re_alpha", "im_alpha", "mean_energy"},
                     [](const CoherentState& s) { return std::vector<double>{mean_energy(s)}; });
}

GridResult run_coeffs(const GridRequest& req) {
  req.validate();
  GridRequest r = req;
  if (r.alpha_points().empty()) r.alpha = Complex{1.0, 0.0};
  const auto family = r.ladder_family();
  const auto cfg = r.config();
  const auto points = r.alpha_points();
  std::vector<BuiltState> states(points.size());
  parallel_for(points.size(), [&](std::size_t i) { states[i] = try_build(family, points[i], r.tol, cfg); });

  GridResult result{{"re_alpha", "im_alpha", "n", "re_a", "im_a", "prob", "trunc_order", "tail_bound"}, {},
                    base_metadata(r, "coeffs")};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex alpha = points[i];
    if (!states[i].state) {
      GridRow row{{alpha.real(), alpha.imag(), kNaN, kNaN, kNaN, kNaN, kNaN, kNaN}, {}, states[i].error};
      result.rows.push_back(std::move(row));
      continue;
    }
    const auto& s = *states[i].state;
    const auto& a = s.coeffs();
    for (std::size_t n = 0; n < a.size(); ++n) {
      result.rows.push_back({{alpha.real(), alpha.imag(), static_cast<double>(n), a[n].real(), a[n].imag(),
                              std::norm(a[n]), static_cast<double>(s.trunc_order()), s.tail_bound()},
                             {},
                             std::nullopt});
    }
  }
  add_trunc_stats(result.metadata, states);
  return result;
}

GridResult run_density(const GridRequest& req) {
  req.validate();
  const auto family = req.ladder_family();
  const auto cfg = req.config();

  std::vector<double> rs = req.r_list;
  std::vector<double> thetas = req.theta_list;
  if (req.alpha) {
    rs = {std::abs(*req.alpha)};
    thetas = {std::arg(*req.alpha)};
  }
  if (rs.empty()) {
    switch (family.kind()) {
      case FamilyKind::shifted: rs = {1.0, 3.0, 5.0}; break;
      case FamilyKind::cubic: rs = {1.0, 50.0, 100.0}; break;
      default: rs = {1.0, 4.0, 5.0}; break;
    }
  }
  if (thetas.empty()) thetas = {0.0, std::numbers::pi / 4, std::numbers::pi / 2};

  struct Block {
    double r;
    double theta;
  };
  std::vector<Block> blocks;
  for (double r : rs) {
    for (double t : thetas) blocks.push_back({r, t});
  }
  std::vector<BuiltState> states(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t i) {
    states[i] = try_build(family, std::polar(blocks[i].r, blocks[i].theta), req.tol, cfg);
  });

  AxisSpec axis;
  if (req.x_axis) {
    axis = *req.x_axis;
  } else {
    // Union of the supports |z| <= sqrt(2N+1) + 8 of every state.
    int top = 0;
    for (const auto& s : states) {
      if (s.state) top = std::max(top, s.state->trunc_order());
    }
    const double half = std::sqrt(2.0 * top + 1.0) + 8.0;
    axis = {cfg.x_of_z(-half), cfg.x_of_z(half), 2001};
  }
  const auto xs = axis.values();

  std::vector<std::vector<double>> rho(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t i) {
    if (states[i].state) rho[i] = probability_density(*states[i].state, xs);
  });

  GridResult result{{"x", "r", "theta", "rho"}, {}, base_metadata(req, "density")};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto [r, theta] = blocks[i];
    if (!states[i].state) {
      result.rows.push_back({{kNaN, r, theta, kNaN}, {}, states[i].error});
      continue;
    }
    for (std::size_t j = 0; j < xs.size(); ++j) result.rows.push_back({{xs[j], r, theta, rho[i][j]}, {}, std::nullopt});
    double integral = 0.0;
    for (std::size_t j = 1; j < xs.size(); ++j) integral += 0.5 * (xs[j] - xs[j - 1]) * (rho[i][j] + rho[i][j - 1]);
    result.rows.push_back({{kNaN, r, theta, integral}, "integral", std::nullopt});
  }
  result.metadata["x"] = {{"lo", axis.lo}, {"hi", axis.hi}, {"n", axis.count}};
  add_trunc_stats(result.metadata, states);
  return result;
}

VerifyReport run_verify(const GridRequest& req) {
  if (!(req.tol > 0.0) || req.tol > 1e-8) throw invalid("--tol must lie in (0, 1e-8]");
  return run_verification(req.tol);
}

std::string to_csv(const GridResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i) out += ',';
    out += result.columns[i];
  }
  out += '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      if (i) out += ',';
      out += (i == 0 && !row.label.empty()) ? row.label : format_double(row.values[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string to_json(const GridResult& result) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.values.size() && i < result.columns.size(); ++i) {
      if (i == 0 && !row.label.empty()) {
        obj[result.columns[i]] = row.label;
      } else {
        obj[result.columns[i]] = number_or_null(row.values[i]);
      }
    }
    if (row.error) obj["error"] = *row.error;
    rows.push_back(std::move(obj));
  }
  json doc{{"metadata", result.metadata}, {"columns", result.columns}, {"rows", std::move(rows)}};
  // dump() prints doubles in shortest round-trip form, which is deterministic.
  return doc.dump(2) + "\n";
}

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_convergence:
    case ErrorKind::numerical: return kExitNonConvergence;
    default: return kExitInvalidRequest;
  }
}

void emit(const std::string& text, const GridRequest& req, std::ostream& out) {
  if (!req.output) {
    out << text;
    return;
  }
  std::ofstream file(*req.output, std::ios::binary);
  if (!file) throw invalid("cannot open output file '" + *req.output + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graphene coherent states: uncertainty products, densities and mean energies"};
  app.name("gcs");
  app.require_subcommand(1);

  GridRequest req;
  std::string family = "one";
  std::optional<double> alpha_re;
  std::optional<double> alpha_im;
  std::optional<double> r_single;
  std::optional<std::string> theta_single;
  std::optional<std::string> grid_re;
  std::optional<std::string> grid_im;
  std::optional<std::string> x_axis;
  std::vector<std::string> r_list;
  std::vector<std::string> theta_list;
  std::optional<double> custom_power;
  int custom_zeros = 0;
  std::string format = "csv";
  std::string output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", family, "one | shifted | cubic | custom")->capture_default_str();
    sub->add_option("--custom-power", custom_power, "custom family f(n) = n^p");
    sub->add_option("--custom-zeros", custom_zeros, "custom family: f(n) = 0 for n <= zeros (0, 1 or 2)");
    sub->add_option("--b0", req.b0, "magnetic field strength")->capture_default_str();
    sub->add_option("--k", req.k, "wavenumber along y")->capture_default_str();
    sub->add_option("--alpha-re", alpha_re, "Re(alpha) of a single point");
    sub->add_option("--alpha-im", alpha_im, "Im(alpha) of a single point");
    sub->add_option("--r", r_single, "|alpha| of a single point");
    sub->add_option("--theta", theta_single, "arg(alpha) of a single point (accepts pi/4 etc.)");
    sub->add_option("--grid-re", grid_re, "Re(alpha) axis lo:hi:n");
    sub->add_option("--grid-im", grid_im, "Im(alpha) axis lo:hi:n");
    sub->add_option("--x", x_axis, "x axis lo:hi:n (density)");
    sub->add_option("--r-list", r_list, "comma-separated |alpha| values")->delimiter(',');
    sub->add_option("--theta-list", theta_list, "comma-separated arg(alpha) values")->delimiter(',');
    sub->add_option("--tol", req.tol, "truncation tolerance in (0, 1e-8]")->capture_default_str();
    sub->add_option("--format", format, "csv | json")->capture_default_str();
    sub->add_option("--output", output, "output path (default: standard output)");
  };

  struct CommandInfo {
    const char* name;
    const char* help;
    Command cmd;
  };
  const CommandInfo commands[] = {
      {"uncertainty", "variances and uncertainty product over an alpha grid", Command::uncertainty},
      {"density", "probability density rho(x) for lists of |alpha| and arg(alpha)", Command::density},
      {"energy", "mean energy over an alpha grid", Command::energy},
      {"coeffs", "expansion coefficients over the Landau spinors", Command::coeffs},
      {"verify", "run the invariant suite and print a JSON report", Command::verify}};
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, help, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    subs.emplace_back(sub, cmd);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidRequest;
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) req.command = cmd;
    }
    req.family = parse_family_kind(family);
    if (custom_power) req.custom = CustomFamilySpec{*custom_power, custom_zeros};
    if (format == "csv") {
      req.format = OutputFormat::csv;
    } else if (format == "json") {
      req.format = OutputFormat::json;
    } else {
      throw invalid("--format must be csv or json");
    }
    if (!output.empty()) req.output = output;
    if (alpha_re || alpha_im) {
      if (r_single || theta_single) throw invalid("give alpha either as re/im or as r/theta");
      req.alpha = Complex{alpha_re.value_or(0.0), alpha_im.value_or(0.0)};
    } else if (r_single || theta_single) {
      const double r = r_single.value_or(0.0);
      if (!(r >= 0.0)) throw invalid("--r must be non-negative");
      req.alpha = std::polar(r, theta_single ? parse_angle(*theta_single) : 0.0);
    }
    if (grid_re) req.grid_re = AxisSpec::parse(*grid_re);
    if (grid_im) req.grid_im = AxisSpec::parse(*grid_im);
    if (x_axis) req.x_axis = AxisSpec::parse(*x_axis);
    for (const auto& r : r_list) req.r_list.push_back(parse_real(r));
    for (const auto& t : theta_list) req.theta_list.push_back(parse_angle(t));
    if (req.alpha && (!req.r_list.empty() || !req.theta_list.empty())) {
      throw invalid("give alpha as a point, a re/im grid or r/theta lists, not several");
    }

    if (req.command == Command::verify) {
      const auto report = run_verify(req);
      emit(report.to_json().dump(2) + "\n", req, out);
      for (const auto& c : report.cases) {
        if (!c.pass) err << "FAIL " << c.name << " residual " << format_double(c.residual) << "\n";
      }
      return report.all_pass() ? kExitOk : kExitInvariantFailure;
    }

    GridResult result;
    switch (req.command) {
      case Command::uncertainty: result = run_uncertainty(req); break;
      case Command::density: result = run_density(req); break;
      case Command::energy: result = run_energy(req); break;
      case Command::coeffs: result = run_coeffs(req); break;
      case Command::verify: break;
    }
    emit(req.format == OutputFormat::json ? to_json(result) : to_csv(result), req, out);
    for (const auto& row : result.rows) {
      if (row.error) err << "error: " << *row.error << "\n";
    }
    return result.has_errors() ? kExitNonConvergence : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace gcs::cli
