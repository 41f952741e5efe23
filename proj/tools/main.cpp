// Command-line front end: certificate verification and search, solution-set
// exploration, system evaluation, and the self-testing pipeline.
//
// Exit codes: 0 success / all checks pass, 1 verification failure or bound
// violation, 2 usage error.

#include "tilted/cert_io.hpp"
#include "tilted/sdp.hpp"
#include "tilted/selftest.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;
using namespace tilted;

std::ostream& out12(std::ostream& os) {
  os.precision(12);
  return os;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw CLI::ValidationError("cannot open output file " + path);
  f << content;
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("cannot open " + path);
  json j;
  f >> j;
  return j;
}

double parse_theta(const std::string& text) {
  const double pi4 = std::atan(1.0);
  if (text == "pi/4") return pi4;
  if (text == "pi/8") return pi4 / 2;
  if (text == "pi/6") return 4 * pi4 / 6;
  if (text == "pi/5") return 4 * pi4 / 5;
  return std::stod(text);
}

// "a:b:n" -> n points from a to b inclusive.
std::vector<double> parse_grid(const std::string& text) {
  std::istringstream is(text);
  std::string a, b, n;
  if (!std::getline(is, a, ':') || !std::getline(is, b, ':') ||
      !std::getline(is, n))
    throw CLI::ValidationError("grid must be a:b:n, got " + text);
  const double lo = parse_theta(a), hi = parse_theta(b);
  const int count = std::stoi(n);
  if (count < 1) throw CLI::ValidationError("grid count must be positive");
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? lo : lo + (hi - lo) * i / double(count - 1));
  return out;
}

int cmd_verify(const std::string& file, const std::string& name) {
  VerificationReport rep;
  if (!name.empty()) {
    const auto lib = certificate_library();
    rep = find_certificate(lib, name).verify();
  } else if (!file.empty()) {
    rep = verify_certificate_json(load_json(file));
  } else {
    throw CLI::ValidationError("verify needs a file or --name");
  }
  std::cout << rep.name << ": " << (rep.ok ? "PASS" : "FAIL") << "\n";
  if (!rep.detail.empty()) std::cout << rep.detail << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_search(const std::string& theta_text, int basis_size,
               const std::string& out_path) {
  const double theta = parse_theta(theta_text);
  const auto basis_num = basis_size == 5 ? r_basis_numeric(theta)
                                         : v_basis_numeric();
  const auto cs = build_constraints(theta, basis_num);
  FeasibilityResult res;
  try {
    res = solve_feasible(cs);
  } catch (const Infeasible& e) {
    std::cout << "infeasible: " << e.what() << "\n";
    return 1;
  }
  Eigen::MatrixXd m = res.M;
  if (basis_size == 5) m = symmetrize(m);

  std::vector<NcPoly<Scalar>> basis_sym;
  if (basis_size == 5) {
    const auto rb = r_basis(symbolic_context());
    basis_sym.assign(rb.begin(), rb.end());
  } else {
    for (const auto& mono : v_ops())
      basis_sym.emplace_back(mono, Scalar(1));
  }
  std::vector<std::vector<double>> gram(basis_size,
                                        std::vector<double>(basis_size));
  for (int i = 0; i < basis_size; ++i)
    for (int j = 0; j < basis_size; ++j) gram[i][j] = m(i, j);
  const json j = certificate_to_json("search", theta, basis_sym, gram);
  write_output(out_path, j.dump(2) + "\n");
  std::ostringstream os;
  out12(os) << "feasible after " << res.iterations
            << " iterations, residuals " << res.affine_residual << " / "
            << res.psd_violation << "\n";
  std::cerr << os.str();
  return 0;
}

int cmd_vertices(const std::string& out_path) {
  std::ostringstream os;
  out12(os) << "name,lambda,mu,q,extremal\n";
  for (const auto& v : enumerate_chsh_vertices())
    os << v.name << "," << v.lambda << "," << v.mu << "," << v.q << ","
       << (v.extremal ? 1 : 0) << "\n";
  write_output(out_path, os.str());
  return 0;
}

int cmd_region(const std::string& theta_text, int grid,
               const std::string& out_path) {
  const double theta = parse_theta(theta_text);
  std::ostringstream os;
  out12(os) << "p1,p2,p3,min_eig\n";
  for (const auto& pt : region_points(theta, grid))
    os << pt.param[0] << "," << pt.param[1] << "," << pt.param[2] << ","
       << pt.min_eig << "\n";
  write_output(out_path, os.str());
  return 0;
}

QubitSystem make_system(const std::string& system_file,
                        const std::string& model,
                        const std::string& theta_text, double visibility) {
  if (!system_file.empty()) return system_from_json(load_json(system_file));
  const double theta = parse_theta(theta_text);
  if (model == "reference") return reference_system(theta);
  if (model == "depolarized") return depolarized_system(theta, visibility);
  if (model == "rotated") return rotated_system(theta, visibility);
  if (model == "junk") return junk_system(theta, visibility);
  throw CLI::ValidationError("unknown model '" + model + "'");
}

int cmd_eval(const std::string& system_file, const std::string& model,
             const std::string& theta_text, double visibility,
             const std::string& poly_text) {
  const QubitSystem sys =
      make_system(system_file, model, theta_text, visibility);
  validate_dichotomic(sys);
  const NcPoly<Scalar> sym = parse_poly(poly_text);
  NcPoly<double> p;
  for (const auto& [m, c] : sym.terms()) p.add_term(m, c.eval(sys.theta));
  std::ostringstream os;
  out12(os) << expectation(p, sys) << "\n";
  std::cout << os.str();
  return 0;
}

int cmd_selftest(const std::string& system_file, const std::string& model,
                 const std::string& theta_text, double visibility,
                 const std::string& report_format,
                 const std::string& save_system) {
  const QubitSystem sys =
      make_system(system_file, model, theta_text, visibility);
  if (!save_system.empty())
    write_output(save_system, system_to_json(sys).dump(2) + "\n");
  const SelftestReport rep = selftest_report(sys);
  if (report_format == "json") {
    json checks = json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"name", c.name},
                        {"measured", c.measured},
                        {"bound", c.bound},
                        {"ok", c.ok}});
    const auto& f = rep.family;
    const json j{{"theta", rep.theta},
                 {"epsilon", rep.epsilon},
                 {"beta", rep.beta},
                 {"ok", rep.ok},
                 {"delta", f.delta},
                 {"delta1", f.delta1},
                 {"delta2", f.delta2},
                 {"delta4", f.delta4},
                 {"delta5", f.delta5},
                 {"delta_aA", f.delta_aA},
                 {"delta_aB", f.delta_aB},
                 {"delta2p", f.delta2p},
                 {"delta_bar", f.delta_bar},
                 {"checks", checks}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::ostringstream os;
    out12(os) << "name,measured,bound,ok\n";
    for (const auto& c : rep.checks)
      os << c.name << "," << c.measured << "," << c.bound << ","
         << (c.ok ? 1 : 0) << "\n";
    std::cout << os.str();
  }
  return rep.ok ? 0 : 1;
}

int cmd_bounds(const std::string& theta_grid, const std::string& eps_grid,
               const std::string& out_path) {
  write_output(out_path,
               bound_sweep(parse_grid(theta_grid), parse_grid(eps_grid)));
  return 0;
}

int cmd_audit() {
  const AuditReport rep = audit_yn();
  std::ostringstream os;
  out12(os) << "validity interval: [" << rep.lower_endpoint << ", "
            << rep.upper_endpoint << "]\n"
            << "bracket width: " << rep.bracket_width << " ("
            << rep.bisection_iterations << " bisection steps)\n"
            << "radicand at pi/8: " << rep.radicand_at_pi8 << "\n"
            << "rank " << rep.q_span_rank << "\n";
  std::cout << os.str();
  return 0;
}

int cmd_library() {
  bool all_ok = true;
  for (const auto& e : certificate_library()) {
    const auto rep = e.verify();
    all_ok = all_ok && rep.ok;
    std::cout << e.name << " (theta " << e.theta_label << "): "
              << (rep.ok ? "PASS" : "FAIL") << "  " << e.description << "\n";
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numeric sum-of-squares certificates for the "
               "tilted CHSH family, with robust self-testing bounds"};
  app.require_subcommand(1);

  std::string file, name;
  auto* verify = app.add_subcommand("verify", "verify a certificate");
  verify->add_option("file", file, "certificate JSON file");
  verify->add_option("--name", name, "library certificate name");

  std::string theta = "pi/4", out_path;
  int basis_size = 5;
  auto* search = app.add_subcommand("search", "numeric feasibility search");
  search->add_option("--theta", theta, "angle in radians (or pi/4 etc.)");
  search->add_option("--basis", basis_size, "basis size (5 or 9)")
      ->check(CLI::IsMember({5, 9}));
  search->add_option("--out", out_path, "output certificate file");

  auto* vertices = app.add_subcommand("vertices", "CHSH solution-set vertices");
  vertices->add_option("--out", out_path, "output CSV file");

  int grid = 21;
  auto* region = app.add_subcommand("region", "feasible-region point cloud");
  region->add_option("--theta", theta, "angle in radians");
  region->add_option("--grid", grid, "grid points per axis");
  region->add_option("--out", out_path, "output CSV file");

  std::string system_file, model = "reference", poly_text = "imax - (alpha*A0 + A0*B0 + A0*B1 + A1*B0 - A1*B1)";
  double visibility = 1.0;
  auto* eval = app.add_subcommand("eval", "expectation of a polynomial");
  eval->add_option("--system", system_file, "system JSON file");
  eval->add_option("--model", model,
                   "built-in system: reference|depolarized|rotated|junk");
  eval->add_option("--theta", theta, "angle for built-in systems");
  eval->add_option("--visibility", visibility, "noise-model visibility");
  eval->add_option("--poly", poly_text, "polynomial expression");

  std::string report_format = "csv", save_system;
  auto* selftest = app.add_subcommand("selftest", "self-testing pipeline");
  selftest->add_option("--system", system_file, "system JSON file");
  selftest->add_option("--model", model,
                       "built-in system: reference|depolarized|rotated|junk");
  selftest->add_option("--theta", theta, "angle for built-in systems");
  selftest->add_option("--visibility", visibility, "noise-model visibility");
  selftest->add_option("--report", report_format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  selftest->add_option("--save-system", save_system,
                       "write the generated system to a JSON file");

  std::string theta_grid = "0.2:pi/4:10", eps_grid = "0:0.1:11";
  auto* bounds = app.add_subcommand("bounds", "bound table over a grid");
  bounds->add_option("--theta-grid", theta_grid, "a:b:n");
  bounds->add_option("--eps-grid", eps_grid, "a:b:n");
  bounds->add_option("--out", out_path, "output CSV file");

  auto* audit = app.add_subcommand("audit-yn",
                                   "validity audit of the prior certificate");
  auto* library = app.add_subcommand("library", "list and verify the library");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(file, name);
    if (search->parsed()) return cmd_search(theta, basis_size, out_path);
    if (vertices->parsed()) return cmd_vertices(out_path);
    if (region->parsed()) return cmd_region(theta, grid, out_path);
    if (eval->parsed())
      return cmd_eval(system_file, model, theta, visibility, poly_text);
    if (selftest->parsed())
      return cmd_selftest(system_file, model, theta, visibility,
                          report_format, save_system);
    if (bounds->parsed()) return cmd_bounds(theta_grid, eps_grid, out_path);
    if (audit->parsed()) return cmd_audit();
    if (library->parsed()) return cmd_library();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
