#include "experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "ribopt/asymptotics.hpp"
#include "ribopt/bounds.hpp"
#include "ribopt/configurations.hpp"
#include "ribopt/error.hpp"
#include "ribopt/maxdist.hpp"
#include "ribopt/optimize.hpp"
#include "ribopt/spectral.hpp"

namespace ribopt::cli {

const std::vector<std::string> kCommands{"solve",       "refine",   "bound",    "comb-study", "grid-study",
                                         "gamma-study", "optimize", "maxdist", "constants"};

std::string summarize(const std::string& command) {
  static const std::map<std::string, std::string> text{
      {"solve", "first Dirichlet eigenvalue of the weighted p-Laplacian on the cut domain"},
      {"refine", "eigenvalue over a list of mesh widths with Richardson extrapolation"},
      {"bound", "length-based eigenvalue upper bound for a network"},
      {"comb-study", "comb eigenvalues against the asymptotic limit"},
      {"grid-study", "grid-structure eigenvalues against the asymptotic limit"},
      {"gamma-study", "limit value and optimal length density for given coefficients"},
      {"optimize", "search for a network of length L maximizing the eigenvalue or minimizing max distance"},
      {"maxdist", "certified maximum distance from the domain to a network"},
      {"constants", "closed-form constants: Lambda_p, tbar, sublevel majorant"}};
  const auto it = text.find(command);
  return it == text.end() ? std::string{} : it->second;
}

std::string describe_outputs(const std::string& command) {
  if (command == "solve") {
    return "CSV: p,h,lambda,residual,iterations,components,converged\n"
           "Raster: eigenfunction written to <out>/eigenfunction.txt";
  }
  if (command == "refine") return "CSV: h,lambda,order,extrapolated";
  if (command == "bound") return "CSV: p,length,sigma_len,area,kappa,tbar,bound";
  if (command == "comb-study" || command == "grid-study") return "CSV: n,L,lambda,ratio,limit";
  if (command == "gamma-study") {
    return "CSV: p,limit_value,F_optimal,F_uniform, then a blank line and cell_x,cell_y,mass,target";
  }
  if (command == "optimize") {
    return "CSV: evaluation,value,best\n"
           "Files: <out>/best_sigma.txt (sigma format), <out>/certificate.csv "
           "(strategy,winner,value,length,bound,gap,evaluations,budget_exhausted)";
  }
  if (command == "maxdist") {
    return "CSV: T,upper_bound,argmax_x,argmax_y,length,L_times_T,certificate\n"
           "Raster: distance field written to <out>/distance.txt when h is given";
  }
  if (command == "constants") return "CSV: p,Lambda_p, then sigma_len,area,kappa,tbar, then t,H";
  return "";
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Domain load_domain(const KeyValueConfig& cfg) {
  const auto path = cfg.get("domain");
  if (!path || *path == "square") return Domain::unit_square();
  return read_domain_file(*path);
}

int to_int(const std::string& s) {
  const double v = parse_real(s);
  if (v != std::floor(v)) throw InvalidInput("expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

// File path or generator: comb:n, grid:n, oblique:n:angle[:offset],
// tiled:L:s:m[:optimal], point:x:y.
SigmaNetwork load_sigma(const KeyValueConfig& cfg, const Domain& domain, const CoefficientField& rho,
                        const CoefficientField& sigma_coef, double p) {
  const auto spec = cfg.get("sigma");
  if (!spec) throw InvalidInput("missing key 'sigma'");
  const auto parts = split(*spec, ':');
  const std::string& kind = parts.front();
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) throw InvalidInput("malformed generator '" + *spec + "'");
  };
  if (kind == "comb") {
    need(2, 2);
    return build_comb(to_int(parts[1]));
  }
  if (kind == "grid") {
    need(2, 2);
    return build_grid_structure(to_int(parts[1]));
  }
  if (kind == "oblique") {
    need(3, 4);
    return build_oblique_comb(to_int(parts[1]), parse_real(parts[2]), parts.size() > 3 ? parse_real(parts[3]) : 0.0);
  }
  if (kind == "point") {
    need(3, 3);
    return SigmaNetwork::point({parse_real(parts[1]), parse_real(parts[2])});
  }
  if (kind == "tiled") {
    need(4, 5);
    const double L = parse_real(parts[1]);
    const double s = parse_real(parts[2]);
    const int m = to_int(parts[3]);
    DensityField f = uniform_density(domain);
    if (parts.size() == 5) {
      if (parts[4] != "optimal") throw InvalidInput("unknown tiled density '" + parts[4] + "'");
      f = optimal_density(rho, sigma_coef, p, domain);
    }
    return build_tiled_sigma(L, fit_measure_to_grid(f.f, s, domain), build_boxed_comb_tile(m), domain);
  }
  return read_sigma_file(*spec);
}

CoefficientField load_coefficient(const KeyValueConfig& cfg, const std::string& key) {
  const auto text = cfg.get(key);
  if (!text) return CoefficientField::constant(1.0);
  if (text->find('=') == std::string::npos) return CoefficientField::constant(parse_real(*text));
  return parse_coefficient(*text);
}

SolverOptions solver_options(const KeyValueConfig& cfg) {
  SolverOptions o;
  o.tolerance = cfg.get_double("tolerance", o.tolerance);
  o.max_iterations = static_cast<int>(cfg.get_int("max_iterations", o.max_iterations));
  o.max_descent_iterations = static_cast<int>(cfg.get_int("max_descent_iterations", o.max_descent_iterations));
  o.band_factor = cfg.get_double("band_factor", o.band_factor);
  o.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  o.random_start = cfg.get_int("random_start", 0) != 0;
  return o;
}

std::filesystem::path output_dir(const KeyValueConfig& cfg) {
  std::filesystem::path dir = cfg.get_string("out", ".");
  std::filesystem::create_directories(dir);
  return dir;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write '" + path.string() + "'");
  f << std::setprecision(12);
  return f;
}

void check_solver_p(double p) {
  if (p == 1.0) throw InvalidInput("p = 1 is only available for closed-form commands");
  if (!(p > 1.0)) throw InvalidInput("p must be > 1 or inf");
}

struct Problem {
  Domain domain;
  CoefficientField rho;
  CoefficientField sigma_coef;
  double p;
};

Problem load_problem(const KeyValueConfig& cfg) {
  Problem pb{load_domain(cfg), load_coefficient(cfg, "rho"), load_coefficient(cfg, "sigma_coef"),
             parse_real(cfg.get_string("p", "2"))};
  return pb;
}

EigenResult eigensolve(const Problem& pb, const SigmaNetwork& sigma, double h, const SolverOptions& o) {
  if (pb.p == 2.0) return lambda2(pb.domain, sigma, pb.rho, pb.sigma_coef, h, o);
  return lambda_p(pb.domain, sigma, pb.rho, pb.sigma_coef, pb.p, h, o);
}

void cmd_solve(const KeyValueConfig& cfg, std::ostream& out, std::ostream& log) {
  const Problem pb = load_problem(cfg);
  check_solver_p(pb.p);
  const SigmaNetwork sigma = load_sigma(cfg, pb.domain, pb.rho, pb.sigma_coef, pb.p);
  out << "p,h,lambda,residual,iterations,components,converged\n";
  if (std::isinf(pb.p)) {
    const auto md = max_distance(pb.domain, sigma, cfg.get_double("tolerance", 1e-6));
    out << "inf,0," << 1.0 / md.T << ",0,0,1,1\n";
    return;
  }
  const double h = cfg.get_double("h", 1.0 / 64);
  const auto r = eigensolve(pb, sigma, h, solver_options(cfg));
  for (const auto& w : r.grid.warnings) log << "warning: " << w << '\n';
  out << pb.p << ',' << h << ',' << r.lambda << ',' << r.residual << ',' << r.iterations << ','
      << r.num_components << ',' << (r.converged ? 1 : 0) << '\n';
  const auto path = cfg.has("raster") ? std::filesystem::path(cfg.get_string("raster", ""))
                                      : output_dir(cfg) / "eigenfunction.txt";
  auto f = open_output(path);
  write_raster(f, r.grid.ny, r.grid.nx, r.grid.h, r.grid.origin, r.node_values());
  log << "eigenfunction raster: " << path.string() << '\n';
  if (!r.converged) throw SolverError("eigensolver did not reach the tolerance");
}

void cmd_refine(const KeyValueConfig& cfg, std::ostream& out, std::ostream& log) {
  const Problem pb = load_problem(cfg);
  check_solver_p(pb.p);
  if (std::isinf(pb.p)) throw InvalidInput("refine needs a finite p");
  const SigmaNetwork sigma = load_sigma(cfg, pb.domain, pb.rho, pb.sigma_coef, pb.p);
  const auto hs = cfg.get_list("h_list", {1.0 / 32, 1.0 / 64, 1.0 / 128});
  for (std::size_t i = 1; i < hs.size(); ++i) {
    if (!(hs[i] < hs[i - 1])) throw InvalidInput("h_list must be strictly decreasing");
  }
  const auto o = solver_options(cfg);
  std::vector<double> lam;
  out << "h,lambda,order,extrapolated\n";
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const auto r = eigensolve(pb, sigma, hs[i], o);
    log << "h=" << hs[i] << " lambda=" << r.lambda << '\n';
    lam.push_back(r.lambda);
    out << hs[i] << ',' << r.lambda << ',';
    if (i >= 2) {
      // Observed order from the last three levels, then Richardson on the last two.
      const double d1 = lam[i - 1] - lam[i - 2];
      const double d2 = lam[i] - lam[i - 1];
      const double ratio = hs[i - 1] / hs[i];
      if (d1 != 0.0 && d2 != 0.0 && d1 / d2 > 0.0 && std::abs(std::log(hs[i - 2] / hs[i - 1]) - std::log(ratio)) < 1e-9) {
        const double q = std::log(d1 / d2) / std::log(ratio);
        const double rq = std::pow(ratio, q);
        out << q << ',' << (rq * lam[i] - lam[i - 1]) / (rq - 1.0);
      } else {
        out << ',';
      }
    } else {
      out << ',';
    }
    out << '\n';
  }
}

void cmd_bound(const KeyValueConfig& cfg, std::ostream& out, std::ostream&) {
  const Problem pb = load_problem(cfg);
  const SigmaNetwork sigma = load_sigma(cfg, pb.domain, pb.rho, pb.sigma_coef, pb.p);
  const auto ctx = LengthBoundContext::make(pb.domain, sigma);
  out << "p,length,sigma_len,area,kappa,tbar,bound\n";
  for (double p : cfg.get_list("p_list", {pb.p})) {
    out << p << ',' << sigma.length() << ',' << ctx.sigma_len << ',' << ctx.area << ',' << ctx.kappa << ','
        << ctx.tbar << ',' << upper_bound_lambda(ctx, p) << '\n';
  }
}

std::vector<int> int_list(const KeyValueConfig& cfg, const std::string& key, const std::vector<double>& fallback) {
  std::vector<int> out;
  for (double v : cfg.get_list(key, fallback)) {
    if (v != std::floor(v) || v < 1) throw InvalidInput(key + ": expected positive integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void cmd_study(const KeyValueConfig& cfg, StudyStructure structure, std::ostream& out, std::ostream& log) {
  const double p = parse_real(cfg.get_string("p", "2"));
  check_solver_p(p);
  const auto ns = int_list(cfg, "n_list", {2, 4, 8});
  const int cells = static_cast<int>(cfg.get_int("cells_per_gap", 16));
  const auto rows = theta_study(p, ns, structure, cells, solver_options(cfg));
  out << "n,L,lambda,ratio,limit\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.L << ',' << r.value << ',' << r.ratio << ',' << r.limit << '\n';
    log << "n=" << r.n << " ratio=" << r.ratio << '\n';
  }
}

void cmd_gamma(const KeyValueConfig& cfg, std::ostream& out, std::ostream& log) {
  const Problem pb = load_problem(cfg);
  check_solver_p(pb.p);
  const double resolution = cfg.get_double("resolution", 1.0 / 256);
  const double s = cfg.get_double("tile_cell", 0.25);
  const int m = static_cast<int>(cfg.get_int("tile", 2));
  const double L = cfg.get_double("L", 100.0);
  const double cell = cfg.get_double("measure_cell", s);
  out << "p,limit_value,F_optimal,F_uniform\n";
  if (std::isinf(pb.p)) {
    const auto uni = uniform_density(pb.domain);
    const double v = gamma_limit_F_infinity(uni, pb.domain, resolution);
    out << "inf," << v << ',' << v << ',' << v << '\n';
  } else {
    const auto opt = optimal_density(pb.rho, pb.sigma_coef, pb.p, pb.domain);
    out << pb.p << ',' << limit_value(pb.rho, pb.sigma_coef, pb.p, pb.domain) << ','
        << gamma_limit_F(opt, pb.rho, pb.sigma_coef, pb.p, pb.domain, resolution) << ','
        << gamma_limit_F(uniform_density(pb.domain), pb.rho, pb.sigma_coef, pb.p, pb.domain, resolution)
        << '\n';
  }
  const DensityField f = std::isinf(pb.p) ? uniform_density(pb.domain)
                                          : optimal_density(pb.rho, pb.sigma_coef, pb.p, pb.domain);
  const SigmaNetwork sigma =
      cfg.has("sigma") ? load_sigma(cfg, pb.domain, pb.rho, pb.sigma_coef, pb.p)
                       : build_tiled_sigma(L, fit_measure_to_grid(f.f, s, pb.domain), build_boxed_comb_tile(m),
                                           pb.domain);
  log << "network length " << sigma.length() << '\n';
  out << "\ncell_x,cell_y,mass,target\n";
  for (const auto& row : density_discrepancy(sigma, f, pb.domain, cell)) {
    out << row.cell_centre.x << ',' << row.cell_centre.y << ',' << row.mass << ',' << row.target << '\n';
  }
}

OptimizeOptions optimize_options(const KeyValueConfig& cfg) {
  OptimizeOptions o;
  o.h_search = cfg.get_double("h_search", o.h_search);
  o.h_final = cfg.get_double("h_final", o.h_final);
  o.tile_cell = cfg.get_double("tile_cell", o.tile_cell);
  o.max_tile_columns = static_cast<int>(cfg.get_int("max_tile_columns", o.max_tile_columns));
  o.sampled_orientations = static_cast<int>(cfg.get_int("sampled_orientations", o.sampled_orientations));
  o.maxdist_tolerance = cfg.get_double("maxdist_tolerance", o.maxdist_tolerance);
  o.threads = static_cast<int>(cfg.get_int("threads", o.threads));
  o.solver = solver_options(cfg);
  return o;
}

void cmd_optimize(const KeyValueConfig& cfg, std::ostream& out, std::ostream& log) {
  const Problem pb = load_problem(cfg);
  check_solver_p(pb.p);
  if (!cfg.has("L")) throw InvalidInput("missing key 'L'");
  const double L = cfg.get_double("L", 0.0);
  const Strategy strategy = parse_strategy(cfg.get_string("strategy", "portfolio"));
  const auto seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  const long budget = cfg.get_int("eval_budget", 200);
  const auto o = optimize_options(cfg);
  const auto report = std::isinf(pb.p) ? minimize_maxdist(pb.domain, L, strategy, seed, budget, o)
                                       : maximize_lambda(pb.domain, pb.rho, pb.sigma_coef, pb.p, L, strategy,
                                                         seed, budget, o);
  out << "evaluation,value,best\n";
  for (const auto& e : report.history) out << e.evaluation << ',' << e.value << ',' << e.best << '\n';

  const auto cert = certify(report, pb.domain);
  const auto dir = output_dir(cfg);
  {
    auto f = open_output(dir / "best_sigma.txt");
    write_sigma(f, report.best);
  }
  auto f = open_output(dir / "certificate.csv");
  f << "strategy,winner,value,length,bound,gap,evaluations,budget_exhausted\n"
    << to_string(strategy) << ',' << report.winner << ',' << report.value << ',' << report.best.length() << ','
    << cert.bound << ',' << cert.gap << ',' << report.evaluations << ',' << (report.budget_exhausted ? 1 : 0)
    << '\n';
  log << "winner " << report.winner << " value " << report.value << " length " << report.best.length()
      << " gap " << cert.gap << '\n';
}

void cmd_maxdist(const KeyValueConfig& cfg, std::ostream& out, std::ostream& log) {
  const Domain domain = load_domain(cfg);
  const auto one = CoefficientField::constant(1.0);
  const SigmaNetwork sigma = load_sigma(cfg, domain, one, one, 2.0);
  const auto md = max_distance(domain, sigma, cfg.get_double("tolerance", 1e-6));
  const double L = cfg.get_double("L", sigma.length());
  const bool square = domain.holes().empty() && domain.outer().size() == 4 && domain.area() == 1.0 &&
                      domain.bounding_box().lo == Vec2{0.0, 0.0};
  out << "T,upper_bound,argmax_x,argmax_y,length,L_times_T,certificate\n"
      << md.T << ',' << md.upper_bound << ',' << md.argmax.x << ',' << md.argmax.y << ',' << sigma.length() << ','
      << L * md.T << ',';
  if (square) out << theta_infinity_certificate(L);
  out << '\n';
  if (cfg.has("h")) {
    const auto grid = discretize(domain, sigma, cfg.get_double("h", 0.0), cfg.get_double("band_factor", 0.5));
    const auto path = output_dir(cfg) / "distance.txt";
    auto f = open_output(path);
    write_raster(f, grid.ny, grid.nx, grid.h, grid.origin, distance_field(grid, domain, sigma));
    log << "distance raster: " << path.string() << '\n';
  }
}

void cmd_constants(const KeyValueConfig& cfg, std::ostream& out, std::ostream&) {
  out << "p,Lambda_p\n";
  for (double p : cfg.get_list("p_list", {1, 1.5, 2, 3, 4})) out << p << ',' << Lambda_p(p) << '\n';
  const Domain domain = load_domain(cfg);
  const auto one = CoefficientField::constant(1.0);
  const SigmaNetwork sigma = cfg.has("sigma") ? load_sigma(cfg, domain, one, one, 2.0)
                                              : SigmaNetwork::point(domain.outer().front());
  const auto ctx = LengthBoundContext::make(domain, sigma);
  out << "\nsigma_len,area,kappa,tbar\n"
      << ctx.sigma_len << ',' << ctx.area << ',' << ctx.kappa << ',' << ctx.tbar << '\n';
  out << "\nt,H\n";
  for (double t : cfg.get_list("t_list", {0.01, 0.02, 0.05, 0.1, 0.2})) out << t << ',' << ctx.H(t) << '\n';
}

}  // namespace

void run(const std::string& command, const KeyValueConfig& config, std::ostream& out, std::ostream& log) {
  out << std::setprecision(static_cast<int>(config.get_int("precision", 10)));
  if (command == "solve") return cmd_solve(config, out, log);
  if (command == "refine") return cmd_refine(config, out, log);
  if (command == "bound") return cmd_bound(config, out, log);
  if (command == "comb-study") return cmd_study(config, StudyStructure::Comb, out, log);
  if (command == "grid-study") return cmd_study(config, StudyStructure::Grid, out, log);
  if (command == "gamma-study") return cmd_gamma(config, out, log);
  if (command == "optimize") return cmd_optimize(config, out, log);
  if (command == "maxdist") return cmd_maxdist(config, out, log);
  if (command == "constants") return cmd_constants(config, out, log);
  throw InvalidInput("unknown command '" + command + "'");
}

}  // namespace ribopt::cli
