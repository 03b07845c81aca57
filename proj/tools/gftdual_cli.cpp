// Command-line front end: graph generation, dualness, DUP bound, dual
// construction, circulant certificate, and the ER experiment.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gftdual/alignment.hpp"
#include "gftdual/dual_construct.hpp"
#include "gftdual/dup_bound.hpp"
#include "gftdual/error.hpp"
#include "gftdual/experiment.hpp"
#include "gftdual/graph.hpp"
#include "gftdual/spectral.hpp"

using namespace gftdual;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

std::string g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v;
    if (!(is >> v) || !is.eof()) throw CLI::ValidationError("list", "bad list entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

struct SolverFlags {
  std::string method = "cd";
  int restarts = 200;
  double epsilon = 1e-8;
  int max_iter = 500;
  std::uint64_t seed = 0;

  void add_to(CLI::App* cmd, bool with_method) {
    if (with_method) cmd->add_option("--method", method, "cd or cdpm")->check(CLI::IsMember({"cd", "cdpm"}));
    cmd->add_option("--restarts", restarts, "random initializations")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", epsilon, "stop when an iteration improves by less than this")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", max_iter, "iteration cap per initialization")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "master seed");
  }

  SolverConfig config() const { return {epsilon, max_iter, restarts, RngSeed{seed}}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dualness of graph pairs under the graph Fourier transform"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph file");
  std::vector<std::string> er_args;
  std::string circ_spec;
  int circ_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* er_opt = gen->add_option("--er", er_args, "Erdos-Renyi graph: N P")->expected(2);
  auto* circ_opt = gen->add_option("--circulant", circ_n, "circulant graph on N vertices");
  gen->add_option("--offsets", circ_spec, "circulant offsets k[:w],... (default weight 1)")->needs(circ_opt);
  er_opt->excludes(circ_opt);
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("-o", gen_out, "output file (stdout when omitted)");

  // dualness
  auto* dual = app.add_subcommand("dualness", "estimate the dualness of two graphs");
  std::string g1_path, g2_path;
  SolverFlags flags;
  dual->add_option("g1", g1_path)->required()->check(CLI::ExistingFile);
  dual->add_option("g2", g2_path)->required()->check(CLI::ExistingFile);
  flags.add_to(dual, true);

  // bound
  auto* bound = app.add_subcommand("bound", "SDP upper bound on the permutation-free trace objective");
  bound->add_option("g1", g1_path)->required()->check(CLI::ExistingFile);
  bound->add_option("g2", g2_path)->required()->check(CLI::ExistingFile);
  bool cutting_plane = false;
  bound->add_flag("--cutting-plane", cutting_plane, "use Kelley cutting planes instead of the interior point");

  // dual-construct
  auto* construct = app.add_subcommand("dual-construct", "solve the dual-graph feasibility LP");
  std::string g_path, construct_out;
  construct->add_option("g", g_path)->required()->check(CLI::ExistingFile);
  construct->add_option("-o", construct_out, "write the constructed dual graph here when feasible");

  // circulant-check
  auto* circ = app.add_subcommand("circulant-check", "DFT dualness certificate for two circulant graphs");
  circ->add_option("g1", g1_path)->required()->check(CLI::ExistingFile);
  circ->add_option("g2", g2_path)->required()->check(CLI::ExistingFile);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Erdos-Renyi experiment: CD, CDPM and DUP vs N");
  ExperimentConfig ec;
  std::string n_list = "10,15,20,25,30", method_list = "cd,cdpm,dup", csv_out, plot_out;
  std::uint64_t exp_seed = ec.seed.value;
  bool no_timing = false;
  exp->add_option("--n", n_list, "comma-separated vertex counts (ascending)");
  exp->add_option("--p", ec.p, "edge probability")->check(CLI::Range(0.0, 1.0));
  exp->add_option("--trials", ec.trials, "graph pairs per N")->check(CLI::PositiveNumber);
  exp->add_option("--restarts", ec.restarts, "random initializations per solve")->check(CLI::PositiveNumber);
  exp->add_option("--epsilon", ec.epsilon, "convergence threshold")->check(CLI::PositiveNumber);
  exp->add_option("--max-iter", ec.max_iterations, "iteration cap")->check(CLI::PositiveNumber);
  exp->add_option("--seed", exp_seed, "master seed");
  exp->add_option("--methods", method_list, "subset of cd,cdpm,dup");
  exp->add_flag("--no-timing", no_timing, "write wall_time_ms as 0 for byte-reproducible output");
  exp->add_option("-o", csv_out, "CSV output (stdout when omitted)");
  exp->add_option("--plot", plot_out, "SVG output");

  // plot
  auto* plot = app.add_subcommand("plot", "SVG chart from an experiment CSV");
  std::string plot_in;
  plot->add_option("csv", plot_in)->required()->check(CLI::ExistingFile);
  plot->add_option("-o", plot_out, "SVG output (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      Graph g = Graph::from_adjacency(Eigen::MatrixXd::Zero(1, 1));
      if (!er_args.empty()) {
        const int n = std::stoi(er_args[0]);
        const double p = std::stod(er_args[1]);
        g = erdos_renyi(n, p, RngSeed{gen_seed});
      } else if (circ_n > 0) {
        std::vector<CirculantOffset> offsets;
        std::stringstream ss(circ_spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
          if (item.empty()) continue;
          const auto colon = item.find(':');
          CirculantOffset o;
          o.offset = std::stoi(item.substr(0, colon));
          if (colon != std::string::npos) o.weight = std::stod(item.substr(colon + 1));
          offsets.push_back(o);
        }
        g = circulant(circ_n, offsets);
      } else {
        std::cerr << "gen: one of --er or --circulant is required\n" << gen->help();
        return kExitUsage;
      }
      write_output(gen_out, write_graph(g));
    } else if (*dual) {
      const Graph g1 = read_graph(read_file(g1_path));
      const Graph g2 = read_graph(read_file(g2_path));
      const Method method = flags.method == "cdpm" ? Method::CDPM : Method::CD;
      const AlignmentSolution sol = run_pair(g1, g2, method, flags.config());
      std::cout << "method " << to_string(method) << "\n"
                << "objective " << g12(sol.objective) << "\n"
                << "dualness " << g12(sol.dualness) << "\n"
                << "iterations " << sol.iterations << "\n"
                << "converged " << (sol.converged ? "true" : "false") << "\n"
                << "best_restart " << sol.best_restart << "\n";
    } else if (*bound) {
      const Graph g1 = read_graph(read_file(g1_path));
      const Graph g2 = read_graph(read_file(g2_path));
      if (g1.size() != g2.size()) throw Error(Errc::SizeMismatch, "graphs have different vertex counts");
      const SpectralDecomposition s1 = eigendecompose(g1), s2 = eigendecompose(g2);
      if (!has_distinct_eigenvalues(s1) || !has_distinct_eigenvalues(s2)) {
        const double gap = std::min(min_eigenvalue_gap(s1), min_eigenvalue_gap(s2));
        throw RepeatedEigenvaluesError(gap, "bound is defined for simple spectra only");
      }
      DupOptions dopt;
      if (cutting_plane) dopt.method = DupMethod::CuttingPlane;
      const BoundResult b = dup_bound(build_coupling(s1.vectors, s2.vectors), dopt);
      std::cout << "bound " << g12(b.bound) << "\n"
                << "dualness_lower " << g12(dualness_from_objective(g1.size(), b.bound)) << "\n"
                << "cuts " << b.cuts << "\n"
                << "rounds " << b.rounds << "\n"
                << "min_eig_residual " << g12(b.min_eig_residual) << "\n";
    } else if (*construct) {
      const Graph g = read_graph(read_file(g_path));
      const DualConstructionResult r = construct_dual(g);
      std::cout << to_string(r.status) << "\n";
      if (r.status == DualStatus::Feasible) {
        std::cout << "lambda";
        for (Eigen::Index k = 0; k < r.lambda.size(); ++k) std::cout << ' ' << g12(r.lambda(k));
        std::cout << "\n";
        if (!construct_out.empty()) write_output(construct_out, write_graph(*r.graph));
      }
    } else if (*circ) {
      const Graph g1 = read_graph(read_file(g1_path));
      const Graph g2 = read_graph(read_file(g2_path));
      std::cout << "residual " << g12(verify_circulant_duality(g1, g2)) << "\n";
    } else if (*exp) {
      ec.n_values = split_list<int>(n_list);
      ec.methods.clear();
      for (const auto& m : split_list<std::string>(method_list)) ec.methods.push_back(parse_experiment_method(m));
      ec.seed = RngSeed{exp_seed};
      ec.record_timing = !no_timing;
      const auto records = run_experiment(ec);
      write_output(csv_out, write_csv(records));
      if (!plot_out.empty()) write_output(plot_out, plot_fig1(records));
      if (!csv_out.empty() && csv_out != "-") {
        for (const auto& s : mean_series(records)) {
          std::cout << to_string(s.method);
          for (const auto& pt : s.points) std::cout << "  N=" << pt.n << ":" << g12(pt.mean_objective);
          std::cout << "\n";
        }
      }
    } else if (*plot) {
      write_output(plot_out, plot_fig1(read_csv(read_file(plot_in))));
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad numeric argument\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: numeric argument out of range\n";
    return kExitUsage;
  }
  return 0;
}
