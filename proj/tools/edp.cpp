// SPDX-License-Identifier: Apache-2.0
//
// edp — p edge-disjoint shortest paths and multipath preservers.
//
// Subcommands:
//   gen     write a random p-edge-outconnected instance
//   solve   compute per-target disjoint path sets and a preserver
//   verify  re-check a solution file against the oracle
//   bench   engine vs per-target-SSP baseline timings, CSV
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 infeasible instance,
// 3 verification failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "edp/generator.hpp"
#include "edp/io.hpp"
#include "edp/preserver.hpp"
#include "edp/solve.hpp"
#include "edp/ssp.hpp"

namespace {

int run_gen(const std::string& out, int n, int p, int extra, long long max_cost,
            std::uint64_t seed) {
  edp::Digraph g = edp::generate_outconnected(n, p, extra, max_cost, seed);
  if (out.empty()) {
    edp::write_graph(std::cout, g, 0);
  } else {
    edp::save_graph(out, g, 0);
  }
  return 0;
}

int run_solve(const std::string& input, const std::string& out,
              const edp::SolveOptions& opt) {
  edp::GraphFile gf = edp::load_graph(input);
  edp::SolveResult res;
  try {
    res = edp::solve(gf.graph, gf.source, opt);
  } catch (const edp::NotOutconnectedError& e) {
    std::cerr << "infeasible: " << e.what()
              << " (use --allow-underconnected)\n";
    return 2;
  } catch (const edp::UnreachableVertexError& e) {
    std::cerr << "infeasible: " << e.what()
              << " (use --allow-underconnected)\n";
    return 2;
  }
  nlohmann::json j = edp::to_json(res);
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream os(out);
    if (!os) throw edp::Error("cannot open '" + out + "' for writing");
    os << j.dump(2) << '\n';
  }
  return 0;
}

int run_verify(const std::string& input, const std::string& solution,
               const std::string& level) {
  edp::GraphFile gf = edp::load_graph(input);
  std::ifstream is(solution);
  if (!is) throw edp::Error("cannot open '" + solution + "'");
  nlohmann::json j;
  is >> j;
  edp::SolveResult res = edp::solve_result_from_json(j);
  edp::Report rep = edp::verify_solution(
      gf.graph, gf.source, res,
      level == "full" ? edp::VerifyLevel::full : edp::VerifyLevel::costs);
  std::cout << edp::to_json(rep).dump(2) << '\n';
  if (!rep.ok()) {
    const edp::CheckItem* fail = rep.first_failure();
    std::cerr << "verification failed: " << fail->check;
    if (!fail->detail.empty()) std::cerr << " (" << fail->detail << ")";
    std::cerr << '\n';
    return 3;
  }
  return 0;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

int run_bench(const std::vector<int>& n_list, int p,
              const std::string& density, std::uint64_t seed, int reps,
              const std::string& out) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw edp::Error("cannot open '" + out + "' for writing");
    os = &file;
  }
  *os << "n,m,p,engine_ms,baseline_ms,ratio\n";

  for (int n : n_list) {
    int extra;
    if (density == "dense") {
      long long target_m = static_cast<long long>(n) * n / 2;
      extra = static_cast<int>(std::max<long long>(
          0, target_m - static_cast<long long>(p) * (n - 1)));
    } else {
      extra = 2 * n;
    }
    edp::Digraph g = edp::generate_outconnected(n, p, extra, 1000, seed + n);

    using Clock = std::chrono::steady_clock;
    auto time_engine = [&]() {
      auto t0 = Clock::now();
      edp::run_engine(g, 0, p);
      return std::chrono::duration<double, std::milli>(Clock::now() - t0)
          .count();
    };
    auto time_baseline = [&]() {
      auto t0 = Clock::now();
      for (edp::Vertex t = 1; t < g.num_vertices(); ++t)
        edp::ssp_fast(g, 0, t, p);
      return std::chrono::duration<double, std::milli>(Clock::now() - t0)
          .count();
    };

    time_engine();  // warm-up rep, discarded
    time_baseline();
    std::vector<double> eng, base;
    for (int r = 0; r < reps; ++r) {
      eng.push_back(time_engine());
      base.push_back(time_baseline());
    }
    double e = median(eng), b = median(base);
    *os << n << ',' << g.num_edges() << ',' << p << ',' << e << ',' << b
        << ',' << (b > 0 ? e / b : 0.0) << '\n';
    os->flush();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p edge-disjoint shortest paths and multipath preservers"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  int gen_n = 10, gen_p = 2, gen_extra = 0;
  long long gen_max_cost = 100;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--p-connected", gen_p, "guaranteed outconnectivity");
  gen->add_option("--extra-edges", gen_extra, "extra random edges");
  gen->add_option("--max-cost", gen_max_cost, "maximum edge cost");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string solve_input, solve_out, solve_mode = "engine";
  edp::SolveOptions opt;
  solve->add_option("--input", solve_input, "graph file")->required();
  solve->add_option("--p", opt.p, "number of disjoint paths")->required();
  solve->add_option("--mode", solve_mode, "engine | ssp-baseline")
      ->check(CLI::IsMember({"engine", "ssp-baseline"}));
  solve->add_flag("--vertex-disjoint", opt.vertex_disjoint,
                  "require internally vertex-disjoint paths");
  solve->add_flag("--allow-underconnected", opt.allow_underconnected,
                  "handle graphs without p disjoint paths everywhere");
  solve->add_flag("--keep-intermediate", opt.keep_intermediate,
                  "retain the intermediate preservers");
  solve->add_option("--threads", opt.threads, "per-target prep threads");
  solve->add_option("--out", solve_out, "output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "verify a solution file");
  std::string ver_input, ver_solution, ver_level = "costs";
  verify->add_option("--input", ver_input, "graph file")->required();
  verify->add_option("--solution", ver_solution, "solution JSON")->required();
  verify->add_option("--level", ver_level, "costs | full")
      ->check(CLI::IsMember({"costs", "full"}));

  // bench
  auto* bench = app.add_subcommand("bench", "engine vs baseline timings");
  std::string bench_n_list = "100,200,400", bench_density = "dense",
              bench_out;
  int bench_p = 3, bench_reps = 3;
  std::uint64_t bench_seed = 1;
  bench->add_option("--n-list", bench_n_list, "comma-separated sizes");
  bench->add_option("--p", bench_p, "number of disjoint paths");
  bench->add_option("--density", bench_density, "sparse | dense")
      ->check(CLI::IsMember({"sparse", "dense"}));
  bench->add_option("--seed", bench_seed, "RNG seed");
  bench->add_option("--reps", bench_reps, "timed repetitions (median)");
  bench->add_option("--out", bench_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_out, gen_n, gen_p, gen_extra, gen_max_cost, gen_seed);
    if (solve->parsed()) {
      opt.mode = solve_mode == "engine" ? edp::SolveOptions::Mode::engine
                                        : edp::SolveOptions::Mode::ssp_baseline;
      return run_solve(solve_input, solve_out, opt);
    }
    if (verify->parsed()) return run_verify(ver_input, ver_solution, ver_level);
    if (bench->parsed()) {
      std::vector<int> sizes;
      std::stringstream ss(bench_n_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
      if (sizes.empty()) throw edp::Error("empty --n-list");
      return run_bench(sizes, bench_p, bench_density, bench_seed, bench_reps,
                       bench_out);
    }
  } catch (const edp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 1;
  } catch (const edp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {  // malformed JSON and the like
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
