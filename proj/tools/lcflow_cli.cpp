#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "lcflow/boosting.hpp"
#include "lcflow/cover.hpp"
#include "lcflow/io_json.hpp"
#include "lcflow/lowstep.hpp"
#include "lcflow/maxflow.hpp"
#include "lcflow/oracle.hpp"

namespace fs = std::filesystem;
using namespace lcf;

namespace {

uint64_t seed_from_env(uint64_t fallback) {
  if (const char* s = std::getenv("LCFLOW_SEED")) return std::strtoull(s, nullptr, 10);
  return fallback;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open graph file: " + path);
  return parse_graph(in);
}

Demand load_demand(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open demand file: " + path);
  return parse_demand(in, g);
}

std::vector<Rat> load_vertex_values(const std::string& path, const Graph& g, char tag) {
  std::vector<Rat> vals(g.n, Rat(0));
  std::ifstream in(path);
  if (!in) throw InvalidInstance(std::string("cannot open file: ") + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string t;
    if (!(ls >> t) || t == "#" || t == "c") continue;
    long v;
    std::string val;
    if (t != std::string(1, tag) || !(ls >> v >> val))
      throw InvalidInstance("line " + std::to_string(lineno) + ": expected '" + tag +
                            " <vertex> <value>'");
    if (v < 1 || v > g.n)
      throw InvalidInstance("line " + std::to_string(lineno) + ": vertex out of range");
    vals[v - 1] = parse_rat(val);
  }
  return vals;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream o(out);
    o << j.dump(2) << "\n";
  }
}

CommodityPairs pairs_of(const Demand& d) {
  CommodityPairs p;
  for (const auto& e : d.entries) {
    p.sources.push_back({e.u});
    p.sinks.push_back({e.v});
  }
  return p;
}

int run_suite(const std::string& dir, const std::string& out);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"length-constrained multi-commodity flow toolkit"};
  app.require_subcommand(1);
  // --h is an option name here, so help keeps only its long form
  app.set_help_flag("--help", "print help");

  std::string graph_path, demand_path, out_path, costs_path, weighting_path, witness_path;
  std::string eps_str = "1/4", budget_str = "inf", tau_str = "one";
  long h = 1, t = 1, beta = 4, cexp = 4;
  std::string hcov_str = "1", s_str = "3";
  uint64_t seed = 0;

  auto subcommand = [&](const std::string& name, const std::string& desc) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->set_help_flag("--help", "print help");
    return sc;
  };

  auto* mf = subcommand("lcmaxflow", "(1+eps)-approximate h-length maxflow");
  mf->add_option("--graph", graph_path)->required();
  mf->add_option("--pairs", demand_path, "demand file; one source-sink pair per commodity")
      ->required();
  mf->add_option("--h", h)->required();
  mf->add_option("--eps", eps_str);
  mf->add_option("-o,--out", out_path);

  auto* ls = subcommand("lowstep", "greedy low-step min-total-length flow");
  ls->add_option("--graph", graph_path)->required();
  ls->add_option("--demand", demand_path)->required();
  ls->add_option("--t", t)->required();
  ls->add_option("--tau", tau_str, "one|full");
  ls->add_option("--eps", eps_str);
  ls->add_option("-o,--out", out_path);

  auto* mtl = subcommand("mtl", "(1+eps)-approximate min-total-length flow");
  mtl->add_option("--graph", graph_path)->required();
  mtl->add_option("--demand", demand_path)->required();
  mtl->add_option("--tau", tau_str, "one|full");
  mtl->add_option("--eps", eps_str);
  mtl->add_option("-o,--out", out_path);

  auto* mcc = subcommand("mincost-concurrent", "concurrent mincost flow");
  auto* mcn = subcommand("mincost-nonconcurrent", "non-concurrent mincost flow");
  for (auto* mc : {mcc, mcn}) {
    mc->add_option("--graph", graph_path)->required();
    mc->add_option("--demand", demand_path)->required();
    mc->add_option("--costs", costs_path, "vertex costs file: 'b <vertex> <cost>' lines");
    mc->add_option("--budget", budget_str, "rational or 'inf'");
    mc->add_option("--eps", eps_str);
    mc->add_option("-o,--out", out_path);
  }

  auto* cov = subcommand("cover", "neighborhood cover by seeded ball carving");
  cov->add_option("--graph", graph_path)->required();
  cov->add_option("--hcov", hcov_str)->required();
  cov->add_option("--beta", beta);
  cov->add_option("--seed", seed);
  cov->add_option("-o,--out", out_path);

  auto* cuts = subcommand("cuts", "moving cut tools");
  auto* vu = cuts->add_subcommand("verify-union", "verify a cut sequence witness");
  vu->set_help_flag("--help", "print help");
  vu->add_option("--graph", graph_path)->required();
  vu->add_option("--weighting", weighting_path, "node weighting: 'w <vertex> <value>' lines")
      ->required();
  vu->add_option("--witness", witness_path, "witness bundle JSON")->required();
  vu->add_option("--h", hcov_str)->required();
  vu->add_option("--s", s_str)->required();
  vu->add_option("--c", cexp, "exponent constant in the sparsity bound");
  vu->add_option("-o,--out", out_path);

  auto* orc = subcommand("oracle", "exact small-instance reference solvers");
  std::string oracle_kind = "maxflow";
  orc->add_option("kind", oracle_kind, "maxflow|mincost|lambda|value");
  orc->add_option("--graph", graph_path)->required();
  orc->add_option("--demand", demand_path)->required();
  orc->add_option("--h", h);
  orc->add_option("--t", t, "step bound; 0 = unconstrained");
  orc->add_option("--tau", tau_str);
  orc->add_option("--costs", costs_path);
  orc->add_option("--budget", budget_str);
  orc->add_option("-o,--out", out_path);

  auto* suite = subcommand("suite", "run a corpus with expected-result sidecars");
  std::string suite_dir;
  suite->add_option("--dir", suite_dir)->required();
  suite->add_option("-o,--out", out_path);

  CLI11_PARSE(app, argc, argv);
  seed = seed_from_env(seed);

  try {
    if (mf->parsed()) {
      Graph g = load_graph(graph_path);
      Demand d = load_demand(demand_path, g);
      MaxflowResult r = lc_mc_maxflow(g, pairs_of(d), h, parse_rat(eps_str));
      emit(maxflow_to_json(r, g), out_path);
      return 0;
    }
    if (ls->parsed() || mtl->parsed()) {
      Graph g = load_graph(graph_path);
      Demand d = load_demand(demand_path, g);
      Rat tau = tau_str == "full" ? d.total() : Rat(1);
      if (mtl->parsed()) {
        MultiFlow f = approx_mtl_flow(g, d, tau, parse_rat(eps_str));
        emit(flow_to_json(f, g), out_path);
        return 0;
      }
      LowStepConfig cfg;
      cfg.t = t;
      cfg.tau = tau;
      cfg.eps = parse_rat(eps_str);
      LowStepResult r = g.mode == GraphMode::vertex_weighted ? lowstep_undirected(g, d, cfg)
                                                             : lowstep_directed(g, d, cfg);
      Json j;
      j["value"] = rat_str(r.value);
      j["maxflow_calls"] = r.maxflow_calls;
      Json ledger = Json::array();
      for (const auto& row : r.ledger) {
        Json jr;
        jr["p"] = row.p;
        jr["h_p"] = rat_str(row.h_p);
        jr["value_gained"] = rat_str(row.value_gained);
        jr["totlen_gained"] = rat_str(row.totlen_gained);
        jr["maxflow_calls"] = row.maxflow_calls;
        ledger.push_back(jr);
      }
      j["ledger"] = ledger;
      j["flow"] = flow_to_json(r.flow, g);
      emit(j, out_path);
      return 0;
    }
    if (mcc->parsed() || mcn->parsed()) {
      Graph g = load_graph(graph_path);
      MincostProblem prob;
      prob.g = g;
      prob.demand = load_demand(demand_path, g);
      prob.cost = costs_path.empty() ? std::vector<Rat>(g.n, Rat(0))
                                     : load_vertex_values(costs_path, g, 'b');
      if (budget_str != "inf") prob.budget = parse_rat(budget_str);
      prob.mode = mcc->parsed() ? MincostMode::concurrent : MincostMode::non_concurrent;
      MincostResult r = solve_mincost(prob, parse_rat(eps_str));
      emit(mincost_to_json(r, g), out_path);
      return 0;
    }
    if (cov->parsed()) {
      Graph g = load_graph(graph_path);
      NeighborhoodCover nc = build_cover(g, Int(hcov_str), beta, seed);
      validate_cover(g, nc);
      emit(cover_to_json(nc), out_path);
      return 0;
    }
    if (vu->parsed()) {
      Graph g = load_graph(graph_path);
      NodeWeighting a(g.n);
      a.w = load_vertex_values(weighting_path, g, 'w');
      std::ifstream win(witness_path);
      if (!win) throw InvalidInstance("cannot open witness file: " + witness_path);
      Json wj = Json::parse(win);
      CutSequenceWitness w = witness_from_json(wj, g);
      UnionWitnessReport rep =
          verify_union_witness(g, a, w, Int(hcov_str), Int(s_str), static_cast<int>(cexp));
      emit(union_report_to_json(rep), out_path);
      return rep.passed() ? 0 : 1;
    }
    if (orc->parsed()) {
      Graph g = load_graph(graph_path);
      Demand d = load_demand(demand_path, g);
      Json j;
      if (oracle_kind == "maxflow") {
        std::vector<SourceSinkPair> ps;
        for (const auto& e : d.entries) ps.push_back({{e.u}, {e.v}});
        auto r = exact_lc_maxflow(g, ps, Int(h));
        j["opt"] = rat_str(r.value);
      } else if (oracle_kind == "mincost") {
        Rat tau = tau_str == "full" ? d.total() : Rat(1);
        auto r = exact_mincost(g, d, tau, t > 0 ? std::optional<long>(t) : std::nullopt);
        j["feasible"] = r.feasible;
        if (r.feasible) j["totlen"] = rat_str(r.totlen);
      } else if (oracle_kind == "lambda" || oracle_kind == "value") {
        std::vector<Rat> costs = costs_path.empty() ? std::vector<Rat>(g.n, Rat(0))
                                                    : load_vertex_values(costs_path, g, 'b');
        std::optional<Rat> budget;
        if (budget_str != "inf") budget = parse_rat(budget_str);
        Rat r = oracle_kind == "lambda" ? exact_concurrent_lambda(g, d, costs, budget)
                                        : exact_nonconcurrent_value(g, d, costs, budget);
        j["opt"] = rat_str(r);
      } else {
        throw InvalidInstance("unknown oracle kind: " + oracle_kind);
      }
      emit(j, out_path);
      return 0;
    }
    if (suite->parsed()) return run_suite(suite_dir, out_path);
  } catch (const PremiseViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

namespace {

// Corpus runner: every *.graph file with a *.expect.json sidecar is solved
// and checked against the oracle sandwich recorded in the sidecar.
int run_suite(const std::string& dir, const std::string& out) {
  std::vector<fs::path> instances;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".graph") instances.push_back(entry.path());
  std::sort(instances.begin(), instances.end());

  Json report;
  Json results = Json::array();
  int failures = 0;
  for (const fs::path& inst : instances) {
    fs::path sidecar = inst;
    sidecar.replace_extension(".expect.json");
    Json row;
    row["instance"] = inst.filename().string();
    if (!fs::exists(sidecar)) {
      row["status"] = "skipped-missing-sidecar";
      results.push_back(row);
      std::cerr << "warning: no sidecar for " << inst << "\n";
      continue;
    }
    try {
      std::ifstream sin(sidecar);
      Json expect = Json::parse(sin);
      Graph g = load_graph(inst.string());
      std::string cmd = expect.at("command").get<std::string>();
      if (cmd == "lcmaxflow") {
        fs::path dpath = inst;
        dpath.replace_extension(".demand");
        Demand d = load_demand(dpath.string(), g);
        long hh = expect.at("h").get<long>();
        Rat eps = parse_rat(expect.at("eps").get<std::string>());
        Rat opt = parse_rat(expect.at("opt").get<std::string>());
        MaxflowResult r = lc_mc_maxflow(g, pairs_of(d), hh, eps);
        bool ok = r.cert.value <= opt && r.cert.value * (1 + eps) >= opt &&
                  r.cert.dual_value <= (1 + eps) * r.cert.value;
        row["status"] = ok ? "pass" : "fail";
        row["value"] = rat_str(r.cert.value);
        row["opt"] = rat_str(opt);
        if (!ok) ++failures;
      } else {
        row["status"] = "skipped-unknown-command";
        std::cerr << "warning: unknown command in sidecar " << sidecar << "\n";
      }
    } catch (const std::exception& e) {
      row["status"] = "error";
      row["error"] = e.what();
      ++failures;
    }
    results.push_back(row);
  }
  report["results"] = results;
  report["failures"] = failures;
  emit(report, out);
  return failures == 0 ? 0 : 1;
}

}  // namespace
