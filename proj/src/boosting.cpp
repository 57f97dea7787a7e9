#include "lcflow/boosting.hpp"

#include <algorithm>

#include "lcflow/lowstep.hpp"
#include "lcflow/lp.hpp"

namespace lcf {

Rat min_length_flow_value(const Graph& g, const std::vector<Rat>& length, const Demand& demand,
                          const Rat& tau, bool concurrent) {
  if (g.mode != GraphMode::vertex_weighted)
    throw InvalidInstance("min_length_flow_value expects a vertex-weighted graph");
  const int k = demand.k();
  const int slots = g.num_slots();
  // variables: per commodity slot flows, then per commodity routed amount r_c
  const int nv = k * slots + k;
  LinearProgram lp(nv, false);
  auto xvar = [&](int c, int s) { return c * slots + s; };
  auto rvar = [&](int c) { return k * slots + c; };

  for (int c = 0; c < k; ++c) {
    for (int s = 0; s < slots; ++s) {
      auto [a, b] = g.slot_ends(s);
      lp.objective[xvar(c, s)] += (length[a] + length[b]) / 2;
    }
    lp.objective[rvar(c)] +=
        (length[demand.entries[c].u] + length[demand.entries[c].v]) / 2;
  }

  // conservation; the sink row is left out (it is implied)
  for (int c = 0; c < k; ++c) {
    int u = demand.entries[c].u, v = demand.entries[c].v;
    for (int w = 0; w < g.n; ++w) {
      if (w == v) continue;
      LpRow& row = lp.add_row(RowSense::eq, Rat(0));
      for (int s = 0; s < slots; ++s) {
        auto [a, b] = g.slot_ends(s);
        if (a == w) row.a[xvar(c, s)] += 1;
        if (b == w) row.a[xvar(c, s)] -= 1;
      }
      if (w == u) row.a[rvar(c)] = -1;
    }
    // routed amount: exact for concurrent, capped otherwise
    if (concurrent) {
      LpRow& row = lp.add_row(RowSense::eq, demand.entries[c].value);
      row.a[rvar(c)] = 1;
    } else {
      LpRow& row = lp.add_row(RowSense::le, demand.entries[c].value);
      row.a[rvar(c)] = 1;
    }
  }
  if (!concurrent) {
    LpRow& row = lp.add_row(RowSense::eq, tau);
    for (int c = 0; c < k; ++c) row.a[rvar(c)] = 1;
  }
  // vertex capacities: incident flow plus endpoint surplus is 2 F(v)
  for (int w = 0; w < g.n; ++w) {
    LpRow& row = lp.add_row(RowSense::le, Rat(2) * Rat(g.vcap[w]));
    for (int c = 0; c < k; ++c) {
      for (int s = 0; s < slots; ++s) {
        auto [a, b] = g.slot_ends(s);
        if (a == w) row.a[xvar(c, s)] += 1;
        if (b == w) row.a[xvar(c, s)] += 1;
      }
      if (demand.entries[c].u == w) row.a[rvar(c)] += 1;
      if (demand.entries[c].v == w) row.a[rvar(c)] += 1;
    }
  }
  LpResult res = solve_lp(lp);
  if (!res.ok()) throw std::runtime_error("alpha LP infeasible; boosting premise broken");
  return res.objective;
}

namespace {

Rat measured_lambda(const Graph& g, const MultiFlow& fbar, const std::vector<Rat>& cost,
                    const std::optional<Rat>& budget) {
  std::vector<Rat> load = vertex_loads(g, fbar);
  std::optional<Rat> lam;
  for (int v = 0; v < g.n; ++v) {
    if (load[v] == 0) continue;
    Rat c = Rat(g.vcap[v]) / load[v];
    if (!lam || c < *lam) lam = c;
  }
  if (budget) {
    Rat b = 0;
    for (int v = 0; v < g.n; ++v) b += load[v] * cost[v];
    if (b > 0) {
      Rat c = *budget / b;
      if (!lam || c < *lam) lam = c;
    }
  }
  return lam ? *lam : Rat(0);
}

}  // namespace

BoostResult boost(const BoostInput& in) {
  const Graph& g = *in.g;
  if (g.mode != GraphMode::vertex_weighted)
    throw InvalidInstance("boosting runs on vertex-weighted graphs");
  if (in.eps <= 0 || in.eps >= 1) throw InvalidInstance("eps must be in (0,1)");
  const int n = g.n;
  const Rat eps = in.eps;

  BoostResult res;
  res.target = (1 - 10 * eps) / (1 + eps / 100);

  // delta = n^{-ceil(1/eps)}
  long inv = static_cast<long>(rat_ceil(1 / eps).get_si());
  Rat delta = 1 / Rat(int_pow(Int(n), static_cast<unsigned long>(inv)));
  Int N = instance_value_bound(g, &in.demand);
  for (const Rat& c : in.cost) {
    Int cc = rat_ceil(c);
    if (cc > N) N = cc;
  }
  // oracle length scale, exactly ceil(N/(delta*eps))
  Int sigma = rat_ceil(Rat(N) / (delta * eps));

  std::vector<Rat> y(n);
  for (int v = 0; v < n; ++v) y[v] = delta / Rat(g.vcap[v]);
  Rat phi = 0;
  bool budgeted = in.budget.has_value();
  if (budgeted) {
    if (*in.budget <= 0) throw InvalidInstance("budget must be positive");
    phi = delta / *in.budget;
  }

  auto dual_value = [&]() {
    Rat d = 0;
    for (int v = 0; v < n; ++v) d += Rat(g.vcap[v]) * y[v];
    if (budgeted) d += *in.budget * phi;
    return d;
  };

  MultiFlow sum = MultiFlow::zero_edge(in.demand.k(), g.num_slots());
  Rat z_sum = 0;
  std::vector<Rat> zs;
  res.total_load.assign(n, Rat(0));
  res.upper_bound = 0;
  bool have_ub = false;
  Rat kappa_up = 0;

  long cap = in.max_iterations;
  // upper bound on log_{1+eps}(1/delta): ln(1/delta) <= 0.7 inv (log2 n + 1),
  // ln(1+eps) >= eps/2
  const long log_delta =
      static_cast<long>(rat_ceil(Rat(3) * Rat(inv) * Rat(ilog2_ceil(Int(n)) + 1) / eps).get_si()) +
      1;

  for (long it = 0;; ++it) {
    Rat dv = dual_value();
    res.d_history.push_back(dv);
    if (it > 0 && dv >= 1) break;
    if (cap > 0 && it >= cap) break;

    // per-vertex lengths y + b*phi, scaled to integers
    std::vector<Rat> len(n);
    std::vector<Int> ilen(n);
    for (int v = 0; v < n; ++v) {
      len[v] = y[v] + (budgeted ? in.cost[v] * phi : Rat(0));
      ilen[v] = rat_ceil(Rat(sigma) * len[v]);
      if (ilen[v] < 1) ilen[v] = 1;
    }
    // dual certificate: alpha for the current lengths
    Rat alpha = min_length_flow_value(g, len, in.demand, in.tau, in.concurrent);
    if (alpha > 0) {
      Rat ub = dv / alpha;
      if (!have_ub || ub < res.upper_bound) {
        res.upper_bound = ub;
        have_ub = true;
      }
    }

    MultiFlow f = in.oracle(ilen);
    ++res.oracle_calls;
    std::vector<Rat> load = vertex_loads(g, f);
    Rat cong = 0;
    for (int v = 0; v < n; ++v) {
      Rat c = load[v] / Rat(g.vcap[v]);
      if (c > cong) cong = c;
    }
    if (cong > in.kappa_declared)
      throw OracleContractViolation("oracle congestion " + rat_str(cong) +
                                    " exceeds declared slack " + rat_str(in.kappa_declared));
    if (kappa_up == 0) {
      kappa_up = rat_ceil(cong) < 1 ? Rat(1) : Rat(rat_ceil(cong));
      if (in.max_iterations == 0) {
        // O(kappa eps^-2 log m) with a generous constant
        Rat c = 8 * kappa_up * Rat(ilog2_ceil(Int(std::max(n, 2))) + 1) / (eps * eps);
        cap = static_cast<long>(rat_ceil(c).get_si()) + 8;
      }
    }

    Rat bf = 0;
    for (int v = 0; v < n; ++v) bf += load[v] * in.cost[v];
    Rat z = 1;
    if (budgeted && bf > *in.budget) z = *in.budget / bf;

    // accumulate z*F
    for (int c = 0; c < f.k; ++c) {
      for (int s = 0; s < g.num_slots(); ++s)
        if (f.edge_flow[c][s] != 0) sum.edge_flow[c][s] += z * f.edge_flow[c][s];
      for (const auto& [pair, val] : f.routed[c]) sum.routed[c][pair] += z * val;
    }
    for (int v = 0; v < n; ++v) res.total_load[v] += z * load[v];
    z_sum += z;
    zs.push_back(z);
    if (in.keep_flows) res.flows.push_back(f);

    // multiplicative updates
    for (int v = 0; v < n; ++v) {
      if (load[v] == 0) continue;
      y[v] *= 1 + (eps / kappa_up) * (z * load[v] / Rat(g.vcap[v]));
    }
    if (budgeted && bf > 0) phi *= 1 + (eps / kappa_up) * (z * bf / *in.budget);

    // certified exit on the exact sandwich
    MultiFlow fbar = sum;
    scale_flow(fbar, 1 / z_sum);
    Rat lam = measured_lambda(g, fbar, in.cost, in.budget);
    if (have_ub && lam >= res.target * res.upper_bound) {
      res.certified = true;
      res.flow = std::move(fbar);
      res.lambda = lam;
      res.combo.assign(zs.begin(), zs.end());
      for (Rat& zc : res.combo) zc /= z_sum;
      res.kappa_update = kappa_up;
      res.load_bound = kappa_up * Rat(log_delta);
      return res;
    }
  }

  if (z_sum == 0) throw std::runtime_error("boosting made no progress");
  MultiFlow fbar = sum;
  scale_flow(fbar, 1 / z_sum);
  res.lambda = measured_lambda(g, fbar, in.cost, in.budget);
  res.flow = std::move(fbar);
  res.combo.assign(zs.begin(), zs.end());
  for (Rat& zc : res.combo) zc /= z_sum;
  res.kappa_update = kappa_up == 0 ? Rat(1) : kappa_up;
  res.load_bound = res.kappa_update * Rat(log_delta);
  res.certified = have_ub && res.lambda >= res.target * res.upper_bound;
  return res;
}

MincostResult solve_mincost(const MincostProblem& problem, const Rat& eps) {
  const Graph& g = problem.g;
  if (g.mode != GraphMode::vertex_weighted)
    throw InvalidInstance("solve_mincost expects a vertex-weighted graph");
  g.validate();
  problem.demand.validate(g);
  if (!problem.demand.integral()) throw InvalidInstance("mincost needs an integral demand");
  for (const Rat& c : problem.cost)
    if (c < 0) throw InvalidInstance("costs must be nonnegative");

  const bool concurrent = problem.mode == MincostMode::concurrent;
  Rat tau = concurrent ? problem.demand.total() : Rat(1);
  if (tau < 1) throw InvalidInstance("empty demand");

  // capacities scaled up by tau so the convex set contains a feasible flow
  Graph gt = g;
  Int tau_i = rat_ceil(tau);  // tau integral for concurrent; 1 otherwise
  for (int v = 0; v < g.n; ++v) gt.vcap[v] *= tau_i;
  std::optional<Rat> budget = problem.budget;
  if (budget) budget = *budget * Rat(tau_i);

  // the min-total-length oracle
  Rat eps_mtl = eps / 100;
  BoostInput bi;
  bi.g = &gt;
  bi.cost = problem.cost;
  bi.budget = budget;
  bi.demand = problem.demand;
  bi.tau = tau;
  bi.concurrent = concurrent;
  bi.eps = eps;
  {
    // 8 ceil(log2 n_dir)^2 / eps_ls with eps_ls >= 10/n_dir, doubled for the
    // undirected rescale
    long l2 = ilog2_ceil(Int(2 * g.n)) + 1;
    bi.kappa_declared = Rat(16 * l2 * l2) * make_rat(2 * g.n, 10);
  }
  bi.oracle = [&gt, &problem, &tau, &eps_mtl](const std::vector<Int>& ilen) {
    Graph gl = gt;
    gl.vlen = ilen;
    return approx_mtl_flow(gl, problem.demand, tau, eps_mtl);
  };

  BoostResult br = boost(bi);

  MincostResult out;
  out.oracle_calls = br.oracle_calls;
  out.certified = br.certified;
  // scale back: lambda F_bar on gt, then /tau to original capacities
  MultiFlow flow = br.flow;
  scale_flow(flow, br.lambda / Rat(tau_i));
  out.flow = std::move(flow);
  out.lambda = br.lambda / Rat(tau_i);
  out.upper_bound = br.upper_bound / Rat(tau_i);
  std::vector<Rat> load = vertex_loads(g, out.flow);
  for (int v = 0; v < g.n; ++v) out.cost += load[v] * problem.cost[v];
  return out;
}

}  // namespace lcf
