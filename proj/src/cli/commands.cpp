#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include "accel/classical.hpp"
#include "accel/errors.hpp"
#include "accel/lattice.hpp"
#include "accel/multidof.hpp"
#include "accel/operator.hpp"
#include "accel/quadrature.hpp"

namespace accel::cli {

namespace {

constexpr const char* kVersion = "accel 0.1.0";

// Runs f(0..n-1) on at most `threads` workers; results go wherever f puts them.
void parallel_for(int n, int threads, const std::function<void(int)>& f) {
  int w = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  w = std::min(w, n);
  if (w <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

json provenance(const RunConfig& c, const ModelParams& p) {
  return {{"command", c.command}, {"gamma", p.gamma()}, {"alpha", p.alpha()}, {"beta", p.beta()},
          {"branch", to_string(p.branch())}, {"seed", c.seed}, {"version", kVersion}};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

double form_rel(const GaussianForm& a, const GaussianForm& b) {
  return std::max((a.quad() - b.quad()).norm() / b.quad().norm(), rel(a.norm(), b.norm()));
}

std::vector<BoundaryData> boundary_sets(const RunConfig& c) {
  if (!c.bcs.empty()) return c.bcs;
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> n(0, 0.5);
  std::vector<BoundaryData> out;
  for (int i = 0; i < c.n_bc; ++i) out.push_back({n(rng), n(rng), n(rng), n(rng)});
  return out;
}

// Classical kernel from the full action matrix, optionally with the M12 sign broken.
GaussianForm classical_kernel(const ModelParams& p, double tau, const std::string& fault) {
  Eigen::Matrix4d m = action_matrix(p, tau).full();
  if (fault == "m12-sign") {
    m(0, 1) = -m(0, 1);
    m(1, 0) = -m(1, 0);
  }
  return kernel_from_action(m);
}

double symmetry_residual(const GaussianForm& k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0, 0.5);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    double xf = n(rng), vf = n(rng), xi = n(rng), vi = n(rng);
    cplx a = evaluate(k, Eigen::VectorXd{{xf, vf, xi, vi}});
    cplx b = evaluate(k, Eigen::VectorXd{{xi, -vi, xf, -vf}});
    worst = std::max(worst, rel(b, a));
  }
  return worst;
}

double semigroup_residual(const std::function<GaussianForm(double)>& kernel, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.2, 3.0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    double t1 = t(rng), t2 = t(rng);
    auto c = compose(kernel(t1), kernel(t2), VariableSplit::chain(4, 2));
    worst = std::max(worst, form_rel(c, kernel(t1 + t2)));
  }
  return worst;
}

double kernel_agreement(const GaussianForm& a, const GaussianForm& b) {
  const double pts[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
  cplx a0 = evaluate(a, zero), b0 = evaluate(b, zero);
  double worst = 0;
  for (double p : pts)
    for (double q : pts)
      for (double r : pts)
        for (double s : pts) {
          Eigen::VectorXd z{{p, q, r, s}};
          worst = std::max(worst, rel(evaluate(a, z) / a0, evaluate(b, z) / b0));
        }
  return worst;
}

}  // namespace

Report cmd_branch(const RunConfig& c) {
  auto p = c.model();
  Report r;
  r.command = "branch";
  r.provenance = provenance(c, p);
  const auto& f = p.frequencies();
  r.data["branch"] = to_string(p.branch());
  r.data["omega1"] = complex_json(f.omega1());
  r.data["omega2"] = complex_json(f.omega2());
  if (!f.is_real()) {
    r.data["R"] = f.R();
    r.data["phi"] = f.phi();
  }
  try {
    auto q = p.q();
    r.data["q"] = {{"a", q.a}, {"b", q.b}, {"sqrt_ab", q.sqrt_ab}, {"A", q.A}, {"B", q.B}, {"C", q.C}};
    auto h = p.h0();
    r.data["h0"] = {{"c1", h.c1}, {"c2", h.c2}, {"c3", h.c3}, {"c4", h.c4}, {"c5", h.c5}, {"c6", h.c6}};
  } catch (const Error& e) {
    r.data["q"] = std::string("refused: ") + e.what();
  }
  r.data["e00"] = p.e00();
  return r;
}

Report cmd_xval(const RunConfig& c) {
  auto p = c.model();
  if (p.branch() == Branch::Critical) throw ConfigError("xval needs distinct frequencies (critical branch)");
  std::vector<double> taus = c.taus.empty() ? std::vector<double>{0.3, 1.0, 3.0} : c.taus;
  const bool op = p.has_q();
  const std::string fault = c.inject_fault;
  auto classical = [&](double t) { return classical_kernel(p, t, fault); };
  auto operator_k = [&](double t) { return evolution_kernel_operator(p, t); };

  std::vector<std::function<CheckRecord()>> tasks;
  for (double tau : taus) {
    std::string tag = "(tau=" + label(tau) + ")";
    tasks.push_back([=, &c] {
      if (!op) return make_skip("kernel_agreement" + tag, "classical/operator", "operator backend needs the real branch");
      return make_check("kernel_agreement" + tag, "classical/operator",
                        kernel_agreement(classical(tau), operator_k(tau)), c.tolerance("kernel_agreement", 1e-10));
    });
    tasks.push_back([=, &c] {
      return make_check("symmetry" + tag, "classical", symmetry_residual(classical(tau), c.seed),
                        c.tolerance("symmetry", 1e-12));
    });
    tasks.push_back([=, &c] {
      if (!op) return make_skip("symmetry" + tag, "operator", "operator backend needs the real branch");
      return make_check("symmetry" + tag, "operator", symmetry_residual(operator_k(tau), c.seed),
                        c.tolerance("symmetry", 1e-12));
    });
  }
  tasks.push_back([=, &c] {
    return make_check("semigroup", "classical", semigroup_residual(classical, c.seed), c.tolerance("semigroup", 1e-10));
  });
  tasks.push_back([=, &c] {
    if (!op) return make_skip("semigroup", "operator", "operator backend needs the real branch");
    return make_check("semigroup", "operator", semigroup_residual(operator_k, c.seed), c.tolerance("semigroup", 1e-10));
  });
  tasks.push_back([=, &c] {
    if (!op) return make_skip("large_tau_factorization", "operator", "operator backend needs the real branch");
    return make_check("large_tau_factorization", "operator", factorization_residual(p, 8.0),
                      c.tolerance("large_tau_factorization", 1e-3), "L2 relative, tau=8");
  });
  tasks.push_back([=, &c] {
    try {
      auto s = vacuum(p, false).form, d = vacuum(p, true).form;
      double res = std::abs(total_integral(product(d, s)) - 1.0);
      return make_check("vacuum_norm", "gaussian", res, c.tolerance("vacuum_norm", 1e-12));
    } catch (const Error& e) {
      return make_skip("vacuum_norm", "gaussian", e.what());
    }
  });
  tasks.push_back([=, &c] {
    if (!op) return make_skip("vacuum_via_q", "operator", "operator backend needs the real branch");
    double res = form_rel(vacuum_via_q(p).form, vacuum(p).form);
    return make_check("vacuum_via_q", "operator/gaussian", res, c.tolerance("vacuum_via_q", 1e-11));
  });
  for (QOp o : {QOp::X, QOp::DX, QOp::V, QOp::DV})
    tasks.push_back([=, &c] {
      std::string name = std::string("similarity_") + to_string(o);
      if (!op) return make_skip(name, "operator", "needs the real branch");
      double res = std::max(similarity_residual(p.q(), o, 0.1), similarity_residual(p.q(), o, 0.3));
      return make_check(name, "operator", res, c.tolerance("similarity", 1e-8));
    });
  tasks.push_back([=, &c] {
    if (!op) return make_skip("double_commutator", "operator", "needs the real branch");
    return make_check("double_commutator", "operator", double_commutator_residual(p.q()),
                      c.tolerance("double_commutator", 1e-12));
  });

  Report r;
  r.command = "xval";
  r.provenance = provenance(c, p);
  r.provenance["taus"] = taus;
  if (!fault.empty()) r.provenance["inject_fault"] = fault;
  r.checks.resize(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), c.threads, [&](int i) { r.checks[i] = tasks[i](); });
  return r;
}

Report cmd_lattice(const RunConfig& c) {
  auto p = c.model();
  std::vector<double> taus = c.taus.empty() ? std::vector<double>{1.0} : c.taus;
  auto bcs = boundary_sets(c);
  std::vector<int> ns = c.lattice_n;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const BoundaryData ref{};

  struct Job { size_t t, b, n; };
  std::vector<Job> jobs;
  for (size_t t = 0; t < taus.size(); ++t)
    for (size_t b = 0; b < bcs.size(); ++b)
      for (size_t n = 0; n < ns.size(); ++n) jobs.push_back({t, b, n});
  std::vector<double> ratio(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), c.threads, [&](int i) {
    const auto& j = jobs[i];
    ratio[i] = kernel_ratio(build_problem(p, bcs[j.b], taus[j.t], ns[j.n]), ref);
  });

  Report r;
  r.command = "lattice";
  r.provenance = provenance(c, p);
  Table tab;
  tab.columns = {"tau", "bc", "x_f", "v_f", "x_i", "v_i", "N", "eps", "ratio", "closed_form", "rel_error"};
  json extra = json::array();
  double worst_limit = 0;
  int non_monotone = 0;
  std::string note;
  for (size_t t = 0; t < taus.size(); ++t) {
    auto am = action_matrix(p, taus[t]);
    for (size_t b = 0; b < bcs.size(); ++b) {
      const auto& bc = bcs[b];
      double exact = std::exp(am.exponent(bc) - am.exponent(ref));
      std::vector<std::pair<double, double>> seq;
      double prev_err = INFINITY;
      for (size_t n = 0; n < ns.size(); ++n) {
        double v = ratio[(t * bcs.size() + b) * ns.size() + n], eps = taus[t] / ns[n];
        double err = std::abs(v / exact - 1);
        if (!(err < prev_err)) ++non_monotone;
        prev_err = err;
        seq.push_back({eps, v});
        tab.rows.push_back({taus[t], static_cast<int>(b), bc.x_f, bc.v_f, bc.x_i, bc.v_i, ns[n], eps, v, exact, err});
      }
      json e = {{"tau", taus[t]}, {"bc", static_cast<int>(b)}, {"closed_form", exact}};
      try {
        auto ex = extrapolate_ratio(seq);
        e["limit"] = ex.limit;
        e["order"] = ex.order;
        e["rel_error"] = std::abs(ex.limit / exact - 1);
        worst_limit = std::max(worst_limit, std::abs(ex.limit / exact - 1));
      } catch (const Error& err) {
        e["error"] = err.what();
        worst_limit = NAN;
        note = err.what();
      }
      extra.push_back(e);
    }
  }
  r.table = std::move(tab);
  r.data["extrapolation"] = extra;
  if (ns.size() >= 3)
    r.checks.push_back(make_check("lattice_richardson", "lattice/classical", worst_limit,
                                  c.tolerance("lattice_richardson", 1e-4), note));
  else
    r.checks.push_back(make_skip("lattice_richardson", "lattice/classical", "needs three or more N"));
  r.checks.push_back(make_check("lattice_monotone_error", "lattice/classical", non_monotone, 0,
                                "count of N where the error did not shrink"));
  return r;
}

Report cmd_vacuum(const RunConfig& c) {
  auto p = c.model();
  Report r;
  r.command = "vacuum";
  r.provenance = provenance(c, p);
  VacuumState s = [&] {
    try {
      return vacuum(p);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  auto d = vacuum(p, true);
  const auto& m = s.form.quad();
  r.data["P"] = complex_json(m(0, 0));
  r.data["Q"] = complex_json(m(1, 1));
  r.data["R"] = complex_json(m(0, 1));
  r.data["N00"] = complex_json(s.form.norm());
  r.data["E00"] = s.energy;
  r.data["square_integrable"] = s.square_integrable();

  cplx pairing = gauss_hermite_integral(product(d.form, s.form), [](const Eigen::VectorXd&) { return cplx(1); });
  r.checks.push_back(make_check("pairing_quadrature", "quadrature", std::abs(pairing - 1.0),
                                c.tolerance("vacuum_norm", 1e-10)));
  if (p.has_q()) {
    auto v = vacuum_via_q(p);
    r.checks.push_back(make_check("n00_via_q", "operator/closed", rel(v.form.norm(), s.form.norm()),
                                  c.tolerance("vacuum_via_q", 1e-11)));
  } else {
    r.checks.push_back(make_skip("n00_via_q", "operator/closed", "needs the real branch"));
  }
  return r;
}

Report cmd_propagator(const RunConfig& c) {
  auto p = c.model();
  if (!p.has_q()) throw ConfigError("propagator needs the real branch");
  std::vector<double> taus = c.taus;
  if (taus.empty())
    for (int k = 0; k <= 12; ++k) taus.push_back(0.25 * k);
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  std::vector<double> g(taus.size());
  parallel_for(static_cast<int>(taus.size()), c.threads, [&](int i) { g[i] = propagator_g(p, taus[i]); });
  std::vector<double> oracle;
  if (c.grid_oracle) oracle = propagator_grid_oracle(p, taus, propagator_oracle_grid());

  Report r;
  r.command = "propagator";
  r.provenance = provenance(c, p);
  Table tab;
  tab.columns = {"tau", "g_value", "grid_oracle_value", "rel_diff"};
  double worst = 0;
  int rises = 0;
  for (size_t k = 0; k < taus.size(); ++k) {
    if (k && !(g[k] < g[k - 1])) ++rises;
    if (c.grid_oracle) {
      double d = std::abs(oracle[k] / g[k] - 1);
      worst = std::max(worst, d);
      tab.rows.push_back({taus[k], g[k], oracle[k], d});
    } else {
      tab.rows.push_back({taus[k], g[k], nullptr, nullptr});
    }
  }
  r.table = std::move(tab);
  if (taus.front() == 0) {
    const auto& f = p.frequencies();
    double exact = 1 / (2 * p.gamma() * f.sum() * f.product());
    r.checks.push_back(make_check("g0_exact", "gaussian", std::abs(g[0] / exact - 1), c.tolerance("g0_exact", 1e-14)));
  }
  r.checks.push_back(make_check("monotone_decreasing", "gaussian", rises, 0, "count of non-decreasing steps"));
  if (c.grid_oracle)
    r.checks.push_back(make_check("grid_oracle", "gaussian/grid", worst, c.tolerance("grid_oracle", 1e-3)));
  return r;
}

Report cmd_multidof(const RunConfig& c) {
  std::vector<Couplings> modes;
  if (c.modes.empty()) {
    modes = {{1, 5, 4}, {1, 10, 9}};
  } else {
    try {
      for (const auto& m : c.modes) modes.emplace_back(m[0], m[1], m[2]);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  const int n = static_cast<int>(modes.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
  if (n == 2) s << std::cos(c.angle), -std::sin(c.angle), std::sin(c.angle), std::cos(c.angle);
  auto sys = [&] {
    try {
      return build_system(s, modes);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  auto g = ground_state_many(sys);
  std::vector<double> taus = c.taus.empty() ? std::vector<double>{1.0} : c.taus;

  Report r;
  r.command = "multidof";
  r.provenance = {{"command", "multidof"}, {"seed", c.seed}, {"version", kVersion}, {"angle", c.angle}};
  auto mat = [](const Eigen::MatrixXd& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      a.push_back(row);
    }
    return a;
  };
  r.data["mixing"] = mat(s);
  r.data["P"] = mat(g.P);
  r.data["Q"] = mat(g.Q);
  r.data["R"] = mat(g.R);
  r.data["norm"] = g.norm;
  json fr = json::array();
  for (const auto& m : sys.modes())
    fr.push_back({{"omega1", complex_json(m.frequencies().omega1())}, {"omega2", complex_json(m.frequencies().omega2())},
                  {"branch", to_string(m.branch())}});
  r.data["modes"] = fr;

  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> nd(0, 0.4);
  auto psi = g.form();
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd w(2 * n);
    for (int i = 0; i < 2 * n; ++i) w(i) = nd(rng);
    Eigen::VectorXd z = s * w.head(n), u = s * w.tail(n);
    cplx prod = 1;
    for (int k = 0; k < n; ++k) prod *= evaluate(vacuum(sys.modes()[k]).form, Eigen::VectorXd{{z(k), u(k)}});
    worst = std::max(worst, rel(evaluate(psi, w), prod));
  }
  r.checks.push_back(make_check("ground_state_modes", "multidof/single", worst, c.tolerance("multidof", 1e-11)));
  r.checks.push_back(make_check("ground_state_norm", "gaussian",
                                std::abs(total_integral(product(g.form(true), psi)) - 1.0),
                                c.tolerance("vacuum_norm", 1e-12)));

  bool all_real = std::all_of(sys.modes().begin(), sys.modes().end(), [](auto& m) { return m.has_q(); });
  for (double tau : taus) {
    std::string name = "kernel_modes(tau=" + format_number(tau) + ")";
    if (!all_real) {
      r.checks.push_back(make_skip(name, "multidof/single", "every mode must be on the real branch"));
      continue;
    }
    auto k = kernel_many(sys, tau);
    double kw = 0;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd w(4 * n);
      for (int i = 0; i < 4 * n; ++i) w(i) = nd(rng);
      cplx prod = 1;
      for (int m = 0; m < n; ++m) {
        Eigen::VectorXd zm(4);
        for (int b = 0; b < 4; ++b) zm(b) = (s * w.segment(b * n, n))(m);
        prod *= evaluate(evolution_kernel_operator(sys.modes()[m], tau), zm);
      }
      kw = std::max(kw, rel(evaluate(k, w), prod));
    }
    r.checks.push_back(make_check(name, "multidof/single", kw, c.tolerance("multidof", 1e-11)));
  }
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    auto parsed = parse_args(argc, argv);
    if (parsed.exit_now) {
      out << parsed.message;
      return parsed.exit_code;
    }
    const auto& c = parsed.config;
    Report r;
    if (c.command == "branch") r = cmd_branch(c);
    else if (c.command == "xval") r = cmd_xval(c);
    else if (c.command == "lattice") r = cmd_lattice(c);
    else if (c.command == "vacuum") r = cmd_vacuum(c);
    else if (c.command == "propagator") r = cmd_propagator(c);
    else if (c.command == "multidof") r = cmd_multidof(c);
    else throw ConfigError("unknown command " + c.command);

    std::string text;
    switch (c.format) {
      case Format::Json: text = dump_json(r.to_json()); break;
      case Format::Csv:
        if (!r.table) throw ConfigError("--csv needs a tabular command (lattice, propagator)");
        text = to_csv(*r.table);
        break;
      case Format::Table: text = to_text(r); break;
    }
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + c.out);
      f << text;
      if (!f) throw std::runtime_error("write failed: " + c.out);
    }
    if (c.format != Format::Table)
      for (const auto& ch : r.checks)
        if (ch.status != Status::Pass) err << to_string(ch.status) << " " << ch.name << " " << ch.note << "\n";
    return r.passed() ? kExitPass : kExitCheckFailure;
  } catch (const ConfigError& e) {
    err << "accel: " << e.what() << "\n";
    return kExitInfrastructure;
  } catch (const std::exception& e) {
    err << "accel: " << e.what() << "\n";
    return kExitInfrastructure;
  }
}

}  // namespace accel::cli
