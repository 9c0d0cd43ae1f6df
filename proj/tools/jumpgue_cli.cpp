// Command-line front end. Talks to the numerics only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>
#include <variant>
#include <vector>

#include "jumpgue/jumpgue.h"

namespace {

using Cell = std::variant<double, long long, std::string>;
using json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

// A failure to report as a machine-readable record (exit 1).
struct Failure {
  std::string tag;
  std::string message;
  int status = -1;  // library status code, -1 when raised by the CLI itself
};

void check(jg_status st) {
  if (st != JG_OK) throw Failure{jg_status_name(st), jg_last_error(), static_cast<int>(st)};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return fmt(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(fmt(*d));
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

// Effective parameters of the running subcommand, echoed into every output.
struct Registry {
  std::vector<std::pair<std::string, std::function<Cell()>>> entries;
};

struct Options {
  double s1 = 0.3, s2 = 1.1, w1 = 0.4, w2 = 0.7;
  double t1 = -0.5, t2 = 0.5, p = 0.5, s = 1.0;
  double x = 0.0, y = 0.0;
  int n = 6;
  std::vector<int> ns{64, 256};
  double h = 1e-3;
  double tol = 1e-7;
  double ode_tol = 1e-11, x_min = -8.0, x_max = 12.0;
  double t_min = -5.0, t_max = 2.0;
  int points = 36;
  int m_nodes = 60;
  long samples = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string oracle = "none";
  std::string out;
  std::string format = "csv";
};

struct Command {
  CLI::App* app = nullptr;
  Options o;
  Registry params;
  std::function<Table(std::vector<std::pair<std::string, Cell>>&)> run;
};

template <class T>
CLI::Option* param(Command& cmd, const std::string& name, T& var, const std::string& help) {
  auto* opt = cmd.app->add_option("--" + name, var, help)->capture_default_str();
  cmd.params.entries.emplace_back(name, [&var]() -> Cell {
    if constexpr (std::is_floating_point_v<T>)
      return static_cast<double>(var);
    else if constexpr (std::is_integral_v<T>)
      return static_cast<long long>(var);
    else if constexpr (std::is_same_v<T, std::string>)
      return var;
    else {
      std::string s;
      for (const auto& v : var) s += (s.empty() ? "" : " ") + std::to_string(v);
      return s;
    }
  });
  return opt;
}


jg_weight weight(const Options& o) {
  if (o.s1 == o.s2) return {o.s1, o.s2, o.w1, o.w1};
  return {o.s1, o.s2, o.w1, o.w2};
}

jg_cpii_options cpii_opts(const Options& o) {
  jg_cpii_options c = jg_cpii_default_options();
  c.tol = o.ode_tol;
  c.x_min = o.x_min;
  c.x_max = o.x_max;
  return c;
}

struct Recurrence {
  jg_recurrence* ptr = nullptr;
  Recurrence(const jg_weight& w, int n_max) { check(jg_recurrence_create(&w, n_max, nullptr, &ptr)); }
  ~Recurrence() { jg_recurrence_free(ptr); }
  Recurrence(const Recurrence&) = delete;
  Recurrence& operator=(const Recurrence&) = delete;
};

struct Trajectory {
  jg_cpii* ptr = nullptr;
  ~Trajectory() { jg_cpii_free(ptr); }
};

bool given(const CLI::App* app, const std::string& name) { return app->get_option("--" + name)->count() > 0; }

void write_csv(std::ostream& os, const std::string& command, const std::vector<std::pair<std::string, Cell>>& meta,
               const Table& t) {
  os << "# command: " << command << "\n# version: " << jg_version() << "\n";
  for (const auto& [k, v] : meta) os << "# " << k << ": " << cell_text(v) << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const std::string& command, const std::vector<std::pair<std::string, Cell>>& meta,
                const Table& t) {
  json doc;
  doc["meta"]["command"] = command;
  doc["meta"]["version"] = jg_version();
  for (const auto& [k, v] : meta) doc["meta"][k] = cell_json(v);
  doc["columns"] = t.columns;
  doc["rows"] = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(r));
  }
  os << doc.dump(2) << "\n";
}

// Relative paths land in $JUMPGUE_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& out, const std::string& command, const std::string& ext) {
  const char* dir = std::getenv("JUMPGUE_OUTPUT_DIR");
  std::filesystem::path p = out.empty() ? std::filesystem::path(command + "." + ext) : std::filesystem::path(out);
  if (dir && *dir && p.is_relative()) p = std::filesystem::path(dir) / p;
  return p;
}

void emit(const std::string& command, const Options& o, const std::vector<std::pair<std::string, Cell>>& meta,
          const Table& t) {
  std::ostringstream buf;
  if (o.format == "json")
    write_json(buf, command, meta, t);
  else
    write_csv(buf, command, meta, t);
  const char* dir = std::getenv("JUMPGUE_OUTPUT_DIR");
  if (o.out.empty() && !(dir && *dir)) {
    std::cout << buf.str();
    return;
  }
  const auto path = resolve_output(o.out, command, o.format);
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure{"io", "cannot open " + tmp.string() + " for writing"};
    f << buf.str();
    f.close();
    if (!f) throw Failure{"io", "write to " + tmp.string() + " failed"};
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Failure{"io", "cannot move output into " + path.string()};
  }
}

void report(const std::string& command, const Failure& f) {
  json rec;
  rec["error"]["command"] = command;
  rec["error"]["tag"] = f.tag;
  if (f.status >= 0) rec["error"]["status"] = f.status;
  rec["error"]["message"] = f.message;
  std::cerr << rec.dump() << "\n";
}

// ---- subcommands --------------------------------------------------------

using Meta = std::vector<std::pair<std::string, Cell>>;

Table run_recurrence(const Options& o, Meta&) {
  Recurrence r(weight(o), o.n);
  Table t{{"n", "alpha", "beta2", "gamma", "log_hankel"}, {}};
  for (int k = 0; k < o.n; ++k) {
    double a, b2, lg, lh;
    check(jg_recurrence_row(r.ptr, k, &a, &b2, &lg, &lh));
    t.add({static_cast<long long>(k), a, b2, std::exp(lg), lh});
  }
  return t;
}

Table run_hankel(const Options& o, Meta&) {
  Recurrence r(weight(o), o.n);
  Table t{{"n", "log_D", "log_D_gue", "log_ratio", "F_cd", "F_subleading"}, {}};
  for (int k = 1; k <= o.n; ++k) {
    double ld, lg, cd, sub;
    check(jg_log_hankel(r.ptr, k, &ld));
    check(jg_log_hankel_gue(k, &lg));
    check(jg_hankel_F(r.ptr, k, &cd, &sub));
    t.add({static_cast<long long>(k), ld, lg, ld - lg, cd, sub});
  }
  return t;
}

Table run_verify_thm1(const Options& o, Meta& meta) {
  Recurrence r(weight(o), o.n + 1);
  jg_cpiv_state st;
  check(jg_cpiv_reconstruct(r.ptr, o.n, &st));
  jg_identity_residuals res;
  check(jg_cpiv_identities(r.ptr, &st, &res));
  Table t{{"kind", "quantity", "value", "tolerance", "pass"}, {}};
  const std::pair<const char*, double> state[] = {{"x", st.x},       {"s", st.s},   {"a1", st.a1},
                                                  {"a2", st.a2},     {"b1", st.b1}, {"b2", st.b2},
                                                  {"log_y_im", st.log_y_im}, {"H_IV", jg_hamiltonian_iv(&st)}};
  for (const auto& [q, v] : state) t.add({std::string("state"), std::string(q), v, std::string(""), std::string("")});
  const std::pair<const char*, double> rows[] = {{"alpha", res.alpha}, {"beta", res.beta}, {"gamma0", res.gamma0},
                                                 {"F_H", res.f_h},     {"pns1", res.pns1}, {"pns2", res.pns2},
                                                 {"imaginary_part", st.max_imag_rel}};
  bool ok = true;
  for (const auto& [q, v] : rows) {
    const bool pass = v < o.tol;
    ok = ok && pass;
    t.add({std::string("residual"), std::string(q), v, o.tol, std::string(pass ? "yes" : "no")});
  }
  meta.emplace_back("all_pass", std::string(ok ? "yes" : "no"));
  return t;
}

Table run_cpiv_residuals(const Options& o, Meta&) {
  const jg_weight w = weight(o);
  jg_cpiv_ode_report coarse, fine;
  check(jg_cpiv_ode_residual(&w, o.n, o.h, &coarse));
  check(jg_cpiv_ode_residual(&w, o.n, 0.5 * o.h, &fine));
  jg_cpiv_second_order_report sc, sf;
  check(jg_cpiv_second_order(&w, o.n, o.h, &sc));
  check(jg_cpiv_second_order(&w, o.n, 0.5 * o.h, &sf));
  Table t{{"quantity", "residual", "scaled", "refinement_ratio", "h", "n", "s1", "s2", "w1", "w2"}, {}};
  auto row = [&](const std::string& q, double r, double scaled, double ratio) {
    t.add({q, r, scaled, ratio, o.h, static_cast<long long>(o.n), w.s1, w.s2, w.omega1, w.omega2});
  };
  const char* names[] = {"dlog_y", "a1", "a2", "b1", "b2"};
  for (int k = 0; k < 5; ++k) row(names[k], coarse.residual[k], coarse.scaled[k], coarse.residual[k] / fine.residual[k]);
  row("dlog_gamma", coarse.dlog_gamma, coarse.dlog_gamma, coarse.dlog_gamma / fine.dlog_gamma);
  row("second_order_a1", sc.a1, sc.a1, sc.a1 / sf.a1);
  row("second_order_a2", sc.a2, sc.a2, sc.a2 / sf.a2);
  row("piv_reduction", sc.piv, sc.piv, sc.piv / sf.piv);
  return t;
}

Table run_cpiv_scaling(const Options& o, Meta&) {
  Trajectory tr;
  check(jg_cpii_solve(o.w1, o.w2, o.t2 - o.t1, nullptr, &tr.ptr));
  Table t{{"n", "quantity", "deviation", "n_pow_minus_third"}, {}};
  for (int n : o.ns) {
    jg_cpiv_scaling_report rep;
    check(jg_cpiv_scaling(n, o.t1, o.t2, o.w1, o.w2, tr.ptr, &rep));
    const double ref = std::pow(n, -1.0 / 3.0);
    const std::pair<const char*, double> rows[] = {{"a1", rep.a1}, {"a2", rep.a2}, {"b1", rep.b1}, {"b2", rep.b2}, {"y", rep.y}};
    for (const auto& [q, v] : rows) t.add({static_cast<long long>(n), std::string(q), v, ref});
  }
  return t;
}

Table run_cpii_solve(const Options& o, Meta& meta) {
  Trajectory tr;
  const jg_cpii_options c = cpii_opts(o);
  check(jg_cpii_solve(o.w1, o.w2, o.s, &c, &tr.ptr));
  double fd, in;
  check(jg_cpii_hamiltonian_check(tr.ptr, &fd, &in));
  meta.emplace_back("hamiltonian_residual_fd", fd);
  meta.emplace_back("hamiltonian_residual_integral", in);
  meta.emplace_back("effective_x_min", jg_cpii_effective_options(tr.ptr).x_min);
  Table t{{"x", "v1", "v2", "w1", "w2", "H"}, {}};
  const std::size_t n = jg_cpii_size(tr.ptr);
  for (std::size_t i = 0; i < n; ++i) {
    jg_cpii_point p;
    check(jg_cpii_node(tr.ptr, i, &p));
    t.add({p.x, p.v1, p.v2, p.w1, p.w2, p.H});
  }
  return t;
}

void require_oracle(const Options& o) {
  if (o.oracle != "none" && o.oracle != "fredholm") throw Failure{"invalid_argument", "unknown oracle " + o.oracle};
}

Table run_gap_limit(const Options& o, Meta&) {
  require_oracle(o);
  double v;
  check(jg_gap_limit(o.t1, o.t2, nullptr, &v));
  if (o.oracle == "none") return {{"t1", "t2", "value", "method"}, {{o.t1, o.t2, v, std::string("painleve")}}};
  jg_fredholm_result f;
  check(jg_fredholm(o.t1, o.t2, 0.0, 1.0, o.m_nodes, &f));
  return {{"t1", "t2", "painleve", "fredholm", "difference"}, {{o.t1, o.t2, v, f.value, v - f.value}}};
}

Table run_conditional_limit(const Options& o, Meta&) {
  require_oracle(o);
  double v;
  check(jg_conditional_limit(o.t1, o.t2, o.p, nullptr, &v));
  if (o.oracle == "none")
    return {{"t1", "t2", "p", "value", "method"}, {{o.t1, o.t2, o.p, v, std::string("painleve")}}};
  jg_fredholm_result num, den;
  check(jg_fredholm(o.t1, o.t2, o.p, 0.0, o.m_nodes, &num));
  check(jg_fredholm(o.t1, o.t2, o.p, o.p, o.m_nodes, &den));
  const double f = num.value / den.value;
  return {{"t1", "t2", "p", "painleve", "fredholm", "difference"}, {{o.t1, o.t2, o.p, v, f, v - f}}};
}

Table run_tw(const Options& o, Meta&) {
  require_oracle(o);
  if (o.points < 2 || !(o.t_max > o.t_min)) throw Failure{"invalid_argument", "need points >= 2 and t-max > t-min"};
  Trajectory hm;
  jg_cpii_options c = cpii_opts(o);
  c.x_min = std::min(c.x_min, std::floor(o.t_min) - 1.0);
  check(jg_cpii_solve_as(0.0, &c, &hm.ptr));
  Table t;
  t.columns = o.oracle == "none" ? std::vector<std::string>{"t", "value", "method"}
                                 : std::vector<std::string>{"t", "painleve", "fredholm", "difference"};
  for (int i = 0; i < o.points; ++i) {
    const double x = o.t_min + (o.t_max - o.t_min) * i / (o.points - 1);
    double v;
    check(jg_tracy_widom(hm.ptr, x, &v));
    if (o.oracle == "none") {
      t.add({x, v, std::string("painleve")});
    } else {
      jg_fredholm_result f;
      check(jg_fredholm(x, x + 1.0, 0.0, 0.0, o.m_nodes, &f));
      t.add({x, v, f.value, v - f.value});
    }
  }
  return t;
}

Table run_hankel_asymptotics(const Options& o, Meta&) {
  Table t{{"n", "log_ratio", "predicted", "deviation", "bound"}, {}};
  for (int n : o.ns) {
    double pred, lg, ld;
    check(jg_hankel_prediction(n, o.t1, o.t2, o.w1, o.w2, nullptr, &pred, &lg));
    const double s1 = jg_edge_location(n, o.t1), s2 = jg_edge_location(n, o.t2);
    Recurrence r({s1, s2, o.w1, o.w2}, n);
    check(jg_log_hankel(r.ptr, n, &ld));
    t.add({static_cast<long long>(n), ld - lg, pred, std::fabs(ld - lg - pred), 1.5 * std::pow(n, -1.0 / 6.0)});
  }
  return t;
}

Table run_op_asymptotics(const Options& o, Meta&) {
  Trajectory tr;
  check(jg_cpii_solve(o.w1, o.w2, o.t2 - o.t1, nullptr, &tr.ptr));
  Table t{{"n", "quantity", "numeric", "predicted", "deviation"}, {}};
  for (int n : o.ns) {
    jg_op_asymptotics pr;
    check(jg_op_predictions(n, o.t1, o.t2, o.w1, o.w2, tr.ptr, &pr));
    const double s1 = jg_edge_location(n, o.t1), s2 = jg_edge_location(n, o.t2);
    Recurrence r({s1, s2, o.w1, o.w2}, n + 1);
    double a, b2, lg;
    check(jg_recurrence_row(r.ptr, n, &a, &b2, nullptr, nullptr));
    check(jg_recurrence_row(r.ptr, n - 1, nullptr, nullptr, &lg, nullptr));
    auto log_abs_pn = [&](double x) {
      double p, scale;
      check(jg_eval_monic(r.ptr, n, x, &p, nullptr, &scale));
      return std::log(std::fabs(p)) + scale;
    };
    const long long nn = n;
    t.add({nn, std::string("alpha"), a, pr.alpha, std::fabs(a - pr.alpha)});
    t.add({nn, std::string("beta"), std::sqrt(b2), pr.beta, std::fabs(std::sqrt(b2) - pr.beta)});
    // Ratios for the exponentially large quantities.
    t.add({nn, std::string("log_gamma"), lg, pr.log_gamma, std::fabs(std::expm1(lg - pr.log_gamma))});
    const double p1 = log_abs_pn(s1), p2 = log_abs_pn(s2);
    t.add({nn, std::string("log_abs_pn_s1"), p1, pr.log_abs_pn1, std::fabs(std::expm1(p1 - pr.log_abs_pn1))});
    t.add({nn, std::string("log_abs_pn_s2"), p2, pr.log_abs_pn2, std::fabs(std::expm1(p2 - pr.log_abs_pn2))});
  }
  return t;
}

Table run_mc_gap(const Options& o, const CLI::App* app, Meta& meta) {
  const bool use_t = !given(app, "s1") && !given(app, "s2");
  const double s1 = use_t ? jg_edge_location(o.n, o.t1) : o.s1;
  const double s2 = use_t ? jg_edge_location(o.n, o.t2) : o.s2;
  meta.emplace_back("locations", std::string(use_t ? "edge-scaled from t1, t2" : "s1, s2"));
  jg_mc_estimate e;
  check(jg_mc_gap(o.n, s1, s2, o.samples, o.seed, o.workers, &e));
  Table t{{"n", "s1", "s2", "p", "estimate", "stderr", "n_samples", "seed"}, {}};
  t.add({static_cast<long long>(o.n), s1, s2, 0.0, e.estimate, e.stderr_, static_cast<long long>(e.n_samples),
         static_cast<long long>(e.seed)});
  return t;
}

Table run_mc_conditional(const Options& o, const CLI::App* app, Meta& meta) {
  const bool use_t = !given(app, "x") && !given(app, "y");
  const double y = use_t ? jg_edge_location(o.n, o.t1) : o.y;
  const double x = use_t ? jg_edge_location(o.n, o.t2) : o.x;
  meta.emplace_back("locations", std::string(use_t ? "y from t1, x from t2 (edge-scaled)" : "x, y"));
  jg_mc_conditional_result c;
  check(jg_mc_conditional(o.n, x, y, o.p, o.samples, o.seed, o.workers, &c));
  Table t{{"n", "x", "y", "p", "estimate", "stderr", "n_samples", "seed", "ratio_estimate", "n_generated"}, {}};
  t.add({static_cast<long long>(o.n), x, y, o.p, c.conditional.estimate, c.conditional.stderr_,
         static_cast<long long>(c.conditional.n_samples), static_cast<long long>(c.conditional.seed),
         c.ratio_estimate, static_cast<long long>(c.conditional.n_generated)});
  return t;
}

Table run_fredholm(const Options& o, Meta&) {
  jg_fredholm_result f;
  check(jg_fredholm(o.t1, o.t2, o.w1, o.w2, o.m_nodes, &f));
  return {{"t1", "t2", "w1", "w2", "value", "coarse", "difference", "m_nodes"},
          {{o.t1, o.t2, o.w1, o.w2, f.value, f.coarse, f.difference, static_cast<long long>(f.m_nodes)}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian weights with jump discontinuities: orthogonal polynomials, Painleve transcendents and "
               "edge statistics of GUE"};
  app.set_config("--config", "", "TOML/INI file; [subcommand] sections, flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(jg_version()));

  std::map<std::string, Command> cmds;
  std::vector<std::string> order;

  auto make = [&](const std::string& name, const std::string& desc) -> Command& {
    Command& c = cmds[name];
    c.app = app.add_subcommand(name, desc);
    order.push_back(name);
    return c;
  };
  auto weight_flags = [&](Command& c) {
    Options& o = c.o;
    param(c, "s1", o.s1, "first jump location");
    param(c, "s2", o.s2, "second jump location");
    param(c, "w1", o.w1, "weight height on (s1, s2)")->check(CLI::NonNegativeNumber);
    param(c, "w2", o.w2, "weight height on (s2, inf)")->check(CLI::NonNegativeNumber);
  };
  auto edge_flags = [&](Command& c, bool heights) {
    Options& o = c.o;
    param(c, "t1", o.t1, "first scaled location");
    param(c, "t2", o.t2, "second scaled location");
    if (heights) {
      param(c, "w1", o.w1, "weight height on (t1, t2)")->check(CLI::NonNegativeNumber);
      param(c, "w2", o.w2, "weight height on (t2, inf)")->check(CLI::NonNegativeNumber);
    }
  };
  auto ns_flag = [&](Command& c) { param(c, "n", c.o.ns, "degrees (one or more)")->expected(1, -1)->check(CLI::Range(1, 500)); };
  auto bind = [&](Command& c, Table (*fn)(const Options&, Meta&)) {
    c.run = [fn, &c](Meta& m) { return fn(c.o, m); };
  };

  {
    auto& c = make("recurrence", "recurrence coefficients of the jump weight");
    Options& o = c.o;
    weight_flags(c);
    o.n = 50;
    param(c, "n", o.n, "number of rows (degrees 0..n-1)")->check(CLI::Range(1, 500));
    bind(c, run_recurrence);
  }
  {
    auto& c = make("hankel", "log Hankel determinants and their logarithmic derivative");
    Options& o = c.o;
    weight_flags(c);
    o.n = 50;
    param(c, "n", o.n, "largest degree")->check(CLI::Range(1, 500));
    bind(c, run_hankel);
  }
  {
    auto& c = make("verify-thm1", "finite-n identities between recurrence data and the coupled PIV variables");
    Options& o = c.o;
    weight_flags(c);
    param(c, "n", o.n, "degree")->check(CLI::Range(1, 499));
    param(c, "tol", o.tol, "pass threshold for the relative residuals");
    bind(c, run_verify_thm1);
  }
  {
    auto& c = make("cpiv-residuals", "finite-difference residuals of the coupled PIV equations");
    Options& o = c.o;
    weight_flags(c);
    param(c, "n", o.n, "degree")->check(CLI::Range(1, 499));
    param(c, "step", o.h, "stencil spacing h")->check(CLI::Range(1e-4, 1e-2));
    bind(c, run_cpiv_residuals);
  }
  {
    auto& c = make("cpiv-scaling", "edge-scaling deviations of the coupled PIV variables");
    edge_flags(c, true);
    ns_flag(c);
    bind(c, run_cpiv_scaling);
  }
  {
    auto& c = make("cpii-solve", "coupled PII trajectory");
    Options& o = c.o;
    param(c, "w1", o.w1, "first height")->check(CLI::NonNegativeNumber);
    param(c, "w2", o.w2, "second height")->check(CLI::NonNegativeNumber);
    param(c, "s", o.s, "separation t2 - t1");
    param(c, "x-min", o.x_min, "left end");
    param(c, "x-max", o.x_max, "right end (tail anchor)");
    param(c, "ode-tol", o.ode_tol, "integrator tolerance");
    bind(c, run_cpii_solve);
  }
  {
    auto& c = make("gap-limit", "limiting probability of no eigenvalue in (t1, t2)");
    Options& o = c.o;
    edge_flags(c, false);
    param(c, "oracle", o.oracle, "none | fredholm");
    param(c, "m", o.m_nodes, "Fredholm nodes per segment")->check(CLI::Range(20, 200));
    bind(c, run_gap_limit);
  }
  {
    auto& c = make("conditional-limit", "limiting conditional law of the largest eigenvalue after thinning");
    Options& o = c.o;
    edge_flags(c, false);
    param(c, "p", o.p, "removal probability")->check(CLI::Range(0.0, 1.0));
    param(c, "oracle", o.oracle, "none | fredholm");
    param(c, "m", o.m_nodes, "Fredholm nodes per segment")->check(CLI::Range(20, 200));
    bind(c, run_conditional_limit);
  }
  {
    auto& c = make("tw", "Tracy-Widom distribution on a grid");
    Options& o = c.o;
    param(c, "t-min", o.t_min, "grid start");
    param(c, "t-max", o.t_max, "grid end");
    param(c, "points", o.points, "grid size");
    param(c, "oracle", o.oracle, "none | fredholm");
    param(c, "m", o.m_nodes, "Fredholm nodes per segment")->check(CLI::Range(20, 200));
    bind(c, run_tw);
  }
  {
    auto& c = make("hankel-asymptotics", "log(D_n / D_n^GUE) against its edge-scaling limit");
    edge_flags(c, true);
    ns_flag(c);
    bind(c, run_hankel_asymptotics);
  }
  {
    auto& c = make("op-asymptotics", "recurrence data and polynomial values against their edge-scaling limits");
    edge_flags(c, true);
    ns_flag(c);
    bind(c, run_op_asymptotics);
  }
  {
    auto& c = make("mc-gap", "Monte-Carlo probability of no eigenvalue in (s1, s2)");
    Options& o = c.o;
    o.n = 100;
    param(c, "n", o.n, "matrix size")->check(CLI::Range(2, 2000));
    param(c, "s1", o.s1, "interval start (overrides t1)");
    param(c, "s2", o.s2, "interval end (overrides t2)");
    edge_flags(c, false);
    param(c, "samples", o.samples, "number of matrices")->check(CLI::PositiveNumber);
    param(c, "seed", o.seed, "random seed");
    param(c, "workers", o.workers, "threads (0 = all); results do not depend on it");
    c.run = [&c](Meta& m) { return run_mc_gap(c.o, c.app, m); };
  }
  {
    auto& c = make("mc-conditional", "Monte-Carlo conditional law of the largest eigenvalue after thinning");
    Options& o = c.o;
    o.n = 100;
    o.t1 = -1.0;
    param(c, "n", o.n, "matrix size")->check(CLI::Range(2, 2000));
    param(c, "x", o.x, "threshold for the largest eigenvalue (overrides t2)");
    param(c, "y", o.y, "threshold for the largest kept eigenvalue (overrides t1)");
    edge_flags(c, false);
    param(c, "p", o.p, "removal probability")->check(CLI::Range(0.0, 1.0));
    param(c, "samples", o.samples, "number of matrices")->check(CLI::PositiveNumber);
    param(c, "seed", o.seed, "random seed");
    param(c, "workers", o.workers, "threads (0 = all); results do not depend on it");
    c.run = [&c](Meta& m) { return run_mc_conditional(c.o, c.app, m); };
  }
  {
    auto& c = make("fredholm-oracle", "Nystrom determinant of the Airy kernel with two discontinuities");
    Options& o = c.o;
    edge_flags(c, true);
    param(c, "m", o.m_nodes, "nodes per segment")->check(CLI::Range(20, 200));
    bind(c, run_fredholm);
  }
  for (auto& name : order) {
    Options& o = cmds[name].o;
    auto* sub = cmds[name].app;
    sub->add_option("--out", o.out, "output file (stdout if omitted and JUMPGUE_OUTPUT_DIR is unset)");
    sub->add_option("--format", o.format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string name;
  for (auto& n : order)
    if (cmds[n].app->parsed()) name = n;
  Command& cmd = cmds[name];
  try {
    Meta meta;
    for (const auto& [k, get] : cmd.params.entries) meta.emplace_back(k, get());
    meta.emplace_back("format", cmd.o.format);
    Table table = cmd.run(meta);
    emit(name, cmd.o, meta, table);
    if (name == "verify-thm1") {
      for (const auto& [k, v] : meta)
        if (k == "all_pass" && std::get<std::string>(v) != "yes")
          throw Failure{"tolerance_exceeded", "an identity residual is above --tol"};
    }
  } catch (const Failure& f) {
    report(name, f);
    return 1;
  } catch (const std::exception& e) {
    report(name, {"internal", e.what(), -1});
    return 1;
  }
  return 0;
}
