// command-line front end: figure data, sweeps, collective tables, epsilon
// grids, and the verification suite.  CSV/JSON emission only; plotting is
// left to the consumer.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinchain/collective.hpp"
#include "spinchain/conservation.hpp"
#include "spinchain/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace spinchain;

struct Options {
  int M = 1000, M1 = 500;
  double chi = 1.0, t = 1000.0;
  int k1 = 0, k2 = 0; // 0 = centered default
  int N = 200;
  std::vector<double> Ns{100, 1000, 10000, 100000};
  std::vector<double> fs{1e-3, 2e-3, 4e-3, 1e-2};
  double sigma = 3.0;
  int window = 12;
  bool gaussian = false;
  std::string output, format = "csv";
  int oracle_cap = 64, steps = 2000, trials = 25;
  unsigned seed = 0x5eed;
  bool strict = false;
};

// one cell is either an integer, a 17-significant-digit real, or text
struct Cell {
  enum Kind { Int, Real, Text } kind;
  long long i = 0;
  double d = 0;
  std::string s;
  Cell(long long v) : kind(Int), i(v) {}
  Cell(int v) : kind(Int), i(v) {}
  Cell(double v) : kind(Real), d(v) {}
  Cell(std::string v) : kind(Text), s(std::move(v)) {}
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  char buf[40];
  switch (c.kind) {
    case Cell::Int:
      std::snprintf(buf, sizeof buf, "%lld", c.i);
      return buf;
    case Cell::Real:
      std::snprintf(buf, sizeof buf, "%.17g", c.d);
      return buf;
    default:
      return c.s;
  }
}

void emit(const Table& tab, const std::string& command, const Options& opt) {
  std::string text;
  if (opt.format == "csv") {
    for (size_t j = 0; j < tab.columns.size(); ++j)
      text += (j ? "," : "") + tab.columns[j];
    text += '\n';
    for (const auto& row : tab.rows) {
      for (size_t j = 0; j < row.size(); ++j)
        text += (j ? "," : "") + cell_text(row[j]);
      text += '\n';
    }
  } else {
    json doc;
    doc["command"] = command;
    doc["columns"] = tab.columns;
    json rows = json::array();
    for (const auto& row : tab.rows) {
      json r = json::array();
      for (const auto& c : row) {
        if (c.kind == Cell::Int) r.push_back(c.i);
        else if (c.kind == Cell::Real) r.push_back(c.d);
        else r.push_back(c.s);
      }
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    text = doc.dump(2) + "\n";
  }

  if (opt.output.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::string path = opt.output;
  const char* dir = std::getenv("SPINCHAIN_OUTPUT_DIR");
  if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out.write(text.data(), std::streamoff(text.size()));
}

InitialPair resolve_pair(const Options& opt, int M, int M1) {
  if (opt.k1 == 0 && opt.k2 == 0) return centered_pair(M, M1);
  InitialPair p{opt.k1, opt.k2};
  if (p.k1 < 1 || p.k1 > M1 || p.k2 <= M1 || p.k2 > M)
    throw std::invalid_argument("pair (k1, k2) incompatible with (M, M1)");
  return p;
}

std::vector<SweepRow> sweep_rows(const Options& opt) {
  if (opt.k1 == 0 && opt.k2 == 0) return m1_sweep(opt.M, opt.chi, opt.t);
  // fixed pair: only the window k1 <= M1 < k2 admits it
  if (opt.k1 < 1 || opt.k2 <= opt.k1 || opt.k2 > opt.M)
    throw std::invalid_argument("need 1 <= k1 < k2 <= M");
  std::vector<SweepRow> rows;
  for (int M1 = opt.k1; M1 < opt.k2; ++M1)
    rows.push_back(sweep_row_direct(opt.M, opt.chi, opt.t, M1, {opt.k1, opt.k2}));
  return rows;
}

int cmd_figadaptor(const Options& opt, int which) {
  const auto rows = sweep_rows(opt);
  Table tab;
  if (which == 1) {
    tab.columns = {"M1", "p_yy", "p_ny", "p_yn", "p_nn"};
    for (const auto& r : rows)
      tab.rows.push_back({r.M1, r.df.p_yy, r.df.p_ny, r.df.p_yn, r.df.p_nn});
  } else if (which == 2) {
    tab.columns = {"M1", "ratio"};
    for (const auto& r : rows) tab.rows.push_back({r.M1, r.ratio});
  } else {
    tab.columns = {"M1", "imd2_over_gamma"};
    for (const auto& r : rows) tab.rows.push_back({r.M1, r.fig3});
  }
  emit(tab, "figure" + std::to_string(which), opt);
  return 0;
}

int cmd_sweep(const Options& opt) {
  const auto rows = sweep_rows(opt);
  Table tab;
  tab.columns = {"M1", "p_yy", "p_ny", "p_yn", "p_nn",
                 "re_d", "im_d", "ratio", "imd2_over_gamma"};
  for (const auto& r : rows)
    tab.rows.push_back({r.M1, r.df.p_yy, r.df.p_ny, r.df.p_yn, r.df.p_nn,
                        r.df.d_yy_ny.real(), r.df.d_yy_ny.imag(), r.ratio, r.fig3});
  emit(tab, "sweep", opt);
  return 0;
}

int cmd_collective(const Options& opt) {
  ChainConfig cfg{opt.M, opt.M1, opt.chi, opt.t};
  cfg.validate();
  const auto pair = resolve_pair(opt, cfg.M, cfg.M1);
  const auto df = component_df_spin_chain(cfg, pair);
  const int N = opt.N;
  const int c1 = int(std::lround(N * df.p0()));
  const int c2 = int(std::lround(N * df.pt()));
  const auto clip = [N](int v) { return std::max(0, std::min(N, v)); };
  const int a1 = clip(c1 - opt.window), b1 = clip(c1 + opt.window);
  const int a2 = clip(c2 - opt.window), b2 = clip(c2 + opt.window);

  Table tab;
  tab.columns = {"n1", "n2", "n1p", "re", "im"};
  if (opt.gaussian) {
    SmearedCoefficients sc;
    try {
      sc = smeared_coefficients(gaussian_coefficients(df, N), opt.sigma);
    } catch (const std::domain_error& e) {
      std::cerr << "warning: " << e.what() << "\n";
      emit(tab, "collective-gaussian", opt);
      return opt.strict ? 1 : 0;
    }
    for (int n1 = a1; n1 <= b1; ++n1)
      for (int n2 = a2; n2 <= b2; ++n2)
        for (int n1p = a1; n1p <= b1; ++n1p) {
          const cdouble v = collective_df_gaussian(sc, N, df.p0(), df.pt(), n1, n2, n1p);
          tab.rows.push_back({n1, n2, n1p, v.real(), v.imag()});
        }
  } else {
    const auto table = appendix_exact_table(df, N, a1, b1, a2, b2, a1, b1);
    for (const auto& [key, v] : table.values) {
      const auto& [n1, n2, n1p] = key;
      tab.rows.push_back({n1, n2, n1p, v.real(), v.imag()});
    }
  }
  emit(tab, opt.gaussian ? "collective-gaussian" : "collective-exact", opt);
  return 0;
}

int cmd_epsilon(const Options& opt) {
  ChainConfig cfg{opt.M, opt.M1, opt.chi, opt.t};
  cfg.validate();
  const auto df = component_df_spin_chain(cfg, resolve_pair(opt, cfg.M, cfg.M1));

  Table tab;
  tab.columns = {"N", "f", "sigma", "gamma", "log_eps", "eps",
                 "log_eps_exact", "eps_exact"};
  bool degenerate = false;
  for (double N : opt.Ns)
    for (double f : opt.fs) {
      const auto e = degree_of_decoherence(df, N, f);
      degenerate = degenerate || e.degenerate;
      tab.rows.push_back({N, f, e.sigma, e.gamma, e.log_eps, e.eps,
                          e.log_eps_exact, e.eps_exact});
    }
  emit(tab, "epsilon", opt);
  if (degenerate) {
    std::cerr << "warning: gaussian channel degenerate (Im d = 0); "
                 "epsilon reported as the perfect limit 0\n";
    if (opt.strict) return 1;
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  VerifyOptions vopt;
  vopt.oracle_cap = opt.oracle_cap;
  vopt.quadrature_steps = opt.steps;
  vopt.n_random = opt.trials;
  vopt.seed = opt.seed;
  const auto checks = run_verification(vopt);

  int failed = 0;
  for (const auto& c : checks) {
    if (!c.pass) ++failed;
    std::printf("%s  %-42s  %.3e <= %.0e%s%s\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.residual, c.tolerance,
                c.note.empty() ? "" : "  ", c.note.c_str());
  }
  std::printf("%d/%zu checks passed\n", int(checks.size()) - failed, checks.size());

  if (!opt.output.empty()) {
    Table tab;
    tab.columns = {"name", "pass", "residual", "tolerance", "note"};
    for (const auto& c : checks)
      tab.rows.push_back({std::string(c.name), int(c.pass), c.residual,
                          c.tolerance, std::string(c.note)});
    emit(tab, "verify", opt);
  }
  return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"occupation-history decoherence functionals on a periodic spin chain"};
  app.require_subcommand(1);
  Options opt;

  auto add_output = [&opt](CLI::App* c) {
    c->add_option("--output", opt.output,
                  "write to this file instead of stdout; relative paths are "
                  "resolved against $SPINCHAIN_OUTPUT_DIR");
    c->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    c->add_flag("--strict", opt.strict, "degeneracy warnings become failures");
  };
  auto add_chain = [&opt](CLI::App* c, bool with_m1) {
    c->add_option("--m", opt.M, "number of sites")->check(CLI::PositiveNumber);
    if (with_m1)
      c->add_option("--m1", opt.M1, "size of region 1")->check(CLI::PositiveNumber);
    c->add_option("--chi", opt.chi, "coupling");
    c->add_option("--t", opt.t, "evolution time");
    c->add_option("--k1", opt.k1, "down-spin site in region 1 (default: center)");
    c->add_option("--k2", opt.k2, "down-spin site in region 2 (default: center)");
  };

  for (int which : {1, 2, 3}) {
    auto* c = app.add_subcommand(
        "figure" + std::to_string(which),
        which == 1 ? "two-time probabilities vs M1"
                   : which == 2 ? "off-diagonal ratio |d|/sqrt(p_yy p_ny) vs M1"
                                : "(Im d)^2/Gamma vs M1");
    add_chain(c, false);
    add_output(c);
    c->callback([&opt, which] { std::exit(cmd_figadaptor(opt, which)); });
  }
  {
    auto* c = app.add_subcommand("sweep", "full component functional vs M1");
    add_chain(c, false);
    add_output(c);
    c->callback([&opt] { std::exit(cmd_sweep(opt)); });
  }
  {
    auto* c = app.add_subcommand("collective",
                                 "N-component functional on an occupation window");
    add_chain(c, true);
    c->add_option("--n", opt.N, "component count")->check(CLI::PositiveNumber);
    c->add_option("--sigma", opt.sigma, "smearing width (gaussian mode)");
    c->add_option("--window", opt.window, "half-width of the occupation window");
    c->add_flag("--gaussian", opt.gaussian, "emit the smeared gaussian model instead");
    add_output(c);
    c->callback([&opt] { std::exit(cmd_collective(opt)); });
  }
  {
    auto* c = app.add_subcommand("epsilon", "degree of decoherence over (N, f) grids");
    add_chain(c, true);
    c->add_option("--n-values", opt.Ns, "component counts")->delimiter(',');
    c->add_option("--f-values", opt.fs, "fractional widths f = sigma/N")->delimiter(',');
    add_output(c);
    c->callback([&opt] { std::exit(cmd_epsilon(opt)); });
  }
  {
    auto* c = app.add_subcommand("verify", "run every oracle and invariant suite");
    c->add_option("--oracle-cap", opt.oracle_cap, "largest dense-oracle chain");
    c->add_option("--steps", opt.steps, "quadrature steps");
    c->add_option("--trials", opt.trials, "randomized trials per property");
    c->add_option("--seed", opt.seed, "rng seed");
    add_output(c);
    c->callback([&opt] { std::exit(cmd_verify(opt)); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
