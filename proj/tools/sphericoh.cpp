// sphericoh: grid construction, coherence analysis, lower bounds, identity
// verification, and sampling-pattern optimization from the command line.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sphericoh/coherence.hpp"
#include "sphericoh/grids.hpp"
#include "sphericoh/identities.hpp"
#include "sphericoh/optimize.hpp"
#include "sphericoh/parallel.hpp"
#include "sphericoh/wigner3j.hpp"

namespace {

using sphericoh::grids::BasisKind;
using sphericoh::grids::Grid;
namespace coh = sphericoh::coherence;
namespace grd = sphericoh::grids;
namespace idn = sphericoh::identities;
namespace opt = sphericoh::optimize;
namespace w3j = sphericoh::wigner3j;

// Writes either to the named file or to stdout.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct VerifyRow {
  std::string check;
  std::string param1;
  std::string param2;
  std::string expected;
  std::string actual;
  bool pass = false;
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

void suite_legendre_sum(int max_degree, std::vector<VerifyRow>& rows) {
  for (int l = 2; l <= max_degree; ++l) {
    if (l % 2 != 0) {
      int m = (l + 1) * (l + 1) / 10 + 2;
      double direct = idn::direct_legendre_sum(l, m);
      rows.push_back({"legendre-sum-odd", std::to_string(l), std::to_string(m),
                      "0", fmt(direct), std::abs(direct) <= 1e-10});
      continue;
    }
    int base = ((l + 1) * (l + 1) + 19) / 10;  // ceil((l+1)^2/10 + 1)
    for (int m : {base, 2 * base, 5 * base}) {
      double closed = idn::legendre_sum_closed_form(l, m).total();
      double direct = idn::direct_legendre_sum(l, m);
      bool ok = std::abs(closed - direct) <= 1e-9 * std::max(1.0, std::abs(direct));
      rows.push_back({"legendre-sum", std::to_string(l), std::to_string(m),
                      fmt(closed), fmt(direct), ok});
    }
  }
}

void suite_residual(int max_degree, std::vector<VerifyRow>& rows) {
  for (int l = 4; l <= max_degree; l += 2) {
    int m = ((l + 1) * (l + 1) + 19) / 10;
    double r = idn::legendre_sum_closed_form(l, m).residual;
    auto ok = idn::residual_bound_check(l, m);
    rows.push_back({"residual-band", std::to_string(l), std::to_string(m),
                    "(-0.463,0)", fmt(r), ok.has_value() && *ok});
  }
}

void suite_monotone(int max_degree, std::vector<VerifyRow>& rows) {
  int bandwidth = std::max(max_degree, 3);
  int m = grd::min_samples(bandwidth);
  double prev = 0.0;
  bool first = true;
  for (int l = 2; l <= bandwidth - 1; l += 2) {
    double s = idn::direct_legendre_sum(l, m);
    bool ok = s >= 0.0 && (first || s > prev);
    rows.push_back({"monotone-sum", std::to_string(l), std::to_string(m),
                    first ? ">=0" : "> " + fmt(prev), fmt(s), ok});
    prev = s;
    first = false;
  }
}

void suite_threej(int max_degree, std::vector<VerifyRow>& rows) {
  int lmax = std::min(max_degree, 12);
  // orthogonality: sum over l3 of (2l3+1) 3j^2 at fixed orders equals 1
  for (int l1 = 0; l1 <= lmax; ++l1) {
    for (int l2 = 0; l2 <= lmax; ++l2) {
      double worst = 0.0;
      for (int k1 = -l1; k1 <= l1; ++k1) {
        for (int k2 = -l2; k2 <= l2; ++k2) {
          double s = 0.0;
          for (int l3 = std::abs(l1 - l2); l3 <= l1 + l2; ++l3) {
            double v = w3j::threej({l1, l2, l3, k1, k2, -k1 - k2});
            s += (2.0 * l3 + 1.0) * v * v;
          }
          worst = std::max(worst, std::abs(s - 1.0));
        }
      }
      rows.push_back({"threej-orthogonality", std::to_string(l1),
                      std::to_string(l2), "1", fmt(1.0 + worst),
                      worst <= 1e-11});
    }
  }
  // odd/even degree split of the double-3j sum
  for (int l1 = 1; l1 <= std::min(max_degree, 8); ++l1) {
    int l2 = l1 + 2;
    for (int k = -l1; k <= l1; ++k) {
      for (int n = -l1; n <= l1; ++n) {
        auto [even, odd] = idn::odd_even_split_check(l1, l2, k, n);
        bool ok;
        std::string expected;
        if (k == n && k != 0) {
          ok = std::abs(even - 0.5) <= 1e-12 && std::abs(odd - 0.5) <= 1e-12;
          expected = "0.5/0.5";
        } else if (k == -n && k != 0) {
          // sign-flip symmetry turns the cross products into signed squares
          double s = ((l1 + l2) % 2 == 0) ? 1.0 : -1.0;
          ok = std::abs(even - 0.5 * s) <= 1e-12 && std::abs(odd + 0.5 * s) <= 1e-12;
          expected = fmt(0.5 * s) + "/" + fmt(-0.5 * s);
        } else if (k != n) {
          ok = std::abs(even) <= 1e-12 && std::abs(odd) <= 1e-12;
          expected = "0/0";
        } else {  // k = n = 0: total is 1, parity split unconstrained here
          ok = std::abs(even + odd - 1.0) <= 1e-12;
          expected = "sum 1";
        }
        rows.push_back({"threej-split",
                        std::to_string(l1) + ";" + std::to_string(k),
                        std::to_string(l2) + ";" + std::to_string(n), expected,
                        fmt(even) + "/" + fmt(odd), ok});
      }
    }
  }
  // exact weighted sum = 2 + 2(l1+2)(l1+1)
  for (int l1 = 0; l1 <= std::min(max_degree, 21); ++l1) {
    mpq_class lhs = idn::weighted_threej_sum(l1);
    mpq_class rhs = 2 + 2 * (l1 + 2) * (l1 + 1);
    rows.push_back({"threej-weighted-sum", std::to_string(l1), "",
                    rhs.get_str(), lhs.get_str(), lhs == rhs});
  }
  // exact squared-3j monotonicity at zero orders
  for (int l1 = 0; l1 <= std::min(max_degree, 15); ++l1) {
    for (int l2 = l1 + 1; l2 <= std::min(max_degree, 15); ++l2) {
      for (int l3 = l2 - l1; l3 <= l1 + l2; ++l3) {
        bool ok = idn::threej_monotonicity_check(l1, l2, l3);
        rows.push_back({"threej-monotone",
                        std::to_string(l1) + ";" + std::to_string(l2),
                        std::to_string(l3), "1", ok ? "1" : "0", ok});
      }
    }
  }
}

void suite_norms(int max_degree, std::vector<VerifyRow>& rows) {
  for (int l = 1; l <= std::min(max_degree, 10); ++l) {
    for (int m : {50, 100, 200, 400}) {
      double worst = 0.0;
      for (int k = -l; k <= l; ++k) {
        for (int n = -l; n <= l; ++n) {
          worst = std::max(worst, idn::l2_norm_estimate(l, k, n, m).error);
        }
      }
      rows.push_back({"norm-estimate", std::to_string(l), std::to_string(m),
                      "<= " + fmt(5.0 / m), fmt(worst), worst <= 5.0 / m});
    }
  }
}

int run_verify(const std::string& suite, int max_degree,
               const std::string& out_path, const std::string& format) {
  std::vector<VerifyRow> rows;
  bool all = suite == "all";
  if (all || suite == "legendre-sum") suite_legendre_sum(max_degree, rows);
  if (all || suite == "residual") suite_residual(max_degree, rows);
  if (all || suite == "monotone") suite_monotone(max_degree, rows);
  if (all || suite == "threej") suite_threej(max_degree, rows);
  if (all || suite == "norms") suite_norms(max_degree, rows);

  OutputSink sink(out_path);
  bool pass = true;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"check", r.check},
                     {"param1", r.param1},
                     {"param2", r.param2},
                     {"expected", r.expected},
                     {"actual", r.actual},
                     {"pass", r.pass}});
      pass = pass && r.pass;
    }
    sink.stream() << arr.dump(2) << '\n';
  } else {
    sink.stream() << "check,param1,param2,expected,actual,pass\n";
    for (const auto& r : rows) {
      sink.stream() << r.check << ',' << r.param1 << ',' << r.param2 << ','
                    << r.expected << ',' << r.actual << ','
                    << (r.pass ? 1 : 0) << '\n';
      pass = pass && r.pass;
    }
  }
  return pass ? 0 : 1;
}

Grid make_grid(int m, std::uint64_t seed, const std::string& phi_file,
               const std::string& chi_file) {
  Grid g = seed ? grd::equispaced_grid_random(m, seed) : grd::equispaced_grid(m);
  auto load = [m](const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open angle file: " + path);
    auto v = grd::read_angle_file(f);
    if (int(v.size()) != m)
      throw std::runtime_error("angle file " + path + " has " +
                               std::to_string(v.size()) + " entries, expected " +
                               std::to_string(m));
    return v;
  };
  if (!phi_file.empty()) g.phi = load(phi_file);
  if (!chi_file.empty()) g.chi = load(chi_file);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensing-matrix coherence analysis on the sphere and rotation group"};
  app.require_subcommand(1);

  int threads = 0;
  if (const char* env = std::getenv("SPHERICOH_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "worker thread cap (0 = hardware)");

  // grid
  auto* cmd_grid = app.add_subcommand("grid", "emit an equispaced-elevation grid");
  int g_m = 0;
  std::string g_out;
  cmd_grid->add_option("--samples", g_m, "sample count m")->required();
  cmd_grid->add_option("--out", g_out, "output CSV path (default stdout)");

  // coherence
  auto* cmd_coh = app.add_subcommand("coherence", "mutual coherence report");
  int c_b = 0, c_m = 0;
  std::string c_kind = "wigner", c_phi, c_chi, c_out, c_format = "csv";
  std::uint64_t c_seed = 0;
  cmd_coh->add_option("--bandwidth", c_b, "bandwidth B")->required();
  cmd_coh->add_option("--samples", c_m, "sample count m")->required();
  cmd_coh->add_option("--kind", c_kind, "wigner | sh");
  cmd_coh->add_option("--phi-file", c_phi, "azimuths, one per line");
  cmd_coh->add_option("--chi-file", c_chi, "polarizations, one per line");
  cmd_coh->add_option("--seed", c_seed, "random phi/chi seed (0 = all zero)");
  cmd_coh->add_option("--format", c_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_coh->add_option("--out", c_out, "output path (default stdout)");

  // bound
  auto* cmd_bound = app.add_subcommand("bound", "elevation-only and Welch bounds");
  int b_b = 0, b_m = 0;
  bool b_norm = false;
  std::string b_kind = "wigner", b_format = "csv";
  cmd_bound->add_option("--bandwidth", b_b, "bandwidth B")->required();
  cmd_bound->add_option("--samples", b_m, "sample count m")->required();
  cmd_bound->add_flag("--normalized", b_norm, "normalize by sampled column norms");
  cmd_bound->add_option("--kind", b_kind, "wigner | sh (sets N for the Welch bound)");
  cmd_bound->add_option("--format", b_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "numerical identity checks");
  std::string v_suite = "all", v_out, v_format = "csv";
  int v_degree = 20;
  cmd_verify->add_option("--suite", v_suite, "which suite")
      ->check(CLI::IsMember(
          {"legendre-sum", "residual", "monotone", "threej", "norms", "all"}));
  cmd_verify->add_option("--max-degree", v_degree, "degree cap L");
  cmd_verify->add_option("--format", v_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_verify->add_option("--out", v_out, "output path (default stdout)");

  // optimize
  auto* cmd_opt = app.add_subcommand("optimize", "gradient-descent sampling design");
  int o_b = 0, o_m = 0;
  std::string o_kind = "wigner", o_method = "sgd", o_prefix;
  opt::OptimizerConfig cfg;
  int o_imax = 1000;
  cmd_opt->add_option("--bandwidth", o_b, "bandwidth B")->required();
  cmd_opt->add_option("--samples", o_m, "sample count m")->required();
  cmd_opt->add_option("--kind", o_kind, "wigner | sh");
  cmd_opt->add_option("--method", o_method, "sgd | adam | adagrad | adadelta")
      ->check(CLI::IsMember({"sgd", "adam", "adagrad", "adadelta"}));
  cmd_opt->add_option("--p", cfg.p, "relaxation exponent (even)");
  cmd_opt->add_option("--eta", cfg.eta, "step size");
  cmd_opt->add_option("--eps", cfg.epsilon, "stopping gap");
  cmd_opt->add_option("--max-iter", o_imax, "iteration cap");
  cmd_opt->add_option("--seed", cfg.seed, "initialization seed");
  cmd_opt->add_flag("--optimize-theta", cfg.optimize_theta,
                    "also adjust interior elevations");
  cmd_opt->add_option("--out", o_prefix, "output prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    sphericoh::parallel::set_max_threads(threads);

    if (*cmd_grid) {
      Grid g = grd::equispaced_grid(g_m);
      OutputSink sink(g_out);
      grd::write_grid_csv(sink.stream(), g);
      return 0;
    }
    if (*cmd_coh) {
      Grid g = make_grid(c_m, c_seed, c_phi, c_chi);
      auto sm = coh::build_sensing_matrix(g, c_b, grd::parse_kind(c_kind));
      auto rep = coh::mutual_coherence(sm);
      OutputSink sink(c_out);
      if (c_format == "json")
        coh::write_report_json(sink.stream(), rep);
      else
        coh::write_report_csv(sink.stream(), rep);
      return 0;
    }
    if (*cmd_bound) {
      BasisKind kind = grd::parse_kind(b_kind);
      double lb = coh::elevation_lower_bound(b_b, b_m, b_norm);
      double welch = coh::welch_bound(b_m, grd::mode_count(b_b, kind));
      if (b_format == "json") {
        nlohmann::json j{{"B", b_b},
                         {"m", b_m},
                         {"N", grd::mode_count(b_b, kind)},
                         {"kind", grd::kind_name(kind)},
                         {"normalized", b_norm},
                         {"lower_bound", lb},
                         {"welch", welch}};
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "B,m,N,kind,normalized,lower_bound,welch\n";
        std::cout.precision(17);
        std::cout << b_b << ',' << b_m << ',' << grd::mode_count(b_b, kind)
                  << ',' << grd::kind_name(kind) << ',' << (b_norm ? 1 : 0)
                  << ',' << lb << ',' << welch << '\n';
      }
      return 0;
    }
    if (*cmd_verify) return run_verify(v_suite, v_degree, v_out, v_format);
    if (*cmd_opt) {
      cfg.method = opt::parse_method(o_method);
      cfg.i_max = o_imax;
      auto result = opt::run(cfg, o_b, o_m, grd::parse_kind(o_kind));
      std::ofstream trace(o_prefix + "_trace.csv");
      if (!trace) throw std::runtime_error("cannot open " + o_prefix + "_trace.csv");
      opt::write_trace_csv(trace, result);
      std::ofstream gridf(o_prefix + "_grid.csv");
      if (!gridf) throw std::runtime_error("cannot open " + o_prefix + "_grid.csv");
      grd::write_grid_csv(gridf, result.best_grid);
      std::cout.precision(17);
      std::cout << "final_mu=" << result.final_mu
                << " lower_bound=" << result.lower_bound
                << " converged=" << (result.converged ? 1 : 0)
                << " iterations=" << result.trace.size() << '\n';
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
