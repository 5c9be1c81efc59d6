// Command-line driver: property verification suites, geodesic dumps, batch
// pullback verification and a Fisher natural-gradient descent demo.
//
// Exit codes: 0 success, 1 check failure, 2 configuration or I/O error,
// 3 left the open simplex.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infogeo/checks.hpp"
#include "infogeo/connections.hpp"
#include "infogeo/natgrad.hpp"
#include "infogeo/serialize.hpp"
#include "infogeo/version.hpp"

namespace {

using namespace infogeo;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitLeftSimplex = 3;

void print_report(const Report& report) {
  for (const CheckRecord& rec : report.records) {
    std::printf("%s  %-42s n=%-2d samples=%-7lld max_err=%.3e tol=%.3e\n",
                rec.pass ? "PASS" : "FAIL", rec.name.c_str(), rec.n,
                rec.samples, rec.max_abs_error, rec.tolerance);
  }
  std::printf("%s  %s suite (%zu records)\n",
              report.overall_pass ? "PASS" : "FAIL", report.suite.c_str(),
              report.records.size());
}

int finish_report(const Report& report, const std::string& out_path) {
  print_report(report);
  if (!out_path.empty()) {
    write_report(report, out_path);
    std::printf("report written to %s\n", out_path.c_str());
  }
  return report.overall_pass ? kExitOk : kExitCheckFailure;
}

void emit_csv(const std::string& out_path,
              const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows) {
  if (out_path.empty()) {
    for (size_t i = 0; i < header.size(); ++i) {
      std::printf("%s%s", i ? "," : "", header[i].c_str());
    }
    std::printf("\n");
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        std::printf("%s%s", i ? "," : "", format_double(row[i]).c_str());
      }
      std::printf("\n");
    }
  } else {
    write_csv(out_path, header, rows);
    std::printf("trajectory written to %s (%zu rows)\n", out_path.c_str(),
                rows.size());
  }
}

int run_geodesic_cmd(double alpha, const std::vector<double>& p0_in,
                     const std::vector<double>& v0_in, double t_end, int steps,
                     const std::string& out_path) {
  Distribution p0 = make_distribution(p0_in);
  if (v0_in.size() != p0_in.size()) {
    throw InvalidArgument("--v0 must have the same length as --p0");
  }
  TangentVector v0 = center(p0, v0_in);
  auto traj = integrate_geodesic(Alpha(alpha), p0, v0, t_end, steps);

  const int n = p0.size();
  std::vector<std::string> header{"t"};
  for (int i = 1; i <= n; ++i) header.push_back("p_" + std::to_string(i));
  for (int i = 1; i <= n; ++i) header.push_back("u_" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  rows.reserve(traj.size());
  for (const GeodesicState& st : traj) {
    std::vector<double> row{st.t};
    row.insert(row.end(), st.p.weights().begin(), st.p.weights().end());
    row.insert(row.end(), st.u.components().begin(), st.u.components().end());
    rows.push_back(std::move(row));
  }
  emit_csv(out_path, header, rows);

  // Closed forms exist at alpha = +1 (exponential family) and alpha = -1
  // (mixture line); report the final-state deviation when applicable.
  if (alpha == 1.0 || alpha == -1.0) {
    const GeodesicState& last = traj.back();
    Vec expected(p0.weights());
    if (alpha == 1.0) {
      double sum = 0.0;
      for (size_t i = 0; i < expected.size(); ++i) {
        expected[i] *= std::exp(last.t * v0.components()[i]);
        sum += expected[i];
      }
      for (double& x : expected) x /= sum;
    } else {
      for (size_t i = 0; i < expected.size(); ++i) {
        expected[i] += last.t * p0.weights()[i] * v0.components()[i];
      }
    }
    double dev = 0.0;
    for (size_t i = 0; i < expected.size(); ++i) {
      dev = std::max(dev, std::abs(expected[i] - last.p.weights()[i]));
    }
    std::printf("closed-form deviation at t=%s: %.3e\n",
                format_double(last.t).c_str(), dev);
  }
  return kExitOk;
}

int run_natgrad_cmd(int n_flag, const std::vector<double>& target,
                    const std::vector<double>& start_in, int iters, double step,
                    const std::string& out_path) {
  if (target.size() < 2) throw InvalidArgument("--target needs length >= 2");
  if (n_flag != 0 && n_flag != static_cast<int>(target.size())) {
    throw InvalidArgument("--n does not match the length of --target");
  }
  const int n = static_cast<int>(target.size());
  Distribution start =
      start_in.empty()
          ? Distribution(Vec(static_cast<size_t>(n), 1.0 / n))
          : make_distribution(start_in);
  if (start.size() != n) {
    throw InvalidArgument("--start must have the same length as --target");
  }
  NatGradOptions opts;
  opts.iters = iters;
  opts.step = step;
  auto trace = natural_gradient_descent(start, target, opts);

  std::vector<std::string> header{"iter", "f"};
  for (int i = 1; i <= n; ++i) header.push_back("p_" + std::to_string(i));
  std::vector<std::vector<double>> rows;
  rows.reserve(trace.size());
  for (const NatGradTracePoint& pt : trace) {
    std::vector<double> row{static_cast<double>(pt.iter), pt.f};
    row.insert(row.end(), pt.p.weights().begin(), pt.p.weights().end());
    rows.push_back(std::move(row));
  }
  emit_csv(out_path, header, rows);
  std::printf("final loss after %d iterations: %s\n", trace.back().iter,
              format_double(trace.back().f).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information geometry of the open probability simplex: Fisher "
               "metric, alpha-connections, the split Kahler structure on the "
               "tangent bundle, and its covering of projective space."};
  app.set_version_flag("--version", std::string(kArtifactVersion));
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Run every registered invariant check and emit a JSON report");
  VerifyConfig vcfg;
  std::string verify_out;
  verify->add_option("--n", vcfg.n_list,
                     "Dimensions to test (each in [2, 64])")
      ->delimiter(',');
  verify->add_option("--samples", vcfg.samples,
                     "Baseline sample count; checks enforce their own minimums");
  verify->add_option("--seed", vcfg.seed, "Base seed");
  verify->add_option("--tol-scale", vcfg.tol_scale,
                     "Multiplies every check tolerance");
  verify->add_option("--out", verify_out, "Write the JSON report here");

  // geodesic
  auto* geo = app.add_subcommand(
      "geodesic", "Integrate an alpha-geodesic and dump it as CSV");
  double g_alpha = 1.0, g_tend = 1.0;
  int g_steps = 256;
  std::vector<double> g_p0, g_v0;
  std::string geo_out;
  geo->add_option("--alpha", g_alpha, "Connection parameter");
  geo->add_option("--p0", g_p0, "Start point weights (must sum to 1)")
      ->required()
      ->delimiter(',');
  geo->add_option("--v0", g_v0,
                  "Initial velocity components (recentered at p0)")
      ->required()
      ->delimiter(',');
  geo->add_option("--t-end", g_tend, "Integration horizon");
  geo->add_option("--steps", g_steps, "RK4 steps (>= 16)");
  geo->add_option("--out", geo_out, "CSV path (stdout when omitted)");

  // pullback
  auto* pull = app.add_subcommand(
      "pullback", "Batch verification of the pullback identities");
  int p_n = 3;
  long long p_samples = 1000;
  std::uint64_t p_seed = 42;
  double p_tol_scale = 1.0;
  std::string p_mode = "analytic", pull_out;
  pull->add_option("--n", p_n, "Dimension");
  pull->add_option("--samples", p_samples, "Number of random configurations");
  pull->add_option("--seed", p_seed, "Base seed");
  pull->add_option("--mode", p_mode, "Pushforward mode: analytic or fd")
      ->check(CLI::IsMember({"analytic", "fd"}));
  pull->add_option("--tol-scale", p_tol_scale,
                   "Multiplies every check tolerance");
  pull->add_option("--out", pull_out, "Write the JSON report here");

  // natgrad
  auto* nat = app.add_subcommand(
      "natgrad", "Natural-gradient descent towards a target point");
  int n_n = 0, n_iters = 500;
  double n_step = 0.25;
  std::uint64_t n_seed = 42;
  std::vector<double> n_target, n_start;
  std::string nat_out;
  nat->add_option("--n", n_n, "Dimension (optional, checked against --target)");
  nat->add_option("--target", n_target, "Target point in the open simplex")
      ->required()
      ->delimiter(',');
  nat->add_option("--start", n_start, "Start point (default: uniform)")
      ->delimiter(',');
  nat->add_option("--iters", n_iters, "Maximum iterations");
  nat->add_option("--step", n_step, "Step size");
  nat->add_option("--seed", n_seed, "Accepted for interface uniformity");
  nat->add_option("--out", nat_out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*verify) {
      return finish_report(run_verify(vcfg), verify_out);
    }
    if (*geo) {
      return run_geodesic_cmd(g_alpha, g_p0, g_v0, g_tend, g_steps, geo_out);
    }
    if (*pull) {
      PushforwardMode mode = p_mode == "analytic"
                                 ? PushforwardMode::kAnalytic
                                 : PushforwardMode::kFiniteDifference;
      return finish_report(
          run_pullback_suite(p_n, p_samples, p_seed, mode, p_tol_scale),
          pull_out);
    }
    if (*nat) {
      return run_natgrad_cmd(n_n, n_target, n_start, n_iters, n_step, nat_out);
    }
  } catch (const LeftSimplex& e) {
    std::fprintf(stderr, "error: %s (exit parameter %s)\n", e.what(),
                 format_double(e.exit_time()).c_str());
    return kExitLeftSimplex;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
