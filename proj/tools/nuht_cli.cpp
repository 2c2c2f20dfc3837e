//------------------------------------------------------------------------------
//
//   Copyright 2026 the nuht authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Batch front end. One subcommand per run; artifacts go to --out (written
// atomically) or stdout. Exit codes: 0 ok, 1 validation/numeric failure,
// 2 resource cap, 3 oracle mismatch. Errors are mirrored as JSON on stderr.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nuht/nuht.hpp"

namespace {

using nuht::json;

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw nuht::validation_error("cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) throw nuht::validation_error("empty number list");
  return out;
}

std::vector<int> parse_csv_ints(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_csv_doubles(s)) {
    if (v != static_cast<int>(v))
      throw nuht::validation_error("expected integers in list");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

/// Inline probabilities are auto-normalized; warn when they are visibly off.
nuht::distribution parse_distribution(const std::string& s, const char* name) {
  const auto w = parse_csv_doubles(s);
  double sum = 0.0;
  for (double x : w) sum += x;
  if (std::abs(sum - 1.0) > 1e-9)
    std::cerr << "warning: " << name << " sums to " << sum
              << "; normalizing\n";
  return nuht::make_distribution(w);
}

struct io_options {
  std::string out;
  bool has_out() const { return !out.empty(); }

  void emit(const std::string& content) const {
    if (has_out())
      nuht::write_atomic(out, content);
    else
      std::cout << content;
  }

  void emit_with_sidecar(const std::string& csv, const json& meta) const {
    if (has_out()) {
      nuht::write_atomic(out, csv);
      nuht::write_atomic(out + ".meta.json", meta.dump(2) + "\n");
    } else {
      std::cout << csv;
    }
  }
};

struct dist_options {
  std::string p0_spec, p1_spec, prior_spec, dists_path;

  nuht::hypothesis_pair pair(bool need_prior) const {
    std::optional<nuht::distribution> p0, p1;
    std::optional<nuht::prior> pr;
    if (!dists_path.empty()) {
      std::ifstream is(dists_path);
      if (!is)
        throw nuht::validation_error("cannot open " + dists_path);
      json j;
      is >> j;
      if (j.contains("p0")) p0 = nuht::distribution_from_json(j["p0"]);
      if (j.contains("p1")) p1 = nuht::distribution_from_json(j["p1"]);
      if (j.contains("prior")) {
        const auto v = j["prior"].get<std::vector<double>>();
        if (v.size() != 2)
          throw nuht::validation_error("prior must have two entries");
        pr = nuht::prior(v[0], v[1]);
      }
    }
    if (!p0_spec.empty()) p0 = parse_distribution(p0_spec, "--p0");
    if (!p1_spec.empty()) p1 = parse_distribution(p1_spec, "--p1");
    if (!prior_spec.empty()) {
      const auto v = parse_csv_doubles(prior_spec);
      if (v.size() != 2)
        throw nuht::validation_error("--prior needs two probabilities");
      pr = nuht::prior(v[0], v[1]);
    }
    if (!p0 || !p1)
      throw nuht::validation_error(
          "both distributions are required (--p0/--p1 or --dists)");
    if (need_prior && !pr)
      throw nuht::validation_error("this command needs --prior");
    return nuht::hypothesis_pair(*p0, *p1, pr);
  }
};

void add_dist_flags(CLI::App* cmd, dist_options& d, bool with_prior) {
  cmd->add_option("--p0", d.p0_spec, "H0 probabilities, comma separated");
  cmd->add_option("--p1", d.p1_spec, "H1 probabilities, comma separated");
  cmd->add_option("--dists", d.dists_path,
                  "JSON file with p0/p1 (and optionally prior)");
  if (with_prior)
    cmd->add_option("--prior", d.prior_spec, "prior pi0,pi1 on H0,H1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simple hypothesis testing under a tunable loss: closed-form "
      "randomized tests, exact finite-n errors, exponent quantities and "
      "brute-force verification"};
  app.require_subcommand(1);

  std::string base_spec = "bits";
  const auto add_base_flag = [&base_spec](CLI::App* cmd) {
    cmd->add_option("--base", base_spec, "log base for reports: bits|nats")
        ->capture_default_str();
  };

  // exponents
  auto* c_exp = app.add_subcommand(
      "exponents", "KL, Chernoff information, BC_{nu/2}, D_{B,nu}");
  dist_options d_exp;
  add_dist_flags(c_exp, d_exp, false);
  std::string exp_nus = "1,1.25,1.5,1.75,2";
  std::string exp_format = "json";
  io_options io_exp;
  c_exp->add_option("--nu", exp_nus, "nu values for the BC/D_B maps")
      ->capture_default_str();
  c_exp->add_option("--format", exp_format, "json|csv")->capture_default_str();
  c_exp->add_option("--out", io_exp.out, "output path (atomic write)");
  add_base_flag(c_exp);

  // mp-test
  auto* c_mp = app.add_subcommand(
      "mp-test", "calibrate the nu-MP test and report its errors");
  dist_options d_mp;
  add_dist_flags(c_mp, d_mp, false);
  std::string mp_nu = "inf";
  double mp_eps = 0.1;
  int mp_n = 10;
  io_options io_mp;
  c_mp->add_option("--nu", mp_nu, "nu in [1, inf]; 'inf' allowed")
      ->capture_default_str();
  c_mp->add_option("--epsilon", mp_eps, "size constraint in (0,1)")
      ->capture_default_str();
  c_mp->add_option("--n", mp_n, "sequence length")->capture_default_str();
  c_mp->add_option("--out", io_mp.out, "output path");
  add_base_flag(c_mp);

  // bayes
  auto* c_bayes = app.add_subcommand(
      "bayes", "Bayes-optimal test and its nu-Bayesian error");
  dist_options d_bayes;
  add_dist_flags(c_bayes, d_bayes, true);
  std::string bayes_nu = "inf";
  int bayes_n = 10;
  io_options io_bayes;
  c_bayes->add_option("--nu", bayes_nu, "nu in [1, inf]")->capture_default_str();
  c_bayes->add_option("--n", bayes_n, "sequence length")->capture_default_str();
  c_bayes->add_option("--out", io_bayes.out, "output path");
  add_base_flag(c_bayes);

  // trace-np
  auto* c_tnp = app.add_subcommand(
      "trace-np", "exponent trace of the calibrated nu-MP test");
  dist_options d_tnp;
  add_dist_flags(c_tnp, d_tnp, false);
  std::string tnp_nu = "inf";
  double tnp_eps = 0.1;
  std::string tnp_ns = "50,100,200,400,800";
  std::string tnp_reading = "nu";
  io_options io_tnp;
  c_tnp->add_option("--nu", tnp_nu)->capture_default_str();
  c_tnp->add_option("--epsilon", tnp_eps)->capture_default_str();
  c_tnp->add_option("--n-list", tnp_ns, "lengths, comma separated")
      ->capture_default_str();
  c_tnp->add_option("--beta-reading", tnp_reading,
                    "type II error recorded: nu|classical")
      ->capture_default_str();
  c_tnp->add_option("--out", io_tnp.out, "output path (+ .meta.json sidecar)");
  add_base_flag(c_tnp);

  // trace-bayes
  auto* c_tb = app.add_subcommand(
      "trace-bayes", "exponent trace of the Bayes-optimal test");
  dist_options d_tb;
  add_dist_flags(c_tb, d_tb, true);
  std::string tb_nu = "inf";
  std::string tb_ns = "50,100,200,400,800";
  io_options io_tb;
  c_tb->add_option("--nu", tb_nu)->capture_default_str();
  c_tb->add_option("--n-list", tb_ns)->capture_default_str();
  c_tb->add_option("--out", io_tb.out, "output path (+ .meta.json sidecar)");
  add_base_flag(c_tb);

  // sweep-nu
  auto* c_sweep = app.add_subcommand(
      "sweep-nu", "D_{B,nu} over a nu grid (lower-bound curve)");
  dist_options d_sweep;
  add_dist_flags(c_sweep, d_sweep, false);
  double sweep_lo = 1.0, sweep_hi = 2.0;
  int sweep_steps = 101;
  io_options io_sweep;
  c_sweep->add_option("--nu-min", sweep_lo)->capture_default_str();
  c_sweep->add_option("--nu-max", sweep_hi)->capture_default_str();
  c_sweep->add_option("--steps", sweep_steps)->capture_default_str();
  c_sweep->add_option("--out", io_sweep.out, "output path");
  add_base_flag(c_sweep);

  // loss-curve
  auto* c_loss = app.add_subcommand("loss-curve", "tabulated nu-loss curves");
  std::string loss_nus = "1,1.5,2,4,inf";
  int loss_grid = 200;
  io_options io_loss;
  c_loss->add_option("--nu", loss_nus, "nu values, comma separated; 'inf' ok")
      ->capture_default_str();
  c_loss->add_option("--grid", loss_grid, "points over p in (0,1]")
      ->capture_default_str();
  c_loss->add_option("--out", io_loss.out, "output path");
  add_base_flag(c_loss);

  // verify
  auto* c_verify = app.add_subcommand(
      "verify", "oracle-vs-closed-form checks on random instances");
  std::uint64_t verify_seed = 1;
  int verify_instances = 20;
  int verify_grid = 2001;
  c_verify->add_option("--seed", verify_seed)->capture_default_str();
  c_verify->add_option("--instances", verify_instances)->capture_default_str();
  c_verify->add_option("--grid-points", verify_grid)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    json err{{"error", {{"kind", "validation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }

  try {
    const nuht::log_base base = nuht::parse_log_base(base_spec);

    if (*c_exp) {
      const auto pair = d_exp.pair(false);
      const auto report =
          nuht::make_exponent_report(pair, parse_csv_doubles(exp_nus), base);
      if (exp_format == "csv")
        io_exp.emit(nuht::exponent_report_csv(report));
      else if (exp_format == "json")
        io_exp.emit(nuht::to_json(report).dump(2) + "\n");
      else
        throw nuht::validation_error("--format must be json or csv");
    } else if (*c_mp) {
      const auto pair = d_mp.pair(false);
      const auto nu = nuht::nu_param::parse(mp_nu);
      const auto cal =
          nuht::calibrate_lambda(nu, mp_eps, pair, mp_n, base);
      const auto test =
          nuht::detail::mp_test_from_log2_lambda(nu, cal.log2_lambda, mp_n);
      const auto errors = nuht::nu_errors(test, pair, nu, base);
      json j{{"test", nuht::to_json(test)},
             {"errors", nuht::to_json(errors)},
             {"achieved_alpha", cal.achieved_alpha},
             {"epsilon", mp_eps}};
      io_mp.emit(j.dump(2) + "\n");
    } else if (*c_bayes) {
      const auto pair = d_bayes.pair(true);
      const auto nu = nuht::nu_param::parse(bayes_nu);
      const auto test = nuht::bayes_test(nu, pair, bayes_n);
      const auto risk = nuht::bayes_risk(nu, test, pair, base);
      json j{{"test", nuht::to_json(test)}, {"risk", nuht::to_json(risk)}};
      io_bayes.emit(j.dump(2) + "\n");
    } else if (*c_tnp) {
      const auto pair = d_tnp.pair(false);
      const auto nu = nuht::nu_param::parse(tnp_nu);
      nuht::beta_reading reading;
      if (tnp_reading == "nu")
        reading = nuht::beta_reading::nu_loss;
      else if (tnp_reading == "classical")
        reading = nuht::beta_reading::classical;
      else
        throw nuht::validation_error("--beta-reading must be nu or classical");
      const auto ns = parse_csv_ints(tnp_ns);
      const auto tr =
          nuht::np_exponent_trace(nu, tnp_eps, pair, ns, base, reading);
      io_tnp.emit_with_sidecar(nuht::trace_csv(tr), nuht::trace_metadata(tr));
    } else if (*c_tb) {
      const auto pair = d_tb.pair(true);
      const auto nu = nuht::nu_param::parse(tb_nu);
      const auto ns = parse_csv_ints(tb_ns);
      const auto tr = nuht::bayes_exponent_trace(nu, pair, ns, base);
      io_tb.emit_with_sidecar(nuht::trace_csv(tr), nuht::trace_metadata(tr));
    } else if (*c_sweep) {
      const auto pair = d_sweep.pair(false);
      const auto grid = nuht::linspace(sweep_lo, sweep_hi, sweep_steps);
      const auto rows = nuht::sweep_d_b_nu(pair, grid, base);
      io_sweep.emit(nuht::sweep_csv(rows));
    } else if (*c_loss) {
      std::vector<nuht::nu_param> nus;
      std::stringstream ss(loss_nus);
      std::string item;
      while (std::getline(ss, item, ','))
        nus.push_back(nuht::nu_param::parse(item));
      const auto rows = nuht::loss_curve(nus, loss_grid, base);
      io_loss.emit(nuht::loss_curve_csv(rows));
    } else if (*c_verify) {
      nuht::oracle_config cfg;
      cfg.grid_points = verify_grid;
      bool all_ok = true;
      for (int i = 0; i < verify_instances; ++i) {
        const auto spec = nuht::random_instance(verify_seed, i);
        const auto rep = nuht::check_instance(spec, cfg, 20,
                                              verify_seed * 1000003ULL + i);
        std::printf(
            "instance %2d: %-24s mp=%s bayes=%s (max gap %.2e/%.2e)\n", i,
            spec.describe().c_str(),
            rep.mp_pointwise && rep.mp_unbeaten ? "ok" : "MISMATCH",
            rep.bayes_pointwise && rep.bayes_unbeaten ? "ok" : "MISMATCH",
            rep.mp_max_gap, rep.bayes_max_gap);
        all_ok = all_ok && rep.ok();
      }
      std::printf("verify: %s\n", all_ok ? "all instances ok" : "MISMATCH");
      if (!all_ok) return 3;
    }
  } catch (const nuht::resource_error& e) {
    json err{{"error", {{"kind", "resource"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const nuht::validation_error& e) {
    json err{{"error", {{"kind", "validation"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", {{"kind", "numeric"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
