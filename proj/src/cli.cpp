// Copyright 2026 The dpnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpnoise/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include "CLI11.hpp"

#include "dpnoise/bounds.hpp"
#include "dpnoise/certificates.hpp"
#include "dpnoise/json_io.hpp"
#include "dpnoise/mechanisms.hpp"
#include "dpnoise/privacy.hpp"

namespace dpnoise {

namespace {

int log_level() {
  const char* env = std::getenv("DPNOISE_LOG");
  if (!env) return 0;
  std::string v(env);
  if (v == "debug") return 2;
  if (v == "info") return 1;
  return 0;
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

struct CommonOpts {
  std::string cost = "l1";
  double epsilon = 0.0;
  double delta = 0.0;
  std::int64_t sensitivity = 1;
  std::int64_t dims = 1;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts* o, bool with_cost = true) {
  if (with_cost) {
    cmd->add_option("--cost", o->cost,
                    "cost function: l1 | l2 | power:m | table:file.json");
  }
  cmd->add_option("--epsilon", o->epsilon, "privacy parameter epsilon");
  cmd->add_option("--delta", o->delta, "privacy parameter delta");
  cmd->add_option("--sensitivity", o->sensitivity, "query sensitivity");
  cmd->add_option("--dims", o->dims, "output dimension");
  cmd->add_option("--out", o->out_path, "write output to a file");
}

PrivacyParams to_params(const CommonOpts& o) {
  return PrivacyParams{o.epsilon, o.delta, o.sensitivity, o.dims};
}

NoiseDistribution load_pmf(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::InvalidParams, "cannot open pmf file '" + path + "'");
  }
  json j;
  in >> j;
  return distribution_from_json(j);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw Error(Errc::InvalidParams, "cannot open '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit_json(const json& j, const std::string& path, std::ostream& out) {
  Output o(path, out);
  o.stream() << j.dump(2) << "\n";
}

// One evaluated sweep point, already formatted.
struct SweepRow {
  std::string text;
};

SweepRow eval_sweep_point(const CostFn& cost, const std::string& cost_name,
                          double eps, double delta, std::int64_t D,
                          std::int64_t dims) {
  std::string v_lb, lb_method, v_ub_uniform, v_ub_laplace, v_ub_min, ratio;
  std::vector<std::string> flags;

  double ub_uni = std::nan(""), ub_lap = std::nan("");
  try {
    BoundReport u = dims == 1 ? ub_uniform_1d(cost, D, delta)
                              : ub_uniform_multi(cost, dims, D, delta);
    ub_uni = u.value;
    v_ub_uniform = fmt12(u.value);
  } catch (const Error& e) {
    flags.push_back(e.code() == Errc::IntegralityViolated ? "integrality"
                                                          : "uniform-error");
  }
  if (eps > 0.0) {
    try {
      BoundReport u = dims == 1 ? ub_laplace(cost, D, eps)
                                : ub_laplace_multi(cost, dims, D, eps);
      ub_lap = u.value;
      v_ub_laplace = fmt12(u.value);
    } catch (const Error&) {
      flags.push_back("laplace-error");
    }
  }

  double lb = std::nan("");
  try {
    BoundReport l;
    if (dims == 1) {
      if (eps == 0.0) {
        l = lb_zero_delta(cost, D, delta);
        if (!l.preconditions_ok) {
          l = lp_lower_bound(cost, PrivacyParams{eps, delta, D, 1});
        }
      } else {
        l = lb_eps_delta(cost, D, eps, delta);
      }
    } else {
      l = eps == 0.0 ? lb_multi_zero_delta(cost, dims, D, delta)
                     : lb_multi_eps_delta(cost, dims, D, eps, delta);
    }
    lb = l.value;
    v_lb = fmt12(l.value);
    lb_method = l.method;
  } catch (const Error& e) {
    if (e.code() == Errc::IntegralityViolated) {
      // Closed forms need the integer grid; the truncated program does not.
      try {
        BoundReport l = lp_lower_bound(cost, PrivacyParams{eps, delta, D, 1});
        lb = l.value;
        v_lb = fmt12(l.value);
        lb_method = l.method;
      } catch (const Error&) {
        flags.push_back("lb-error");
      }
    } else {
      flags.push_back(std::string("lb-error:") + errc_name(e.code()));
    }
  }

  double ub = std::nan("");
  if (!std::isnan(ub_uni)) ub = ub_uni;
  if (!std::isnan(ub_lap) && (std::isnan(ub) || ub_lap < ub)) ub = ub_lap;
  if (!std::isnan(ub)) v_ub_min = fmt12(ub);
  if (!std::isnan(ub) && !std::isnan(lb) && lb > 0.0) {
    ratio = fmt12(ub / lb);
  }

  std::string flag_text;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) flag_text += ";";
    flag_text += flags[i];
  }

  std::ostringstream os;
  os << fmt12(eps) << "," << fmt12(delta) << "," << D << "," << dims << ","
     << cost_name << "," << v_lb << "," << lb_method << "," << v_ub_uniform
     << "," << v_ub_laplace << "," << v_ub_min << "," << ratio << ","
     << flag_text;
  return {os.str()};
}

int cmd_bounds(const CommonOpts& o, std::ostream& out) {
  CostFn cost = cost_from_spec(o.cost);
  GapReport gap = gap_report(cost, to_params(o));
  json j{{"epsilon", round12(o.epsilon)},
         {"delta", round12(o.delta)},
         {"sensitivity", o.sensitivity},
         {"dims", o.dims},
         {"cost", o.cost}};
  json g = gap_report_to_json(gap);
  j["v_lb"] = g["lower"];
  j["v_ub"] = g["upper"];
  j["ratio"] = g["ratio"];
  emit_json(j, o.out_path, out);
  return 0;
}

int cmd_mechanism_cost(const CommonOpts& o, const std::string& mechanism,
                       std::ostream& out) {
  CostFn cost = cost_from_spec(o.cost);
  NoiseDistribution dist;
  if (mechanism == "uniform") {
    dist = o.dims == 1 ? uniform_mechanism_1d(to_params(o))
                       : uniform_mechanism_multi(to_params(o));
  } else if (mechanism == "laplace") {
    dist = discrete_laplace(to_params(o));
  } else {
    throw Error(Errc::InvalidParams,
                "unknown mechanism '" + mechanism + "' (uniform | laplace)");
  }
  json j{{"mechanism", mechanism},
         {"cost", o.cost},
         {"expected_cost", round12(expected_cost(dist, cost))},
         {"distribution", distribution_to_json(dist)}};
  emit_json(j, o.out_path, out);
  return 0;
}

int cmd_check(const CommonOpts& o, const std::string& pmf_path,
              std::ostream& out) {
  NoiseDistribution dist = load_pmf(pmf_path);
  PrivacyReport report = check_dp(dist, to_params(o));
  emit_json(privacy_report_to_json(report), o.out_path, out);
  return 0;
}

int cmd_lp(const CommonOpts& o, std::int64_t truncation, bool dump_pmf,
           std::ostream& out) {
  CostFn cost = cost_from_spec(o.cost);
  LpSolution sol = lp_solve_for(cost, to_params(o), truncation);
  emit_json(lp_solution_to_json(sol, dump_pmf), o.out_path, out);
  return 0;
}

int cmd_certificate(const CommonOpts& o, const std::string& regime,
                    std::int64_t n, std::ostream& out) {
  CostFn cost = cost_from_spec(o.cost);
  PrivacyParams params = to_params(o);
  double beta = std::max(o.epsilon, o.delta);
  DualCertificate cert;
  if (regime == "zero-delta-1d") {
    cert = build_cert_zero_delta_1d(cost, o.sensitivity, o.delta);
  } else if (regime == "eps-delta-1d") {
    if (n <= 0) {
      EpsDeltaSeriesParams sp =
          EpsDeltaSeriesParams::from(o.epsilon, o.delta);
      if (!std::isfinite(sp.n_star)) {
        throw Error(Errc::InvalidParams,
                    "series length diverges; pass --n explicitly");
      }
      n = static_cast<std::int64_t>(std::floor(sp.n_star));
    }
    cert = build_cert_eps_delta_1d(cost, o.sensitivity, o.epsilon, o.delta, n);
  } else if (regime == "multi-zero-delta-l1") {
    cert = build_cert_multi_l1_zero_delta(o.dims, o.sensitivity, o.delta);
  } else if (regime == "multi-zero-delta-l2") {
    cert = build_cert_multi_l2_zero_delta(o.dims, o.sensitivity, o.delta);
  } else if (regime == "multi-eps-delta-l1") {
    cert = build_cert_multi_eps_delta_l1(o.dims, o.sensitivity, beta);
  } else if (regime == "multi-eps-delta-l2") {
    cert = build_cert_multi_eps_delta_l2(o.dims, o.sensitivity, beta);
  } else {
    throw Error(Errc::InvalidParams, "unknown regime '" + regime + "'");
  }
  CertificateReport report = verify_certificate(cert, cost, params);
  emit_json(certificate_report_to_json(report, cert), o.out_path, out);
  return 0;
}

int cmd_sample(const CommonOpts& o, const std::string& pmf_path,
               const std::string& mechanism, std::uint64_t seed,
               std::int64_t n, std::ostream& out) {
  NoiseDistribution dist;
  if (!pmf_path.empty()) {
    dist = load_pmf(pmf_path);
  } else if (mechanism == "uniform") {
    dist = o.dims == 1 ? uniform_mechanism_1d(to_params(o))
                       : uniform_mechanism_multi(to_params(o));
  } else if (mechanism == "laplace") {
    dist = discrete_laplace(to_params(o));
  } else {
    throw Error(Errc::InvalidParams,
                "pass --pmf or --mechanism {uniform|laplace}");
  }
  if (n < 1) throw Error(Errc::InvalidParams, "need n >= 1");
  SampleBatch batch = sample(dist, seed, static_cast<std::size_t>(n));
  Output output(o.out_path, out);
  for (const auto& draw : batch.draws) {
    for (std::size_t i = 0; i < draw.size(); ++i) {
      if (i) output.stream() << ",";
      output.stream() << draw[i];
    }
    output.stream() << "\n";
  }
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& eps_grid_spec,
              const std::string& delta_grid_spec, bool tie, std::ostream& out,
              std::ostream& err) {
  CostFn cost = cost_from_spec(o.cost);
  std::vector<double> eps_grid = parse_grid(eps_grid_spec);
  std::vector<double> delta_grid =
      tie ? eps_grid : parse_grid(delta_grid_spec);

  std::vector<std::pair<double, double>> points;
  if (tie) {
    for (double e : eps_grid) points.emplace_back(e, e);
  } else {
    for (double e : eps_grid) {
      for (double d : delta_grid) points.emplace_back(e, d);
    }
  }

  // Points evaluate concurrently; rows are assembled in grid order.
  std::vector<std::future<SweepRow>> futures;
  futures.reserve(points.size());
  for (const auto& [e, d] : points) {
    futures.push_back(std::async(std::launch::async, [&, e, d] {
      return eval_sweep_point(cost, o.cost, e, d, o.sensitivity, o.dims);
    }));
  }

  Output output(o.out_path, out);
  output.stream() << "epsilon,delta,sensitivity,dims,cost,v_lb,lb_method,"
                     "v_ub_uniform,v_ub_laplace,v_ub_min,ratio,flags\n";
  for (std::size_t i = 0; i < futures.size(); ++i) {
    output.stream() << futures[i].get().text << "\n";
    if (log_level() >= 1) {
      err << "sweep point " << (i + 1) << "/" << futures.size() << " done\n";
    }
  }
  return 0;
}

int cmd_tradeoff(const CommonOpts& o, std::ostream& out) {
  TradeoffRegion region = tradeoff_region(o.epsilon, o.delta);
  Output output(o.out_path, out);
  if (o.format == "json") {
    output.stream() << tradeoff_region_to_json(region).dump(2) << "\n";
  } else {
    output.stream() << "p_fa,p_md\n";
    for (const auto& [fa, md] : region.vertices) {
      output.stream() << fmt12(fa) << "," << fmt12(md) << "\n";
    }
  }
  return 0;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);

  auto num = [&](const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
      throw Error(Errc::InvalidParams, "bad number '" + s + "' in grid spec");
    }
    return v;
  };

  if (parts.size() == 1) return {num(parts[0])};
  if (parts.size() != 4 || (parts[2] != "log" && parts[2] != "lin")) {
    throw Error(Errc::InvalidParams,
                "grid spec must be a number or start:stop:{log|lin}:count");
  }
  double start = num(parts[0]);
  double stop = num(parts[1]);
  std::int64_t count = static_cast<std::int64_t>(num(parts[3]));
  if (count < 1) throw Error(Errc::InvalidParams, "grid count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (parts[2] == "log") {
    if (!(start > 0.0 && stop > 0.0)) {
      throw Error(Errc::InvalidParams, "log grid needs positive endpoints");
    }
    double ls = std::log(start), le = std::log(stop);
    for (std::int64_t i = 0; i < count; ++i) {
      grid.push_back(std::exp(ls + (le - ls) * static_cast<double>(i) /
                                       static_cast<double>(count - 1)));
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      grid.push_back(start + (stop - start) * static_cast<double>(i) /
                                 static_cast<double>(count - 1));
    }
  }
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"bounds, mechanisms, and certificates for discrete noise "
               "under (epsilon, delta) privacy constraints"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string mechanism, pmf_path, regime, eps_grid = "0", delta_grid = "0";
  std::int64_t truncation = 0, n_draws = 10, cert_n = 0;
  std::uint64_t seed = 0;
  bool dump_pmf = false, tie = false;

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "lower/upper bounds and their gap");
  add_common(bounds_cmd, &o);

  CLI::App* mech_cmd =
      app.add_subcommand("mechanism-cost", "expected cost of a mechanism");
  add_common(mech_cmd, &o);
  mech_cmd->add_option("--mechanism", mechanism, "uniform | laplace")
      ->required();

  CLI::App* check_cmd =
      app.add_subcommand("check", "verify the privacy constraint for a pmf");
  add_common(check_cmd, &o, /*with_cost=*/false);
  check_cmd->add_option("--pmf", pmf_path, "pmf JSON file")->required();

  CLI::App* lp_cmd =
      app.add_subcommand("lp", "solve the truncated relaxed program");
  add_common(lp_cmd, &o);
  lp_cmd->add_option("--truncation", truncation, "half-line support size N");
  lp_cmd->add_flag("--dump-pmf", dump_pmf, "include the optimal pmf");

  CLI::App* cert_cmd =
      app.add_subcommand("certificate", "build and verify a dual certificate");
  add_common(cert_cmd, &o);
  cert_cmd
      ->add_option("--regime", regime,
                   "zero-delta-1d | eps-delta-1d | multi-zero-delta-l1 | "
                   "multi-zero-delta-l2 | multi-eps-delta-l1 | "
                   "multi-eps-delta-l2")
      ->required();
  cert_cmd->add_option("--n", cert_n, "series length for eps-delta-1d");

  CLI::App* sample_cmd = app.add_subcommand("sample", "draw noise samples");
  add_common(sample_cmd, &o, /*with_cost=*/false);
  sample_cmd->add_option("--pmf", pmf_path, "pmf JSON file");
  sample_cmd->add_option("--mechanism", mechanism, "uniform | laplace");
  sample_cmd->add_option("--seed", seed, "RNG seed");
  sample_cmd->add_option("--n", n_draws, "number of draws");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "bounds over a parameter grid, CSV output");
  add_common(sweep_cmd, &o);
  sweep_cmd->add_option("--epsilon-grid", eps_grid,
                        "epsilon values: x or start:stop:{log|lin}:count");
  sweep_cmd->add_option("--delta-grid", delta_grid, "delta values");
  sweep_cmd->add_flag("--tie-eps-delta", tie,
                      "set delta = epsilon along the epsilon grid");

  CLI::App* trade_cmd = app.add_subcommand(
      "tradeoff-region", "false-alarm / missed-detection boundary");
  add_common(trade_cmd, &o, /*with_cost=*/false);
  std::string trade_format = "csv";
  trade_cmd->add_option("--format", trade_format, "csv | json");

  // CLI11 wants argc/argv in reverse; feed it a copy.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << app.help();
    return 2;
  }

  try {
    if (bounds_cmd->parsed()) return cmd_bounds(o, out);
    if (mech_cmd->parsed()) return cmd_mechanism_cost(o, mechanism, out);
    if (check_cmd->parsed()) return cmd_check(o, pmf_path, out);
    if (lp_cmd->parsed()) return cmd_lp(o, truncation, dump_pmf, out);
    if (cert_cmd->parsed()) return cmd_certificate(o, regime, cert_n, out);
    if (sample_cmd->parsed()) {
      return cmd_sample(o, pmf_path, mechanism, seed, n_draws, out);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(o, eps_grid, delta_grid, tie, out, err);
    }
    if (trade_cmd->parsed()) {
      o.format = trade_format;
      return cmd_tradeoff(o, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace dpnoise
