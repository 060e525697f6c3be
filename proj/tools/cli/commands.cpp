#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cli/output.hpp"
#include "ndpc/cognitive.hpp"
#include "ndpc/error_exponent.hpp"
#include "ndpc/errors.hpp"
#include "ndpc/mc_oracle.hpp"
#include "ndpc/noisy_dpc.hpp"
#include "ndpc/sampling.hpp"

namespace ndpc::cli {

namespace {

struct CommonFlags {
  std::string units = "nats";
  bool json = false;
  bool csv = false;
  std::uint64_t seed = 42;
  std::size_t samples = 1'000'000;

  Units parsed_units() const {
    const auto u = parse_units(units);
    if (!u) throw UsageError("--units must be 'nats' or 'bits'");
    return *u;
  }
  Format format() const {
    if (json && csv) throw UsageError("--json and --csv are mutually exclusive");
    return json ? Format::json : csv ? Format::csv : Format::table;
  }
};

struct ChannelFlags {
  double power = 1.0;
  double interference = 1.0;
  double noise = 1.0;
  std::string tx_noise = "inf";
  std::string rx_noise = "inf";

  void attach(CLI::App* cmd) {
    cmd->add_option("--P", power, "input power constraint")->capture_default_str();
    cmd->add_option("--Q", interference, "interference power")->capture_default_str();
    cmd->add_option("--N0", noise, "receiver noise power")->capture_default_str();
    cmd->add_option("--N1", tx_noise, "transmitter observation noise (or 'inf')")
        ->capture_default_str();
    cmd->add_option("--N2", rx_noise, "receiver observation noise (or 'inf')")
        ->capture_default_str();
  }
  DirtyPaperChannel channel() const {
    return {power, interference, noise, parse_variance(tx_noise), parse_variance(rx_noise)};
  }
};

void add_channel_params(OutputRecord& rec, const DirtyPaperChannel& ch) {
  rec.param("P", ch.power);
  rec.param("Q", ch.interference);
  rec.param("N0", ch.noise);
  rec.param("N1", ch.tx_noise);
  rec.param("N2", ch.rx_noise);
}

struct NetworkFlags {
  CognitiveNetwork net;

  void attach(CLI::App* cmd) {
    cmd->add_option("--PA", net.primary_power, "primary transmit power")->capture_default_str();
    cmd->add_option("--PC", net.secondary_power, "secondary average power")->capture_default_str();
    cmd->add_option("--NC", net.noise_c, "noise power at node C")->capture_default_str();
    cmd->add_option("--ND", net.noise_d, "noise power at node D")->capture_default_str();
    cmd->add_option("--hAC", net.gain_ac, "|h_AC|")->capture_default_str();
    cmd->add_option("--hAD", net.gain_ad, "|h_AD|")->capture_default_str();
    cmd->add_option("--hCD", net.gain_cd, "|h_CD|")->capture_default_str();
    cmd->add_option("--R", net.primary_rate, "primary rate, nats per use")->capture_default_str();
    cmd->add_option("--n", net.block_length, "block length")->capture_default_str();
  }
};

void add_network_params(OutputRecord& rec, const CognitiveNetwork& net) {
  rec.param("PA", net.primary_power);
  rec.param("PC", net.secondary_power);
  rec.param("NC", net.noise_c);
  rec.param("ND", net.noise_d);
  rec.param("hAC", net.gain_ac);
  rec.param("hAD", net.gain_ad);
  rec.param("hCD", net.gain_cd);
  rec.param("R", net.primary_rate);
  rec.param("n", net.block_length);
}

OutputRecord cmd_capacity(const ChannelFlags& flags, Units units) {
  const DirtyPaperChannel ch = flags.channel();
  OutputRecord rec{"capacity", {}, {}, {}, units};
  add_channel_params(rec, ch);
  rec.add_rate("capacity", capacity(ch));
  if (ch.interference > 0.0) rec.add("mu", residual_fraction(ch));
  if (std::isfinite(ch.tx_noise)) rec.add("alpha", optimal_alpha(ch));
  rec.add_rate("capacity_tx_only",
               capacity_tx_only(ch.power, ch.interference, ch.noise, ch.tx_noise));
  rec.add_rate("capacity_rx_only",
               capacity_rx_only(ch.power, ch.interference, ch.noise, ch.rx_noise));
  rec.add_rate("lower_bound", cap(ch.power / (ch.interference + ch.noise)));
  rec.add_rate("upper_bound", cap(ch.power / ch.noise));
  return rec;
}

struct AlphaFlags {
  std::optional<double> alpha;
  double grid_lo = -1.0;
  double grid_hi = 1.0;
  double grid_step = 1e-4;
};

OutputRecord cmd_alpha(const ChannelFlags& flags, const AlphaFlags& af, Units units) {
  const DirtyPaperChannel ch = flags.channel();
  if (!std::isfinite(ch.tx_noise)) {
    throw DomainError("the alpha scheme needs a transmitter observation: pass a finite --N1");
  }
  OutputRecord rec{"alpha", {}, {}, {}, units};
  add_channel_params(rec, ch);
  if (af.alpha) rec.param("alpha", *af.alpha);
  rec.param("grid_lo", af.grid_lo);
  rec.param("grid_hi", af.grid_hi);
  rec.param("grid_step", af.grid_step);

  const double best = optimal_alpha(ch);
  rec.add("alpha_opt", best);
  rec.add_rate("rate_at_alpha_opt", rate_of_alpha(ch, best));
  rec.add_rate("capacity", capacity(ch));
  rec.add("alpha_grid", oracle::grid_argmax_alpha(ch, af.grid_lo, af.grid_hi, af.grid_step));
  if (af.alpha) rec.add_rate("rate_at_alpha", rate_of_alpha(ch, *af.alpha));
  return rec;
}

struct ExponentFlags {
  double snr = 10.0;
  double rate = 0.3;
  std::optional<std::int64_t> symbols;
};

OutputRecord cmd_exponent(const ExponentFlags& ef, Units units) {
  const DecodeSetting s{ef.snr, ef.rate};
  OutputRecord rec{"exponent", {}, {}, {}, units};
  rec.param("A1", ef.snr);
  rec.param("R", ef.rate);
  if (ef.symbols) rec.param("symbols", static_cast<double>(*ef.symbols));

  const double e = random_coding_exponent(s);
  rec.label("branch", std::string(to_string(exponent_branch(s))));
  rec.add("exponent", e);
  rec.add_rate("capacity", cap(ef.snr));
  rec.add_rate("critical_rate", Rate::from_nats(critical_rate(ef.snr)));
  if (ef.symbols) rec.add("log_error_bound", log_error_bound(e, *ef.symbols));
  return rec;
}

OutputRecord cmd_cognitive(const CognitiveNetwork& net, Units units) {
  const RateOutcome o = achievable_rate(net);
  const CaseThresholds t = case_thresholds(net);
  OutputRecord rec{"cognitive", {}, {}, {}, units};
  add_network_params(rec, net);
  rec.label("case", std::string(to_string(o.case_id)));
  rec.label("fell_back_to_noise", o.fell_back_to_noise ? "true" : "false");
  rec.add_rate("rate", o.rate);
  rec.add_rate("lower_bound", o.lower_bound);
  rec.add_rate("upper_bound", o.upper_bound);
  if (o.m_opt) rec.add("m_opt", *o.m_opt);
  if (o.mu_effective) rec.add("mu", *o.mu_effective);
  rec.add("exponent_c", exponent_at_c(net));
  rec.add("exponent_d", exponent_at_d(net));
  rec.add("threshold_d_high", t.d_high);
  rec.add("threshold_d_low", t.d_low);
  rec.add("threshold_c", t.c);
  return rec;
}

struct SweepFlags {
  std::string variable;
  double from = 0.0;
  double to = 1.0;
  int steps = 11;
};

std::vector<double> sweep_grid(const SweepFlags& sf) {
  if (!std::isfinite(sf.from) || !std::isfinite(sf.to) || sf.from > sf.to) {
    throw UsageError("sweep range needs finite --from <= --to");
  }
  if (sf.steps < 1) throw UsageError("--steps must be >= 1");
  if (sf.steps == 1) return {sf.from};
  std::vector<double> grid(static_cast<std::size_t>(sf.steps));
  const double width = sf.to - sf.from;
  for (int k = 0; k < sf.steps; ++k) {
    grid[static_cast<std::size_t>(k)] = sf.from + width * k / (sf.steps - 1);
  }
  grid.back() = sf.to;
  return grid;
}

void write_sweep(const CognitiveNetwork& net, const SweepFlags& sf, const CommonFlags& common,
                 std::ostream& out) {
  const auto variable = parse_sweep_variable(sf.variable);
  if (!variable) throw UsageError("--var must be one of m, hAD, hAC, n");
  net.validate();
  const std::vector<double> grid = sweep_grid(sf);
  const Units units = common.parsed_units();
  const std::vector<SweepRow> rows = sweep(net, *variable, grid);
  auto rate_in = [&](double nats) { return units == Units::nats ? nats : nats / std::numbers::ln2; };

  if (common.format() == Format::json) {
    OutputRecord head{"sweep", {}, {}, {}, units};
    add_network_params(head, net);
    head.param("from", sf.from);
    head.param("to", sf.to);
    head.param("steps", sf.steps);
    head.label("var", sf.variable);
    nlohmann::ordered_json j = to_json(head);
    j["rows"] = nlohmann::ordered_json::array();
    for (const SweepRow& r : rows) {
      nlohmann::ordered_json row;
      row["value"] = r.value;
      if (!r.case_id) {
        row["error"] = r.error;
      } else {
        row["case"] = std::string(to_string(*r.case_id));
        row["rate"] = rate_in(r.rate_nats);
        if (r.m) row["m_opt"] = *r.m;
        if (r.mu) row["mu"] = *r.mu;
      }
      j["rows"].push_back(std::move(row));
    }
    out << j.dump(2) << '\n';
    return;
  }

  out << "value,case,rate_" << to_string(units) << ",m_opt,mu\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.value) << ',';
    if (!r.case_id) {
      out << "ERROR,,,\n";
      continue;
    }
    out << to_string(*r.case_id) << ',' << format_number(rate_in(r.rate_nats)) << ',';
    if (r.m) out << *r.m;
    out << ',';
    if (r.mu) out << format_number(*r.mu);
    out << '\n';
  }
}

OutputRecord cmd_verify(const VerifyOptions& opts, std::ostream& err, bool& all_passed) {
  OutputRecord rec{"verify", {}, {}, {}, Units::nats};
  rec.param("trials", static_cast<double>(opts.trials));
  rec.param("seed", static_cast<double>(opts.seed));
  rec.param("samples", static_cast<double>(opts.samples));
  all_passed = true;
  for (const SuiteResult& s : run_verification(opts)) {
    rec.label(s.name, s.passed ? "PASS" : "FAIL");
    rec.add(s.name + "_max_deviation", s.max_deviation);
    rec.add(s.name + "_tolerance", s.tolerance);
    if (!s.passed) {
      all_passed = false;
      err << "verify: suite '" << s.name << "' deviation " << format_number(s.max_deviation)
          << " exceeds " << format_number(s.tolerance) << " at " << s.worst_case << '\n';
    }
  }
  return rec;
}

// Uniform double on [lo, hi) from 53 engine bits.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

std::string describe(const DirtyPaperChannel& ch) {
  std::ostringstream s;
  s << "P=" << format_number(ch.power) << " Q=" << format_number(ch.interference)
    << " N0=" << format_number(ch.noise) << " N1=" << format_number(ch.tx_noise)
    << " N2=" << format_number(ch.rx_noise);
  return s.str();
}

void track(SuiteResult& s, double deviation, const std::string& where) {
  if (!(deviation <= s.max_deviation)) {
    s.max_deviation = deviation;
    s.worst_case = where;
  }
}

SuiteResult suite(std::string name, double tolerance) {
  SuiteResult s;
  s.name = std::move(name);
  s.tolerance = tolerance;
  return s;
}

void finish(SuiteResult& s) { s.passed = s.max_deviation <= s.tolerance; }

}  // namespace

double parse_variance(std::string_view token) {
  if (token == "inf") return kNoObservation;
  double v = 0.0;
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
    throw UsageError("invalid variance '" + std::string(token) + "' (number or 'inf')");
  }
  return v;
}

std::vector<SuiteResult> run_verification(const VerifyOptions& opts) {
  if (opts.trials == 0) throw UsageError("--trials must be >= 1");
  oracle::SampleSpec{opts.seed, opts.samples}.validate();
  std::mt19937_64 rng(opts.seed);
  auto random_channel = [&] {
    DirtyPaperChannel ch;
    ch.power = uniform(rng, 0.1, 100.0);
    ch.interference = uniform(rng, 0.1, 100.0);
    ch.noise = uniform(rng, 0.1, 100.0);
    ch.tx_noise = uniform(rng, 0.1, 100.0);
    ch.rx_noise = uniform(rng, 0.1, 100.0);
    return ch;
  };

  SuiteResult det = suite("determinant", 1e-9);
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const DirtyPaperChannel ch = random_channel();
    track(det, std::abs(capacity(ch).nats() - oracle::determinant_capacity(ch).nats()),
          describe(ch));
  }
  finish(det);

  SuiteResult grid = suite("alpha_grid", 1e-4);
  SuiteResult attain = suite("alpha_rate", 1e-10);
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const DirtyPaperChannel ch = random_channel();
    const double best = optimal_alpha(ch);
    track(grid, std::abs(oracle::grid_argmax_alpha(ch, -1.0, 1.0, 1e-4) - best), describe(ch));
    track(attain, std::abs(rate_of_alpha(ch, best).nats() - capacity(ch).nats()), describe(ch));
  }
  finish(grid);
  finish(attain);

  SuiteResult expo = suite("exponent", 1e-6);
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const double snr = std::exp(uniform(rng, std::log(0.1), std::log(100.0)));
    const double rate = uniform(rng, 1e-3, 1.0) * 0.5 * std::log1p(snr);
    const double closed = random_coding_exponent({snr, rate});
    std::ostringstream where;
    where << "A1=" << format_number(snr) << " R=" << format_number(rate);
    track(expo, std::abs(closed - oracle::gallager_exponent_search(snr, rate)), where.str());
  }
  finish(expo);

  // Below 1e6 samples the tolerance grows like the standard error.
  SuiteResult mc = suite(
      "monte_carlo", 5e-3 * std::max(1.0, std::sqrt(1e6 / static_cast<double>(opts.samples))));
  const auto representative = oracle::representative_channels();
  const std::size_t mc_channels = std::min<std::size_t>(opts.trials, representative.size());
  for (std::size_t i = 0; i < mc_channels; ++i) {
    const DirtyPaperChannel& ch = representative[i];
    const double est =
        oracle::mc_binning_rate(ch, optimal_alpha(ch), {derive_seed(opts.seed, i), opts.samples});
    track(mc, std::abs(est - capacity(ch).nats()), describe(ch));
  }
  finish(mc);

  return {det, grid, attain, expo, mc};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noisy dirty-paper coding and cognitive channel rate calculator", "ndpc"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonFlags common;
  app.add_option("--units", common.units, "nats or bits")->capture_default_str();
  app.add_flag("--json", common.json, "emit JSON");
  app.add_flag("--csv", common.csv, "emit CSV");
  app.add_option("--seed", common.seed, "Monte-Carlo seed")->capture_default_str();
  app.add_option("--samples", common.samples, "Monte-Carlo sample count")->capture_default_str();

  ChannelFlags capacity_flags;
  auto* capacity_cmd = app.add_subcommand("capacity", "capacity with noisy side information");
  capacity_flags.attach(capacity_cmd);

  ChannelFlags alpha_channel;
  AlphaFlags alpha_flags;
  auto* alpha_cmd = app.add_subcommand("alpha", "optimal alpha and the binning rate R(alpha)");
  alpha_channel.attach(alpha_cmd);
  alpha_cmd->add_option("--alpha", alpha_flags.alpha, "evaluate R(alpha) at this alpha");
  alpha_cmd->add_option("--grid-lo", alpha_flags.grid_lo)->capture_default_str();
  alpha_cmd->add_option("--grid-hi", alpha_flags.grid_hi)->capture_default_str();
  alpha_cmd->add_option("--grid-step", alpha_flags.grid_step)->capture_default_str();

  ExponentFlags exponent_flags;
  auto* exponent_cmd = app.add_subcommand("exponent", "random-coding error exponent");
  exponent_cmd->add_option("--A1", exponent_flags.snr, "receive SNR")->capture_default_str();
  exponent_cmd->add_option("--R", exponent_flags.rate, "rate, nats per use")->capture_default_str();
  exponent_cmd->add_option("--symbols", exponent_flags.symbols, "block length for the P_e bound");

  NetworkFlags cognitive_flags;
  auto* cognitive_cmd = app.add_subcommand("cognitive", "achievable secondary rate");
  cognitive_flags.attach(cognitive_cmd);

  NetworkFlags sweep_network;
  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one cognitive parameter (CSV)");
  sweep_network.attach(sweep_cmd);
  sweep_cmd->add_option("--var", sweep_flags.variable, "m, hAD, hAC or n")->required();
  sweep_cmd->add_option("--from", sweep_flags.from)->capture_default_str();
  sweep_cmd->add_option("--to", sweep_flags.to)->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_flags.steps)->capture_default_str();

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "run the oracle suites");
  verify_cmd->add_option("--trials", verify_opts.trials)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "ndpc: " << e.what() << "\nRun with --help for more information.\n";
    return kUsageError;
  }

  try {
    const Format format = common.format();
    const Units units = common.parsed_units();
    if (*sweep_cmd) {
      write_sweep(sweep_network.net, sweep_flags, common, out);
      return kSuccess;
    }
    if (*verify_cmd) {
      verify_opts.seed = common.seed;
      verify_opts.samples = common.samples;
      bool passed = false;
      const OutputRecord rec = cmd_verify(verify_opts, err, passed);
      write_record(rec, format, out);
      return passed ? kSuccess : kVerificationFailed;
    }
    OutputRecord rec;
    if (*capacity_cmd) rec = cmd_capacity(capacity_flags, units);
    if (*alpha_cmd) rec = cmd_alpha(alpha_channel, alpha_flags, units);
    if (*exponent_cmd) rec = cmd_exponent(exponent_flags, units);
    if (*cognitive_cmd) rec = cmd_cognitive(cognitive_flags.net, units);
    write_record(rec, format, out);
    return kSuccess;
  } catch (const UsageError& e) {
    err << "ndpc: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "ndpc: " << e.what() << '\n';
    return kNumericError;
  } catch (const DegenerateDistribution& e) {
    err << "ndpc: " << e.what() << '\n';
    return kNumericError;
  } catch (const ConsistencyError& e) {
    err << "ndpc: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace ndpc::cli
