#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "cli/output.hpp"

namespace ndpc::cli {
namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::ordered_json invoke_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  const Invocation r = invoke(std::move(args));
  EXPECT_EQ(r.code, kSuccess) << r.err;
  return nlohmann::ordered_json::parse(r.out);
}

const std::vector<std::string> kUnitChannel{"capacity", "--P", "1", "--Q", "1",
                                            "--N0", "1", "--N1", "1", "--N2", "1"};

TEST(Capacity, UnitChannel) {
  const auto j = invoke_json(kUnitChannel);
  EXPECT_EQ(j["command"], "capacity");
  EXPECT_NEAR(j["results"]["capacity"].get<double>(), 0.2798, 1e-4);
  EXPECT_NEAR(j["results"]["mu"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(j["results"]["alpha"].get<double>(), 1.0 / 7.0, 1e-12);
}

TEST(Capacity, PerfectTransmitterKnowledge) {
  const auto j = invoke_json({"capacity", "--P", "3", "--Q", "50", "--N0", "2", "--N1", "0"});
  EXPECT_EQ(j["parameters"]["N2"], "inf");
  EXPECT_EQ(j["results"]["mu"].get<double>(), 0.0);
  EXPECT_NEAR(j["results"]["capacity"].get<double>(), 0.5 * std::log1p(1.5), 1e-15);
}

TEST(Capacity, TableOutput) {
  const Invocation r = invoke(kUnitChannel);
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_NE(r.out.find("capacity"), std::string::npos);
  EXPECT_NE(r.out.find("0.279807893968"), std::string::npos);
}

TEST(Capacity, CsvOutput) {
  std::vector<std::string> args = kUnitChannel;
  args.insert(args.begin(), "--csv");
  const Invocation r = invoke(args);
  ASSERT_EQ(r.code, kSuccess);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header.rfind("command,P,Q,N0,N1,N2,", 0), 0u);
  EXPECT_EQ(row.rfind("capacity,1,1,1,1,1,0.279807893968,", 0), 0u);
}

TEST(Cognitive, UpperBoundInstance) {
  const auto j = invoke_json({"cognitive", "--PA", "10", "--PC", "2", "--NC", "1", "--ND", "1",
                              "--hCD", "1", "--hAD", "0.72", "--hAC", "0.1", "--R", "0.5"});
  EXPECT_EQ(j["labels"]["case"], "UB_ACHIEVING");
  EXPECT_DOUBLE_EQ(j["results"]["rate"].get<double>(), 0.5 * std::log(3.0));
}

TEST(Cognitive, NoInterference) {
  const auto j = invoke_json({"cognitive", "--hAD", "0", "--hAC", "0"});
  EXPECT_EQ(j["labels"]["case"], "TREAT_AS_NOISE");
  EXPECT_DOUBLE_EQ(j["results"]["rate"].get<double>(), 0.5 * std::log(3.0));
}

TEST(Cognitive, RateWithinBounds) {
  for (const char* h_ad : {"0.1", "0.5", "0.7", "0.9", "1.3"}) {
    for (const char* h_ac : {"0", "0.4", "1.2"}) {
      const auto j = invoke_json({"cognitive", "--hAD", h_ad, "--hAC", h_ac});
      const auto& res = j["results"];
      EXPECT_LE(res["lower_bound"].get<double>(), res["rate"].get<double>());
      EXPECT_LE(res["rate"].get<double>(), res["upper_bound"].get<double>());
    }
  }
}

TEST(Units, BitsDifferByLn2OnRateFields) {
  const std::vector<std::vector<std::string>> commands{
      kUnitChannel,
      {"alpha", "--P", "2", "--Q", "3", "--N0", "1", "--N1", "0.5", "--N2", "4"},
      {"exponent", "--A1", "4", "--R", "0.2"},
      {"cognitive", "--hAD", "0.7", "--hAC", "1.2"},
  };
  const std::set<std::string> rate_fields{"capacity",      "capacity_tx_only", "capacity_rx_only",
                                          "lower_bound",   "upper_bound",      "rate_at_alpha_opt",
                                          "critical_rate", "rate"};
  for (const auto& cmd : commands) {
    auto with_units = [&](const char* units) {
      std::vector<std::string> args{"--units", units};
      args.insert(args.end(), cmd.begin(), cmd.end());
      return invoke_json(args);
    };
    const auto nats = with_units("nats");
    const auto bits = with_units("bits");
    EXPECT_EQ(bits["units"], "bits");
    int checked = 0;
    for (const auto& [key, value] : nats["results"].items()) {
      const double n = value.get<double>();
      const double b = bits["results"][key].get<double>();
      if (rate_fields.count(key) != 0) {
        EXPECT_NEAR(b * std::numbers::ln2, n, 1e-15 * std::max(1.0, n)) << cmd[0] << ' ' << key;
        ++checked;
      } else {
        EXPECT_EQ(b, n) << cmd[0] << ' ' << key;
      }
    }
    EXPECT_GT(checked, 0) << cmd[0];
  }
}

TEST(Determinism, IdenticalFlagsGiveIdenticalBytes) {
  const std::vector<std::vector<std::string>> commands{
      kUnitChannel,
      {"--csv", "sweep", "--var", "hAD", "--from", "0", "--to", "1.3", "--steps", "27"},
      {"--json", "verify", "--trials", "5", "--samples", "20000", "--seed", "7"},
  };
  for (const auto& cmd : commands) {
    const Invocation a = invoke(cmd);
    const Invocation b = invoke(cmd);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Json, RoundTripsRecords) {
  OutputRecord rec;
  rec.command = "capacity";
  rec.units = Units::bits;
  rec.param("P", 0.1);
  rec.param("N2", std::numeric_limits<double>::infinity());
  rec.add("tiny", 5e-324);
  rec.add("third", 1.0 / 3.0);
  rec.add("neg_inf", -std::numeric_limits<double>::infinity());
  rec.label("case", "BOTH_DPC");
  const OutputRecord back = record_from_json(nlohmann::ordered_json::parse(to_json(rec).dump()));
  EXPECT_EQ(back, rec);
}

TEST(Json, CommandOutputRoundTrips) {
  std::vector<std::string> args = kUnitChannel;
  args.insert(args.begin(), "--json");
  const Invocation r = invoke(args);
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(to_json(record_from_json(j)), j);
}

TEST(FormatNumber, Rules) {
  EXPECT_EQ(format_number(0.27980789396771133), "0.279807893968");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Sweep, CsvHeaderAndRows) {
  const Invocation r = invoke({"--csv", "sweep", "--var", "m", "--hAC", "1.2", "--hAD", "0.7", "--from",
                        "0", "--to", "3", "--steps", "4"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "value,case,rate_nats,m_opt,mu");
  EXPECT_EQ(rows[1], "0,ERROR,,,");
  EXPECT_EQ(rows[2].rfind("1,BOTH_DPC,", 0), 0u);

  const Invocation bits = invoke({"--csv", "--units", "bits", "sweep", "--var", "hAD", "--from", "0",
                           "--to", "1", "--steps", "3"});
  EXPECT_EQ(bits.out.rfind("value,case,rate_bits,m_opt,mu\n", 0), 0u);
}

TEST(Sweep, MIsSinglePeaked) {
  const auto j = invoke_json(
      {"sweep", "--var", "m", "--hAC", "1.2", "--hAD", "0.7", "--from", "1", "--to", "99",
       "--steps", "99"});
  const auto& rows = j["rows"];
  ASSERT_EQ(rows.size(), 99u);
  std::size_t peak = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k]["rate"].get<double>() > rows[peak]["rate"].get<double>()) peak = k;
  }
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double d = rows[k]["rate"].get<double>() - rows[k - 1]["rate"].get<double>();
    if (k <= peak) EXPECT_GE(d, 0.0) << k;
    else EXPECT_LE(d, 0.0) << k;
  }
  EXPECT_GT(peak, 0u);
  EXPECT_LT(peak, rows.size() - 1);
}

TEST(Sweep, GainAcAboveLowerBoundForStrongInterference) {
  const auto j = invoke_json({"sweep", "--var", "hAC", "--hAD", "0.9", "--from", "0", "--to",
                              "1.5", "--steps", "16"});
  const double lb = 0.5 * std::log1p(2.0 / 9.1);
  for (const auto& row : j["rows"]) EXPECT_GT(row["rate"].get<double>(), lb);
}

TEST(Verify, DefaultsPass) {
  const Invocation r = invoke({"--json", "verify", "--trials", "20"});
  EXPECT_EQ(r.code, kSuccess) << r.out;
  const auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_LT(j["results"]["monte_carlo_max_deviation"].get<double>(), 5e-3);
}

TEST(Verify, ToleranceScalesBelowMillionSamples) {
  const auto j = invoke_json({"verify", "--trials", "2", "--samples", "10000"});
  EXPECT_NEAR(j["results"]["monte_carlo_tolerance"].get<double>(), 5e-2, 1e-15);
}

TEST(ExitCodes, UsageAndDomainErrors) {
  EXPECT_EQ(invoke({"verify", "--trials", "0"}).code, kUsageError);
  EXPECT_EQ(invoke({"capacity", "--bogus", "1"}).code, kUsageError);
  EXPECT_EQ(invoke({}).code, kUsageError);
  EXPECT_EQ(invoke({"capacity", "--N1", "banana"}).code, kUsageError);
  EXPECT_EQ(invoke({"--units", "furlongs", "capacity"}).code, kUsageError);
  EXPECT_EQ(invoke({"sweep", "--var", "q", "--from", "0", "--to", "1", "--steps", "2"}).code,
            kUsageError);
  EXPECT_EQ(invoke({"sweep", "--var", "m", "--from", "1", "--to", "0", "--steps", "2"}).code,
            kUsageError);
  EXPECT_EQ(invoke({"verify", "--samples", "10"}).code, kNumericError);
  EXPECT_EQ(invoke({"capacity", "--P", "-1"}).code, kNumericError);
  EXPECT_EQ(invoke({"alpha", "--N1", "inf"}).code, kNumericError);
  EXPECT_EQ(invoke({"cognitive", "--n", "1"}).code, kNumericError);
  EXPECT_EQ(invoke({"--help"}).code, kSuccess);
}

TEST(ParseVariance, Tokens) {
  EXPECT_TRUE(std::isinf(parse_variance("inf")));
  EXPECT_EQ(parse_variance("2.5"), 2.5);
  EXPECT_THROW(parse_variance("2.5x"), UsageError);
  EXPECT_THROW(parse_variance("nan"), UsageError);
}

}  // namespace
}  // namespace ndpc::cli
