#include "cli/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ndpc::cli {

namespace {

nlohmann::ordered_json encode_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_number(const nlohmann::ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("not a number: " + s);
}

NumberMap decode_map(const nlohmann::ordered_json& j) {
  NumberMap m;
  for (const auto& [k, v] : j.items()) m.emplace_back(k, decode_number(v));
  return m;
}

std::size_t key_width(const NumberMap& a, const LabelMap& b) {
  std::size_t w = 0;
  for (const auto& [k, v] : a) w = std::max(w, k.size());
  for (const auto& [k, v] : b) w = std::max(w, k.size());
  return w;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

nlohmann::ordered_json to_json(const OutputRecord& rec) {
  nlohmann::ordered_json j;
  j["command"] = rec.command;
  j["units"] = std::string(to_string(rec.units));
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rec.parameters) j["parameters"][k] = encode_number(v);
  j["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rec.results) j["results"][k] = encode_number(v);
  j["labels"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rec.labels) j["labels"][k] = v;
  return j;
}

OutputRecord record_from_json(const nlohmann::ordered_json& j) {
  OutputRecord rec;
  rec.command = j.at("command").get<std::string>();
  const auto units = parse_units(j.at("units").get<std::string>());
  if (!units) throw std::invalid_argument("bad units in record");
  rec.units = *units;
  rec.parameters = decode_map(j.at("parameters"));
  rec.results = decode_map(j.at("results"));
  for (const auto& [k, v] : j.at("labels").items()) rec.labels.emplace_back(k, v.get<std::string>());
  return rec;
}

void write_record(const OutputRecord& rec, Format format, std::ostream& out) {
  switch (format) {
    case Format::json:
      out << to_json(rec).dump(2) << '\n';
      return;
    case Format::csv: {
      std::string header = "command";
      std::string row = rec.command;
      for (const auto& [k, v] : rec.parameters) {
        header += ',' + k;
        row += ',' + format_number(v);
      }
      for (const auto& [k, v] : rec.labels) {
        header += ',' + k;
        row += ',' + v;
      }
      for (const auto& [k, v] : rec.results) {
        header += ',' + k;
        row += ',' + format_number(v);
      }
      out << header << '\n' << row << '\n';
      return;
    }
    case Format::table: {
      const std::size_t w = std::max(key_width(rec.parameters, {}), key_width(rec.results, rec.labels));
      auto line = [&](const std::string& k, const std::string& v) {
        out << "  " << k << std::string(w - k.size() + 2, ' ') << v << '\n';
      };
      out << rec.command << " (units: " << to_string(rec.units) << ")\n";
      if (!rec.parameters.empty()) out << "parameters\n";
      for (const auto& [k, v] : rec.parameters) line(k, format_number(v));
      out << "results\n";
      for (const auto& [k, v] : rec.labels) line(k, v);
      for (const auto& [k, v] : rec.results) line(k, format_number(v));
      return;
    }
  }
}

}  // namespace ndpc::cli
