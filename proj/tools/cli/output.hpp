#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ndpc/rate.hpp"

namespace ndpc::cli {

enum class Format { table, json, csv };

using NumberMap = std::vector<std::pair<std::string, double>>;
using LabelMap = std::vector<std::pair<std::string, std::string>>;

/// One command's result. Maps keep insertion order so output is stable.
struct OutputRecord {
  std::string command;
  NumberMap parameters;
  NumberMap results;
  LabelMap labels;
  Units units = Units::nats;

  void add_rate(std::string key, Rate r) { results.emplace_back(std::move(key), r.in(units)); }
  void add(std::string key, double v) { results.emplace_back(std::move(key), v); }
  void param(std::string key, double v) { parameters.emplace_back(std::move(key), v); }
  void label(std::string key, std::string v) { labels.emplace_back(std::move(key), std::move(v)); }

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

/// 12 significant digits, '.' separator, no locale; "inf"/"-inf"/"nan".
std::string format_number(double v);

/// Non-finite numbers are encoded as the strings "inf", "-inf", "nan".
nlohmann::ordered_json to_json(const OutputRecord& rec);
OutputRecord record_from_json(const nlohmann::ordered_json& j);

void write_record(const OutputRecord& rec, Format format, std::ostream& out);

}  // namespace ndpc::cli
