#pragma once

// Serialization of the file formats the CLI speaks: instance JSON, schedule
// JSON (with its comparison metrics) and sweep CSV. The formats are meant to
// interoperate with other implementations, so field names, quoting and float
// formatting are fixed here.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "loadshift/core.hpp"
#include "loadshift/experiments.hpp"
#include "loadshift/metrics.hpp"

namespace loadshift {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return buffer.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing " + path);
}

// ---------------------------------------------------------------------------
// Instance JSON

inline nlohmann::json to_json(const Instance& inst) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& task : inst.tasks) {
    tasks.push_back({{"id", task.id},
                     {"energy", task.energy},
                     {"duration", task.duration},
                     {"preferred_start", task.preferred_start},
                     {"deviation", task.deviation},
                     {"is_flexible", task.is_flexible}});
  }
  return {{"horizon", inst.horizon}, {"essential", inst.essential}, {"tasks", std::move(tasks)}};
}

// Builds and validates an Instance, reporting every structural and semantic
// problem at once.
inline Instance instance_from_json(const nlohmann::json& j) {
  std::vector<std::string> issues;
  if (!j.is_object()) throw ValidationError({"instance JSON must be an object"});

  Instance inst;
  if (!j.contains("horizon") || !j["horizon"].is_number_integer())
    issues.push_back("\"horizon\" must be an integer");
  else
    inst.horizon = j["horizon"].get<int>();

  if (!j.contains("essential") || !j["essential"].is_array())
    issues.push_back("\"essential\" must be an array of numbers");
  else
    for (const auto& v : j["essential"]) {
      if (!v.is_number()) {
        issues.push_back("\"essential\" must contain only numbers");
        break;
      }
      inst.essential.push_back(v.get<double>());
    }

  if (!j.contains("tasks") || !j["tasks"].is_array()) {
    issues.push_back("\"tasks\" must be an array of task objects");
  } else {
    int index = 0;
    for (const auto& t : j["tasks"]) {
      const std::string tag = "tasks[" + std::to_string(index++) + "]";
      if (!t.is_object()) {
        issues.push_back(tag + " must be an object");
        continue;
      }
      FlexTask task;
      const auto require_int = [&](const char* field, int& out) {
        if (!t.contains(field) || !t[field].is_number_integer())
          issues.push_back(tag + ".\"" + field + "\" must be an integer");
        else
          out = t[field].get<int>();
      };
      require_int("id", task.id);
      require_int("duration", task.duration);
      require_int("preferred_start", task.preferred_start);
      require_int("deviation", task.deviation);
      if (!t.contains("energy") || !t["energy"].is_number())
        issues.push_back(tag + ".\"energy\" must be a number");
      else
        task.energy = t["energy"].get<double>();
      if (!t.contains("is_flexible") || !t["is_flexible"].is_boolean())
        issues.push_back(tag + ".\"is_flexible\" must be a boolean");
      else
        task.is_flexible = t["is_flexible"].get<bool>();
      inst.tasks.push_back(task);
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
  validate_or_throw(inst);
  return inst;
}

inline Instance parse_instance(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError({"instance file is not valid JSON"});
  return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// Schedule JSON

inline nlohmann::json schedule_to_json(const Schedule& sched, const ScheduleComparison& cmp) {
  nlohmann::json starts = nlohmann::json::object();
  for (const auto& [id, start] : sched.starts) starts[std::to_string(id)] = start;
  return {{"label", std::string(to_string(sched.label))},
          {"load", sched.load},
          {"starts", std::move(starts)},
          {"peak", cmp.peak},
          {"gamma", cmp.gamma},
          {"zeta", cmp.zeta}};
}

inline std::pair<Schedule, ScheduleComparison> schedule_from_json(const nlohmann::json& j) {
  std::vector<std::string> issues;
  if (!j.is_object()) throw ValidationError({"schedule JSON must be an object"});
  Schedule sched;
  ScheduleComparison cmp;
  if (!j.contains("label") || !j["label"].is_string())
    issues.push_back("\"label\" must be a string");
  else
    try {
      sched.label = label_from_string(j["label"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      issues.push_back(e.what());
    }
  if (!j.contains("load") || !j["load"].is_array())
    issues.push_back("\"load\" must be an array of numbers");
  else
    for (const auto& v : j["load"]) {
      if (!v.is_number()) {
        issues.push_back("\"load\" must contain only numbers");
        break;
      }
      sched.load.push_back(v.get<double>());
    }
  if (!j.contains("starts") || !j["starts"].is_object()) {
    issues.push_back("\"starts\" must be an object mapping task id to start slot");
  } else {
    for (const auto& [key, value] : j["starts"].items()) {
      if (!value.is_number_integer()) {
        issues.push_back("\"starts\" values must be integers");
        break;
      }
      try {
        sched.starts[std::stoi(key)] = value.get<int>();
      } catch (const std::exception&) {
        issues.push_back("\"starts\" key \"" + key + "\" is not a task id");
      }
    }
  }
  const auto require_number = [&](const char* field, double& out) {
    if (!j.contains(field) || !j[field].is_number())
      issues.push_back("\"" + std::string(field) + "\" must be a number");
    else
      out = j[field].get<double>();
  };
  require_number("peak", cmp.peak);
  require_number("gamma", cmp.gamma);
  require_number("zeta", cmp.zeta);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return {std::move(sched), cmp};
}

inline std::pair<Schedule, ScheduleComparison> parse_schedule(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError({"schedule file is not valid JSON"});
  return schedule_from_json(j);
}

// ---------------------------------------------------------------------------
// Sweep CSV (RFC-4180 quoting, floats with 6 significant digits)

inline std::string format_sig6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

inline std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline constexpr std::string_view kSweepCsvHeader = "param,value,trial,algorithm,peak,gamma,zeta";

inline std::string to_csv(const SweepResult& sweep) {
  std::string out{kSweepCsvHeader};
  out += '\n';
  for (const auto& row : sweep.rows) {
    out += csv_field(row.param);
    out += ',';
    out += format_sig6(row.value);
    out += ',';
    out += std::to_string(row.trial);
    out += ',';
    out += csv_field(row.algorithm);
    out += ',';
    out += format_sig6(row.peak);
    out += ',';
    out += format_sig6(row.gamma);
    out += ',';
    out += format_sig6(row.zeta);
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split_csv_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted)
    throw ValidationError({"CSV line " + std::to_string(line_no) + ": unterminated quote"});
  return fields;
}

inline double parse_csv_double(const std::string& field, std::size_t line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size())
    throw ValidationError({"CSV line " + std::to_string(line_no) + ": \"" + field +
                           "\" is not a number"});
  return value;
}

}  // namespace detail

inline SweepResult sweep_from_csv(std::string_view text) {
  SweepResult result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kSweepCsvHeader)
        throw ValidationError({"CSV header mismatch, expected \"" +
                               std::string(kSweepCsvHeader) + "\""});
      continue;
    }
    auto fields = detail::split_csv_record(line, line_no);
    if (fields.size() != 7)
      throw ValidationError({"CSV line " + std::to_string(line_no) + ": expected 7 fields, got " +
                             std::to_string(fields.size())});
    SweepRow row;
    row.param = fields[0];
    row.value = detail::parse_csv_double(fields[1], line_no);
    row.trial = static_cast<int>(detail::parse_csv_double(fields[2], line_no));
    row.algorithm = fields[3];
    row.peak = detail::parse_csv_double(fields[4], line_no);
    row.gamma = detail::parse_csv_double(fields[5], line_no);
    row.zeta = detail::parse_csv_double(fields[6], line_no);
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace loadshift
