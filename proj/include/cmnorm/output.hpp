#pragma once

#include <json.hpp>

#include <map>
#include <string>

namespace cmnorm {

enum class Status { PASS, FAIL, INFO };

const char* to_string(Status s);

// One result the CLI emits: what ran, with which inputs, what came out, the
// verdict, and a one-line statement of the claim being exercised.
struct OutputRecord {
  std::string command;
  std::map<std::string, std::string> inputs;
  nlohmann::json result;
  Status status = Status::INFO;
  std::string provenance;

  // Machine form. Emitting, parsing, and emitting again is byte-identical
  // (object keys are sorted, indentation fixed).
  nlohmann::json to_json() const;
  std::string to_json_text() const;
  static OutputRecord from_json(const nlohmann::json& j);

  // Human form: key-value lines plus a flattened result.
  std::string to_text() const;
};

}  // namespace cmnorm
