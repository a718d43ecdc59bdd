#include "cmnorm/output.hpp"

#include <sstream>
#include <stdexcept>

namespace cmnorm {

const char* to_string(Status s) {
  switch (s) {
    case Status::PASS: return "PASS";
    case Status::FAIL: return "FAIL";
    case Status::INFO: return "INFO";
  }
  return "?";
}

nlohmann::json OutputRecord::to_json() const {
  // nlohmann::json objects iterate in sorted key order, which is exactly the
  // stability the round-trip guarantee needs.
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["result"] = result;
  j["status"] = to_string(status);
  j["provenance"] = provenance;
  return j;
}

std::string OutputRecord::to_json_text() const { return to_json().dump(2) + "\n"; }

OutputRecord OutputRecord::from_json(const nlohmann::json& j) {
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
  r.result = j.at("result");
  std::string s = j.at("status").get<std::string>();
  if (s == "PASS")
    r.status = Status::PASS;
  else if (s == "FAIL")
    r.status = Status::FAIL;
  else if (s == "INFO")
    r.status = Status::INFO;
  else
    throw std::invalid_argument("OutputRecord: unknown status " + s);
  r.provenance = j.at("provenance").get<std::string>();
  return r;
}

namespace {

void flatten(const std::string& prefix, const nlohmann::json& j, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(prefix + "[" + std::to_string(i) + "]", j[i], out);
  } else {
    out << "  " << prefix << ": ";
    if (j.is_string())
      out << j.get<std::string>();
    else
      out << j.dump();
    out << "\n";
  }
}

}  // namespace

std::string OutputRecord::to_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  for (const auto& [k, v] : inputs) out << "  " << k << ": " << v << "\n";
  out << "status: " << to_string(status) << "\n";
  flatten("", result, out);
  out << "claim: " << provenance << "\n";
  return out.str();
}

}  // namespace cmnorm
