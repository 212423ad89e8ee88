#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ctop/stratified.hpp"
#include "ctop/weight.hpp"

namespace ctop::cli {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Table> tables;
};

std::string toTsv(const Report& r);
std::string toJson(const Report& r);

struct Outcome {
  int exit = 0;         // 0 ok, 2 validation, 3 computation, 4 internal
  std::string output;   // report text
  std::string error;    // error JSON when exit != 0
};

// args exclude the program name; --output is honoured (atomic write) and the
// report is also returned in Outcome::output
Outcome run(const std::vector<std::string>& args);

// JSON <-> objects; parse functions throw SchemaError with a JSON pointer in where()
using Json = nlohmann::ordered_json;
SimplicialComplex parseComplex(const Json& j, const std::string& ptr = "");
StratifiedComplex parseStratified(const Json& j);
HyperresolutionDescriptor parseDescriptor(const Json& j);
Perversity parsePerversity(const std::string& s, int n);
Json complexToJson(const SimplicialComplex& k);
Json stratifiedToJson(const StratifiedComplex& x);
Json descriptorToJson(const HyperresolutionDescriptor& h);
// published schema for a kind: complex, filtered, stratified, descriptor, perversity, report, error
std::string schema(const std::string& kind);
// kind detected from the keys present
std::string detectKind(const Json& j);
void validateReport(const Json& j);

}  // namespace ctop::cli
