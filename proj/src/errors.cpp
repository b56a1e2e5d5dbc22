#include "qbloch/errors.hpp"

namespace qbloch {

namespace {

std::string summarize(const std::vector<SchemaIssue>& issues) {
  std::string s = "invalid q-term";
  for (const auto& i : issues) s += "; " + i.pointer + ": " + i.message;
  return s;
}

}  // namespace

SchemaError::SchemaError(std::vector<SchemaIssue> issues)
    : Error(summarize(issues)), issues_(std::move(issues)) {}

}  // namespace qbloch
