#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qbloch/bloch.hpp"
#include "qbloch/laurent.hpp"
#include "qbloch/qterm.hpp"
#include "qbloch/series.hpp"
#include "qbloch/variational.hpp"

namespace qbloch {

using json = nlohmann::json;
using AnyTerm = std::variant<QTerm, SpecialQTerm>;

// q-term documents. A document with a "quads" array is a special q-term;
// QL entries are strings "p/2" or "k" (plain integers are accepted on input).
json to_json(const QTerm& t);
json to_json(const SpecialQTerm& t);
json to_json(const AnyTerm& t);

/// Collects every schema violation (as JSON pointers) before throwing
/// SchemaError; then validates invariants (SchemaError / PolytopeError).
AnyTerm term_from_json(const json& j);
AnyTerm parse_qterm(const std::filesystem::path& path);

/// The plain q-term of a document (special terms are expanded).
QTerm as_plain(const AnyTerm& t);

// Laurent polynomials: {"terms": [[exponent, "coefficient"]]}, sorted by exponent.
json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j);

json to_json(cplx z);  // [re, im]
json to_json(const CriticalPoint& cp);
json to_json(const ExtBlochElement& e);
json to_json(const BlochElement& e);
json to_json(const ModZ2Value& v);
json to_json(const ModZ1Value& v);
json to_json(const CVSet& s);
json to_json(const SingularityEstimate& s);
json to_json(const ConjectureReport& r);

/// CSV with columns n,re,im,log_abs,growth_estimate (growth_estimate is
/// log|c_n| - log|c_{n-1}|; empty where undefined).
std::string to_csv(const SeriesData& s);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qbloch
