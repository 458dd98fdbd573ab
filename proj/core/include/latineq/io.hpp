#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "latineq/certifiers.hpp"
#include "latineq/extremal.hpp"
#include "latineq/lattice.hpp"

namespace latineq::io {

using Json = nlohmann::json;

// Function files: {"dim": n, "entries": [{"z": [..], "v": "p/q"}, ...]}
// Set files:      {"dim": n, "points": [[..], ...]}
// Values may be "p/q" strings, decimal strings, or JSON integers. Parse
// failures throw InvalidInput naming the offending field.

SparseFunction function_from_json(const Json& j);
Json to_json(const SparseFunction& f);

LatticeSet set_from_json(const Json& j);
Json to_json(const LatticeSet& a);

/// Either document kind, told apart by its "entries" / "points" key.
std::variant<SparseFunction, LatticeSet> input_from_json(const Json& j);
std::variant<SparseFunction, LatticeSet> read_input_file(const std::string& path);

Json to_json(const ExactCertificate& cert);
Json to_json(const InequalityReport& report);
Json to_json(const SearchTrace& trace);
Json to_json(const FuzzSummary& summary);
Json to_json(const EnumerationReport& report);

/// Floats with 17 significant digits.
std::string format_double(double x);

/// "inequality,n,p,lhs,rhs,deficit,relation,extremal_class"
std::string report_csv_header();
std::string to_csv_row(const InequalityReport& report);

/// "set_id,size,shape_class,gn_equal,iso_equal,lw_equal"
std::string enumeration_csv_header();
std::string to_csv_row(const EnumeratedSet& set);

}  // namespace latineq::io
