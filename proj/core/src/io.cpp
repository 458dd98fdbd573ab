#include "latineq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "latineq/errors.hpp"

namespace latineq::io {
namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw InvalidInput("field \"" + field + "\": " + what);
}

std::size_t read_dim(const Json& j) {
  if (!j.is_object()) throw InvalidInput("input document must be a JSON object");
  if (!j.contains("dim")) field_error("dim", "missing");
  const Json& d = j.at("dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) field_error("dim", "must be a positive integer");
  return d.get<std::size_t>();
}

LatticePoint read_point(const Json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array()) field_error(field, "must be an array of integers");
  if (j.size() != dim) {
    field_error(field, "has length " + std::to_string(j.size()) + " but dim is " + std::to_string(dim));
  }
  std::vector<Coord> coords;
  coords.reserve(dim);
  for (const auto& c : j) {
    if (!c.is_number_integer()) field_error(field, "must be an array of integers");
    coords.push_back(c.get<Coord>());
  }
  return LatticePoint(std::move(coords));
}

Rational read_value(const Json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InvalidInput& e) {
      field_error(field, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(BigInt(j.dump(), 10));
  field_error(field, "must be a rational string such as \"3/4\" or an integer");
}

Json point_json(const LatticePoint& z) {
  Json out = Json::array();
  for (Coord c : z.coords()) out.push_back(c);
  return out;
}

}  // namespace

SparseFunction function_from_json(const Json& j) {
  const std::size_t dim = read_dim(j);
  if (!j.contains("entries") || !j.at("entries").is_array()) field_error("entries", "missing or not an array");
  std::vector<SparseFunction::Entry> entries;
  std::size_t k = 0;
  for (const auto& e : j.at("entries")) {
    const std::string prefix = "entries[" + std::to_string(k++) + "]";
    if (!e.is_object() || !e.contains("z") || !e.contains("v")) field_error(prefix, "needs keys \"z\" and \"v\"");
    entries.push_back({read_point(e.at("z"), dim, prefix + ".z"), read_value(e.at("v"), prefix + ".v")});
  }
  return SparseFunction(dim, std::move(entries));
}

Json to_json(const SparseFunction& f) {
  Json entries = Json::array();
  for (const auto& e : f) entries.push_back({{"z", point_json(e.point)}, {"v", to_string(e.value)}});
  return {{"dim", f.dim()}, {"entries", std::move(entries)}};
}

LatticeSet set_from_json(const Json& j) {
  const std::size_t dim = read_dim(j);
  if (!j.contains("points") || !j.at("points").is_array()) field_error("points", "missing or not an array");
  std::vector<LatticePoint> pts;
  std::size_t k = 0;
  for (const auto& p : j.at("points")) pts.push_back(read_point(p, dim, "points[" + std::to_string(k++) + "]"));
  return LatticeSet(dim, std::move(pts));
}

Json to_json(const LatticeSet& a) {
  Json pts = Json::array();
  for (const auto& z : a) pts.push_back(point_json(z));
  return {{"dim", a.dim()}, {"points", std::move(pts)}};
}

std::variant<SparseFunction, LatticeSet> input_from_json(const Json& j) {
  if (j.is_object() && j.contains("entries")) return function_from_json(j);
  if (j.is_object() && j.contains("points")) return set_from_json(j);
  throw InvalidInput("input document needs an \"entries\" or a \"points\" array");
}

std::variant<SparseFunction, LatticeSet> read_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
  return input_from_json(j);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const ExactCertificate& cert) {
  return {{"reduction", to_string(cert.reduction)},
          {"lhs", to_string(cert.lhs)},
          {"rhs", to_string(cert.rhs)}};
}

Json to_json(const InequalityReport& r) {
  Json out = {{"inequality", to_string(r.inequality)},
              {"n", r.n},
              {"p", r.p ? Json(to_string(*r.p)) : Json(nullptr)},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"deficit", r.deficit},
              {"relation", to_string(r.relation)},
              {"extremal_class", to_string(r.extremal_class)}};
  out["exact_certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  return out;
}

Json to_json(const SearchTrace& t) {
  Json history = Json::array();
  for (const auto& [it, v] : t.history) history.push_back({it, v});
  Json best = std::visit([](const auto& x) { return to_json(x); }, t.best_input);
  return {{"seed", t.seed},
          {"objective", to_string(t.objective)},
          {"iterations", t.iterations},
          {"best_value", t.best_value},
          {"best_iteration", t.best_iteration},
          {"best_input", std::move(best)},
          {"history", std::move(history)}};
}

Json to_json(const FuzzSummary& s) {
  Json per = Json::object();
  for (const auto& [ineq, st] : s.per_inequality) {
    per[std::string(to_string(ineq))] = {
        {"instances", st.instances},
        {"min_deficit", st.min_deficit},
        {"max_deficit", st.max_deficit},
        {"min_deficit_non_extremal",
         st.min_deficit_non_extremal ? Json(*st.min_deficit_non_extremal) : Json(nullptr)},
        {"exact_equal", st.exact_equal},
        {"violations", st.violations},
        {"worst_index", st.worst_index}};
  }
  Json exps = Json::array();
  for (const auto& p : s.config.exponents) exps.push_back(to_string(p));
  return {{"seed", s.config.seed},
          {"count", s.config.count},
          {"n", s.config.n},
          {"tol", s.config.tol},
          {"window", s.config.window},
          {"density", s.config.density},
          {"denominator", s.config.denominator},
          {"indicator_fraction", s.config.indicator_fraction},
          {"exponents", std::move(exps)},
          {"per_inequality", std::move(per)},
          {"line_bound", {{"checks", s.line_bound_checks}, {"failures", s.line_bound_failures}}},
          {"chain", {{"checks", s.chain_checks}, {"failures", s.chain_failures}}},
          {"violations", s.total_violations()},
          {"worst_index", s.worst_index},
          {"worst_input", s.worst_input ? to_json(*s.worst_input) : Json(nullptr)}};
}

Json to_json(const EnumerationReport& r) {
  Json subsets = Json::object();
  Json classes = Json::object();
  for (const auto& [shape, c] : r.subsets_per_shape) subsets[std::string(to_string(shape))] = c;
  for (const auto& [shape, c] : r.classes_per_shape) classes[std::string(to_string(shape))] = c;
  return {{"n", r.config.n},
          {"box", r.config.box_side},
          {"max_size", r.config.max_size},
          {"subsets", r.subsets},
          {"translation_classes", r.classes.size()},
          {"subsets_per_shape", std::move(subsets)},
          {"classes_per_shape", std::move(classes)},
          {"gn_equal_subsets", r.gn_equal_subsets},
          {"iso_equal_subsets", r.iso_equal_subsets},
          {"lw_equal_subsets", r.lw_equal_subsets},
          {"mismatches", r.mismatches}};
}

std::string report_csv_header() { return "inequality,n,p,lhs,rhs,deficit,relation,extremal_class"; }

std::string to_csv_row(const InequalityReport& r) {
  std::ostringstream out;
  out << to_string(r.inequality) << ',' << r.n << ',' << (r.p ? to_string(*r.p) : "") << ','
      << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.deficit) << ','
      << to_string(r.relation) << ',' << to_string(r.extremal_class);
  return out.str();
}

std::string enumeration_csv_header() { return "set_id,size,shape_class,gn_equal,iso_equal,lw_equal"; }

std::string to_csv_row(const EnumeratedSet& s) {
  std::ostringstream out;
  out << s.set_id << ',' << s.size << ',' << to_string(s.shape) << ',' << (s.gn_equal ? 1 : 0) << ','
      << (s.iso_equal ? 1 : 0) << ',' << (s.lw_equal ? 1 : 0);
  return out.str();
}

}  // namespace latineq::io
