#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "latineq/calculus.hpp"
#include "latineq/certifiers.hpp"
#include "latineq/errors.hpp"
#include "latineq/extremal.hpp"
#include "latineq/io.hpp"

namespace latineq::cli {
namespace {

struct CheckOptions {
  std::string input;
  std::string ineq = "gn,sobolev,iso,bl,lw";
  std::string p = "1";
  double tol = kDefaultTolerance;
  bool normalize = false;
  bool exact = false;
  std::string format = "json";
  std::string out;
};

struct FuzzOptions {
  std::size_t count = 1000;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::size_t window = 4;
  double density = 0.5;
  unsigned denominator = 16;
  double indicator_fraction = 0.1;
  std::vector<std::string> exponents;
  std::size_t threads = 0;
  std::string format = "json";
  std::string out;
};

struct SearchOptions {
  std::string method = "anneal";
  std::size_t n = 2;
  std::size_t size = 9;
  std::uint64_t iters = 100000;
  std::uint64_t seed = 0;
  double t0 = 0.05;
  double alpha = 0.999;
  std::size_t box = 0;
  std::vector<Coord> sides;
  std::size_t samples = 100;
  std::string out;
};

struct EnumerateOptions {
  std::size_t n = 2;
  std::size_t box = 4;
  std::size_t max_size = 0;
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::string report;
  std::string out;
};

struct TableOptions {
  std::size_t n = 2;
  Coord min_side = 1;
  Coord max_side = 3;
  bool dedup = false;
  std::string ineq = "gn,sobolev,iso";
  std::string p = "1";
  std::string out;
};

std::vector<Inequality> parse_inequality_list(const std::string& text) {
  std::vector<Inequality> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto ineq = parse_inequality(item);
    if (!ineq) throw InvalidInput("field \"ineq\": unknown inequality \"" + item + "\"");
    if (std::find(out.begin(), out.end(), *ineq) == out.end()) out.push_back(*ineq);
  }
  if (out.empty()) throw InvalidInput("field \"ineq\": no inequality selected");
  return out;
}

Rational parse_exponent(const std::string& text) {
  Rational p;
  try {
    p = parse_rational(text);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("field \"p\": ") + e.what());
  }
  if (p <= 0) throw InvalidInput("field \"p\": exponent must be positive");
  return p;
}

void require_tol(double tol) {
  if (!(tol > 0)) throw InvalidInput("field \"tol\": tolerance must be positive");
}

void require_format(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw InvalidInput("field \"format\": expected json or csv, got \"" + format + "\"");
  }
}

std::size_t thread_cap(std::size_t requested) {
  std::size_t threads = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (const char* env = std::getenv("LATTICE_INEQ_THREADS")) {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) threads = std::min<std::size_t>(threads, cap);
  }
  return threads;
}

// Writes to --out when given, otherwise to the default stream.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidInput("field \"out\": cannot open " + path);
    }
  }
  std::ostream& stream(std::ostream& fallback) { return file_.is_open() ? file_ : fallback; }

 private:
  std::ofstream file_;
};

InequalityReport run_check(Inequality ineq, const SparseFunction& f, const LatticeSet& a,
                           const Rational& p, double tol, bool normalize) {
  switch (ineq) {
    case Inequality::kGagliardoNirenberg: return check_gn(f, tol);
    case Inequality::kSobolev: return check_sobolev(f, tol);
    case Inequality::kIsoperimetric: return check_isoperimetric(a, tol);
    case Inequality::kLogSobolevDirectional: return check_log_sobolev(f, p, true, tol, normalize);
    case Inequality::kLogSobolev: return check_log_sobolev(f, p, false, tol, normalize);
    case Inequality::kBrascampLieb: return check_bl(f, tol);
    case Inequality::kLogBrascampLieb: return check_log_bl(f, p, tol, normalize);
    case Inequality::kLoomisWhitney: return check_loomis_whitney(a, tol);
  }
  throw InvalidInput("unknown inequality");
}

int do_check(const CheckOptions& o, std::ostream& out) {
  require_tol(o.tol);
  require_format(o.format);
  const auto selection = parse_inequality_list(o.ineq);
  const Rational p = parse_exponent(o.p);
  auto input = io::read_input_file(o.input);

  SparseFunction f(1);
  if (auto* set = std::get_if<LatticeSet>(&input)) {
    if (set->empty()) throw DegenerateInput("degenerate input: empty set");
    f = indicator(*set);
  } else {
    f = std::get<SparseFunction>(input);
  }
  if (f.is_zero()) throw DegenerateInput("degenerate input: zero function");
  if (f.dim() < 2) {
    throw InvalidInput("field \"dim\": n = " + std::to_string(f.dim()) +
                       ", the inequalities are stated for n >= 2");
  }
  const LatticeSet a = f.support();

  std::vector<InequalityReport> reports;
  bool violated = false;
  for (Inequality ineq : selection) {
    auto r = run_check(ineq, f, a, p, o.tol, o.normalize);
    if (o.exact && !r.certificate) {
      throw InvalidInput(std::string("field \"exact\": ") + std::string(to_string(ineq)) +
                         " has no integer certificate for this input");
    }
    violated = violated || r.relation == Relation::kViolated;
    reports.push_back(std::move(r));
  }

  Sink sink(o.out);
  std::ostream& os = sink.stream(out);
  if (o.format == "csv") {
    os << "# lattice_ineq check tol=" << o.tol << '\n';
    os << io::report_csv_header() << '\n';
    for (const auto& r : reports) os << io::to_csv_row(r) << '\n';
  } else {
    io::Json doc = {{"command", "check"}, {"tol", o.tol}, {"input", o.input}};
    doc["reports"] = io::Json::array();
    for (const auto& r : reports) doc["reports"].push_back(io::to_json(r));
    // A violated inequality is a bug signal: echo the input with the reports.
    if (violated) doc["counterexample"] = io::to_json(f);
    os << doc.dump(2) << '\n';
  }
  return violated ? kExitViolation : kExitOk;
}

int do_fuzz(const FuzzOptions& o, std::ostream& out) {
  require_tol(o.tol);
  require_format(o.format);
  FuzzConfig config;
  config.count = o.count;
  config.n = o.n;
  config.seed = o.seed;
  config.tol = o.tol;
  config.window = o.window;
  config.density = o.density;
  config.denominator = o.denominator;
  config.indicator_fraction = o.indicator_fraction;
  for (const auto& text : o.exponents) config.exponents.push_back(parse_exponent(text));
  config.threads = thread_cap(o.threads);
  if (config.n < 2) throw InvalidInput("field \"n\": the inequalities are stated for n >= 2");

  FuzzSummary summary = fuzz(config);
  Sink sink(o.out);
  std::ostream& os = sink.stream(out);
  if (o.format == "csv") {
    os << "# lattice_ineq fuzz seed=" << o.seed << " count=" << o.count << " n=" << o.n
       << " tol=" << o.tol << '\n';
    os << "inequality,instances,min_deficit,max_deficit,exact_equal,violations\n";
    for (const auto& [ineq, st] : summary.per_inequality) {
      os << to_string(ineq) << ',' << st.instances << ',' << io::format_double(st.min_deficit) << ','
         << io::format_double(st.max_deficit) << ',' << st.exact_equal << ',' << st.violations << '\n';
    }
    os << "LINE_BOUND," << summary.line_bound_checks << ",,,," << summary.line_bound_failures << '\n';
    os << "CHAIN," << summary.chain_checks << ",,,," << summary.chain_failures << '\n';
  } else {
    io::Json doc = io::to_json(summary);
    doc["command"] = "fuzz";
    os << doc.dump(2) << '\n';
  }
  return summary.total_violations() == 0 ? kExitOk : kExitViolation;
}

int do_search(const SearchOptions& o, std::ostream& out) {
  SearchTrace trace;
  if (o.method == "anneal") {
    AnnealConfig config;
    config.n = o.n;
    config.size = o.size;
    config.iterations = o.iters;
    config.seed = o.seed;
    config.schedule = {o.t0, o.alpha};
    config.box_side = o.box;
    config.samples = o.samples;
    trace = anneal_sets(config);
  } else if (o.method == "ascend") {
    std::vector<Coord> sides = o.sides.empty() ? std::vector<Coord>(o.n, 3) : o.sides;
    AscendConfig config;
    config.window = Cuboid::with_sides(sides);
    config.iterations = o.iters;
    config.seed = o.seed;
    config.samples = o.samples;
    trace = ascend_function(config);
  } else {
    throw InvalidInput("field \"method\": expected anneal or ascend, got \"" + o.method + "\"");
  }
  Sink sink(o.out);
  io::Json doc = io::to_json(trace);
  doc["command"] = "search";
  doc["method"] = o.method;
  sink.stream(out) << doc.dump(2) << '\n';
  return kExitOk;
}

int do_enumerate(const EnumerateOptions& o, std::ostream& out) {
  EnumerationConfig config{o.n, o.box, o.max_size, o.budget};
  EnumerationReport report = enumerate_rigidity(config);
  if (!o.report.empty()) {
    std::ofstream csv(o.report);
    if (!csv) throw InvalidInput("field \"report\": cannot open " + o.report);
    csv << io::enumeration_csv_header() << '\n';
    for (const auto& s : report.classes) csv << io::to_csv_row(s) << '\n';
  }
  Sink sink(o.out);
  io::Json doc = io::to_json(report);
  doc["command"] = "enumerate";
  sink.stream(out) << doc.dump(2) << '\n';
  return report.mismatches.empty() ? kExitOk : kExitViolation;
}

std::string sides_label(const std::vector<Coord>& sides) {
  std::string out;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(sides[i]);
  }
  return out;
}

std::string lower_name(Inequality ineq) {
  std::string name(to_string(ineq));
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  return name;
}

int do_table(const TableOptions& o, std::ostream& out) {
  if (o.n < 2) throw InvalidInput("field \"n\": the inequalities are stated for n >= 2");
  if (o.min_side < 1 || o.max_side < o.min_side) {
    throw InvalidInput("field \"min-side\"/\"max-side\": need 1 <= min-side <= max-side");
  }
  const auto selection = parse_inequality_list(o.ineq);
  const Rational p = parse_exponent(o.p);

  Sink sink(o.out);
  std::ostream& os = sink.stream(out);
  os << "shape,size";
  for (Inequality ineq : selection) {
    const std::string c = lower_name(ineq);
    os << ',' << c << "_lhs," << c << "_rhs," << c << "_cert_lhs," << c << "_cert_rhs," << c << "_relation";
  }
  os << '\n';

  bool violated = false;
  std::vector<Coord> sides(o.n, o.min_side);
  while (true) {
    const bool sorted = std::is_sorted(sides.begin(), sides.end());
    if (!o.dedup || sorted) {
      Cuboid box = Cuboid::with_sides(sides);
      LatticeSet a = box.to_set();
      SparseFunction f = indicator(a);
      os << sides_label(sides) << ',' << a.size();
      for (Inequality ineq : selection) {
        auto r = run_check(ineq, f, a, p, kDefaultTolerance, true);
        violated = violated || r.relation == Relation::kViolated;
        os << ',' << io::format_double(r.lhs) << ',' << io::format_double(r.rhs) << ','
           << (r.certificate ? to_string(r.certificate->lhs) : "") << ','
           << (r.certificate ? to_string(r.certificate->rhs) : "") << ',' << to_string(r.relation);
      }
      os << '\n';
    }
    std::size_t i = o.n;
    while (i > 0 && sides[i - 1] == o.max_side) sides[--i] = o.min_side;
    if (i == 0) break;
    ++sides[i - 1];
  }
  return violated ? kExitViolation : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify sharp functional inequalities on integer lattices"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Evaluate inequalities on a function or set file");
  check_cmd->add_option("--input", check.input, "Function or set JSON file")->required();
  check_cmd->add_option("--ineq", check.ineq,
                        "Comma list of gn,sobolev,iso,logsob-dir,logsob,bl,logbl,lw");
  check_cmd->add_option("--p", check.p, "Exponent for the logarithmic inequalities (p/q or decimal)");
  check_cmd->add_option("--tol", check.tol, "Relative tolerance for float verdicts");
  check_cmd->add_flag("--normalize", check.normalize, "Rescale to unit p-norm before log inequalities");
  check_cmd->add_flag("--exact", check.exact, "Require an integer certificate for every verdict");
  check_cmd->add_option("--format", check.format, "json or csv");
  check_cmd->add_option("--out", check.out, "Write the report here instead of stdout");

  FuzzOptions fz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Seeded random soundness run");
  fuzz_cmd->add_option("--count", fz.count, "Number of random functions");
  fuzz_cmd->add_option("--n", fz.n, "Dimension");
  fuzz_cmd->add_option("--seed", fz.seed, "Seed (default 0)");
  fuzz_cmd->add_option("--tol", fz.tol, "Relative tolerance");
  fuzz_cmd->add_option("--window", fz.window, "Support window side");
  fuzz_cmd->add_option("--density", fz.density, "Cell inclusion probability");
  fuzz_cmd->add_option("--denominator", fz.denominator, "Value grid denominator");
  fuzz_cmd->add_option("--indicator-fraction", fz.indicator_fraction, "Share of scaled indicators");
  fuzz_cmd->add_option("--p", fz.exponents, "Exponents for log inequalities")->delimiter(',');
  fuzz_cmd->add_option("--threads", fz.threads, "Worker threads (capped by LATTICE_INEQ_THREADS)");
  fuzz_cmd->add_option("--format", fz.format, "json or csv");
  fuzz_cmd->add_option("--out", fz.out, "Output path");

  SearchOptions so;
  auto* search_cmd = app.add_subcommand("search", "Extremal search: anneal sets or ascend on functions");
  search_cmd->add_option("--method", so.method, "anneal (iso ratio over sets) or ascend (GN ratio)");
  search_cmd->add_option("--n", so.n, "Dimension");
  search_cmd->add_option("--size", so.size, "Set cardinality for anneal");
  search_cmd->add_option("--iters", so.iters, "Iterations");
  search_cmd->add_option("--seed", so.seed, "Seed (default 0)");
  search_cmd->add_option("--t0", so.t0, "Initial temperature");
  search_cmd->add_option("--alpha", so.alpha, "Geometric cooling factor");
  search_cmd->add_option("--box", so.box, "Bounding box side for anneal (0 = size)");
  search_cmd->add_option("--sides", so.sides, "Window side lengths for ascend")->delimiter(',');
  search_cmd->add_option("--samples", so.samples, "History samples");
  search_cmd->add_option("--out", so.out, "Output path");

  EnumerateOptions eo;
  auto* enum_cmd = app.add_subcommand("enumerate", "Exhaustive rigidity check on a box");
  enum_cmd->add_option("--n", eo.n, "Dimension");
  enum_cmd->add_option("--box", eo.box, "Box side m");
  enum_cmd->add_option("--max-size", eo.max_size, "Largest subset size (0 = all)");
  enum_cmd->add_option("--budget", eo.budget, "Maximum number of subsets");
  enum_cmd->add_option("--report", eo.report, "CSV of translation classes");
  enum_cmd->add_option("--out", eo.out, "Summary output path");

  TableOptions to;
  auto* table_cmd = app.add_subcommand("table", "Cuboid sweep as CSV");
  table_cmd->add_option("--n", to.n, "Dimension");
  table_cmd->add_option("--min-side", to.min_side, "Smallest side length");
  table_cmd->add_option("--max-side", to.max_side, "Largest side length");
  table_cmd->add_flag("--dedup", to.dedup, "Only non-decreasing side tuples");
  table_cmd->add_option("--ineq", to.ineq, "Comma list of inequalities");
  table_cmd->add_option("--p", to.p, "Exponent for log inequalities");
  table_cmd->add_option("--out", to.out, "Output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (check_cmd->parsed()) return do_check(check, out);
    if (fuzz_cmd->parsed()) return do_fuzz(fz, out);
    if (search_cmd->parsed()) return do_search(so, out);
    if (enum_cmd->parsed()) return do_enumerate(eo, out);
    if (table_cmd->parsed()) return do_table(to, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace latineq::cli
