#include "hmvol/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmvol/local_density.hpp"
#include "hmvol/volume.hpp"

namespace hmvol {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kDigits = 25;

std::string decimal(const Real& v, int digits = kDigits) { return v.str(digits); }

std::string join(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::vector<Lattice> lattices_of(const std::string& s) {
  if (s == "L") return {Lattice::L};
  if (s == "M") return {Lattice::M};
  return {Lattice::L, Lattice::M};
}

void require_n(int n) {
  if (n < 1) throw ContractError("n must be >= 1");
}

struct VolumeRecord {
  Lattice lattice = Lattice::L;
  int n = 0;
  FieldData field;
  VolumeExpression expr;
  Rational value;
  NumericResult numeric;
  std::string provenance;
  std::optional<Verdict> verdict;
};

VolumeRecord make_record(Lattice lattice, int n, const FieldData& field, const std::string& pipeline, double tol) {
  VolumeRecord r;
  r.lattice = lattice;
  r.n = n;
  r.field = field;
  r.provenance = pipeline;
  if (pipeline == "table") {
    r.expr = hm_table(lattice, n, field);
    r.value = rationalize(r.expr);
  } else {
    r.expr = hm_assembled(lattice, n, field);
    r.value = rationalize(r.expr);
    if (pipeline == "both") {
      const TableRow row = hm_table_row(lattice, n, field);
      const bool equal = rationalize(row.expr) == r.value;
      r.verdict = row.ambiguous ? Verdict::TableAmbiguous : (equal ? Verdict::Match : Verdict::Mismatch);
    }
  }
  r.numeric = evaluate_numeric(r.expr, tol);
  return r;
}

Json record_json(const VolumeRecord& r) {
  Json j;
  j["lattice"] = to_string(r.lattice);
  j["n"] = r.n;
  j["d"] = r.field.d;
  j["D"] = r.field.D;
  j["volume_rational"] = r.value.str();
  j["volume_numeric"] = decimal(r.numeric.value);
  j["numeric_error_bound"] = decimal(r.numeric.error_bound, 3);
  j["factored"] = {{"coefficient", r.expr.coeff.str()},
                   {"sqrt_coefficient_squared", r.expr.sqrt_coeff_sq.str()},
                   {"d_power", r.expr.d_power.str()},
                   {"pi_power", r.expr.pi_power},
                   {"zeta_args", r.expr.zeta_args},
                   {"l_args", r.expr.l_args}};
  j["provenance"] = r.provenance;
  if (r.verdict) j["verdict"] = to_string(*r.verdict);
  return j;
}

const char* kCsvHeader = "lattice,n,d,D,volume_rational,volume_numeric,zeta_args,l_args,pipeline_agreement";

std::string record_csv(const VolumeRecord& r) {
  std::ostringstream os;
  os << to_string(r.lattice) << ',' << r.n << ',' << r.field.d << ',' << r.field.D << ',' << r.value << ','
     << decimal(r.numeric.value) << ',' << join(r.expr.zeta_args, ";") << ',' << join(r.expr.l_args, ";") << ','
     << (r.verdict ? to_string(*r.verdict) : std::string("n/a"));
  return os.str();
}

std::string record_text(const VolumeRecord& r) {
  std::ostringstream os;
  os << to_string(r.lattice) << " n=" << r.n << " d=" << r.field.d << " D=" << r.field.D << "  volume " << r.value
     << "  numeric " << decimal(r.numeric.value, 20) << "  [" << r.expr.str() << "]  (" << r.provenance;
  if (r.verdict) os << ", " << to_string(*r.verdict);
  os << ")";
  return os.str();
}

int emit_records(const std::vector<VolumeRecord>& records, const std::string& format, std::ostream& out) {
  bool mismatch = false;
  for (const auto& r : records) mismatch = mismatch || (r.verdict && *r.verdict == Verdict::Mismatch);
  if (format == "json") {
    Json arr = Json::array();
    for (const auto& r : records) arr.push_back(record_json(r));
    out << arr.dump(2) << '\n';
  } else if (format == "csv") {
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << record_csv(r) << '\n';
  } else {
    for (const auto& r : records) out << record_text(r) << '\n';
  }
  return mismatch ? kExitMismatch : kExitOk;
}

struct ComputeArgs {
  std::string lattice = "both";
  int n = 0;
  std::int64_t d = 0;
  std::string pipeline = "assembled";
  std::string format = "text";
  double tol = 1e-12;
};

int cmd_compute(const ComputeArgs& a, std::ostream& out) {
  require_n(a.n);
  const FieldData field = make_field(a.d);
  std::vector<VolumeRecord> records;
  for (Lattice l : lattices_of(a.lattice)) records.push_back(make_record(l, a.n, field, a.pipeline, a.tol));
  return emit_records(records, a.format, out);
}

struct VerifyArgs {
  std::string oracle;
  std::string lattice = "L";
  int n = 0;
  std::optional<std::int64_t> d;
  std::optional<std::uint32_t> p;
  std::optional<unsigned> level;
  std::optional<std::uint64_t> budget;
  unsigned threads = 0;
  std::string format = "text";
};

struct VerifyOutcome {
  std::string oracle_value;
  std::string formula_value;
  bool match = false;
  Json detail = Json::object();
};

FieldData require_field(const VerifyArgs& a) {
  if (!a.d) throw ContractError("--d is required for this oracle");
  return make_field(*a.d);
}

std::uint32_t require_prime(const VerifyArgs& a) {
  if (!a.p) throw ContractError("--p is required for this oracle");
  if (!is_prime(*a.p)) throw ContractError("--p must be prime");
  return *a.p;
}

VerifyOutcome verify_su_count(const VerifyArgs& a, Lattice lattice, const EnumOptions& eo) {
  const FieldData field = require_field(a);
  const std::uint32_t p = require_prime(a);
  const unsigned level = a.level.value_or(1);
  if (p == 2 && (lattice == Lattice::M || field.two_ramified())) {
    throw ContractError("#SU over O/2^N has no closed form here; use --oracle tau-p");
  }
  const CountReport rep = count_group(lattice, a.n, make_ring_spec(field, p, level), GroupKind::SU, eo);
  const long dim = static_cast<long>((a.n + 1) * (a.n + 1) - 1);
  const Rational formula =
      tau_p(lattice, a.n, field, p).value * Rational(static_cast<long>(p)).pow(dim * static_cast<long>(level));
  VerifyOutcome o{BigInt(rep.count).get_str(), formula.str(), Rational(rep.count) == formula, {}};
  o.detail = {{"level", level}, {"nodes", rep.nodes}, {"elapsed_s", rep.elapsed.count()}};
  return o;
}

VerifyOutcome verify_tau_p(const VerifyArgs& a, Lattice lattice, const EnumOptions& eo) {
  const FieldData field = require_field(a);
  const std::uint32_t p = require_prime(a);
  std::optional<OracleLevels> levels;
  if (a.level) {
    if (p == 2 && *a.level < 2) throw ContractError("--level must be >= 2 for p = 2");
    levels = p == 2 ? OracleLevels{*a.level, *a.level - 1} : OracleLevels{*a.level, *a.level};
  }
  const OracleTauReport rep = oracle_tau_p_report(lattice, a.n, field, p, eo, levels);
  const Rational formula = tau_p(lattice, a.n, field, p).value;
  VerifyOutcome o{rep.value.str(), formula.str(), rep.value == formula, {}};
  o.detail = {{"count_level", rep.levels.count_level},
              {"image_level", rep.levels.image_level},
              {"su_count", rep.group_count.get_str()},
              {"kernel_count", rep.kernel_count.get_str()},
              {"nodes", rep.nodes}};
  return o;
}

VerifyOutcome verify_kernel(const VerifyArgs& a, Lattice lattice) {
  require_n(a.n);
  const FieldData field = make_field(a.d.value_or(1));
  if (!field.two_ramified()) throw ContractError("the kernel formula needs 2 ramified (d = 1 mod 4)");
  const KernelLevel level = lattice == Lattice::L ? KernelLevel::ModTwo : KernelLevel::ModFour;
  const BigInt count = count_kernel(lattice, a.n, level, field);
  const long e = lattice == Lattice::L ? static_cast<long>(a.n) * a.n + 3L * a.n : 2L * a.n * a.n + 5L * a.n;
  BigInt formula;
  mpz_ui_pow_ui(formula.get_mpz_t(), 2, static_cast<unsigned long>(e));
  VerifyOutcome o{count.get_str(), formula.get_str(), count == formula, {}};
  o.detail = {{"level", lattice == Lattice::L ? "mod 2" : "mod 4"}, {"exponent", e}};
  return o;
}

VerifyOutcome verify_stabilization(const VerifyArgs& a, Lattice lattice, const EnumOptions& eo) {
  const FieldData field = require_field(a);
  const std::uint32_t p = require_prime(a);
  const unsigned level = a.level.value_or(1);
  const StabilizationReport rep = stabilization_report(lattice, a.n, field, p, level, eo);
  const BigInt predicted = rep.factor * rep.lower;
  VerifyOutcome o{rep.upper.get_str(), predicted.get_str(), rep.stable, {}};
  o.detail = {{"level", level}, {"u_lower", rep.lower.get_str()}, {"factor", rep.factor.get_str()}};
  return o;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Lattice lattice = lattices_of(a.lattice).front();
  EnumOptions eo;
  eo.budget = a.budget.value_or(budget_from_env());
  eo.threads = a.threads;

  VerifyOutcome o;
  if (a.oracle == "su-count") {
    o = verify_su_count(a, lattice, eo);
  } else if (a.oracle == "tau-p") {
    o = verify_tau_p(a, lattice, eo);
  } else if (a.oracle == "kernel") {
    o = verify_kernel(a, lattice);
  } else {
    o = verify_stabilization(a, lattice, eo);
  }
  const std::string verdict = o.match ? "Match" : "Mismatch";
  if (a.format == "json") {
    Json j;
    j["oracle"] = a.oracle;
    j["lattice"] = to_string(lattice);
    j["n"] = a.n;
    if (a.d) j["d"] = *a.d;
    if (a.p) j["p"] = *a.p;
    j["oracle_value"] = o.oracle_value;
    j["formula_value"] = o.formula_value;
    j["verdict"] = verdict;
    j["detail"] = o.detail;
    out << j.dump(2) << '\n';
  } else {
    out << "oracle " << o.oracle_value << ", formula " << o.formula_value << ", " << verdict << '\n';
    for (const auto& [k, v] : o.detail.items()) out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return o.match ? kExitOk : kExitMismatch;
}

struct TableArgs {
  std::string lattice = "both";
  std::string n_range = "1..3";
  std::string d_list;
  std::string format = "csv";
  std::string out_path;
  double tol = 1e-12;
};

std::pair<int, int> parse_range(const std::string& s) {
  static const std::regex re(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ContractError("--n-range must look like a..b");
  const int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
  if (lo < 1 || hi < lo || hi > 8) throw ContractError("--n-range must satisfy 1 <= a <= b <= 8");
  return {lo, hi};
}

std::vector<std::int64_t> parse_d_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw ContractError("--d-list: '" + item + "' is not an integer");
    }
    if (used != item.size()) throw ContractError("--d-list: '" + item + "' is not an integer");
    make_field(v);
    out.push_back(v);
  }
  if (out.empty()) throw ContractError("--d-list must not be empty");
  return out;
}

int cmd_table(const TableArgs& a, std::ostream& out) {
  const auto [lo, hi] = parse_range(a.n_range);
  const auto ds = parse_d_list(a.d_list);
  std::ofstream file;
  if (!a.out_path.empty()) {
    file.open(a.out_path);
    if (!file) throw ContractError("cannot write " + a.out_path);
  }
  std::vector<VolumeRecord> records;
  for (Lattice l : lattices_of(a.lattice)) {
    for (int n = lo; n <= hi; ++n) {
      for (std::int64_t d : ds) records.push_back(make_record(l, n, make_field(d), "both", a.tol));
    }
  }
  const int code = emit_records(records, a.format, a.out_path.empty() ? out : file);
  if (file.is_open()) {
    file.close();
    if (!file) throw ContractError("failed writing " + a.out_path);
  }
  return code;
}

struct LValueArgs {
  std::string kind;
  int k = 0;
  std::optional<std::int64_t> d;
  double tol = 1e-12;
  std::string format = "text";
};

int cmd_lvalue(const LValueArgs& a, std::ostream& out) {
  if (a.k < 2) throw ContractError("--k must be >= 2");
  if (!(a.tol > 0)) throw ContractError("--tol must be positive");
  SpecialValue v;
  std::string simplified;
  if (a.kind == "zeta") {
    v = zeta_numeric(a.k, a.tol);
    if (v.exact) simplified = v.exact->str();
  } else {
    if (!a.d) throw ContractError("--kind L requires --d");
    const FieldData field = make_field(*a.d);
    v = l_numeric(a.k, field, a.tol);
    if (v.exact) {
      // |D|^{1/2-k} = |D|^{1-k} / sqrt|D|
      const Rational c = v.exact->coeff * Rational(field.conductor).pow(1 - a.k);
      simplified = c.str() + " * pi^" + std::to_string(a.k) + " / sqrt(" + std::to_string(field.conductor) + ")";
    }
  }
  const int digits = std::clamp(static_cast<int>(std::ceil(-std::log10(a.tol))) + 3, 6, 45);
  if (a.format == "json") {
    Json j;
    j["kind"] = a.kind;
    j["k"] = a.k;
    if (a.d) j["d"] = *a.d;
    j["value"] = decimal(v.numeric, digits);
    j["error_bound"] = decimal(v.error_bound, 3);
    if (v.exact) {
      j["exact"] = v.exact->str();
      j["exact_simplified"] = simplified;
    }
    out << j.dump(2) << '\n';
  } else {
    out << "value " << decimal(v.numeric, digits) << '\n' << "error_bound " << decimal(v.error_bound, 3) << '\n';
    if (v.exact) out << "exact " << v.exact->str() << " = " << simplified << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hirzebruch-Mumford volumes of ball quotients by SU(L, O_K) and SU(M, O_K)"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"text", "json", "csv"});

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "volume of one case");
  compute->add_option("--lattice", ca.lattice)->check(CLI::IsMember({"L", "M", "both"}));
  compute->add_option("--n", ca.n)->required();
  compute->add_option("--d", ca.d)->required();
  compute->add_option("--pipeline", ca.pipeline)->check(CLI::IsMember({"table", "assembled", "both"}));
  compute->add_option("--format", ca.format)->check(formats);
  compute->add_option("--tol", ca.tol);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "brute-force oracle against the closed forms");
  verify->add_option("--oracle", va.oracle)
      ->required()
      ->check(CLI::IsMember({"su-count", "tau-p", "kernel", "stabilization"}));
  verify->add_option("--lattice", va.lattice)->check(CLI::IsMember({"L", "M"}));
  verify->add_option("--n", va.n)->required();
  verify->add_option("--d", va.d);
  verify->add_option("--p", va.p);
  verify->add_option("--level", va.level);
  verify->add_option("--budget", va.budget);
  verify->add_option("--threads", va.threads);
  verify->add_option("--format", va.format)->check(CLI::IsMember({"text", "json"}));

  TableArgs ta;
  auto* table = app.add_subcommand("table", "volume table over a grid of cases");
  table->add_option("--lattice", ta.lattice)->check(CLI::IsMember({"L", "M", "both"}));
  table->add_option("--n-range", ta.n_range);
  table->add_option("--d-list", ta.d_list)->required();
  table->add_option("--format", ta.format)->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", ta.out_path);
  table->add_option("--tol", ta.tol);

  LValueArgs la;
  auto* lvalue = app.add_subcommand("lvalue", "zeta(k) or L(k, chi_D)");
  lvalue->add_option("--kind", la.kind)->required()->check(CLI::IsMember({"zeta", "L"}));
  lvalue->add_option("--k", la.k)->required();
  lvalue->add_option("--d", la.d);
  lvalue->add_option("--tol", la.tol);
  lvalue->add_option("--format", la.format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (compute->parsed()) return cmd_compute(ca, out);
    if (verify->parsed()) return cmd_verify(va, out);
    if (table->parsed()) return cmd_table(ta, out);
    return cmd_lvalue(la, out);
  } catch (const BudgetExceeded& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitMismatch;
  }
}

}  // namespace hmvol
