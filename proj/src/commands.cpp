#include "rwk/commands.hpp"

#include "rwk/errors.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <map>
#include <random>
#include <utility>

namespace rwk::cli {

using io::json;

namespace {

std::string at(const std::string& path, const char* key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int exit_code_for(const std::string& status) {
  if (status == "verified" || status == "ok" || status == "not_reverifiable") return kExitOk;
  if (status == "exhausted") return kExitExhausted;
  return kExitBreach;
}

/// Collects per-instance results and derives counters and the exit code.
class Collector {
 public:
  void add(json result) {
    const std::string status = result.at("status").get<std::string>();
    ++counts_[status];
    exit_code_ = std::max(exit_code_, exit_code_for(status));
    summary_.push_back("instance " + std::to_string(results_.size()) + ": " + status);
    results_.push_back(std::move(result));
  }

  Report finish(std::string_view command, bool verify_only, const json& config) && {
    json counters = json::object();
    for (const auto& [status, n] : counts_) counters[status] = n;
    counters["instances"] = results_.size();
    Report report;
    report.payload = {{"tool", "rwk"},
                      {"version", std::string(kVersion)},
                      {"command", std::string(command)},
                      {"mode", verify_only ? "verify" : "run"},
                      {"config", config},
                      {"results", std::move(results_)},
                      {"counters", counters},
                      {"exit_code", exit_code_}};
    report.exit_code = exit_code_;
    report.summary = std::move(summary_);
    std::string totals = std::string(command) + (verify_only ? " --verify-only" : "") + ":";
    for (const auto& [status, n] : counts_) totals += " " + status + "=" + std::to_string(n);
    report.summary.push_back(totals + " exit=" + std::to_string(exit_code_));
    return report;
  }

 private:
  json results_ = json::array();
  std::map<std::string, std::size_t> counts_;
  std::vector<std::string> summary_;
  int exit_code_ = kExitOk;
};

const json& instances_of(const json& config) {
  const json& list = io::field(config, "instances", "");
  if (!list.is_array()) throw ConfigError("instances: expected an array");
  return list;
}

/// The config and results recorded in a report being re-verified.
struct RecordedReport {
  json config;
  json results;
};

RecordedReport open_report(const json& report, std::string_view command) {
  const json& recorded = io::field(report, "command", "");
  if (!recorded.is_string() || recorded.get<std::string>() != command)
    throw ConfigError("command: report was produced by a different command");
  RecordedReport out{io::field(report, "config", ""), io::field(report, "results", "")};
  if (!out.results.is_array() || out.results.size() != instances_of(out.config).size())
    throw ConfigError("results: expected one result per configured instance");
  return out;
}

std::vector<Generator> read_generators(const json& list, const std::string& path) {
  if (!list.is_array() || list.empty()) throw ConfigError(path + ": expected a nonempty array of generators");
  std::vector<Generator> out;
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(io::read_generator(list[i], at(path, i)));
  return out;
}

std::vector<IntSeq> make_sequences(const std::vector<Generator>& gens, std::size_t length, const std::string& path) {
  std::vector<IntSeq> out;
  try {
    for (const auto& g : gens) out.push_back(make_sequence(g, length));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return out;
}

/// Members of a vector family: [{"coordinates": [...]}, ...].
std::vector<std::vector<Generator>> read_family_descriptors(const json& list, const std::string& path) {
  if (!list.is_array() || list.empty()) throw ConfigError(path + ": expected a nonempty array of members");
  std::vector<std::vector<Generator>> out;
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(io::read_coordinates(list[i], at(path, i)));
  return out;
}

json family_descriptors_json(const std::vector<std::vector<Generator>>& family) {
  json out = json::array();
  for (const auto& member : family) {
    json coords = json::array();
    for (const auto& g : member) coords.push_back(io::to_json(g));
    out.push_back({{"coordinates", coords}});
  }
  return out;
}

SeqFamily make_family(const std::vector<std::vector<Generator>>& descriptors, std::size_t length,
                      const std::string& path) {
  std::vector<VecSeq> members;
  try {
    for (const auto& coords : descriptors) members.push_back(make_sequence(coords, length));
    return SeqFamily(std::move(members));
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::size_t to_length(const BigInt& n, const std::string& path) {
  if (!n.fits_int64() || n > BigInt(100'000'000L))
    throw ConfigError(path + ": required prefix length " + n.to_string() + " is too large");
  return static_cast<std::size_t>(n.to_int64());
}

std::size_t optional_size(const json& obj, const char* key, const std::string& path, std::size_t fallback) {
  const json* j = io::optional_field(obj, key, path);
  return j ? io::read_size(*j, at(path, key)) : fallback;
}

json prefix_error(const PrefixTooShort& e) {
  return {{"status", "error"},
          {"error", "prefix_too_short"},
          {"required_length", e.required_length()},
          {"message", e.what()}};
}

// ---------------------------------------------------------------- blocks

struct BlocksInstance {
  BigInt d;
  std::size_t count;
  std::size_t length;
  std::vector<IntSeq> sequences;
};

BlocksInstance read_blocks_instance(const json& inst, const std::string& path) {
  BlocksInstance out;
  out.d = io::read_int(io::field(inst, "d", path), at(path, "d"));
  if (out.d < BigInt(1)) throw ConfigError(at(path, "d") + ": must be >= 1");
  out.count = io::read_size(io::field(inst, "blocks", path), at(path, "blocks"));
  if (out.count < 1) throw ConfigError(at(path, "blocks") + ": must be >= 1");
  const auto gens = read_generators(io::field(inst, "sequences", path), at(path, "sequences"));
  if (const json* length = io::optional_field(inst, "length", path)) {
    out.length = io::read_size(*length, at(path, "length"));
  } else {
    out.length = to_length(BigInt(out.count) * block_width(out.d, gens.size()), at(path, "length"));
  }
  out.sequences = make_sequences(gens, out.length, at(path, "sequences"));
  return out;
}

json run_blocks(const json& inst, const std::string& path) {
  const BlocksInstance in = read_blocks_instance(inst, path);
  try {
    const BlockFamily family = build_blocks(in.sequences, in.d, in.count);
    const bool ok = verify_blocks(in.sequences, in.d, family);
    bool residue_constant = true;
    for (const auto& k : family.blocks) residue_constant = residue_constant && is_residue_constant(in.sequences, in.d, k);
    return {{"status", ok && residue_constant ? "verified" : "failed"},
            {"length", in.length},
            {"block_family", io::to_json(family)},
            {"residue_constant", residue_constant}};
  } catch (const PrefixTooShort& e) {
    return prefix_error(e);
  }
}

json verify_blocks_result(const json& inst, const json& recorded, const std::string& path) {
  const std::string status = recorded.at("status").get<std::string>();
  if (!recorded.contains("block_family")) return {{"status", status}, {"note", "nothing to re-verify"}};
  const BlocksInstance in = read_blocks_instance(inst, path);
  const BlockFamily family = io::read_block_family(recorded.at("block_family"), "results.block_family");
  const bool ok = verify_blocks(in.sequences, in.d, family);
  return {{"status", ok ? "verified" : "failed"}, {"recorded_status", status}};
}

// ----------------------------------------------------------------- solve

json run_solve(const json& inst, const std::string& path) {
  const RatMatrix a = io::read_rat_matrix(io::field(inst, "matrix", path), at(path, "matrix"));
  std::vector<BigInt> values{BigInt(1)};
  if (const json* v = io::optional_field(inst, "values", path)) values = io::read_int_list(*v, at(path, "values"));

  const ClearedMatrix cleared = clear_denominators(a);
  const SnfDecomposition snf = smith_normal_form(cleared.scaled);
  json solutions = json::array();
  bool all_checked = satisfies_snf_invariants(cleared.scaled, snf);
  for (const BigInt& value : values) {
    const auto x = solve_constant_image(a, value);
    const bool check = !x || multiply(a, *x) == constant_vector(a.rows(), Rational(value));
    all_checked = all_checked && check;
    solutions.push_back({{"a", value.to_string()}, {"x", x ? io::to_json(*x) : json(nullptr)}, {"check", check}});
  }
  return {{"status", all_checked ? "verified" : "failed"},
          {"d", cleared.d.to_string()},
          {"scaled", io::to_json(cleared.scaled)},
          {"snf", {{"U", io::to_json(snf.U)}, {"S", io::to_json(snf.S)}, {"V", io::to_json(snf.V)}, {"rank", snf.rank}}},
          {"constant_image_property", has_constant_image_property(a)},
          {"solutions", solutions}};
}

json verify_solve_result(const json& inst, const json& recorded, const std::string& path) {
  const RatMatrix a = io::read_rat_matrix(io::field(inst, "matrix", path), at(path, "matrix"));
  bool ok = true;
  const json& solutions = io::field(recorded, "solutions", "results");
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const std::string spath = at(std::string("results.solutions"), i);
    const BigInt value = io::read_int(io::field(solutions[i], "a", spath), at(spath, "a"));
    const json& x = io::field(solutions[i], "x", spath);
    if (x.is_null()) {
      // Absence is re-derived by the SNF certificate, which is not a search.
      ok = ok && !solve_constant_image(a, value);
    } else {
      const IntVector xv = io::read_int_vector(x, at(spath, "x"));
      ok = ok && xv.size() == a.cols() && multiply(a, xv) == constant_vector(a.rows(), Rational(value));
    }
  }
  const bool property = io::field(recorded, "constant_image_property", "results").get<bool>();
  ok = ok && property == has_constant_image_property(a);
  return {{"status", ok ? "verified" : "failed"}, {"recorded_status", recorded.at("status")}};
}

// --------------------------------------------------------------- witness

SearchBudget read_witness_budget(const json& inst, const std::string& path) {
  return io::read_budget(io::field(inst, "budget", path), at(path, "budget"));
}

std::vector<IntSeq> matrix_columns(const IntMatrix& m) {
  std::vector<IntSeq> out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    std::vector<BigInt> column;
    for (Eigen::Index t = 0; t < m.rows(); ++t) column.push_back(m(t, j));
    out.emplace_back(std::move(column));
  }
  return out;
}

/// The scalar family a witness instance certifies into its set.
std::vector<IntSeq> scalar_family(const json& inst, const std::string& form, const SearchBudget& budget,
                                  const std::string& path) {
  if (form == "matrix") {
    const IntMatrix m = io::read_int_matrix(io::field(inst, "matrix", path), at(path, "matrix"));
    return matrix_columns(m);
  }
  const auto gens = read_generators(io::field(inst, "sequences", path), at(path, "sequences"));
  const std::size_t length = optional_size(inst, "length", path, budget.r);
  return make_sequences(gens, length, at(path, "sequences"));
}

bool ps_holds(const ZSet& a, const std::vector<BigInt>& g, const std::vector<BigInt>& pattern, const BigInt& x) {
  return std::all_of(pattern.begin(), pattern.end(), [&](const BigInt& f) {
    return std::any_of(g.begin(), g.end(), [&](const BigInt& t) { return contains(a, t + x + f); });
  });
}

json outcome_result(const json& outcome, bool found, bool certified) {
  return {{"status", !found ? "exhausted" : certified ? "verified" : "failed"},
          {"outcome", outcome},
          {"certified", found ? json(certified) : json(nullptr)}};
}

json run_witness(const json& inst, const std::string& path) {
  const std::string form = io::field(inst, "form", path).get<std::string>();
  json result;
  try {
    if (form == "cr" && inst.contains("vector_set")) {
      const ZvSet target = io::read_zvset(inst.at("vector_set"), at(path, "vector_set"));
      const SearchBudget budget = read_witness_budget(inst, path);
      const auto descriptors = read_family_descriptors(io::field(inst, "family", path), at(path, "family"));
      const SeqFamily family =
          make_family(descriptors, optional_size(inst, "length", path, budget.r), at(path, "family"));
      const VecOracleOutcome o = cr_witness(target, family, budget);
      result = outcome_result(io::to_json(o), o.found(), o.found() && certifies(target, family, *o.witness));
    } else if (form == "cr" || form == "matrix" || form == "j") {
      const ZSet target = io::read_zset(io::field(inst, "set", path), at(path, "set"));
      SearchBudget budget = read_witness_budget(inst, path);
      const std::vector<IntSeq> family = scalar_family(inst, form, budget, path);
      OracleOutcome o;
      if (form == "cr") {
        o = cr_witness(target, family, budget);
      } else if (form == "j") {
        o = jset_witness(target, family, budget);
      } else {
        o = cr_witness_matrix(target, io::read_int_matrix(inst.at("matrix"), at(path, "matrix")), budget);
      }
      result = outcome_result(io::to_json(o), o.found(), o.found() && certifies(target, family, *o.witness));
    } else if (form == "ps") {
      const ZSet target = io::read_zset(io::field(inst, "set", path), at(path, "set"));
      const auto g = io::read_int_list(io::field(inst, "G", path), at(path, "G"));
      const auto pattern = io::read_int_list(io::field(inst, "pattern", path), at(path, "pattern"));
      if (g.empty() || pattern.empty()) throw ConfigError(path + ": G and pattern must be nonempty");
      const BigInt bound = io::read_int(io::field(inst, "x_bound", path), at(path, "x_bound"));
      const auto x = ps_check(target, g, pattern, bound);
      result = {{"status", !x ? "exhausted" : ps_holds(target, g, pattern, *x) ? "verified" : "failed"},
                {"x", x ? json(x->to_string()) : json(nullptr)}};
    } else if (form == "estimate_r") {
      const ZSet target = io::read_zset(io::field(inst, "set", path), at(path, "set"));
      const std::size_t k = io::read_size(io::field(inst, "k", path), at(path, "k"));
      const auto alphabet = io::read_int_list(io::field(inst, "alphabet", path), at(path, "alphabet"));
      const std::size_t r_max = io::read_size(io::field(inst, "r_max", path), at(path, "r_max"));
      EstimateOptions opts;
      opts.a_bound = io::read_int(io::field(inst, "a_bound", path), at(path, "a_bound"));
      opts.exhaustive_cap = optional_size(inst, "exhaustive_cap", path, opts.exhaustive_cap);
      opts.samples = optional_size(inst, "samples", path, opts.samples);
      if (const json* s = io::optional_field(inst, "seed", path)) opts.seed = io::read_u64(*s, at(path, "seed"));
      if (k < 1 || alphabet.empty()) throw ConfigError(path + ": k must be >= 1 and the alphabet nonempty");
      const REstimate est = estimate_r(target, k, alphabet, r_max, opts);
      result = {{"status", est.r ? "verified" : "exhausted"},
                {"r", est.r ? json(*est.r) : json(nullptr)},
                {"exhaustive", est.exhaustive},
                {"matrices_checked", est.matrices_checked},
                {"counterexample", est.counterexample ? io::to_json(*est.counterexample) : json(nullptr)}};
    } else {
      throw ConfigError(at(path, "form") + ": unknown witness form '" + form + "'");
    }
  } catch (const PrefixTooShort& e) {
    result = prefix_error(e);
  }
  result["form"] = form;
  return result;
}

json verify_witness_result(const json& inst, const json& recorded, const std::string& path) {
  const std::string form = io::field(inst, "form", path).get<std::string>();
  const std::string status = recorded.at("status").get<std::string>();
  json out = {{"form", form}, {"recorded_status", status}};
  if (form == "estimate_r") {
    out["status"] = "not_reverifiable";
    return out;
  }
  if (form == "ps") {
    if (recorded.at("x").is_null()) {
      out["status"] = status;
      return out;
    }
    const ZSet target = io::read_zset(io::field(inst, "set", path), at(path, "set"));
    const auto g = io::read_int_list(inst.at("G"), at(path, "G"));
    const auto pattern = io::read_int_list(inst.at("pattern"), at(path, "pattern"));
    const BigInt x = io::read_int(recorded.at("x"), "results.x");
    const BigInt bound = io::read_int(inst.at("x_bound"), at(path, "x_bound"));
    out["status"] = abs(x) <= bound && ps_holds(target, g, pattern, x) ? "verified" : "failed";
    return out;
  }
  if (!recorded.contains("outcome") || recorded.at("outcome").at("status") != "found") {
    out["status"] = status;
    return out;
  }
  const json& o = recorded.at("outcome");
  const SearchBudget budget = read_witness_budget(inst, path);
  bool ok = false;
  if (form == "cr" && inst.contains("vector_set")) {
    const ZvSet target = io::read_zvset(inst.at("vector_set"), at(path, "vector_set"));
    const auto descriptors = read_family_descriptors(inst.at("family"), at(path, "family"));
    const SeqFamily family = make_family(descriptors, optional_size(inst, "length", path, budget.r), at(path, "family"));
    const VecWitness w{io::read_int_vector(o.at("a"), "results.outcome.a"),
                       io::read_index_set(o.at("H"), "results.outcome.H")};
    ok = !w.H.empty() && w.a.size() == target.dimension() && w.H.back() <= budget.r &&
         certifies(target, family, w);
  } else {
    const ZSet target = io::read_zset(io::field(inst, "set", path), at(path, "set"));
    const std::vector<IntSeq> family = scalar_family(inst, form, budget, path);
    const Witness w = io::read_witness(o, "results.outcome");
    const std::size_t r = form == "matrix" ? family.front().length() : budget.r;
    ok = abs(w.a) <= budget.a_bound && w.H.back() <= r && certifies(target, family, w);
  }
  out["status"] = ok ? "verified" : "failed";
  return out;
}

// -------------------------------------------------------------- preimage

struct PreimageSetup {
  RatMatrix a;
  ZSet b;
  std::size_t block_count;
  SearchBudget budget;
};

PreimageSetup read_preimage_setup(const json& inst, const std::string& path) {
  PreimageSetup s{io::read_rat_matrix(io::field(inst, "matrix", path), at(path, "matrix")),
                  io::read_zset(io::field(inst, "set", path), at(path, "set")),
                  io::read_size(io::field(inst, "blocks", path), at(path, "blocks")),
                  io::read_budget(io::field(inst, "budget", path), at(path, "budget"))};
  if (s.block_count < 1) throw ConfigError(at(path, "blocks") + ": must be >= 1");
  // The oracle's index range is the block count.
  s.budget.r = s.block_count;
  return s;
}

std::size_t default_length(const PreimageSetup& s, std::size_t members, const std::string& path) {
  const BigInt d = clear_denominators(s.a).d;
  return to_length(BigInt(s.block_count) * block_width(d, members * static_cast<std::size_t>(s.a.cols())), path);
}

json run_single_preimage(const PreimageSetup& s, const json& inst, const std::string& path) {
  const auto descriptors = read_family_descriptors(io::field(inst, "family", path), at(path, "family"));
  const std::size_t length = optional_size(inst, "length", path, default_length(s, descriptors.size(), path));
  const SeqFamily family = make_family(descriptors, length, at(path, "family"));
  if (family.dimension() != s.a.cols())
    throw ConfigError(at(path, "family") + ": member dimension does not match the matrix column count");
  json result = {{"family", family_descriptors_json(descriptors)}, {"length", length}};
  try {
    const TransformTrace trace = transform_witness(s.a, s.b, family, s.block_count, s.budget);
    const bool ok = trace.verified && verify_transform(trace, s.b, family);
    result["status"] = ok ? "verified" : "failed";
    result["trace"] = io::to_json(trace);
  } catch (const OracleExhausted& e) {
    result["status"] = "exhausted";
    result["g"] = io::to_json(e.g_functions());
    result["outcome"] = io::to_json(e.outcome());
    result["message"] = e.what();
  } catch (const ConstantImageUnsolvable& e) {
    result["status"] = "unsolvable";
    result["message"] = e.what();
  } catch (const InvariantBreach& e) {
    result["status"] = "breach";
    result["message"] = e.what();
  } catch (const PrefixTooShort& e) {
    result.update(prefix_error(e));
  }
  return result;
}

json run_full_preimage(const PreimageSetup& s, const json& inst, const std::string& path) {
  const std::size_t m_max = io::read_size(io::field(inst, "m_max", path), at(path, "m_max"));
  const std::size_t per_m = io::read_size(io::field(inst, "families_per_m", path), at(path, "families_per_m"));
  const std::uint64_t seed = io::read_u64(io::field(inst, "seed", path), at(path, "seed"));
  const Interval range = io::read_interval(io::field(inst, "range", path), at(path, "range"));
  std::vector<GeneratorKind> kinds{GeneratorKind::kConstant, GeneratorKind::kArithmetic, GeneratorKind::kPolynomial,
                                   GeneratorKind::kUniform};
  if (const json* k = io::optional_field(inst, "kinds", path)) {
    kinds.clear();
    for (std::size_t i = 0; i < k->size(); ++i) {
      try {
        kinds.push_back(parse_generator_kind(k->at(i).get<std::string>()));
      } catch (const ConfigError& e) {
        throw ConfigError(at(at(path, "kinds"), i) + ": " + e.what());
      }
    }
  }
  if (!has_constant_image_property(s.a))
    return {{"status", "unsolvable"}, {"message", "matrix has no integral constant-image solution"}};

  // Descriptors are drawn up front so the report can regenerate every family.
  std::mt19937_64 rng(seed);
  std::map<std::size_t, std::vector<std::vector<std::vector<Generator>>>> descriptors;
  std::map<std::size_t, std::size_t> lengths;
  for (std::size_t m = 1; m <= m_max; ++m) {
    lengths[m] = default_length(s, m, path);
    for (std::size_t i = 0; i < per_m; ++i) {
      std::vector<std::vector<Generator>> family(m);
      for (auto& member : family)
        for (Eigen::Index c = 0; c < s.a.cols(); ++c)
          member.push_back(sample_generator(kinds, range.lo, range.hi, rng));
      descriptors[m].push_back(std::move(family));
    }
  }
  const FamilyGenerator generator = [&](std::size_t m) {
    std::vector<SeqFamily> out;
    for (const auto& d : descriptors[m]) out.push_back(make_family(d, lengths[m], path));
    return out;
  };
  const TransformReport report = transform_cr_full(s.a, s.b, generator, m_max, s.block_count, s.budget);

  json instances = json::array();
  for (const auto& inst_report : report.instances) {
    json entry = {{"m", inst_report.m},
                  {"ordinal", inst_report.ordinal},
                  {"status", to_string(inst_report.status)},
                  {"family", family_descriptors_json(descriptors[inst_report.m][inst_report.ordinal])},
                  {"length", lengths[inst_report.m]}};
    if (inst_report.trace) entry["trace"] = io::to_json(*inst_report.trace);
    if (!inst_report.message.empty()) entry["message"] = inst_report.message;
    spdlog::debug("preimage m={} ordinal={} {}", inst_report.m, inst_report.ordinal, to_string(inst_report.status));
    instances.push_back(std::move(entry));
  }
  const char* status = report.failed > 0 ? "failed" : report.exhausted > 0 ? "exhausted" : "verified";
  return {{"status", status},
          {"vacuous", report.vacuous()},
          {"counts", {{"verified", report.verified}, {"exhausted", report.exhausted}, {"failed", report.failed}}},
          {"instances", instances}};
}

bool is_full_mode(const json& inst, const std::string& path) {
  const json* mode = io::optional_field(inst, "mode", path);
  if (!mode) return false;
  const std::string m = mode->get<std::string>();
  if (m != "full" && m != "single") throw ConfigError(at(path, "mode") + ": expected \"single\" or \"full\"");
  return m == "full";
}

json run_preimage(const json& inst, const std::string& path) {
  const PreimageSetup s = read_preimage_setup(inst, path);
  return is_full_mode(inst, path) ? run_full_preimage(s, inst, path) : run_single_preimage(s, inst, path);
}

/// Re-verifies one recorded trace against a family regenerated from its
/// recorded descriptors.
std::string reverify_trace(const PreimageSetup& s, const json& entry, const std::string& path) {
  const std::string status = entry.at("status").get<std::string>();
  if (!entry.contains("trace")) return status == "verified" ? "failed" : status;
  const auto descriptors = read_family_descriptors(entry.at("family"), at(path, "family"));
  const std::size_t length = io::read_size(entry.at("length"), at(path, "length"));
  const SeqFamily family = make_family(descriptors, length, at(path, "family"));
  const TransformTrace trace = io::read_trace(entry.at("trace"), at(path, "trace"));
  const bool ok = trace.verified && trace.block_count == s.block_count && trace.matrix == s.a &&
                  verify_transform(trace, s.b, family);
  return ok ? "verified" : "failed";
}

json verify_preimage_result(const json& inst, const json& recorded, const std::string& path) {
  const PreimageSetup s = read_preimage_setup(inst, path);
  const std::string status = recorded.at("status").get<std::string>();
  if (!is_full_mode(inst, path))
    return {{"status", reverify_trace(s, recorded, "results")}, {"recorded_status", status}};

  if (!recorded.contains("instances")) return {{"status", status}, {"recorded_status", status}};
  json per_instance = json::array();
  std::string overall = "verified";
  for (std::size_t i = 0; i < recorded.at("instances").size(); ++i) {
    const std::string st = reverify_trace(s, recorded.at("instances")[i], at(std::string("results.instances"), i));
    if (exit_code_for(st) > exit_code_for(overall)) overall = st;
    per_instance.push_back(st);
  }
  return {{"status", overall}, {"recorded_status", status}, {"instances", per_instance}};
}

// ----------------------------------------------------------------- chain

struct ChainSetup {
  RatMatrix a;
  CRChain<ZSet> chain;
  CRChain<ZvSet> preimage;
  Interval row_window;
  Box box;
  std::size_t m_max;
};

ChainSetup read_chain_setup(const json& inst, const std::string& path) {
  ChainSetup s;
  s.a = io::read_rat_matrix(io::field(inst, "matrix", path), at(path, "matrix"));
  const json& sets = io::field(inst, "chain", path);
  if (!sets.is_array() || sets.empty()) throw ConfigError(at(path, "chain") + ": expected a nonempty array of sets");
  for (std::size_t i = 0; i < sets.size(); ++i) s.chain.sets.push_back(io::read_zset(sets[i], at(at(path, "chain"), i)));

  if (const json* hints = io::optional_field(inst, "hints", path)) {
    std::map<std::pair<std::size_t, BigInt>, std::size_t> table;
    for (std::size_t i = 0; i < hints->size(); ++i) {
      const std::string hpath = at(at(path, "hints"), i);
      const json& h = hints->at(i);
      table[{io::read_size(io::field(h, "n", hpath), at(hpath, "n")), io::read_int(io::field(h, "x", hpath), at(hpath, "x"))}] =
          io::read_size(io::field(h, "m", hpath), at(hpath, "m"));
    }
    s.chain.shift_hint = [table](std::size_t n, const BigInt& x) -> std::optional<std::size_t> {
      const auto it = table.find({n, x});
      if (it == table.end()) return std::nullopt;
      return it->second;
    };
  }
  s.preimage = chain_preimage(s.a, s.chain);
  s.row_window = io::read_interval(io::field(inst, "row_window", path), at(path, "row_window"));
  s.box = io::read_box(io::field(inst, "box", path), s.a.cols(), at(path, "box"));
  s.m_max = optional_size(inst, "m_max", path, s.chain.length());
  return s;
}

void check_box_budget(const Box& box, std::uint64_t max_points) {
  if (box.volume() > BigInt(static_cast<unsigned long>(max_points)))
    throw BudgetExceeded("box holds " + box.volume().to_string() + " points, cap is " + std::to_string(max_points));
}

std::size_t least_window_shift(const ChainSetup& s, std::size_t n, const IntVector& y) {
  for (std::size_t m = 1; m <= s.chain.length(); ++m)
    if (verify_chain_shift(s.preimage, n, y, m, s.box)) return m;
  return 0;
}

json run_chain(const json& inst, const std::string& path, const Options& options) {
  const ChainSetup s = read_chain_setup(inst, path);
  if (!has_constant_image_property(s.a))
    return {{"status", "unsolvable"}, {"message", "matrix has no integral constant-image solution"}};
  check_box_budget(s.box, options.max_points);
  const bool brute_force = inst.contains("brute_force_minimal") && inst.at("brute_force_minimal").get<bool>();

  const bool c_decreasing = is_decreasing(s.chain, s.row_window);
  const bool d_decreasing = is_decreasing(s.preimage, s.box);

  std::vector<std::pair<std::size_t, IntVector>> points;
  if (const json* listed = io::optional_field(inst, "points", path)) {
    for (std::size_t i = 0; i < listed->size(); ++i) {
      const std::string ppath = at(at(path, "points"), i);
      const std::size_t n = io::read_size(io::field(listed->at(i), "n", ppath), at(ppath, "n"));
      points.emplace_back(n, io::read_int_vector(io::field(listed->at(i), "y", ppath), at(ppath, "y")));
    }
  }
  if (const json* samples = io::optional_field(inst, "samples", path)) {
    const std::string spath = at(path, "samples");
    const std::size_t count = io::read_size(io::field(*samples, "count", spath), at(spath, "count"));
    std::mt19937_64 rng(io::read_u64(io::field(*samples, "seed", spath), at(spath, "seed")));
    std::vector<std::size_t> ns;
    if (const json* listed = io::optional_field(*samples, "n", spath)) {
      for (std::size_t i = 0; i < listed->size(); ++i) ns.push_back(io::read_size(listed->at(i), at(at(spath, "n"), i)));
    } else {
      for (std::size_t n = 1; n <= s.chain.length(); ++n) ns.push_back(n);
    }
    if (ns.empty()) throw ConfigError(at(spath, "n") + ": need at least one chain index");
    std::map<std::size_t, std::vector<IntVector>> members;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t n = ns[i % ns.size()];
      if (n < 1 || n > s.chain.length()) throw ConfigError(at(spath, "n") + ": chain index out of range");
      auto [it, inserted] = members.try_emplace(n);
      if (inserted) it->second = enumerate_window(s.preimage[n], s.box, options.max_points);
      if (it->second.empty()) throw ConfigError(spath + ": D_" + std::to_string(n) + " has no points in the box");
      std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
      points.emplace_back(n, it->second[pick(rng)]);
    }
  }

  json records = json::array();
  std::string overall = c_decreasing && d_decreasing ? "verified" : "failed";
  for (const auto& [n, y] : points) {
    json rec = {{"n", n}, {"y", io::to_json(y)}};
    try {
      const ShiftIndex shift = find_shift_index(s.preimage, s.a, s.chain, n, y, s.row_window, s.box, s.m_max);
      rec["shift"] = io::to_json(shift);
      rec["status"] = shift.window_check ? "verified" : "failed";
      if (brute_force) {
        const std::size_t least = least_window_shift(s, n, y);
        rec["minimal_m"] = least;
        if (least != shift.m) rec["status"] = "failed";
      }
    } catch (const ShiftExhausted& e) {
      rec["status"] = "exhausted";
      rec["message"] = e.what();
    } catch (const ContractViolation& e) {
      rec["status"] = "error";
      rec["message"] = e.what();
    }
    const std::string st = rec["status"].get<std::string>();
    if (exit_code_for(st) > exit_code_for(overall)) overall = st;
    records.push_back(std::move(rec));
  }
  return {{"status", overall},
          {"constant_image_property", true},
          {"decreasing", {{"C", c_decreasing}, {"D", d_decreasing}}},
          {"points", records}};
}

json verify_chain_result(const json& inst, const json& recorded, const std::string& path, const Options& options) {
  const std::string status = recorded.at("status").get<std::string>();
  if (!recorded.contains("points")) return {{"status", status}, {"recorded_status", status}};
  const ChainSetup s = read_chain_setup(inst, path);
  check_box_budget(s.box, options.max_points);
  bool ok = is_decreasing(s.chain, s.row_window) && is_decreasing(s.preimage, s.box);
  std::string overall = "verified";
  for (std::size_t i = 0; i < recorded.at("points").size(); ++i) {
    const json& rec = recorded.at("points")[i];
    const std::string ppath = at(std::string("results.points"), i);
    if (!rec.contains("shift")) {
      const std::string st = rec.at("status").get<std::string>();
      if (exit_code_for(st) > exit_code_for(overall)) overall = st;
      continue;
    }
    const std::size_t n = io::read_size(rec.at("n"), at(ppath, "n"));
    const IntVector y = io::read_int_vector(rec.at("y"), at(ppath, "y"));
    const json& shift = rec.at("shift");
    const std::size_t m = io::read_size(shift.at("m"), at(ppath, "shift.m"));
    const auto images = io::read_int_list(shift.at("row_images"), at(ppath, "shift.row_images"));
    try {
      const RatVector recomputed = multiply(s.a, y);
      bool row_ok = images.size() == static_cast<std::size_t>(recomputed.size());
      for (std::size_t r = 0; row_ok && r < images.size(); ++r) {
        const std::size_t m_r = io::read_size(shift.at("row_indices").at(r), at(ppath, "shift.row_indices"));
        row_ok = recomputed(static_cast<Eigen::Index>(r)) == Rational(images[r]) && m_r <= m &&
                 verify_chain_shift(s.chain, n, images[r], m_r, s.row_window);
      }
      ok = ok && row_ok && verify_chain_shift(s.preimage, n, y, m, s.box);
    } catch (const ContractViolation&) {
      ok = false;
    }
  }
  if (!ok) overall = "failed";
  return {{"status", overall}, {"recorded_status", status}};
}

// ---------------------------------------------------------------- driver

template <typename Run, typename Verify>
Report drive(std::string_view name, const json& input, const Options& options, Run run, Verify verify) {
  Collector collector;
  if (!options.verify_only) {
    const json& list = instances_of(input);
    for (std::size_t i = 0; i < list.size(); ++i) {
      spdlog::info("{}: instance {} of {}", name, i + 1, list.size());
      collector.add(run(list[i], at(std::string("instances"), i)));
    }
    return std::move(collector).finish(name, false, input);
  }
  const RecordedReport recorded = open_report(input, name);
  const json& list = instances_of(recorded.config);
  for (std::size_t i = 0; i < list.size(); ++i) {
    spdlog::info("{} --verify-only: instance {} of {}", name, i + 1, list.size());
    collector.add(verify(list[i], recorded.results[i], at(std::string("instances"), i)));
  }
  return std::move(collector).finish(name, true, recorded.config);
}

Report error_report(std::string_view name, const Options& options, const json& config, const char* kind,
                    const std::string& message, int code) {
  Report report;
  report.exit_code = code;
  report.payload = {{"tool", "rwk"},
                    {"version", std::string(kVersion)},
                    {"command", std::string(name)},
                    {"mode", options.verify_only ? "verify" : "run"},
                    {"config", config},
                    {"error", {{"kind", kind}, {"message", message}}},
                    {"exit_code", code}};
  report.summary.push_back(std::string(name) + ": " + kind + ": " + message);
  return report;
}

}  // namespace

json apply_seed_override(json config, std::uint64_t seed) {
  if (config.is_object()) {
    for (auto& [key, value] : config.items()) {
      if (key == "seed") {
        value = seed;
      } else {
        value = apply_seed_override(std::move(value), seed);
      }
    }
  } else if (config.is_array()) {
    for (auto& value : config) value = apply_seed_override(std::move(value), seed);
  }
  return config;
}

Report cmd_blocks(const json& config, const Options& options) {
  return drive("blocks", config, options, run_blocks, verify_blocks_result);
}

Report cmd_solve(const json& config, const Options& options) {
  return drive("solve", config, options, run_solve, verify_solve_result);
}

Report cmd_witness(const json& config, const Options& options) {
  return drive("witness", config, options, run_witness, verify_witness_result);
}

Report cmd_preimage(const json& config, const Options& options) {
  return drive("preimage", config, options, run_preimage, verify_preimage_result);
}

Report cmd_chain(const json& config, const Options& options) {
  return drive(
      "chain", config, options, [&](const json& inst, const std::string& path) { return run_chain(inst, path, options); },
      [&](const json& inst, const json& rec, const std::string& path) {
        return verify_chain_result(inst, rec, path, options);
      });
}

Report run_command(std::string_view name, const json& input, const Options& options) {
  json config = input;
  if (options.seed_override && !options.verify_only) config = apply_seed_override(std::move(config), *options.seed_override);
  if (options.seed_override && options.verify_only)
    spdlog::warn("--seed-override is ignored with --verify-only; the recorded config is used as is");
  try {
    if (name == "blocks") return cmd_blocks(config, options);
    if (name == "solve") return cmd_solve(config, options);
    if (name == "witness") return cmd_witness(config, options);
    if (name == "preimage") return cmd_preimage(config, options);
    if (name == "chain") return cmd_chain(config, options);
    return error_report(name, options, config, "config", "unknown command", kExitBreach);
  } catch (const ConfigError& e) {
    return error_report(name, options, config, "config", e.what(), kExitBreach);
  } catch (const json::exception& e) {
    return error_report(name, options, config, "config", e.what(), kExitBreach);
  } catch (const InvariantBreach& e) {
    return error_report(name, options, config, "invariant_breach", e.what(), kExitBreach);
  } catch (const BudgetExceeded& e) {
    return error_report(name, options, config, "budget", e.what(), kExitExhausted);
  } catch (const Error& e) {
    return error_report(name, options, config, "error", e.what(), kExitBreach);
  }
}

}  // namespace rwk::cli
