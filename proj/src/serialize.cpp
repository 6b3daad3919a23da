#include "rwk/serialize.hpp"

#include "rwk/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

namespace rwk::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError((path.empty() ? std::string("<root>") : path) + ": " + message);
}

std::string at(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

const json& object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// Library preconditions raised while building values from a config are
// reported against the config path.
template <typename F>
auto guarded(const std::string& path, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const ContractViolation& e) {
    fail(path, e.what());
  } catch (const PrefixTooShort& e) {
    fail(path, e.what());
  }
}

json index_json(const IndexSet& s) { return json(s); }

}  // namespace

json parse_json(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source_name + ": malformed JSON: " + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& path) {
  object(obj, path);
  const auto it = obj.find(key);
  if (it == obj.end()) fail(at(path, key), "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const char* key, const std::string& path) {
  object(obj, path);
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

BigInt read_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(j.get<unsigned long>());
    return BigInt(j.get<long>());
  }
  if (!j.is_string()) fail(path, "expected an integer (decimal string or number)");
  try {
    return BigInt::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

std::size_t read_size(const json& j, const std::string& path) {
  const BigInt x = read_int(j, path);
  if (x.sign() < 0 || !x.fits_int64()) fail(path, "expected a nonnegative machine-size integer");
  return static_cast<std::size_t>(x.to_int64());
}

std::uint64_t read_u64(const json& j, const std::string& path) {
  const BigInt x = read_int(j, path);
  if (x.sign() < 0 || x > BigInt(mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max()), 10)))
    fail(path, "expected an unsigned 64-bit integer");
  return std::stoull(x.to_string());
}

Rational read_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(read_int(j, path));
  if (!j.is_string()) fail(path, "expected a rational \"p/q\" or an integer");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

std::vector<BigInt> read_int_list(const json& j, const std::string& path) {
  array(j, path);
  std::vector<BigInt> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_int(j[i], at(path, i)));
  return out;
}

IntVector read_int_vector(const json& j, const std::string& path) {
  const std::vector<BigInt> values = read_int_list(j, path);
  if (values.empty()) fail(path, "vector must have at least one entry");
  IntVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

IndexSet read_index_set(const json& j, const std::string& path) {
  array(j, path);
  IndexSet out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::size_t t = read_size(j[i], at(path, i));
    if (t < 1) fail(at(path, i), "indices start at 1");
    if (!out.empty() && t <= out.back()) fail(at(path, i), "indices must be strictly increasing");
    out.push_back(t);
  }
  return out;
}

namespace {

template <typename Scalar, typename Read>
Matrix<Scalar> read_matrix(const json& j, const std::string& path, Read read) {
  array(j, path);
  if (j.empty()) fail(path, "matrix must have at least one row");
  const std::size_t cols = array(j[0], at(path, std::size_t{0})).size();
  if (cols == 0) fail(at(path, std::size_t{0}), "matrix must have at least one column");
  Matrix<Scalar> m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = at(path, r);
    if (array(j[r], row_path).size() != cols) fail(row_path, "rows differ in length");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = read(j[r][c], at(row_path, c));
  }
  return m;
}

template <typename Scalar>
json matrix_json(const Matrix<Scalar>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RatMatrix read_rat_matrix(const json& j, const std::string& path) {
  return read_matrix<Rational>(j, path, read_rational);
}

IntMatrix read_int_matrix(const json& j, const std::string& path) { return read_matrix<BigInt>(j, path, read_int); }

json to_json(const BigInt& x) { return x.to_string(); }
json to_json(const Rational& x) { return x.to_string(); }

json to_json(const IntVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).to_string());
  return out;
}

json to_json(const RatMatrix& m) { return matrix_json(m); }
json to_json(const IntMatrix& m) { return matrix_json(m); }

json to_json(const IntSeq& s) {
  json out = json::array();
  for (const BigInt& x : s.values()) out.push_back(x.to_string());
  return out;
}

namespace {

json int_list_json(const std::vector<BigInt>& xs) {
  json out = json::array();
  for (const BigInt& x : xs) out.push_back(x.to_string());
  return out;
}

IntSeq read_int_seq(const json& j, const std::string& path) {
  const std::vector<BigInt> values = read_int_list(j, path);
  if (values.empty()) fail(path, "sequence must have length >= 1");
  return IntSeq(values);
}

}  // namespace

Generator read_generator(const json& j, const std::string& path) {
  const std::string kind = read_string(field(j, "kind", path), at(path, "kind"));
  if (kind == "constant") return gen::Constant{read_int(field(j, "value", path), at(path, "value"))};
  if (kind == "arithmetic")
    return gen::Arithmetic{read_int(field(j, "start", path), at(path, "start")),
                           read_int(field(j, "step", path), at(path, "step"))};
  if (kind == "polynomial") {
    auto coefficients = read_int_list(field(j, "coefficients", path), at(path, "coefficients"));
    if (coefficients.empty()) fail(at(path, "coefficients"), "need at least one coefficient");
    return gen::Polynomial{std::move(coefficients)};
  }
  if (kind == "table") {
    auto values = read_int_list(field(j, "values", path), at(path, "values"));
    if (values.empty()) fail(at(path, "values"), "table must be nonempty");
    return gen::Table{std::move(values)};
  }
  if (kind == "uniform") {
    gen::SeededUniform g{read_int(field(j, "lo", path), at(path, "lo")),
                         read_int(field(j, "hi", path), at(path, "hi")),
                         read_u64(field(j, "seed", path), at(path, "seed"))};
    if (g.lo > g.hi) fail(path, "uniform range is empty");
    return g;
  }
  fail(at(path, "kind"), "unknown generator kind '" + kind + "'");
}

json to_json(const Generator& g) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, gen::Constant>) {
          return {{"kind", "constant"}, {"value", x.value.to_string()}};
        } else if constexpr (std::is_same_v<T, gen::Arithmetic>) {
          return {{"kind", "arithmetic"}, {"start", x.start.to_string()}, {"step", x.step.to_string()}};
        } else if constexpr (std::is_same_v<T, gen::Polynomial>) {
          return {{"kind", "polynomial"}, {"coefficients", int_list_json(x.coefficients)}};
        } else if constexpr (std::is_same_v<T, gen::Table>) {
          return {{"kind", "table"}, {"values", int_list_json(x.values)}};
        } else {
          return {{"kind", "uniform"}, {"lo", x.lo.to_string()}, {"hi", x.hi.to_string()}, {"seed", x.seed}};
        }
      },
      g);
}

std::vector<Generator> read_coordinates(const json& j, const std::string& path) {
  const json& coords = array(field(j, "coordinates", path), at(path, "coordinates"));
  if (coords.empty()) fail(at(path, "coordinates"), "need at least one coordinate");
  std::vector<Generator> out;
  for (std::size_t i = 0; i < coords.size(); ++i) out.push_back(read_generator(coords[i], at(at(path, "coordinates"), i)));
  return out;
}

namespace {

std::vector<ZSet> read_zset_parts(const json& j, const std::string& path) {
  const json& parts = array(field(j, "parts", path), at(path, "parts"));
  if (parts.empty()) fail(at(path, "parts"), "need at least one part");
  std::vector<ZSet> out;
  for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(read_zset(parts[i], at(at(path, "parts"), i)));
  return out;
}

std::vector<ZvSet> read_zvset_parts(const json& j, const std::string& path) {
  const json& parts = array(field(j, "parts", path), at(path, "parts"));
  if (parts.empty()) fail(at(path, "parts"), "need at least one part");
  std::vector<ZvSet> out;
  for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(read_zvset(parts[i], at(at(path, "parts"), i)));
  return out;
}

}  // namespace

ZSet read_zset(const json& j, const std::string& path) {
  const std::string type = read_string(field(j, "type", path), at(path, "type"));
  return guarded(path, [&]() -> ZSet {
    if (type == "congruence")
      return congruence(read_int(field(j, "modulus", path), at(path, "modulus")),
                        read_int(field(j, "residue", path), at(path, "residue")));
    if (type == "all") return all_integers();
    if (type == "union") return union_of(read_zset_parts(j, path));
    if (type == "intersection") return intersection_of(read_zset_parts(j, path));
    if (type == "complement") return complement_of(read_zset(field(j, "set", path), at(path, "set")));
    if (type == "periodic") {
      const std::string ipath = at(path, "intervals");
      const json& raw = array(field(j, "intervals", path), ipath);
      std::vector<std::pair<BigInt, BigInt>> intervals;
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!raw[i].is_array() || raw[i].size() != 2) fail(at(ipath, i), "expected [lo, hi]");
        intervals.emplace_back(read_int(raw[i][0], at(at(ipath, i), std::size_t{0})),
                               read_int(raw[i][1], at(at(ipath, i), std::size_t{1})));
      }
      return periodic_intervals(read_int(field(j, "period", path), at(path, "period")), std::move(intervals));
    }
    if (type == "finite_sums") {
      const json& g = field(j, "generator", path);
      IntSeq seq = g.is_array() ? read_int_seq(g, at(path, "generator"))
                                : make_sequence(read_generator(g, at(path, "generator")),
                                                read_size(field(j, "length", path), at(path, "length")));
      const std::size_t depth = read_size(field(j, "depth", path), at(path, "depth"));
      return finite_sums(std::move(seq), depth);
    }
    if (type == "explicit") return explicit_set(read_int_list(field(j, "elements", path), at(path, "elements")));
    if (type == "shift")
      return shifted(read_int(field(j, "offset", path), at(path, "offset")),
                     read_zset(field(j, "set", path), at(path, "set")));
    fail(at(path, "type"), "unknown set type '" + type + "'");
  });
}

json to_json(const ZSet& s) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, zset::Congruence>) {
          return {{"type", "congruence"}, {"modulus", x.modulus.to_string()}, {"residue", x.residue.to_string()}};
        } else if constexpr (std::is_same_v<T, zset::Union> || std::is_same_v<T, zset::Intersection>) {
          json parts = json::array();
          for (const auto& p : x.parts) parts.push_back(to_json(p));
          return {{"type", std::is_same_v<T, zset::Union> ? "union" : "intersection"}, {"parts", parts}};
        } else if constexpr (std::is_same_v<T, zset::Complement>) {
          return {{"type", "complement"}, {"set", to_json(x.inner)}};
        } else if constexpr (std::is_same_v<T, zset::PeriodicIntervals>) {
          json intervals = json::array();
          for (const auto& [lo, hi] : x.intervals) intervals.push_back({lo.to_string(), hi.to_string()});
          return {{"type", "periodic"}, {"period", x.period.to_string()}, {"intervals", intervals}};
        } else if constexpr (std::is_same_v<T, zset::FiniteSums>) {
          return {{"type", "finite_sums"}, {"generator", to_json(x.generator)}, {"depth", x.depth}};
        } else if constexpr (std::is_same_v<T, zset::Explicit>) {
          return {{"type", "explicit"}, {"elements", int_list_json(x.elements)}};
        } else {
          return {{"type", "shift"}, {"offset", x.offset.to_string()}, {"set", to_json(x.inner)}};
        }
      },
      s.node().value);
}

ZvSet read_zvset(const json& j, const std::string& path) {
  const std::string type = read_string(field(j, "type", path), at(path, "type"));
  return guarded(path, [&]() -> ZvSet {
    if (type == "product") {
      const std::string fpath = at(path, "factors");
      const json& raw = array(field(j, "factors", path), fpath);
      if (raw.empty()) fail(fpath, "need at least one factor");
      std::vector<ZSet> factors;
      for (std::size_t i = 0; i < raw.size(); ++i) factors.push_back(read_zset(raw[i], at(fpath, i)));
      return product_of(std::move(factors));
    }
    if (type == "preimage")
      return preimage_set(read_rat_matrix(field(j, "matrix", path), at(path, "matrix")),
                          read_zset(field(j, "set", path), at(path, "set")));
    if (type == "explicit") {
      const auto dimension = static_cast<Eigen::Index>(read_size(field(j, "dimension", path), at(path, "dimension")));
      const std::string epath = at(path, "elements");
      const json& raw = array(field(j, "elements", path), epath);
      std::vector<IntVector> elements;
      for (std::size_t i = 0; i < raw.size(); ++i) elements.push_back(read_int_vector(raw[i], at(epath, i)));
      return explicit_vectors(dimension, std::move(elements));
    }
    if (type == "shift")
      return shifted(read_int_vector(field(j, "offset", path), at(path, "offset")),
                     read_zvset(field(j, "set", path), at(path, "set")));
    if (type == "union") return union_of(read_zvset_parts(j, path));
    if (type == "intersection") return intersection_of(read_zvset_parts(j, path));
    if (type == "complement") return complement_of(read_zvset(field(j, "set", path), at(path, "set")));
    fail(at(path, "type"), "unknown vector set type '" + type + "'");
  });
}

json to_json(const ZvSet& s) {
  const Eigen::Index dimension = s.dimension();
  return std::visit(
      [dimension](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, zvset::Product>) {
          json factors = json::array();
          for (const auto& f : x.factors) factors.push_back(to_json(f));
          return {{"type", "product"}, {"factors", factors}};
        } else if constexpr (std::is_same_v<T, zvset::Preimage>) {
          return {{"type", "preimage"}, {"matrix", to_json(x.matrix)}, {"set", to_json(x.target)}};
        } else if constexpr (std::is_same_v<T, zvset::Explicit>) {
          json elements = json::array();
          for (const auto& e : x.elements) elements.push_back(to_json(e));
          return {{"type", "explicit"}, {"dimension", dimension}, {"elements", elements}};
        } else if constexpr (std::is_same_v<T, zvset::Shift>) {
          return {{"type", "shift"}, {"offset", to_json(x.offset)}, {"set", to_json(x.inner)}};
        } else if constexpr (std::is_same_v<T, zvset::Union> || std::is_same_v<T, zvset::Intersection>) {
          json parts = json::array();
          for (const auto& p : x.parts) parts.push_back(to_json(p));
          return {{"type", std::is_same_v<T, zvset::Union> ? "union" : "intersection"}, {"parts", parts}};
        } else {
          return {{"type", "complement"}, {"set", to_json(x.inner)}};
        }
      },
      s.node().value);
}

SearchBudget read_budget(const json& j, const std::string& path) {
  SearchBudget b;
  b.a_bound = read_int(field(j, "a_bound", path), at(path, "a_bound"));
  if (b.a_bound.sign() < 0) fail(at(path, "a_bound"), "must be >= 0");
  if (const json* r = optional_field(j, "r", path)) {
    b.r = read_size(*r, at(path, "r"));
    if (b.r < 1) fail(at(path, "r"), "must be >= 1");
  }
  if (const json* cap = optional_field(j, "max_candidates", path)) {
    b.max_candidates = read_u64(*cap, at(path, "max_candidates"));
    if (b.max_candidates < 1) fail(at(path, "max_candidates"), "must be >= 1");
  }
  return b;
}

json to_json(const SearchBudget& b) {
  return {{"a_bound", b.a_bound.to_string()}, {"r", b.r}, {"max_candidates", b.max_candidates}};
}

json to_json(const Witness& w) { return {{"a", w.a.to_string()}, {"H", index_json(w.H)}}; }
json to_json(const VecWitness& w) { return {{"a", to_json(w.a)}, {"H", index_json(w.H)}}; }

Witness read_witness(const json& j, const std::string& path) {
  Witness w{read_int(field(j, "a", path), at(path, "a")), read_index_set(field(j, "H", path), at(path, "H"))};
  if (w.H.empty()) fail(at(path, "H"), "witness index set must be nonempty");
  return w;
}

namespace {

template <typename Point>
json outcome_json(const BasicOutcome<Point>& o) {
  json out = {{"status", o.found() ? "found" : "exhausted"},
              {"examined", o.examined},
              {"budget", to_json(o.budget)},
              {"candidate_cap_hit", o.candidate_cap_hit}};
  if (o.found()) {
    const json w = to_json(*o.witness);
    out["a"] = w["a"];
    out["H"] = w["H"];
  } else {
    out["a"] = nullptr;
    out["H"] = nullptr;
  }
  return out;
}

}  // namespace

json to_json(const OracleOutcome& o) { return outcome_json(o); }
json to_json(const VecOracleOutcome& o) { return outcome_json(o); }

json to_json(const BlockFamily& b) {
  json blocks = json::array();
  for (const auto& k : b.blocks) blocks.push_back(index_json(k));
  return {{"d", b.d.to_string()}, {"m", b.m}, {"k", b.k.to_string()}, {"blocks", blocks}};
}

BlockFamily read_block_family(const json& j, const std::string& path) {
  BlockFamily b;
  b.d = read_int(field(j, "d", path), at(path, "d"));
  b.m = read_size(field(j, "m", path), at(path, "m"));
  b.k = read_int(field(j, "k", path), at(path, "k"));
  const std::string bpath = at(path, "blocks");
  const json& raw = array(field(j, "blocks", path), bpath);
  for (std::size_t i = 0; i < raw.size(); ++i) b.blocks.push_back(read_index_set(raw[i], at(bpath, i)));
  return b;
}

json to_json(const GFunctions& g) {
  json distinct = json::array();
  for (const auto& s : g.distinct) distinct.push_back(to_json(s));
  return {{"distinct", distinct}, {"index", g.index}, {"raw_count", g.raw_count}};
}

GFunctions read_g_functions(const json& j, const std::string& path) {
  GFunctions g;
  const std::string dpath = at(path, "distinct");
  const json& distinct = array(field(j, "distinct", path), dpath);
  for (std::size_t i = 0; i < distinct.size(); ++i) g.distinct.push_back(read_int_seq(distinct[i], at(dpath, i)));
  const std::string ipath = at(path, "index");
  const json& index = array(field(j, "index", path), ipath);
  for (std::size_t f = 0; f < index.size(); ++f) {
    const json& row = array(index[f], at(ipath, f));
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < row.size(); ++i) {
      ids.push_back(read_size(row[i], at(at(ipath, f), i)));
      if (ids.back() >= g.distinct.size()) fail(at(at(ipath, f), i), "refers to a missing g function");
    }
    g.index.push_back(std::move(ids));
  }
  g.raw_count = read_size(field(j, "raw_count", path), at(path, "raw_count"));
  return g;
}

json to_json(const TransformTrace& t) {
  json outputs = json::array();
  for (const auto& y : t.outputs) outputs.push_back(to_json(y));
  return {{"matrix", to_json(t.matrix)},
          {"d", t.d.to_string()},
          {"m", t.m},
          {"u", t.u},
          {"v", t.v},
          {"k", t.k.to_string()},
          {"block_count", t.block_count},
          {"blocks", to_json(t.blocks)},
          {"g", to_json(t.g)},
          {"oracle_witness", to_json(t.oracle_witness)},
          {"x", to_json(t.x)},
          {"K", index_json(t.K)},
          {"outputs", outputs},
          {"verified", t.verified}};
}

TransformTrace read_trace(const json& j, const std::string& path) {
  TransformTrace t;
  t.matrix = read_rat_matrix(field(j, "matrix", path), at(path, "matrix"));
  t.d = read_int(field(j, "d", path), at(path, "d"));
  t.m = read_size(field(j, "m", path), at(path, "m"));
  t.u = read_size(field(j, "u", path), at(path, "u"));
  t.v = read_size(field(j, "v", path), at(path, "v"));
  t.k = read_int(field(j, "k", path), at(path, "k"));
  t.block_count = read_size(field(j, "block_count", path), at(path, "block_count"));
  t.blocks = read_block_family(field(j, "blocks", path), at(path, "blocks"));
  t.g = read_g_functions(field(j, "g", path), at(path, "g"));
  t.oracle_witness = read_witness(field(j, "oracle_witness", path), at(path, "oracle_witness"));
  t.x = read_int_vector(field(j, "x", path), at(path, "x"));
  t.K = read_index_set(field(j, "K", path), at(path, "K"));
  const std::string opath = at(path, "outputs");
  const json& outputs = array(field(j, "outputs", path), opath);
  for (std::size_t i = 0; i < outputs.size(); ++i) t.outputs.push_back(read_int_vector(outputs[i], at(opath, i)));
  const json& verified = field(j, "verified", path);
  if (!verified.is_boolean()) fail(at(path, "verified"), "expected a boolean");
  t.verified = verified.get<bool>();
  return t;
}

json to_json(const ShiftIndex& s) {
  return {{"m", s.m},
          {"row_images", int_list_json(s.row_images)},
          {"row_indices", s.row_indices},
          {"window_check", s.window_check}};
}

Box read_box(const json& j, Eigen::Index dimension, const std::string& path) {
  Box box;
  if (j.is_array() && j.size() == 2 && !j[0].is_array()) {
    box = cube(dimension, read_int(j[0], at(path, std::size_t{0})), read_int(j[1], at(path, std::size_t{1})));
  } else {
    const json& lo = field(j, "lo", path);
    const json& hi = field(j, "hi", path);
    if (lo.is_array()) {
      box.lo = read_int_vector(lo, at(path, "lo"));
      box.hi = read_int_vector(hi, at(path, "hi"));
    } else {
      box = cube(dimension, read_int(lo, at(path, "lo")), read_int(hi, at(path, "hi")));
    }
  }
  if (box.lo.size() != dimension || box.hi.size() != dimension) fail(path, "box dimension mismatch");
  for (Eigen::Index i = 0; i < dimension; ++i)
    if (box.lo(i) > box.hi(i)) fail(path, "box lower corner exceeds upper corner");
  return box;
}

json to_json(const Box& b) { return {{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}}; }

Interval read_interval(const json& j, const std::string& path) {
  Interval w;
  if (j.is_array()) {
    if (j.size() != 2) fail(path, "expected [lo, hi]");
    w = {read_int(j[0], at(path, std::size_t{0})), read_int(j[1], at(path, std::size_t{1}))};
  } else {
    w = {read_int(field(j, "lo", path), at(path, "lo")), read_int(field(j, "hi", path), at(path, "hi"))};
  }
  if (w.lo > w.hi) fail(path, "interval lower bound exceeds upper bound");
  return w;
}

json to_json(const Interval& w) { return json::array({w.lo.to_string(), w.hi.to_string()}); }

}  // namespace rwk::io
