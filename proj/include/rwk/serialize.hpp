#pragma once

/**
 * @file serialize.hpp
 * @brief JSON encodings of configs, set descriptors, witnesses and traces.
 *
 * Integers are written as decimal strings so no consumer loses precision;
 * readers also accept plain JSON integers. Every reader takes a path such as
 * "instances[2].set" that prefixes ConfigError messages.
 */

#include "rwk/block_lemma.hpp"
#include "rwk/essential_cr.hpp"
#include "rwk/preimage_transform.hpp"
#include "rwk/witness_engine.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rwk::io {

using json = nlohmann::json;

/// Parses text; syntax errors become ConfigError with line and column.
json parse_json(const std::string& text, const std::string& source_name);

const json& field(const json& object, const char* key, const std::string& path);
const json* optional_field(const json& object, const char* key, const std::string& path);

BigInt read_int(const json& j, const std::string& path);
std::size_t read_size(const json& j, const std::string& path);
std::uint64_t read_u64(const json& j, const std::string& path);
Rational read_rational(const json& j, const std::string& path);
IntVector read_int_vector(const json& j, const std::string& path);
std::vector<BigInt> read_int_list(const json& j, const std::string& path);
IndexSet read_index_set(const json& j, const std::string& path);
RatMatrix read_rat_matrix(const json& j, const std::string& path);
IntMatrix read_int_matrix(const json& j, const std::string& path);

json to_json(const BigInt& x);
json to_json(const Rational& x);
json to_json(const IntVector& v);
json to_json(const RatMatrix& m);
json to_json(const IntMatrix& m);
json to_json(const IntSeq& s);

/// {"kind": "constant"|"arithmetic"|"polynomial"|"table"|"uniform", ...}
Generator read_generator(const json& j, const std::string& path);
json to_json(const Generator& g);

/// A vector sequence descriptor: {"coordinates": [generator, ...]}.
std::vector<Generator> read_coordinates(const json& j, const std::string& path);

/// {"type": "congruence"|"union"|"intersection"|"complement"|"periodic"|
///  "finite_sums"|"explicit"|"shift"|"all", ...}
ZSet read_zset(const json& j, const std::string& path);
json to_json(const ZSet& s);

/// {"type": "product"|"preimage"|"explicit"|"shift"|"union"|"intersection"|
///  "complement", ...}; `dimension` is required only for explicit sets.
ZvSet read_zvset(const json& j, const std::string& path);
json to_json(const ZvSet& s);

SearchBudget read_budget(const json& j, const std::string& path);
json to_json(const SearchBudget& b);

json to_json(const Witness& w);
json to_json(const VecWitness& w);
Witness read_witness(const json& j, const std::string& path);

/// {status: "found"|"exhausted", a, H, examined, budget}
json to_json(const OracleOutcome& o);
json to_json(const VecOracleOutcome& o);

json to_json(const BlockFamily& b);
BlockFamily read_block_family(const json& j, const std::string& path);

json to_json(const GFunctions& g);
GFunctions read_g_functions(const json& j, const std::string& path);

json to_json(const TransformTrace& t);
TransformTrace read_trace(const json& j, const std::string& path);

json to_json(const ShiftIndex& s);

Box read_box(const json& j, Eigen::Index dimension, const std::string& path);
json to_json(const Box& b);
Interval read_interval(const json& j, const std::string& path);
json to_json(const Interval& w);

}  // namespace rwk::io
