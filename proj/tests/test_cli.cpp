#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rwk/commands.hpp"
#include "rwk/serialize.hpp"

#include "support/builders.hpp"

#include <fstream>
#include <sstream>

using namespace rwk;
using io::json;
using testing::ivec;
using testing::rat;

namespace {

json load_config(const std::string& name) {
  const std::string path = std::string(RWK_SOURCE_DIR) + "/configs/" + name;
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream text;
  text << in.rdbuf();
  return io::parse_json(text.str(), path);
}

cli::Report run(const std::string& command, const json& config, cli::Options options = {}) {
  return cli::run_command(command, config, options);
}

cli::Report reverify(const std::string& command, const json& payload) {
  cli::Options options;
  options.verify_only = true;
  return cli::run_command(command, payload, options);
}

std::string error_message(const std::function<void()>& body) {
  try {
    body();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool same_on(const ZSet& a, const ZSet& b) {
  for (long x = -60; x <= 60; ++x)
    if (contains(a, BigInt(x)) != contains(b, BigInt(x))) return false;
  return true;
}

}  // namespace

TEST_CASE("scalars round trip as decimal strings") {
  const BigInt big = pow(BigInt(3), 90) - BigInt(1);
  CHECK(io::to_json(big).is_string());
  CHECK(io::read_int(io::to_json(big), "x") == big);
  CHECK(io::read_int(json(-17), "x") == BigInt(-17));
  CHECK(io::read_rational(io::to_json(Rational(BigInt(-3), BigInt(6))), "q") == Rational(BigInt(-1), BigInt(2)));
  CHECK(io::to_json(Rational(BigInt(4), BigInt(2))) == json("2"));
  const RatMatrix m = rat({{"1/2", "-3"}, {"0", "7/5"}});
  CHECK(io::read_rat_matrix(io::to_json(m), "A") == m);
  const IntVector v = ivec({4, -5, 0});
  CHECK(io::read_int_vector(io::to_json(v), "v") == v);
}

TEST_CASE("config readers report the failing path") {
  CHECK(error_message([] { (void)io::parse_json("{\"a\": ", "cfg.json"); }).starts_with("cfg.json: malformed JSON"));
  CHECK(error_message([] { (void)io::field(json::object(), "matrix", "instances[0]"); }).find("instances[0].matrix") !=
        std::string::npos);
  CHECK(error_message([] { (void)io::read_int(json("1.5"), "d"); }).find("d") != std::string::npos);
  CHECK_THROWS_AS(io::read_int(json(true), "d"), ConfigError);
  CHECK_THROWS_AS(io::read_rational(json("1/0"), "q"), ConfigError);
  CHECK_THROWS_AS(io::read_size(json(-1), "n"), ConfigError);
  CHECK_THROWS_AS(io::read_index_set(json::parse("[2, 1]"), "H"), ConfigError);
  CHECK_THROWS_AS(io::read_index_set(json::parse("[0, 1]"), "H"), ConfigError);
  CHECK(io::read_index_set(json::parse("[1, 4]"), "H") == IndexSet{1, 4});
  CHECK_THROWS_AS(io::read_rat_matrix(json::parse("[[\"1\"], [\"1\", \"2\"]]"), "A"), ConfigError);
  CHECK_THROWS_AS(io::read_rat_matrix(json::parse("[]"), "A"), ConfigError);
  CHECK_THROWS_AS(io::read_generator(json::parse(R"({"kind": "fibonacci"})"), "g"), ConfigError);
  CHECK_THROWS_AS(io::read_zset(json::parse(R"({"type": "congruence", "modulus": "0", "residue": "0"})"), "B"),
                  ConfigError);
  CHECK_THROWS_AS(io::read_zset(json::parse(R"({"type": "nonsense"})"), "B"), ConfigError);
  CHECK_THROWS_AS(io::read_box(json::parse(R"({"lo": ["0"], "hi": ["1", "2"]})"), 2, "box"), ConfigError);
}

TEST_CASE("set descriptors round trip") {
  const std::vector<ZSet> sets{
      congruence(BigInt(5), BigInt(2)),
      all_integers(),
      union_of({congruence(BigInt(3), BigInt(0)), explicit_set({BigInt(1), BigInt(-4)})}),
      intersection_of({congruence(BigInt(2), BigInt(0)), complement_of(congruence(BigInt(3), BigInt(0)))}),
      periodic_intervals(BigInt(10), {{BigInt(0), BigInt(3)}}),
      finite_sums(testing::seq({1, 4, 9}), 2),
      shifted(BigInt(7), congruence(BigInt(4), BigInt(1))),
      explicit_set({}),
  };
  for (const auto& s : sets) {
    const ZSet back = io::read_zset(io::to_json(s), "B");
    REQUIRE(same_on(s, back));
    REQUIRE(io::to_json(back) == io::to_json(s));
  }

  const ZvSet pre = preimage_set(rat({{"1", "1"}, {"1", "-1"}}), congruence(BigInt(3), BigInt(0)));
  const ZvSet v = union_of({pre, shifted(ivec({1, 0}), explicit_vectors(2, {ivec({0, 0})}))});
  const ZvSet back = io::read_zvset(io::to_json(v), "C");
  CHECK(back.dimension() == 2);
  for_each_point(cube(2, BigInt(-6), BigInt(6)), [&](const IntVector& y) {
    REQUIRE(contains(back, y) == contains(v, y));
    return true;
  });
  CHECK(io::to_json(back) == io::to_json(v));
}

TEST_CASE("generators and boxes round trip") {
  const std::vector<Generator> gens{gen::Constant{BigInt(3)}, gen::Arithmetic{BigInt(1), BigInt(-2)},
                                    gen::Polynomial{{BigInt(0), BigInt(1), BigInt(1)}},
                                    gen::Table{{BigInt(5), BigInt(6)}},
                                    gen::SeededUniform{BigInt(-4), BigInt(4), 18446744073709551615ULL}};
  for (const auto& g : gens) REQUIRE(make_sequence(io::read_generator(io::to_json(g), "g"), 2) == make_sequence(g, 2));

  const Box cubed = io::read_box(json::parse(R"(["-2", "2"])"), 3, "box");
  CHECK(cubed.lo == ivec({-2, -2, -2}));
  const Box scalar = io::read_box(json::parse(R"({"lo": -1, "hi": 1})"), 2, "box");
  CHECK(scalar.hi == ivec({1, 1}));
  const Box vector = io::read_box(json::parse(R"({"lo": ["0", "1"], "hi": ["2", "3"]})"), 2, "box");
  CHECK(vector.lo == ivec({0, 1}));
  CHECK(vector.hi == ivec({2, 3}));
  const Interval w = io::read_interval(json::parse(R"(["-5", "5"])"), "w");
  CHECK(w.lo == BigInt(-5));
}

TEST_CASE("traces round trip and still verify") {
  const SeqFamily family({testing::vseq({[](long t) { return t; }, [](long t) { return 3 * t + 1; }}, 20)});
  const ZSet target = congruence(BigInt(5), BigInt(0));
  const RatMatrix a = rat({{"1/2", "1/2"}});
  const TransformTrace trace = transform_witness(a, target, family, 4, SearchBudget{BigInt(50), 1});
  REQUIRE(trace.verified);
  const TransformTrace back = io::read_trace(io::to_json(trace), "trace");
  CHECK(io::to_json(back) == io::to_json(trace));
  CHECK(verify_transform(back, target, family));
}

TEST_CASE("blocks command") {
  const cli::Report report = run("blocks", load_config("blocks.json"));
  CHECK(report.exit_code == cli::kExitOk);
  const json& results = report.payload.at("results");
  REQUIRE(results.size() == 3);
  CHECK(results[0].at("block_family").at("blocks") == json::parse("[[1, 3], [4, 6]]"));
  CHECK(results[1].at("block_family").at("blocks") == json::parse("[[1], [2], [3]]"));
  CHECK(report.payload.at("tool") == "rwk");
  CHECK(report.payload.at("version") == std::string(cli::kVersion));

  const json short_prefix = json::parse(R"({"instances": [{"d": "2", "blocks": 3, "length": 5,
      "sequences": [{"kind": "arithmetic", "start": "1", "step": "1"}]}]})");
  const cli::Report tight = run("blocks", short_prefix);
  CHECK(tight.exit_code == cli::kExitBreach);
  CHECK(tight.payload.at("results")[0].at("required_length") == 9);
}

TEST_CASE("solve command") {
  const cli::Report report = run("solve", load_config("solve.json"));
  CHECK(report.exit_code == cli::kExitOk);
  const json& results = report.payload.at("results");
  CHECK(results[0].at("solutions")[0].at("x") == json::parse(R"(["1", "0"])"));
  CHECK(results[1].at("constant_image_property") == false);
  CHECK(results[1].at("solutions")[0].at("x").is_null());
  CHECK(results[2].at("d") == "2");
}

TEST_CASE("witness command") {
  const cli::Report report = run("witness", load_config("witness.json"));
  CHECK(report.exit_code == cli::kExitExhausted);
  const json& results = report.payload.at("results");
  CHECK(results[0].at("outcome").at("a") == "0");
  CHECK(results[0].at("outcome").at("H") == json::parse("[2]"));
  CHECK(results[1].at("status") == "exhausted");
  CHECK(results[2].at("outcome").at("H") == json::parse("[1, 2]"));
}

TEST_CASE("preimage command") {
  const cli::Report report = run("preimage", load_config("preimage.json"));
  CHECK(report.exit_code == cli::kExitOk);
  const json& first = report.payload.at("results")[0];
  CHECK(first.at("status") == "verified");
  CHECK(first.at("trace").at("outputs") == json::parse(R"([["2"]])"));

  const json schur = json::parse(R"({"instances": [{"matrix": [["1", "0"], ["0", "1"], ["1", "1"]],
      "set": {"type": "congruence", "modulus": "2", "residue": "0"}, "blocks": 2,
      "budget": {"a_bound": "5"},
      "family": [{"coordinates": [{"kind": "constant", "value": "1"}, {"kind": "constant", "value": "1"}]}]}]})");
  const cli::Report bad = run("preimage", schur);
  CHECK(bad.exit_code == cli::kExitBreach);
  CHECK(bad.payload.at("results")[0].at("status") == "unsolvable");
}

TEST_CASE("chain command") {
  const cli::Report report = run("chain", load_config("chain.json"));
  CHECK(report.exit_code == cli::kExitOk);
  for (const auto& point : report.payload.at("results")[0].at("points")) {
    REQUIRE(point.at("status") == "verified");
    REQUIRE(point.at("shift").at("m") == point.at("minimal_m"));
  }
  cli::Options tiny;
  tiny.max_points = 10;
  const cli::Report capped = run("chain", load_config("chain.json"), tiny);
  CHECK(capped.exit_code == cli::kExitExhausted);
  CHECK(capped.payload.at("error").at("kind") == "budget");
}

TEST_CASE("reports re-verify without searching") {
  for (const std::string command : {"blocks", "solve", "witness", "preimage", "chain"}) {
    CAPTURE(command);
    const cli::Report first = run(command, load_config(command + ".json"));
    const cli::Report again = reverify(command, first.payload);
    CHECK(again.exit_code == first.exit_code);
    CHECK(again.payload.at("mode") == "verify");
  }
}

TEST_CASE("tampered reports fail verification") {
  json payload = run("preimage", load_config("preimage.json")).payload;
  json& trace = payload.at("results")[0].at("trace");
  trace.at("K")[0] = 3;
  CHECK(reverify("preimage", payload).exit_code == cli::kExitBreach);

  json blocks = run("blocks", load_config("blocks.json")).payload;
  blocks.at("results")[0].at("block_family").at("blocks")[0] = json::parse("[1, 2]");
  CHECK(reverify("blocks", blocks).exit_code == cli::kExitBreach);

  json witness = run("witness", load_config("witness.json")).payload;
  witness.at("results")[0].at("outcome").at("a") = "1";
  CHECK(reverify("witness", witness).exit_code == cli::kExitBreach);

  const json solve = run("solve", load_config("solve.json")).payload;
  CHECK(reverify("blocks", solve).exit_code == cli::kExitBreach);
}

TEST_CASE("reports are deterministic") {
  for (const std::string command : {"blocks", "solve", "witness", "preimage", "chain"}) {
    CAPTURE(command);
    const json config = load_config(command + ".json");
    REQUIRE(run(command, config).payload.dump() == run(command, config).payload.dump());
  }
}

TEST_CASE("seed override rewrites every seed") {
  const json nested = json::parse(R"({"seed": 1, "a": [{"seed": 2}, {"b": {"seed": 3}}], "seedling": 4})");
  const json out = cli::apply_seed_override(nested, 99);
  CHECK(out.at("seed") == 99);
  CHECK(out.at("a")[0].at("seed") == 99);
  CHECK(out.at("a")[1].at("b").at("seed") == 99);
  CHECK(out.at("seedling") == 4);

  cli::Options options;
  options.seed_override = 5;
  const cli::Report overridden = run("blocks", load_config("blocks.json"), options);
  CHECK(overridden.exit_code == cli::kExitOk);
  CHECK(overridden.payload.at("config").at("instances")[2].at("sequences")[1].at("seed") == 5);
  CHECK(reverify("blocks", overridden.payload).exit_code == cli::kExitOk);
}

TEST_CASE("driver errors become reports") {
  const cli::Report unknown = run("plot", json::parse(R"({"instances": []})"));
  CHECK(unknown.exit_code == cli::kExitBreach);
  CHECK(unknown.payload.at("error").at("kind") == "config");

  const cli::Report missing = run("blocks", json::parse(R"({"runs": []})"));
  CHECK(missing.exit_code == cli::kExitBreach);
  CHECK(missing.payload.at("error").at("message").get<std::string>().find("instances") != std::string::npos);

  const cli::Report bad_field = run("solve", json::parse(R"({"instances": [{"matrix": "identity"}]})"));
  CHECK(bad_field.exit_code == cli::kExitBreach);
  CHECK(bad_field.payload.at("error").at("message").get<std::string>().find("instances[0].matrix") !=
        std::string::npos);
}
