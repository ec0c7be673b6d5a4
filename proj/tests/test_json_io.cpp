#include <random>

#include "doctest.h"
#include "lacuna/corpus.hpp"
#include "lacuna/error.hpp"
#include "lacuna/json_io.hpp"

using namespace lacuna;
using json_io::Json;

namespace {

std::string parse_error_message(std::string_view text) {
  try {
    (void)json_io::parse_document(text, "input.json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("sequence documents") {
  const auto table = json_io::to_json(SequenceSpec::finite_table(-2, {1, Rational(3, 6)}, 0));
  CHECK(table == Json::parse(R"({"kind":"finite_table","anchor":-2,"values":["1/1","1/2"],"default":"0/1"})"));

  const auto geo = json_io::to_json(corpus::example1_lacunary(2));
  CHECK(geo == Json::parse(R"({"kind":"geometric_support","scale":3,"shift":1,"value":"1/1","allowNegativeExponent":false})"));

  const auto rp = json_io::sequence_from_json(
      Json::parse(R"({"kind":"residue_poly","modulus":3,"perClass":{"0":["0/1","1/1"]}})"));
  CHECK(rp(6) == 6);
  CHECK(rp(7) == 0);

  // Defaults for optional fields.
  const auto per = json_io::sequence_from_json(Json::parse(R"({"kind":"periodic","period":2,"values":["1/1",0]})"));
  CHECK(per == SequenceSpec::periodic(2, {1, 0}, 0));
}

TEST_CASE("round trips preserve every spec") {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto op = corpus::random_residue_operator(1 + static_cast<std::int64_t>(seed % 6),
                                                    1 + static_cast<std::int64_t>(seed % 5), seed);
    const Json j = json_io::to_json(op);
    CHECK(json_io::operator_from_json(j) == op);
    CHECK(json_io::dump(json_io::to_json(json_io::operator_from_json(Json::parse(json_io::dump(j))))) ==
          json_io::dump(j));
  }
  const std::vector<SequenceSpec> specs{
      SequenceSpec::finite_table(3, {Rational(-7, 3), 0, 2}, Rational(1, 9)),
      SequenceSpec::periodic(3, {0, 1, Rational(5, 2)}, -4),
      SequenceSpec::geometric_support(12, -3, Rational(-2), true),
      corpus::example1_lacunary(3),
  };
  for (const auto& s : specs) CHECK(json_io::sequence_from_json(json_io::to_json(s)) == s);
}

TEST_CASE("certificate documents") {
  const auto op = corpus::example1_operator(2);
  const auto cert = std::get<DimensionCertificate>(certify_dimension(op, 5, 20));
  const Json j = json_io::to_json(cert);
  CHECK(j["k"] == 5);
  CHECK(j["window"] == Json::array({-6, 6}));
  CHECK(j["solutions"][0] == Json::parse(R"({"anchor":-5,"values":["1/1"]})"));
  const auto back = json_io::dimension_certificate_from_json(j);
  CHECK(back.solutions == cert.solutions);
  CHECK(back.window == cert.window);

  Json wrong_k = j;
  wrong_k["k"] = 4;
  CHECK_THROWS_AS((void)json_io::dimension_certificate_from_json(wrong_k), Error);

  const auto basis = finite_support_kernel(op, {0, 3});
  const Json bj = json_io::to_json(basis);
  CHECK(bj == Json::parse(R"({"window":[0,3],"vectors":[["0/1","1/1","0/1","0/1"],["0/1","0/1","1/1","0/1"]]})"));
  CHECK(json_io::kernel_basis_from_json(bj).vectors == basis.vectors);

  const auto sol = std::get<PartialLacunarySolution>(build_lacunary(op, 5, 50));
  const auto sj = json_io::to_json(sol);
  CHECK(sj["ray"] == "positive");
  const auto sol_back = json_io::partial_lacunary_from_json(sj);
  CHECK(sol_back.blocks == sol.blocks);
  CHECK(sol_back.gap_profile == sol.gap_profile);
  CHECK(sol_back.gap_targets == sol.gap_targets);
}

TEST_CASE("malformed documents name the problem") {
  const auto msg = parse_error_message("{\n  \"order\": 1,\n  \"coeffs\": [,]\n}");
  CHECK(msg.find("input.json:3:") != std::string::npos);

  const auto field_error = [](const char* text) {
    try {
      (void)json_io::operator_from_json(Json::parse(text));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(field_error(R"({"coeffs":[]})").find("order") != std::string::npos);
  CHECK(field_error(R"({"order":1,"coeffs":[{"kind":"periodic","period":1,"values":["1/1"]}]})")
            .find("order + 1") != std::string::npos);
  CHECK(field_error(R"({"order":0,"coeffs":[{"kind":"spiral"}]})").find("spiral") != std::string::npos);
  CHECK(field_error(R"({"order":0,"coeffs":[{"kind":"periodic","period":2,"values":["1/1"]}]})") != "");
  CHECK(field_error(R"({"order":0,"coeffs":[{"kind":"periodic","period":1,"values":["1/0"]}]})") != "");
  CHECK(field_error(R"({"order":0.5,"coeffs":[]})") != "");
  CHECK_THROWS_AS((void)json_io::finite_solution_from_json(Json::parse(R"({"anchor":0,"values":["0/1"]})")), Error);
  CHECK_THROWS_AS((void)json_io::window_from_json(Json::parse("[3, 1]")), Error);
}

TEST_CASE("manifest and corpus entries") {
  const Json manifest = json_io::corpus_manifest();
  REQUIRE(manifest["entries"].size() == 5);
  CHECK(manifest["entries"][0]["name"] == "example1-r1");
  CHECK(manifest["entries"][0]["knownFacts"][0] ==
        Json::parse(R"({"fact":"kernel_dimension","window":[0,8],"expected":4})"));

  const auto entry = *corpus::find("example1-r2");
  const Json ej = json_io::to_json(entry);
  CHECK(json_io::operator_from_json(ej["operator"]) == entry.op);
  CHECK(json_io::sequence_from_json(ej["lacunarySolution"]) == *entry.lacunary);
  CHECK(ej["masks"]["solution"] == Json::parse(R"({"modulus":3,"allowed":[1,2]})"));
  CHECK(json_io::residue_mask_from_json(ej["masks"]["solution"]) == entry.masks->solution);
}
