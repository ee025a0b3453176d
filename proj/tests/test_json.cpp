#include <gtest/gtest.h>

#include <json.hpp>

#include <functional>

#include "nctrace/errors.hpp"
#include "nctrace/json_io.hpp"
#include "nctrace/moments.hpp"
#include "nctrace/parser.hpp"
#include "test_support.hpp"

using namespace nctrace;
using namespace nctrace::testing;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(Json, TupleRoundTrip) {
  CounterRng rng(70, 0);
  const MatrixTuple x = gue_tuple(rng, 2, 3);
  const std::string text = tuple_to_json(x);
  const json doc = json::parse(text);
  EXPECT_EQ(doc["n"], 2);
  EXPECT_EQ(doc["N"], 3);
  EXPECT_EQ(doc["matrices"].size(), 2u);
  EXPECT_EQ(doc["matrices"][0].size(), 9u);
  EXPECT_EQ(doc["matrices"][0][0].size(), 2u);
  const MatrixTuple back = tuple_from_json(text);
  EXPECT_EQ(back.matrices(), x.matrices());
}

TEST(Json, TupleAcceptsRealEntriesAndIsRowMajor) {
  const MatrixTuple x = tuple_from_json(R"({"n":1,"N":2,"matrices":[[1, [2,1], [2,-1], 3]]})");
  EXPECT_EQ(x[0](0, 1), cplx(2.0, 1.0));
  EXPECT_EQ(x[0](1, 0), cplx(2.0, -1.0));
  EXPECT_EQ(x[0](1, 1), cplx(3.0));
}

TEST(Json, TupleErrors) {
  EXPECT_EQ(code_of([] { tuple_from_json("{"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { tuple_from_json(R"({"n":1})"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { tuple_from_json(R"({"n":2,"N":1,"matrices":[[1]]})"); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { tuple_from_json(R"({"n":1,"N":2,"matrices":[[1,2,3]]})"); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { tuple_from_json(R"({"n":1,"N":2,"matrices":[[1,2,0,1]]})"); }), ErrorCode::NotHermitian);
}

TEST(Json, MomentsRoundTrip) {
  const MomentSequence t = moment_sequence(pauli_pair(), 4);
  const std::string text = moments_to_json(t);
  const json doc = json::parse(text);
  EXPECT_EQ(doc["n"], 2);
  EXPECT_EQ(doc["degree"], 4);
  EXPECT_EQ(doc["theta"].size(), word_count(2, 4));
  const MomentSequence back = moments_from_json(text);
  ASSERT_EQ(back.max_degree(), 4);
  for (const Word& w : t.words()) EXPECT_EQ(back.at(w), t.at(w));
}

TEST(Json, SparseMomentsDefaultToZero) {
  const MomentSequence t =
      moments_from_json(R"({"degree":2,"theta":[{"word":[1,1],"re":4,"im":0},{"word":[2],"re":1}]})");
  EXPECT_EQ(t.nvars(), 2);
  EXPECT_EQ(t.at(Word{}), cplx(1.0));
  EXPECT_EQ(t.at(Word{1, 1}), cplx(4.0));
  EXPECT_EQ(t.at(Word{2}), cplx(1.0));
  EXPECT_EQ(t.at(Word{1, 2}), cplx(0.0));
  EXPECT_EQ(code_of([] { moments_from_json(R"({"n":1,"degree":2,"theta":[{"word":[2],"re":1}]})"); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { moments_from_json(R"({"degree":1,"theta":[{"word":[1,1],"re":1}]})"); }),
            ErrorCode::Degree);
}

TEST(Json, CertificateRoundTrip) {
  Certificate cert;
  cert.degree = 2;
  cert.factors = {parse_poly("(0,0.5)*Y1 Y2 - (0,0.5)*Y2 Y1", 2), parse_poly("Y1", 2)};
  cert.residual_l1 = 1e-12;
  const std::string text = certificate_to_json(cert);
  const json doc = json::parse(text);
  EXPECT_EQ(doc["degree"], 2);
  EXPECT_EQ(doc["factors"][1], "Y1");
  EXPECT_EQ(doc["residual_l1"], 1e-12);
  const Certificate back = certificate_from_json(text, 2);
  EXPECT_EQ(back.factors, cert.factors);
}

TEST(Json, WitnessSchema) {
  DualWitness w;
  w.degree = 2;
  w.radius = 1.0;
  w.value = -2.0;
  w.theta = moment_sequence(pauli_pair(), 4);
  const json doc = json::parse(witness_to_json(w));
  EXPECT_EQ(doc["degree"], 4);
  EXPECT_EQ(doc["R"], 1.0);
  EXPECT_EQ(doc["value"], -2.0);
  ASSERT_TRUE(doc["theta"].is_array());
  for (const auto& e : doc["theta"]) {
    EXPECT_TRUE(e.contains("word") && e.contains("re") && e.contains("im"));
  }
  const MomentSequence back = moments_from_json(witness_to_json(w));
  EXPECT_EQ(back.at(Word{1, 2, 1, 2}), cplx(-1.0));
}

TEST(Json, GnsSchema) {
  const GnsModel m = gns_build(moment_sequence(pauli_pair(), 4), 2);
  const json doc = json::parse(gns_to_json(m));
  EXPECT_EQ(doc["rank"], 4);
  EXPECT_EQ(doc["basis"].size(), 7u);
  EXPECT_EQ(doc["operators"].size(), 2u);
  EXPECT_EQ(doc["operators"][0].size(), 16u);
  EXPECT_TRUE(doc["diagnostics"].contains("reconstruction_error"));
}

TEST(Json, OutputIsDeterministic) {
  CounterRng a(71, 0);
  CounterRng b(71, 0);
  EXPECT_EQ(tuple_to_json(gue_tuple(a, 2, 2)), tuple_to_json(gue_tuple(b, 2, 2)));
}
