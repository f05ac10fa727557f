#include "doctest.h"

#include "limitseries/errors.hpp"
#include "limitseries/io.hpp"

using namespace limitseries;

TEST_CASE("staircase text format") {
  const auto e = parse_staircase_text("# a staircase\n0:3\n1:2\n\n2:1\n");
  CHECK(e == regular(3));
  CHECK(format_staircase_text(e) == "0:3\n1:2\n2:1\n");
  CHECK(parse_staircase_text(format_staircase_text(f_staircase(3))) == f_staircase(3));
  CHECK(parse_staircase_text("").degree() == 0);
  CHECK_THROWS_AS(parse_staircase_text("0:1\n1:2\n"), MonotonicityViolation);
  CHECK_THROWS_AS(parse_staircase_text("1:2\n0:3\n"), ParseError);
  CHECK_THROWS_AS(parse_staircase_text("0 3\n"), ParseError);
  CHECK_THROWS_AS(parse_staircase_text("0:x\n"), ParseError);
}

TEST_CASE("staircase JSON") {
  const auto e = staircase_from_json(Json::parse(R"({"dim":2,"heights":[[0,3],[1,2]]})"));
  CHECK(e.columns() == std::vector<int>{3, 2});
  CHECK(staircase_from_json(to_json(e)) == e);
  CHECK(to_json(e).dump() == R"({"dim":2,"heights":[[0,3],[1,2]]})");

  Staircase::HeightMap m{{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}};
  const auto solid = Staircase::from_heights(3, m);
  CHECK(staircase_from_json(to_json(solid)) == solid);

  CHECK_THROWS_AS(staircase_from_json(Json::parse(R"({"dim":2,"heights":[[0,1],[1,2]]})")), MonotonicityViolation);
  CHECK_THROWS_AS(staircase_from_json(Json::parse(R"({"dim":2,"heights":[[0,1,1]]})")), ParseError);
  CHECK_THROWS_AS(staircase_from_json(Json::parse(R"({"heights":[]})")), ParseError);
  CHECK_THROWS_AS(staircase_from_json(Json::parse(R"({"dim":"two","heights":[]})")), ParseError);
}

TEST_CASE("heights lists") {
  CHECK(parse_heights_list("3,2,1") == regular(3));
  CHECK(format_heights_list(suppress(regular(3), 1)) == "2,1,1");
  CHECK(parse_heights_list("").degree() == 0);
  CHECK_THROWS_AS(parse_heights_list("1,2"), MonotonicityViolation);
  CHECK_THROWS_AS(parse_heights_list("1,,"), ParseError);
}

TEST_CASE("polynomials round trip") {
  RingContext ctx;
  ctx.dim = 2;
  ctx.x_cap = 4;
  ctx.t_precision = 8;
  const auto p = translate_monomial(ctx, {2, 1}, 1);
  const auto j = to_json(ctx, p);
  CHECK(poly_from_json(ctx, j) == p);
  // (x - t)^2 y has the term -2 x y t.
  bool found = false;
  for (const auto& term : j) found = found || (term[0] == Json::array({1, 1}) && term[1] == 1 && term[2] == -2);
  CHECK(found);
  CHECK_THROWS_AS(poly_from_json(ctx, Json::parse("[[[1],0,1]]")), ParseError);
  CHECK_THROWS_AS(poly_from_json(ctx, Json::parse("[[[1,0],0]]")), ParseError);
}

TEST_CASE("plan files") {
  const auto j = Json::parse(R"({
    "shapes": [[2,1],[2,1],[2,1]], "speeds": [3,3,4], "levels": [7,3],
    "degree": 8, "line_base_degrees": [8,4], "allow_boundary": true})");
  const auto pf = plan_from_json(j);
  CHECK(pf.plan.r() == 2);
  CHECK(pf.model.base_degree(1) == 8);
  CHECK(pf.allow_boundary);
  CHECK_FALSE(pf.system);
  CHECK(plan_from_json(to_json(pf)).plan.levels == pf.plan.levels);

  const auto sys = plan_from_json(Json::parse(R"({
    "shapes": [[2,1]], "speeds": [1], "levels": [1], "degree": 3,
    "on_divisor": [[1],[1],[1],[1]], "off_divisor": [{"multiplicity": 2}]})"));
  REQUIRE(sys.system);
  CHECK(sys.system->on_divisor.size() == 4);
  CHECK(sys.system->off_divisor[0].shape == regular(2));
  CHECK(sys.model.base_degree(1) == 4);

  CHECK_THROWS_AS(plan_from_json(Json::parse(R"({"shapes": [[1]], "speeds": [1], "levels": [1]})")), ParseError);
  CHECK_THROWS_AS(plan_from_json(Json::parse(R"({"shapes": [[1]], "speeds": [1], "levels": [1,2], "degree": 2,
    "line_base_degrees": [0]})")), ParseError);
  CHECK_THROWS_AS(plan_from_json(Json::parse(R"({"shapes": [[1,2]], "speeds": [1], "levels": [1], "degree": 2,
    "line_base_degrees": [0]})")), MonotonicityViolation);
  CHECK_THROWS_AS(plan_from_json(Json::parse(R"({"shapes": [[1]], "speeds": [1,1], "levels": [1], "degree": 2,
    "line_base_degrees": [0]})")), LengthMismatch);
}

TEST_CASE("certificate JSON keeps its field order") {
  const auto j = to_json(nagata_certificate(4, 2, 9));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"k", "m", "d", "plans", "base_case", "identities", "seed", "prime", "passed"});
  CHECK(j["seed"] == 9);
  CHECK(j["d"] == 9);
  CHECK(j["plans"][0]["v"] == Json::array({3, 4, 4}));
  for (const auto& id : j["identities"]) CHECK(id["holds"] == true);
  CHECK(j.dump() == to_json(nagata_certificate(4, 2, 9)).dump());
}

TEST_CASE("diagram JSON") {
  const auto d = four_point_constellation().with_multiplicities({8, 2, 1, 3, 1, 0, 0, 0});
  const auto back = enriques_from_json(to_json(d));
  CHECK(back.multiplicities == d.multiplicities);
  CHECK(back.vertices[7].proximate_to == std::set<int>{3, 6});
  CHECK(to_json(four_point_constellation())["multiplicities"].is_null());
  CHECK_THROWS_AS(enriques_from_json(Json::parse(R"({"vertices":[{"id":0,"proximate_to":[1]}]})")), DomainError);
}
