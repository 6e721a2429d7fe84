#include <doctest.h>

#include <cstdio>
#include <json.hpp>
#include <string>

#include "chm/analysis.hpp"
#include "chm/catalogue.hpp"
#include "chm/io.hpp"

using namespace chm;
using Json = nlohmann::ordered_json;

TEST_CASE("exact matrices serialize as rational turn grids") {
  const std::string text = serialize(fourier(2));
  const Json j = Json::parse(text);
  CHECK(j.at("format_version") == "1");
  CHECK(j.at("n") == 2);
  CHECK(j.at("representation") == "phases_turns");
  CHECK(j.at("phases_turns")[0][0] == "0/1");
  CHECK(j.at("phases_turns")[0][1] == "0/1");
  CHECK(j.at("phases_turns")[1][0] == "0/1");
  CHECK(j.at("phases_turns")[1][1] == "1/2");
  CHECK(text.back() == '\n');
}

TEST_CASE("inexact matrices serialize as complex entries") {
  const Json j = Json::parse(serialize(catalogue_get("C6")));
  CHECK(j.at("representation") == "entries");
  CHECK(j.at("entries").size() == 6);
  CHECK(j.at("entries")[0][0].at("re") == 1.0);
  CHECK(j.at("entries")[0][0].at("im") == 0.0);
}

TEST_CASE("round trips preserve exact matrices and their metadata") {
  const HadamardMatrix m = catalogue_get(
      "F6", std::vector<PhaseValue>{PhaseValue::turns(Rational(1, 5)),
                                    PhaseValue::turns(Rational(3, 7))});
  const HadamardMatrix back = parse(serialize(m));
  CHECK(back.all_exact());
  CHECK(max_entry_distance(back, m) == 0.0);
  CHECK(back.meta().name == m.meta().name);
  REQUIRE(back.meta().params.size() == 2);
  CHECK(back.meta().params[0].first == "a");
  CHECK(back.meta().params[0].second == m.meta().params[0].second);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(back.at(i, j).phase().turns_value() ==
            m.at(i, j).phase().turns_value());
}

TEST_CASE("serialization is a fixed point after one round trip") {
  for (const char* id : {"F4", "C6", "N11", "C13A"}) {
    const std::string once = serialize(catalogue_get(id));
    CHECK(serialize(parse(once)) == once);
  }
}

TEST_CASE("families round trip through their document form") {
  const AffineFamily f = catalogue_family("F6");
  const AffineFamily back = parse_family(serialize(f));
  CHECK(back.dimension() == f.dimension());
  CHECK(back.param_names() == f.param_names());
  CHECK(max_entry_distance(back.base(), f.base()) == 0.0);
  for (int k = 0; k < f.dimension(); ++k)
    CHECK(back.patterns()[static_cast<size_t>(k)] ==
          f.patterns()[static_cast<size_t>(k)]);
}

TEST_CASE("parse rejects malformed documents with located messages") {
  const std::string good = serialize(fourier(2));

  CHECK_THROWS_AS(parse("{"), ParseError);
  CHECK_THROWS_AS(parse("[]"), ParseError);
  CHECK_THROWS_AS(parse("{}"), ParseError);

  Json j = Json::parse(good);
  j["format_version"] = "2";
  CHECK_THROWS_AS(parse(j.dump()), ParseError);

  j = Json::parse(good);
  j["surprise"] = 1;
  CHECK_THROWS_WITH_AS(parse(j.dump()),
                       doctest::Contains("surprise"), ParseError);

  j = Json::parse(good);
  j["n"] = 3;
  CHECK_THROWS_AS(parse(j.dump()), ParseError);

  j = Json::parse(good);
  j["phases_turns"][0][0] = "2/4";  // not in lowest terms
  CHECK_THROWS_AS(parse(j.dump()), ParseError);

  j = Json::parse(good);
  j["phases_turns"][1][1] = "1/0";
  CHECK_THROWS_AS(parse(j.dump()), ParseError);

  j = Json::parse(good);
  j["representation"] = "entries";
  CHECK_THROWS_AS(parse(j.dump()), ParseError);

  j = Json::parse(good);
  j.erase("phases_turns");
  CHECK_THROWS_AS(parse(j.dump()), ParseError);
}

TEST_CASE("parse enforces unimodularity of entry documents") {
  Json j = Json::parse(serialize(catalogue_get("C6")));
  j["entries"][2][3]["re"] = 5.0;
  CHECK_THROWS_WITH_AS(parse(j.dump()),
                       doctest::Contains("entries[2][3]"), ParseError);
  // A loose modulus tolerance admits the same document.
  CHECK_NOTHROW(parse(j.dump(), 10.0));
}

TEST_CASE("reports serialize with stable fields") {
  const Json r = Json::parse(to_json(is_hadamard(fourier(3))));
  CHECK(r.at("pass") == true);
  CHECK(r.at("n") == 3);
  CHECK(r.at("tol").get<double>() == doctest::Approx(3e-10));

  DefectOptions opts;
  opts.want_kernel = true;
  const Json d = Json::parse(to_json(defect(fourier(4), opts)));
  CHECK(d.at("defect") == 1);
  CHECK(d.at("exact") == true);
  CHECK(d.at("kernel").size() == 1);
  const Json d0 = Json::parse(to_json(defect(fourier(3))));
  CHECK_FALSE(d0.contains("kernel"));

  const Json s = Json::parse(to_json(haagerup_invariants(fourier(2))));
  CHECK(s.at("values").size() == 2);
  CHECK(s.at("cluster_tol").get<double>() == doctest::Approx(1e-8));
}

TEST_CASE("equivalence witnesses round trip through JSON") {
  const EquivalenceResult r = equivalence_search(fourier(3), fourier(3));
  REQUIRE(r.status == EquivalenceStatus::Found);
  const EquivalenceWitness w = witness_from_json(to_json(*r.witness));
  CHECK(w.p1.image() == r.witness->p1.image());
  CHECK(w.p2.image() == r.witness->p2.image());
  CHECK(max_entry_distance(apply_equivalence(w, fourier(3)), fourier(3)) <
        1e-9);

  CHECK_THROWS_AS(witness_from_json("{}"), ParseError);
  CHECK_THROWS_AS(
      witness_from_json(
          R"({"d1":[0,0],"p1":[0,0],"p2":[0,1],"d2":[0,0]})"),
      ParseError);
}

TEST_CASE("file IO round trips and reports missing paths") {
  const std::string path = "io_test_tmp_matrix.json";
  const std::string text = serialize(catalogue_get("S6"));
  save_text(path, text);
  CHECK(read_text(path) == text);
  CHECK(max_entry_distance(load_matrix(path), catalogue_get("S6")) == 0.0);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_matrix("definitely_missing_file.json"), IoError);
  CHECK_THROWS_AS(save_text("missing_dir/x.json", "x"), IoError);
}

TEST_CASE("family documents validate their structure") {
  const std::string good = serialize(catalogue_family("F4"));
  Json j = Json::parse(good);
  CHECK(j.at("kind") == "affine_family");

  j["param_names"] = Json::array({"a", "b"});
  CHECK_THROWS_AS(parse_family(j.dump()), ParseError);

  j = Json::parse(good);
  j["patterns"][0][0][1] = "1/2";  // nonzero first row
  CHECK_THROWS_AS(parse_family(j.dump()), ParseError);

  CHECK_THROWS_AS(parse_family(serialize(fourier(2))), ParseError);
}
