#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "synwb/cli.hpp"
#include "synwb/family_io.hpp"

using nlohmann::ordered_json;

namespace {

const std::string kSamples = std::string(SYNWB_SOURCE_DIR) + "/samples/";

struct RunResult {
  int status = 0;
  std::string out;
  std::string err;
  ordered_json doc;
};

RunResult run(std::vector<std::string> args, bool as_json = true) {
  if (as_json) args.insert(args.begin(), "--json");
  std::ostringstream out, err;
  RunResult r;
  r.status = synwb::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (as_json && r.status == 0) r.doc = ordered_json::parse(r.out);
  return r;
}

}  // namespace

TEST_CASE("families subcommands") {
  const auto ults = run({"families", "ults", "--family", kSamples + "size2.fam"});
  REQUIRE(ults.status == 0);
  CHECK(ults.doc["result"]["ultrafilters"] ==
        ordered_json::array({"1,2", "1,3", "2,3"}));

  const auto trivial = run({"families", "ults", "--family", kSamples + "trivial.fam"});
  CHECK(trivial.doc["result"]["ultrafilters"].size() == 1);

  const auto check = run({"families", "check-map", "--family", kSamples + "size2.fam", "--map",
                          kSamples + "collapse.map"});
  REQUIRE(check.status == 0);
  CHECK(check.doc["result"]["strong"] == false);
  CHECK(check.doc["result"]["regular"] == false);
  CHECK(check.doc["result"]["conservative_over_phi_min"] == false);
  CHECK(check.doc["result"]["pushforward"]["minimals"] == ordered_json::array({"a"}));

  const auto mm = run({"families", "min-max", "--family", kSamples + "size2.fam", "--map",
                       kSamples + "collapse.map"});
  CHECK(mm.status == 2);  // the size2 family names atoms 1,2,3, not the map's target
  CHECK(mm.err.find("GroundMismatch") != std::string::npos);

  const auto dj = run({"families", "disjoint", "--family", kSamples + "size2.fam"});
  CHECK(dj.doc["result"]["disjoint"] == false);
  CHECK(dj.doc["result"]["witness_first"] == "1,2");

  const auto sv = run({"families", "survey", "--source-size", "3", "--target-size", "2"});
  REQUIRE(sv.status == 0);
  CHECK(sv.doc["result"]["pairs"].get<long long>() ==
        18 * 6);  // 18 families, six surjections of 3 onto 2
  CHECK(sv.doc["result"]["regular_not_strong"].get<long long>() > 0);
}

TEST_CASE("fraisse subcommands") {
  const auto count = run({"fraisse", "emb-count", "--class", "linear", "--m", "2", "--n", "4"});
  REQUIRE(count.status == 0);
  CHECK(count.doc["result"]["count"] == 6);

  const auto from_file =
      run({"fraisse", "emb-count", "--class", kSamples + "chain/chain.exh", "--m", "1", "--n", "3"});
  REQUIRE(from_file.status == 0);
  CHECK(from_file.doc["result"]["count"] == 3);

  const auto classify = run({"fraisse", "classify", "--class", "linear", "--set",
                             kSamples + "points23.lvl", "--nmax", "3"});
  REQUIRE(classify.status == 0);
  CHECK(classify.doc["result"]["thick"]["certified_through"].is_null());
  CHECK(classify.doc["result"]["thick"]["levels"][2]["refuted"] == true);
  CHECK(classify.doc["result"]["syndetic"]["certified_at"] == 3);
  CHECK(classify.doc["result"]["pws"]["certified"] == true);

  const auto full = run({"fraisse", "classify", "--class", "linear", "--set",
                         kSamples + "full14.lvl"});
  REQUIRE(full.status == 0);
  CHECK(full.doc["result"]["thick"]["certified_through"] == 4);
  CHECK(full.doc["result"]["syndetic"]["certified_at"] == 1);

  const std::string out_thick = "decomp_thick.lvl";
  const auto dec = run({"fraisse", "decompose", "--class", "linear", "--set",
                        kSamples + "points23.lvl", "--nmax", "2", "--block", "2", "--out-thick",
                        out_thick});
  REQUIRE(dec.status == 0);
  CHECK(dec.doc["result"]["intersection_equals_input"] == true);
  CHECK(dec.doc["result"]["thick_part"] == "6");
  CHECK(dec.doc["result"]["syndetic_part"] == "F");

  // what we wrote parses back to the same verdicts
  const auto reread = run({"fraisse", "classify", "--class", "linear", "--set", out_thick,
                           "--nmax", "2"});
  REQUIRE(reread.status == 0);
  CHECK(reread.doc["result"]["thick"]["certified_through"] == 2);
  std::remove(out_thick.c_str());

  const auto split = run({"fraisse", "split", "--class", "linear", "--set1",
                          kSamples + "points23.lvl", "--set2", kSamples + "full14.lvl", "--inner",
                          "1", "--block", "2"});
  REQUIRE(split.status == 0);
  CHECK((split.doc["result"]["index"] == 1 || split.doc["result"]["index"] == 2));

  const auto carve = run({"fraisse", "carve", "--class", "linear", "--thick",
                          kSamples + "full14.lvl", "--avoid", kSamples + "point1.lvl", "--inner",
                          "1", "--block", "2"});
  REQUIRE(carve.status == 0);
  CHECK(carve.doc["result"]["carved"] == "2");

  const auto absorb = run({"fraisse", "absorb", "--class", "linear", "--m", "1", "--n", "2",
                           "--f-index", "1", "--horizon", "8"});
  REQUIRE(absorb.status == 0);
  CHECK(absorb.doc["result"]["level"] == 5);
  CHECK(absorb.doc["result"]["verified"] == true);

  const auto misfile = run({"fraisse", "classify", "--class", "sets", "--set",
                            kSamples + "points23.lvl"});
  CHECK(misfile.status == 2);  // class recorded in the file does not match
}

TEST_CASE("zgrp subcommands") {
  const auto cls = run({"zgrp", "classify", "period=2", "pattern=10"});
  REQUIRE(cls.status == 0);
  CHECK(cls.doc["result"]["thick"] == false);
  CHECK(cls.doc["result"]["syndetic"] == true);
  CHECK(cls.doc["result"]["pws"] == true);

  const auto whole = run({"zgrp", "classify", "period=1", "pattern=1"});
  CHECK(whole.doc["result"]["thick"] == true);
  CHECK(whole.doc["result"]["syndetic"] == true);
  CHECK(whole.doc["result"]["pws"] == true);

  const auto p = run({"zgrp", "psi", "period=2", "pattern=10"});
  REQUIRE(p.status == 0);
  CHECK(p.doc["result"]["k"] == 2);
  CHECK(p.doc["result"]["shifts"] == ordered_json::array({0, 1}));
  CHECK(p.doc["result"]["psi"] == "period=1 pattern=1");

  const auto d = run({"zgrp", "decompose", "period=2", "pattern=10"});
  CHECK(d.doc["result"]["thick_part"] == "period=1 pattern=1");
  CHECK(d.doc["result"]["syndetic_part"] == "period=2 pattern=10");

  const auto bad = run({"zgrp", "psi", "period=1", "pattern=0"});
  CHECK(bad.status == 2);
  CHECK(bad.err.find("NotPws") != std::string::npos);

  const auto window = run({"zgrp", "classify", "period=2", "pattern=10", "--dump-window", "4"});
  CHECK(window.doc["result"]["window"] == "101010101");
}

TEST_CASE("a file-based exhaustion drives the classifiers") {
  const std::string cls = kSamples + "chain/chain.exh";
  const std::string lvl = "chainset.lvl";
  {
    std::ofstream f(lvl);
    f << "level 1, horizon 3, class " << cls << "\n3\n";  // the two smaller points
  }
  const auto r = run({"fraisse", "classify", "--class", cls, "--set", lvl, "--nmax", "3"});
  REQUIRE(r.status == 0);
  CHECK(r.doc["result"]["thick"]["levels"][1]["witness"] == 0);  // block {1,2}
  CHECK(r.doc["result"]["thick"]["levels"][2]["refuted"] == true);
  CHECK(r.doc["result"]["syndetic"]["certified_at"] == 2);
  std::remove(lvl.c_str());
}

TEST_CASE("exit status separates verdicts from errors") {
  // a negative verdict still exits zero
  const auto verdict = run({"zgrp", "classify", "period=2", "pattern=10"});
  CHECK(verdict.status == 0);

  const auto missing = run({"families", "ults", "--family", kSamples + "no-such-file.fam"});
  CHECK(missing.status == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  std::ostringstream out, err;
  CHECK(synwb::run_cli({"families"}, out, err) != 0);  // missing subcommand
}

TEST_CASE("parsers reject garbage with an error, never a crash") {
  std::mt19937 rng(4242);
  const std::string alphabet = "abc123,:/()->= \t#\npattern";
  for (int trial = 0; trial < 400; ++trial) {
    std::string text;
    const std::size_t len = rng() % 60;
    for (std::size_t i = 0; i < len; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    try {
      std::istringstream in(text);
      (void)synwb::parse_family(in, "fuzz");
    } catch (const synwb::Error&) {
    }
    try {
      std::istringstream in(text);
      (void)synwb::parse_map(in, "fuzz");
    } catch (const synwb::Error&) {
    }
    try {
      std::istringstream in(text);
      (void)synwb::parse_structure(in, "fuzz");
    } catch (const synwb::Error&) {
    }
    try {
      std::istringstream in(text);
      (void)synwb::parse_level_set(in, "fuzz");
    } catch (const synwb::Error&) {
    }
    try {
      (void)synwb::parse_upset({text});
    } catch (const synwb::Error&) {
    }
  }
  CHECK(true);
}

TEST_CASE("random families and level sets survive a file round-trip") {
  std::mt19937 rng(99);
  const auto g = synwb::GroundSet::numbered(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<synwb::Subset> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(1 + rng() % g.full_mask());
    const auto fam = synwb::Family::from_minimals(g, gens);
    std::istringstream in(synwb::format_family(fam));
    CHECK(synwb::parse_family(in) == fam);
  }

  const synwb::Workspace ws{synwb::linear_orders(5)};
  for (int trial = 0; trial < 100; ++trial) {
    synwb::LevelSet s = synwb::LevelSet::empty(ws, 2);
    for (std::size_t i = 0; i < s.population(); ++i) s.set(i, rng() & 1);
    std::istringstream in(synwb::format_level_set(s, "linear"));
    CHECK(synwb::parse_level_set(in).realize(ws) == s);
  }
}

TEST_CASE("the json flag is accepted anywhere on the line") {
  std::ostringstream out, err;
  const int status =
      synwb::run_cli({"zgrp", "classify", "period=2", "pattern=10", "--json"}, out, err);
  REQUIRE(status == 0);
  const auto doc = ordered_json::parse(out.str());
  CHECK(doc["result"]["syndetic"] == true);
}

TEST_CASE("reports are deterministic apart from timing") {
  auto strip_timing = [](ordered_json doc) {
    doc.erase("timing_ms");
    return doc;
  };
  const auto a = run({"fraisse", "classify", "--class", "linear", "--set",
                      kSamples + "points23.lvl", "--nmax", "3"});
  const auto b = run({"fraisse", "classify", "--class", "linear", "--set",
                      kSamples + "points23.lvl", "--nmax", "3"});
  CHECK(strip_timing(a.doc) == strip_timing(b.doc));

  // the human rendering is derived from the same document
  const auto text = run({"fraisse", "classify", "--class", "linear", "--set",
                         kSamples + "points23.lvl", "--nmax", "3"},
                        false);
  CHECK(text.status == 0);
  CHECK(text.out.find("certified") != std::string::npos);
  CHECK(text.out.find("input " + kSamples + "points23.lvl digest") != std::string::npos);
}
