/*
 * Copyright 2026 The memadvisor Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "memadvisor/ingest.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace memadvisor;

namespace {

std::string run_line(const std::string& id, Bytes input, Bytes shuffle_read,
                     Bytes shuffle_write, bool cached = true) {
  std::ostringstream os;
  os << R"({"workload_id": ")" << id << R"(", "input_bytes": )" << input
     << R"(, "cached_input": )" << (cached ? "true" : "false")
     << R"(, "stages": [)"
     << R"({"stage_index": 0, "shuffle_read_bytes": 0, "shuffle_write_bytes": 0}, )"
     << R"({"stage_index": 1, "shuffle_read_bytes": )" << shuffle_read
     << R"(, "shuffle_write_bytes": )" << shuffle_write << "}]}";
  return os.str();
}

// Randomized but reproducible profile sets for the property tests.
ProfileSet random_profile_set(std::mt19937_64& rng) {
  ProfileSet ps;
  ps.workload_id = "wl-" + std::to_string(rng() % 1000);
  std::size_t runs = 1 + rng() % 6;
  Bytes input = 1 + rng() % (1ULL << 40);
  for (std::size_t r = 0; r < runs; ++r) {
    RunProfile run;
    run.workload_id = ps.workload_id;
    run.input_bytes = input;
    input += 1 + rng() % (1ULL << 38);
    run.cached_input = rng() % 2 == 0;
    std::size_t stages = 1 + rng() % 8;
    for (std::size_t s = 0; s < stages; ++s) {
      run.stages.push_back({static_cast<std::uint32_t>(s), rng() % (1ULL << 39),
                            rng() % (1ULL << 39)});
    }
    ps.runs.push_back(std::move(run));
  }
  return ps;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("five well-formed runs parse and sort ascending") {
  std::ostringstream file;
  file << "# profiling runs at five input sizes\n";
  // Deliberately out of order; parsing canonicalizes.
  for (Bytes m : {30, 10, 50, 20, 40})
    file << run_line("wordcount", mib(m), mib(m), mib(m)) << "\n";

  std::istringstream in(file.str());
  ProfileSet ps = parse_profiles(in);
  CHECK(ps.workload_id == "wordcount");
  REQUIRE(ps.runs.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(ps.runs[i].input_bytes == mib(10 * (i + 1)));
    CHECK(ps.runs[i].stages.size() == 2);
  }
}

TEST_CASE("single run with zero shuffle is a valid set") {
  std::istringstream in(
      R"({"workload_id": "w", "input_bytes": 1, "cached_input": false,)"
      R"( "stages": [{"stage_index": 0, "shuffle_read_bytes": 0, "shuffle_write_bytes": 0}]})");
  ProfileSet ps = parse_profiles(in);
  CHECK(ps.runs.size() == 1);
  CHECK(ps.runs[0].stages.size() == 1);
}

TEST_CASE("duplicate input sizes are rejected with the line number") {
  std::istringstream in(run_line("w", mib(10), 1, 1) + "\n" +
                        run_line("w", mib(10), 2, 2) + "\n");
  try {
    parse_profiles(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("duplicate input_bytes") != std::string::npos);
  }
}

TEST_CASE("mixed workload ids are rejected") {
  std::istringstream in(run_line("a", mib(10), 1, 1) + "\n" +
                        run_line("b", mib(20), 1, 1) + "\n");
  CHECK_THROWS_AS(parse_profiles(in), ParseError);
}

TEST_CASE("empty stream is an error") {
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_profiles(empty), ParseError);
  std::istringstream comments("# nothing here\n\n");
  CHECK_THROWS_AS(parse_profiles(comments), ParseError);
}

TEST_CASE("malformed lines report the line number and field") {
  SUBCASE("broken JSON") {
    std::istringstream in("# header\n{not json\n");
    try {
      parse_profiles(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("wrong field type names the field") {
    std::istringstream in(
        R"({"workload_id": "w", "input_bytes": "ten", "cached_input": true,)"
        R"( "stages": [{"stage_index": 0, "shuffle_read_bytes": 0, "shuffle_write_bytes": 0}]})");
    try {
      parse_profiles(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("input_bytes") != std::string::npos);
    }
  }
  SUBCASE("negative byte count names the field") {
    std::istringstream in(
        R"({"workload_id": "w", "input_bytes": 10, "cached_input": true,)"
        R"( "stages": [{"stage_index": 0, "shuffle_read_bytes": -1, "shuffle_write_bytes": 0}]})");
    try {
      parse_profiles(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("shuffle_read_bytes") != std::string::npos);
    }
  }
  SUBCASE("unknown field is rejected") {
    std::istringstream in(
        R"({"workload_id": "w", "input_bytes": 10, "cached_input": true, "bogus": 1,)"
        R"( "stages": [{"stage_index": 0, "shuffle_read_bytes": 0, "shuffle_write_bytes": 0}]})");
    CHECK_THROWS_AS(parse_profiles(in), ParseError);
  }
  SUBCASE("zero input is rejected") {
    std::istringstream in(
        R"({"workload_id": "w", "input_bytes": 0, "cached_input": true,)"
        R"( "stages": [{"stage_index": 0, "shuffle_read_bytes": 0, "shuffle_write_bytes": 0}]})");
    CHECK_THROWS_AS(parse_profiles(in), ParseError);
  }
  SUBCASE("gap in stage indices is rejected") {
    std::istringstream in(
        R"({"workload_id": "w", "input_bytes": 10, "cached_input": true,)"
        R"( "stages": [{"stage_index": 0, "shuffle_read_bytes": 0, "shuffle_write_bytes": 0},)"
        R"( {"stage_index": 2, "shuffle_read_bytes": 0, "shuffle_write_bytes": 0}]})");
    CHECK_THROWS_AS(parse_profiles(in), ParseError);
  }
  SUBCASE("empty stage list is rejected") {
    std::istringstream in(
        R"({"workload_id": "w", "input_bytes": 10, "cached_input": true, "stages": []})");
    CHECK_THROWS_AS(parse_profiles(in), ParseError);
  }
}

TEST_CASE("CRLF line endings parse the same as LF") {
  std::string lf = run_line("w", mib(10), 1, 1) + "\n" + run_line("w", mib(20), 2, 2) + "\n";
  std::string crlf = run_line("w", mib(10), 1, 1) + "\r\n" + run_line("w", mib(20), 2, 2) + "\r\n";
  std::istringstream a(lf), b(crlf);
  CHECK(parse_profiles(a) == parse_profiles(b));
}

TEST_CASE("stages listed out of order are canonicalized by index") {
  std::istringstream in(
      R"({"workload_id": "w", "input_bytes": 10, "cached_input": false,)"
      R"( "stages": [{"stage_index": 1, "shuffle_read_bytes": 5, "shuffle_write_bytes": 0},)"
      R"( {"stage_index": 0, "shuffle_read_bytes": 0, "shuffle_write_bytes": 0}]})");
  ProfileSet ps = parse_profiles(in);
  REQUIRE(ps.runs[0].stages.size() == 2);
  CHECK(ps.runs[0].stages[0].stage_index == 0);
  CHECK(ps.runs[0].stages[1].shuffle_read_bytes == 5);
}

TEST_CASE("round-trip: serialize then reparse yields the identical set") {
  std::mt19937_64 rng(20260808);
  for (int i = 0; i < 50; ++i) {
    ProfileSet ps = random_profile_set(rng);
    std::istringstream in(to_jsonl(ps));
    ProfileSet reparsed = parse_profiles(in);
    CHECK(reparsed == ps);
  }
}

TEST_CASE("order independence: any permutation of lines parses the same") {
  std::mt19937_64 rng(7);
  ProfileSet ps = random_profile_set(rng);
  std::istringstream canonical(to_jsonl(ps));
  ProfileSet expected = parse_profiles(canonical);

  std::string jsonl = to_jsonl(ps);
  std::vector<std::string> lines;
  std::istringstream split(jsonl);
  for (std::string line; std::getline(split, line);) lines.push_back(line);

  for (int perm = 0; perm < 20; ++perm) {
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled;
    for (const std::string& l : lines) shuffled += l + "\n";
    std::istringstream in(shuffled);
    CHECK(parse_profiles(in) == expected);
  }
}

TEST_CASE("validation report") {
  SUBCASE("five runs: everything computable") {
    std::istringstream in(run_line("w", mib(10), 1, 1) + "\n" +
                          run_line("w", mib(20), 1, 1) + "\n" +
                          run_line("w", mib(30), 1, 1) + "\n" +
                          run_line("w", mib(40), 1, 1) + "\n" +
                          run_line("w", mib(50), 1, 1) + "\n");
    ValidationReport r = validate_for_classification(parse_profiles(in));
    CHECK(r.alpha_computable);
    CHECK(r.inc_computable);
    CHECK(r.run_count == 5);
  }
  SUBCASE("one run: growth rate not computable") {
    std::istringstream in(run_line("w", mib(10), 1, 1));
    ValidationReport r = validate_for_classification(parse_profiles(in));
    CHECK(r.alpha_computable);
    CHECK_FALSE(r.inc_computable);
    REQUIRE(!r.warnings.empty());
  }
  SUBCASE("all-zero shuffle warns about the degenerate ratio") {
    std::istringstream in(run_line("w", mib(10), 0, 0) + "\n" +
                          run_line("w", mib(20), 0, 0) + "\n" +
                          run_line("w", mib(30), 0, 0) + "\n");
    ValidationReport r = validate_for_classification(parse_profiles(in));
    bool found = false;
    for (const std::string& w : r.warnings)
      if (w.find("degenerate") != std::string::npos) found = true;
    CHECK(found);
  }
}

}  // TEST_SUITE
