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

#include "memadvisor/metrics.hpp"

#include <doctest.h>

#include <limits>
#include <random>
#include <vector>

#include "exact_ratio.hpp"

using namespace memadvisor;

namespace {

RunProfile make_run(Bytes input, std::vector<Bytes> stage_shuffles,
                    const std::string& id = "w") {
  RunProfile r;
  r.workload_id = id;
  r.input_bytes = input;
  for (std::size_t i = 0; i < stage_shuffles.size(); ++i) {
    // Split each stage's shuffle across read and write.
    Bytes read = stage_shuffles[i] / 2;
    r.stages.push_back({static_cast<std::uint32_t>(i), read, stage_shuffles[i] - read});
  }
  return r;
}

ProfileSet make_set(std::vector<Bytes> inputs, std::vector<Bytes> shuffles,
                    const std::string& id = "w") {
  ProfileSet ps;
  ps.workload_id = id;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    ps.runs.push_back(make_run(inputs[i], {0, shuffles[i]}, id));
  return ps;
}

// Fields stay below 2^44 so all sums and scaled values remain exactly
// representable doubles (the scale-invariance property scales by up to 1024).
ProfileSet random_set(std::mt19937_64& rng, std::size_t max_runs = 6,
                      std::size_t max_stages = 8) {
  ProfileSet ps;
  ps.workload_id = "w";
  std::size_t runs = 1 + rng() % max_runs;
  Bytes input = 1 + rng() % (1ULL << 40);
  for (std::size_t r = 0; r < runs; ++r) {
    RunProfile run;
    run.workload_id = "w";
    run.input_bytes = input;
    input += 1 + rng() % (1ULL << 38);
    std::size_t stages = 1 + rng() % max_stages;
    for (std::size_t s = 0; s < stages; ++s) {
      run.stages.push_back({static_cast<std::uint32_t>(s), rng() % (1ULL << 39),
                            rng() % (1ULL << 39)});
    }
    ps.runs.push_back(std::move(run));
  }
  return ps;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("stage shuffle is read plus write") {
  CHECK(stage_shuffle({0, mib(30), mib(30)}) == mib(60));
  CHECK(stage_shuffle({0, 0, 0}) == 0);
  CHECK(stage_shuffle({0, 7, 0}) == 7);
}

TEST_CASE("stage shuffle overflow is reported") {
  Bytes huge = std::numeric_limits<Bytes>::max();
  CHECK_THROWS_AS(stage_shuffle({0, huge, 1}), std::overflow_error);
}

TEST_CASE("run shuffle is the maximum stage sum") {
  RunProfile r = make_run(mib(100), {mib(10), mib(40), mib(25)});
  CHECK(run_shuffle(r) == mib(40));

  CHECK(run_shuffle(make_run(mib(1), {0})) == 0);
  CHECK(run_shuffle(make_run(mib(1), {mib(16), mib(16)})) == mib(16));
}

TEST_CASE("alpha is shuffle over input") {
  CHECK(run_alpha(make_run(mib(10), {0, mib(20)})) == 2.0);
  CHECK(run_alpha(make_run(mib(37), {mib(37)})) == 1.0);

  double a = run_alpha(make_run(mib(600), {0, mib(250)}));
  CHECK(a == static_cast<double>(mib(250)) / static_cast<double>(mib(600)));
  CHECK(a == doctest::Approx(0.4167).epsilon(1e-3));
}

TEST_CASE("mean alpha") {
  ProfileSet flat = make_set({mib(10), mib(20), mib(30), mib(40), mib(50)},
                             {mib(20), mib(40), mib(60), mib(80), mib(100)});
  CHECK(mean_alpha(flat) == 2.0);

  ProfileSet one = make_set({mib(10)}, {mib(3)});
  CHECK(mean_alpha(one) == run_alpha(one.runs[0]));
  CHECK(mean_alpha(one) == doctest::Approx(0.3));

  ProfileSet two = make_set({mib(8), mib(16)}, {mib(8), mib(48)});
  CHECK(mean_alpha(two) == 2.0);  // (1 + 3) / 2
}

TEST_CASE("growth rate over consecutive runs") {
  ProfileSet flat = make_set({mib(10), mib(20), mib(30), mib(40), mib(50)},
                             {mib(20), mib(40), mib(60), mib(80), mib(100)});
  CHECK(inc_rate(flat) == 2.0);

  ProfileSet constant = make_set({mib(10), mib(20)}, {mib(5), mib(5)});
  CHECK(inc_rate(constant) == 0.0);

  ProfileSet convex = make_set({mib(100), mib(200), mib(300)},
                               {mib(100), mib(300), mib(700)});
  CHECK(inc_rate(convex) == 3.0);  // mean of 2 and 4
}

TEST_CASE("growth rate needs two runs") {
  ProfileSet one = make_set({mib(10)}, {mib(20)});
  CHECK_THROWS_AS(inc_rate(one), std::invalid_argument);
  CHECK_FALSE(compute_metrics(one).inc_shuf.has_value());
}

TEST_CASE("a shrinking shuffle yields a negative rate, kept unclamped") {
  ProfileSet shrink = make_set({mib(100), mib(200)}, {mib(100), mib(50)});
  CHECK(inc_rate(shrink) == -0.5);
}

TEST_CASE("scale invariance of alpha and growth rate") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    ProfileSet ps = random_set(rng);
    ExpansionMetrics base = compute_metrics(ps);
    for (Bytes k : {Bytes{2}, Bytes{10}, Bytes{1024}}) {
      ProfileSet scaled = ps;
      for (RunProfile& r : scaled.runs) {
        r.input_bytes *= k;
        for (StageRecord& s : r.stages) {
          s.shuffle_read_bytes *= k;
          s.shuffle_write_bytes *= k;
        }
      }
      ExpansionMetrics m = compute_metrics(scaled);
      CHECK(m.per_run_alpha == base.per_run_alpha);
      CHECK(m.alpha_mean == base.alpha_mean);
      CHECK(m.inc_shuf == base.inc_shuf);

      // Exact-rational route: the reduced shuffle/input fraction is identical.
      for (std::size_t r = 0; r < ps.runs.size(); ++r) {
        auto a = exact_ratio::make(base.per_run_shuffle_bytes[r], ps.runs[r].input_bytes);
        auto b = exact_ratio::make(m.per_run_shuffle_bytes[r], scaled.runs[r].input_bytes);
        CHECK(exact_ratio::equal(a, b));
      }
    }
  }
}

TEST_CASE("run shuffle is monotone in any stage's shuffle fields") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 200; ++i) {
    RunProfile r = random_set(rng, 1, 8).runs[0];
    Bytes before = run_shuffle(r);
    std::size_t idx = rng() % r.stages.size();
    r.stages[idx].shuffle_read_bytes += rng() % (1ULL << 20);
    r.stages[idx].shuffle_write_bytes += rng() % (1ULL << 20);
    CHECK(run_shuffle(r) >= before);
  }
}

TEST_CASE("affine profiles recover the slope exactly") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 100; ++i) {
    Bytes a = rng() % 6;           // slope
    Bytes b = rng() % (1ULL << 30);  // offset
    std::vector<Bytes> inputs, shuffles;
    Bytes input = 1 + rng() % (1ULL << 30);
    std::size_t n = 2 + rng() % 5;
    for (std::size_t j = 0; j < n; ++j) {
      inputs.push_back(input);
      shuffles.push_back(a * input + b);
      input += 1 + rng() % (1ULL << 28);
    }
    ProfileSet ps = make_set(inputs, shuffles);
    CHECK(inc_rate(ps) == static_cast<double>(a));
  }
}

// Brute-force recomputation with explicit loops; per-run values checked
// through exact reduced fractions.
TEST_CASE("oracle equivalence on small profile sets") {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 300; ++i) {
    ProfileSet ps = random_set(rng, 6, 8);
    ExpansionMetrics m = compute_metrics(ps);

    REQUIRE(m.per_run_shuffle_bytes.size() == ps.runs.size());
    REQUIRE(m.per_run_alpha.size() == ps.runs.size());

    double alpha_sum = 0.0;
    for (std::size_t r = 0; r < ps.runs.size(); ++r) {
      Bytes max_sum = 0;
      for (const StageRecord& s : ps.runs[r].stages) {
        Bytes sum = s.shuffle_read_bytes + s.shuffle_write_bytes;
        if (sum > max_sum) max_sum = sum;
      }
      CHECK(m.per_run_shuffle_bytes[r] == max_sum);

      auto frac = exact_ratio::make(max_sum, ps.runs[r].input_bytes);
      CHECK(m.per_run_alpha[r] == exact_ratio::to_double(frac));
      alpha_sum += m.per_run_alpha[r];
    }
    CHECK(m.alpha_mean == alpha_sum / static_cast<double>(ps.runs.size()));

    if (ps.runs.size() >= 2) {
      double rate_sum = 0.0;
      for (std::size_t r = 0; r + 1 < ps.runs.size(); ++r) {
        double ds = static_cast<double>(m.per_run_shuffle_bytes[r + 1]) -
                    static_cast<double>(m.per_run_shuffle_bytes[r]);
        double di = static_cast<double>(ps.runs[r + 1].input_bytes) -
                    static_cast<double>(ps.runs[r].input_bytes);
        rate_sum += ds / di;
      }
      REQUIRE(m.inc_shuf.has_value());
      CHECK(*m.inc_shuf == rate_sum / static_cast<double>(ps.runs.size() - 1));
    } else {
      CHECK_FALSE(m.inc_shuf.has_value());
    }
  }
}

}  // TEST_SUITE
