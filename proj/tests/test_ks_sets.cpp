#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "kscolour/ks_sets.hpp"
#include "kscolour/random.hpp"

using namespace kscolour;
namespace fs = std::filesystem;

namespace {

const fs::path kData = KSCOLOUR_TEST_DATA_DIR;

RaySet int_set(std::vector<std::array<int, 3>> v) {
  std::vector<Ray> rays;
  for (auto [x, y, z] : v) rays.emplace_back(x, y, z);
  return RaySet("test", "unit test", rays);
}

RaySet subset(const RaySet& s, const std::vector<std::size_t>& idx) {
  std::vector<Ray> rays;
  for (std::size_t i : idx) rays.push_back(s.rays()[i]);
  return RaySet(s.name(), s.source(), rays);
}

std::vector<std::size_t> random_subset(RandomStream& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n) - 1));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

std::uint64_t brute_count(const OrthogonalityGraph& g) {
  std::uint64_t count = 0;
  std::vector<int> c(g.vertex_count);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.vertex_count); ++m) {
    for (std::size_t i = 0; i < g.vertex_count; ++i) c[i] = static_cast<int>((m >> i) & 1);
    count += satisfies_ks_conditions(g, c);
  }
  return count;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("Surd signs are exact") {
  CHECK(Surd(3, -2).sign() == 1);   // 3 - 2.828
  CHECK(Surd(-3, 2).sign() == -1);
  CHECK(Surd(1, -1).sign() == -1);  // 1 - 1.414
  CHECK(Surd(0, 1).sign() == 1);
  CHECK(Surd(0, 0).sign() == 0);
  CHECK(Surd(2, 0).sign() == 1);
  CHECK((Surd(0, 1) * Surd(0, 1)) == Surd(2, 0));
  CHECK(Surd(1, 1).to_double() == doctest::Approx(1 + std::sqrt(2.0)));
}

TEST_CASE("rays are sign-canonical") {
  CHECK(Ray(-1, -2, 0) == Ray(1, 2, 0));
  CHECK(Ray(0, -1, 1).coords()[1] == Surd(1));
  CHECK_THROWS_AS(Ray(0, 0, 0), std::domain_error);
  CHECK(parallel(Ray(1, 2, 2), Ray(2, 4, 4)));
  CHECK_FALSE(parallel(Ray(1, 2, 2), Ray(2, 4, 3)));
  CHECK_THROWS_AS(int_set({{1, 0, 0}, {-2, 0, 0}}), RaySetError);
}

TEST_CASE("graph examples") {
  const auto g = build_graph(int_set({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(g.pairs.size() == 3);
  CHECK(g.triads.size() == 1);
  const auto h = build_graph(int_set({{1, 0, 0}, {0, 1, 1}}));
  CHECK(h.pairs.size() == 1);
  CHECK(h.triads.empty());
}

TEST_CASE("solver examples with enumeration") {
  const auto triad = decide_colourability(build_graph(int_set({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), {true});
  CHECK(triad.status == Verdict::Colourable);
  REQUIRE(triad.solution_count);
  CHECK(*triad.solution_count == 3);
  const auto pair = decide_colourability(build_graph(int_set({{1, 0, 0}, {0, 1, 1}})), {true});
  CHECK(pair.status == Verdict::Colourable);
  CHECK(*pair.solution_count == 3);
  const auto g = build_graph(int_set({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  REQUIRE(triad.witness);
  CHECK(satisfies_ks_conditions(g, *triad.witness));
  CHECK_FALSE(decide_colourability(g).solution_count.has_value());
}

TEST_CASE("bundled Conway-Kochen set") {
  const RaySet ck = load_ray_set(kData / "conway-kochen.json");
  CHECK(ck.size() == 31);
  std::set<Ray> distinct(ck.rays().begin(), ck.rays().end());
  CHECK(distinct.size() == 31);
  const auto g = build_graph(ck);
  for (const auto& t : g.triads) {
    for (auto [a, b] : {std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}}) {
      CHECK(std::find(g.pairs.begin(), g.pairs.end(), std::array<std::size_t, 2>{a, b}) != g.pairs.end());
    }
  }
  const auto res = decide_colourability(g);
  CHECK(res.status == Verdict::Uncolourable);
  CHECK_FALSE(res.witness);
  const double deg = min_angle(ck) * 180.0 / kPi;
  CHECK(deg == doctest::Approx(18.4349488).epsilon(1e-8));
  const double quoted = min_angle(int_set({{0, 1, 2}, {0, 2, 2}}));
  CHECK(quoted * 180.0 / kPi == doctest::Approx(18.4349488).epsilon(1e-8));
  CHECK(quoted == doctest::Approx(std::acos(6.0 / std::sqrt(40.0))));
  CHECK(distinct.count(Ray(0, 1, 2)) == 1);
  CHECK(distinct.count(Ray(0, 1, 1)) == 1);
}

TEST_CASE("bundled Peres set") {
  const RaySet p = load_ray_set(kData / "peres-33.json");
  const bool all_integer = p.rays().front().is_integer() && p.rays().back().is_integer();
  CHECK_FALSE(all_integer);
  CHECK(p.size() == 33);
  CHECK(decide_colourability(build_graph(p)).status == Verdict::Uncolourable);
}

TEST_CASE("toy sets are colourable") {
  for (const char* name : {"triad.json", "two-triads.json"}) {
    const auto g = build_graph(load_ray_set(kData / name));
    const auto r = decide_colourability(g, {true});
    CHECK(r.status == Verdict::Colourable);
    CHECK(*r.solution_count == brute_count(g));
  }
}

TEST_CASE("min_angle") {
  CHECK(min_angle(int_set({{1, 0, 0}, {0, 1, 0}})) == doctest::Approx(kPi / 2));
  CHECK(min_angle(int_set({{1, 0, 0}, {-1, 1, 0}})) == doctest::Approx(kPi / 4));
  CHECK_THROWS_AS(min_angle(int_set({{1, 0, 0}})), std::domain_error);
}

TEST_CASE("oracle: solver agrees with exhaustive search on random subsets") {
  const RaySet ck = load_ray_set(kData / "conway-kochen.json");
  const RaySet peres = load_ray_set(kData / "peres-33.json");
  RandomStream rng(31, 0);
  int colourable = 0, uncolourable = 0;
  for (const RaySet* s : {&ck, &peres}) {
    for (int t = 0; t < 150; ++t) {
      const auto k = static_cast<std::size_t>(rng.uniform_int(1, 20));
      const auto g = build_graph(subset(*s, random_subset(rng, s->size(), k)));
      const auto res = decide_colourability(g, {true});
      const bool naive = exhaustive_colourable(g);
      REQUIRE((res.status == Verdict::Colourable) == naive);
      if (k <= 14) REQUIRE(*res.solution_count == brute_count(g));
      if (res.witness) REQUIRE(satisfies_ks_conditions(g, *res.witness));
      (naive ? colourable : uncolourable)++;
    }
  }
  CHECK(colourable > 0);
  CHECK_THROWS_AS(exhaustive_colourable(build_graph(ck)), std::domain_error);
}

TEST_CASE("oracle: uncolourable subsets of at most 20 rays are confirmed exhaustively") {
  const RaySet ck = load_ray_set(kData / "conway-kochen.json");
  RandomStream rng(32, 0);
  int found = 0;
  for (int t = 0; t < 400 && found < 5; ++t) {
    const auto g = build_graph(subset(ck, random_subset(rng, ck.size(), 20)));
    if (decide_colourability(g).status == Verdict::Uncolourable) {
      ++found;
      CHECK_FALSE(exhaustive_colourable(g));
    }
  }
  MESSAGE("uncolourable 20-ray subsets found: " << found);
}

TEST_CASE("property: subsets of colourable sets are colourable") {
  const RaySet ck = load_ray_set(kData / "conway-kochen.json");
  RandomStream rng(33, 0);
  for (int t = 0; t < 200; ++t) {
    const auto big = random_subset(rng, ck.size(), 24);
    const auto gs = subset(ck, big);
    if (decide_colourability(build_graph(gs)).status != Verdict::Colourable) continue;
    for (int u = 0; u < 5; ++u) {
      const auto small = random_subset(rng, big.size(), static_cast<std::size_t>(rng.uniform_int(1, 23)));
      REQUIRE(decide_colourability(build_graph(subset(gs, small))).status == Verdict::Colourable);
    }
  }
}

TEST_CASE("property: exact rotations preserve graph and verdict") {
  const RaySet ck = load_ray_set(kData / "conway-kochen.json");
  const auto g0 = build_graph(ck);
  RandomStream rng(34, 0);
  for (int t = 0; t < 10; ++t) {
    std::int64_t q[4];
    for (auto& v : q) v = rng.uniform_int(-9, 9);
    if (q[0] == 0 && q[1] == 0 && q[2] == 0 && q[3] == 0) continue;
    const RaySet r = rotate_exact(ck, q[0], q[1], q[2], q[3]);
    const auto g = build_graph(r);
    CHECK(g.pairs == g0.pairs);
    CHECK(g.triads == g0.triads);
    CHECK(decide_colourability(g).status == Verdict::Uncolourable);
    CHECK(min_angle(r) == doctest::Approx(min_angle(ck)).epsilon(1e-12));
  }
  const RaySet p = load_ray_set(kData / "peres-33.json");
  CHECK(build_graph(rotate_exact(p, 1, 2, 0, 1)).triads == build_graph(p).triads);
}

TEST_CASE("save and load round trip") {
  const fs::path dir = fs::temp_directory_path() / "kscolour_test_sets";
  fs::create_directories(dir);
  for (const char* name : {"conway-kochen.json", "peres-33.json", "triad.json"}) {
    const RaySet s = load_ray_set(kData / name);
    save_ray_set(s, dir / name);
    CHECK(load_ray_set(dir / name) == s);
    CHECK(parse_ray_set(dump_ray_set(s)) == s);
  }
}

TEST_CASE("parse errors are described") {
  CHECK_THROWS_AS(parse_ray_set("{not json"), RaySetError);
  CHECK_THROWS_AS(parse_ray_set(R"({"name":"a","source":"b","rays":[[0,0,0]]})"), RaySetError);
  CHECK_THROWS_AS(parse_ray_set(R"({"name":"a","source":"b","rays":[[1,0.5,0]]})"), RaySetError);
  CHECK_THROWS_AS(parse_ray_set(R"({"name":"a","source":"b","rays":[[1,0,0],[-3,0,0]]})"), RaySetError);
  CHECK_THROWS_AS(parse_ray_set(R"({"name":"a","source":"b","rays":[[1,0]]})"), RaySetError);
  CHECK_THROWS_AS(parse_ray_set(R"({"name":"a","rays":[[1,0,0]]})"), RaySetError);
  CHECK_THROWS_AS(parse_ray_set(R"({"name":"a","source":"b","rays":[[1,"x",0]]})"), RaySetError);
  CHECK_THROWS_AS(parse_ray_set(R"({"name":"a","source":"b","rays":[[1,[0,1,2],0]]})"), RaySetError);
  CHECK_THROWS_AS(load_ray_set(fs::temp_directory_path() / "definitely-missing-kscolour.json"), RaySetError);
  const fs::path bad = fs::temp_directory_path() / "kscolour_zero.json";
  write_file(bad, R"({"name":"z","source":"s","rays":[[1,0,0],[0,0,0]]})");
  try {
    load_ray_set(bad);
    FAIL("expected rejection");
  } catch (const RaySetError& e) {
    CHECK(std::string(e.what()).find("zero") != std::string::npos);
  }
}
