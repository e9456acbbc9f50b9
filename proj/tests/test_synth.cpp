#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "layerlearn/rng.hpp"
#include "layerlearn/synth.hpp"

using namespace layerlearn;

namespace {

SynthSpec small_spec(SynthSetting setting, double std_dev, std::uint64_t seed) {
  SynthSpec spec;
  spec.n_per_community = 40;
  spec.n_communities = 3;
  spec.n_layers = 3;
  spec.std_dev = std_dev;
  spec.setting = setting;
  spec.rng_seed = seed;
  return spec;
}

std::vector<double> sorted_degrees(const SparseSym& g) {
  auto deg = g.degrees();
  std::sort(deg.begin(), deg.end());
  return deg;
}

bool connected_within(const SparseSym& g, int lo, int hi) {
  // union-find over [lo, hi)
  std::vector<int> parent(static_cast<std::size_t>(hi - lo));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& e : g.entries()) {
    if (e.i >= lo && e.i < hi && e.j >= lo && e.j < hi) {
      parent[static_cast<std::size_t>(find(e.i - lo))] = find(e.j - lo);
    }
  }
  const int root = find(0);
  for (int x = 1; x < hi - lo; ++x) {
    if (find(x) != root) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("collinear points with k=1 form a path with unit short edges") {
  Eigen::MatrixXd pts(3, 1);
  pts << 0.0, 1.5, 3.0;
  auto g = knn_blob_layer(pts, 1);
  CHECK(g.edge_count() == 2);
  CHECK(g.weight(0, 1) == doctest::Approx(1.0));  // exp(-d + d_min) at d = d_min
  CHECK(g.weight(1, 2) == doctest::Approx(1.0));
  CHECK(g.weight(0, 2) == 0.0);
}

TEST_CASE("kernel weights peak at the globally closest pair") {
  Rng rng(301);
  Eigen::MatrixXd pts(12, 3);
  for (int i = 0; i < pts.size(); ++i) pts(i / 3, i % 3) = rng.uniform(-1.0, 1.0);
  auto g = knn_blob_layer(pts, 4);
  double max_w = 0.0;
  for (const auto& e : g.entries()) {
    CHECK(e.w <= 1.0 + 1e-15);
    max_w = std::max(max_w, e.w);
  }
  CHECK(max_w == doctest::Approx(1.0));
}

TEST_CASE("k = N-1 yields the complete graph") {
  Rng rng(303);
  Eigen::MatrixXd pts(7, 2);
  for (int i = 0; i < pts.size(); ++i) pts(i / 2, i % 2) = rng.uniform(-1.0, 1.0);
  auto g = knn_blob_layer(pts, 6);
  CHECK(g.edge_count() == 21);
}

TEST_CASE("generation is deterministic in the seed") {
  for (auto setting : {SynthSetting::Informative, SynthSetting::Noisy,
                       SynthSetting::Complementary}) {
    auto a = generate(small_spec(setting, 2.0, 42));
    auto b = generate(small_spec(setting, 2.0, 42));
    REQUIRE(a.graph.layer_count() == b.graph.layer_count());
    for (int k = 0; k < a.graph.layer_count(); ++k) {
      const auto& ea = a.graph.layer(k).entries();
      const auto& eb = b.graph.layer(k).entries();
      REQUIRE(ea.size() == eb.size());
      for (std::size_t t = 0; t < ea.size(); ++t) {
        CHECK(ea[t].i == eb[t].i);
        CHECK(ea[t].j == eb[t].j);
        CHECK(ea[t].w == eb[t].w);  // bit-for-bit
      }
    }
    CHECK(a.known_nodes == b.known_nodes);
    auto c = generate(small_spec(setting, 2.0, 43));
    bool all_same = true;
    if (c.graph.layer(0).edge_count() != a.graph.layer(0).edge_count()) {
      all_same = false;
    } else {
      for (std::size_t t = 0; t < a.graph.layer(0).entries().size() && all_same; ++t) {
        all_same = a.graph.layer(0).entries()[t].w == c.graph.layer(0).entries()[t].w;
      }
    }
    CHECK(!all_same);
  }
}

TEST_CASE("layers are symmetric, nonnegative, zero-diagonal") {
  for (auto setting : {SynthSetting::Informative, SynthSetting::Noisy,
                       SynthSetting::Complementary}) {
    auto inst = generate(small_spec(setting, 2.5, 7));
    for (const auto& layer : inst.graph.layers()) {
      for (const auto& e : layer.entries()) {
        CHECK(e.i < e.j);
        CHECK(e.w > 0.0);
        CHECK(layer.weight(e.j, e.i) == e.w);
      }
    }
  }
}

TEST_CASE("known labels sample the configured fraction per community") {
  auto spec = small_spec(SynthSetting::Informative, 3.0, 11);
  spec.label_fraction = 0.25;
  auto inst = generate(spec);
  CHECK(inst.known_nodes.size() == 3 * 10);
  std::vector<int> per_comm(3, 0);
  for (int i : inst.known_nodes) {
    ++per_comm[static_cast<std::size_t>(inst.truth[static_cast<std::size_t>(i)])];
  }
  CHECK(per_comm == std::vector<int>{10, 10, 10});

  auto known = inst.known_labels();
  CHECK(known.m == 3);
  CHECK(known.labeled_nodes().size() == 30);
  auto truth = inst.truth_labels();
  CHECK(truth.labeled_nodes().size() == static_cast<std::size_t>(spec.nodes()));
}

TEST_CASE("noisy layers are reshuffled copies: degrees survive, alignment does not") {
  auto inst = generate(small_spec(SynthSetting::Noisy, 2.0, 19));
  const auto& informative = inst.graph.layer(0);
  const auto& shuffled = inst.graph.layer(1);
  // permutation invariance of the degree multiset, checked on a hand shuffle
  Rng rng(5);
  auto perm = rng.permutation(informative.nodes());
  std::vector<SparseSym::Entry> moved;
  for (const auto& e : informative.entries()) {
    moved.push_back({perm[static_cast<std::size_t>(e.i)], perm[static_cast<std::size_t>(e.j)], e.w});
  }
  auto hand = SparseSym::from_entries(informative.nodes(), moved);
  const auto da = sorted_degrees(hand);
  const auto db = sorted_degrees(informative);
  REQUIRE(da.size() == db.size());
  for (std::size_t t = 0; t < da.size(); ++t) {
    CHECK(da[t] == doctest::Approx(db[t]).epsilon(1e-12));
  }

  // the generated noise layers must not equal the informative one
  bool same = shuffled.edge_count() == informative.edge_count();
  if (same) {
    same = std::equal(shuffled.entries().begin(), shuffled.entries().end(),
                      informative.entries().begin(), [](const auto& a, const auto& b) {
                        return a.i == b.i && a.j == b.j && a.w == b.w;
                      });
  }
  CHECK(!same);
}

TEST_CASE("complementary layers connect their own community at small std") {
  auto spec = small_spec(SynthSetting::Complementary, 0.5, 23);
  auto inst = generate(spec);
  for (int l = 0; l < 3; ++l) {
    const int lo = l * spec.n_per_community;
    CHECK(connected_within(inst.graph.layer(l), lo, lo + spec.n_per_community));
  }
}

TEST_CASE("spec validation") {
  auto spec = small_spec(SynthSetting::Informative, 2.0, 1);
  spec.std_dev = 0.0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  spec = small_spec(SynthSetting::Complementary, 2.0, 1);
  spec.n_layers = 2;  // must equal n_communities
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  spec = small_spec(SynthSetting::Informative, 2.0, 1);
  spec.label_fraction = 0.0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  CHECK(parse_synth_setting("noisy") == SynthSetting::Noisy);
  CHECK_THROWS_AS(parse_synth_setting("bogus"), std::invalid_argument);
}
