#include "tsgc/phantom.hpp"

#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "tsgc/features.hpp"
#include "tsgc/graphbuild.hpp"

using namespace tsgc;

TEST_CASE("splitmix64 reproduces the reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next_u64() == 0x06C45D188009454Full);

  SplitMix64 other(1234567);
  CHECK(other.next_u64() == 0x599ED017FB08FC85ull);

  SplitMix64 unit(42);
  for (int i = 0; i < 1000; ++i) {
    double u = unit.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  SplitMix64 g1(9), g2(9);
  for (int i = 0; i < 100; ++i) CHECK(g1.next_gaussian() == g2.next_gaussian());
}

TEST_CASE("zero-noise phantom pixels equal their tissue curve") {
  PhantomConfig cfg = default_phantom(64, 64, 59, 3, 0.0);
  PhantomCase pc = generate(cfg);

  const std::vector<double>* curves[4] = {&cfg.curves.background, &cfg.curves.healthy,
                                          &cfg.curves.tumor, &cfg.curves.vessel};
  for (int t = 0; t < 59; ++t) {
    for (int r = 0; r < 64; ++r) {
      for (int c = 0; c < 64; ++c) {
        int label = static_cast<int>(pc.truth.at(r, c));
        CHECK(pc.volume.at(t, r, c) ==
              static_cast<float>((*curves[label])[static_cast<std::size_t>(t)]));
      }
    }
  }
}

TEST_CASE("phantom generation is deterministic per seed") {
  PhantomConfig cfg = default_phantom(32, 32, 11, 77, 12.0);
  PhantomCase a = generate(cfg);
  PhantomCase b = generate(cfg);
  CHECK(a.volume.data == b.volume.data);
  CHECK(a.truth.labels == b.truth.labels);
  CHECK(a.liver_mask.bits == b.liver_mask.bits);

  cfg.seed = 78;
  PhantomCase c = generate(cfg);
  CHECK(a.volume.data != c.volume.data);
}

TEST_CASE("tumor ROI mean recovers the tumor curve exactly at zero noise") {
  PhantomConfig cfg = default_phantom();
  PhantomCase pc = generate(cfg);
  FeatureField field = time_series_features(pc.volume);
  FeatureVector mu = region_mean(field, pc.roi_tumor);
  REQUIRE(mu.size() == 59);
  for (int t = 0; t < 59; ++t) {
    CHECK(mu[static_cast<std::size_t>(t)] ==
          static_cast<double>(static_cast<float>(cfg.curves.tumor[static_cast<std::size_t>(t)])));
  }
}

TEST_CASE("phantom regions nest and stay disjoint") {
  PhantomCase pc = generate(default_phantom(80, 70, 13, 5, 4.0));

  std::size_t healthy = 0, tumor = 0, vessel = 0;
  for (int r = 0; r < 80; ++r) {
    for (int c = 0; c < 70; ++c) {
      Label l = pc.truth.at(r, c);
      // background exactly off the liver mask
      CHECK((l == Label::Background) == !pc.liver_mask.at(r, c));
      healthy += l == Label::Healthy;
      tumor += l == Label::Tumor;
      vessel += l == Label::Vessel;

      if (pc.roi_healthy.at(r, c)) CHECK(l == Label::Healthy);
      if (pc.roi_tumor.at(r, c)) CHECK(l == Label::Tumor);
      if (pc.roi_vessel.at(r, c)) CHECK(l == Label::Vessel);
    }
  }
  CHECK(healthy > 0);
  CHECK(tumor > 0);
  CHECK(vessel > 0);

  CHECK(pc.roi_healthy.count() > 0);
  CHECK(pc.roi_tumor.count() > 0);
  CHECK(pc.roi_vessel.count() > 0);
  CHECK(pc.roi_healthy.count() < healthy);
  CHECK(pc.roi_tumor.count() < tumor);
  CHECK(pc.roi_vessel.count() < vessel);
}

TEST_CASE("invalid geometry is rejected") {
  PhantomConfig cfg = default_phantom(64, 64, 9, 1, 0.0);
  cfg.geometry.liver_radius_col = 40.0;  // ellipse pokes out of the image
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = default_phantom(64, 64, 9, 1, 0.0);
  cfg.geometry.tumors[0].col = 60.0;  // disc outside the liver
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = default_phantom(64, 64, 9, 1, 0.0);
  cfg.curves.vessel.pop_back();  // curve length mismatch
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = default_phantom(64, 64, 9, 1, 0.0);
  cfg.geometry.vessel_center_col = 1.0;  // strip misses the liver
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = default_phantom(64, 64, 9, 1, 0.0);
  cfg.noise_sigma = -1.0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}

TEST_CASE("phantom cases survive the on-disk round trip") {
  tsgc_test::TempDir dir;
  PhantomCase pc = generate(default_phantom(48, 48, 7, 21, 6.0));
  save_volume(pc.volume, dir.file("v.tsv"));
  save_mask(pc.liver_mask, dir.file("m.pgm"));
  save_labels(pc.truth, dir.file("t.pgm"));

  CHECK(load_volume(dir.file("v.tsv")).data == pc.volume.data);
  CHECK(load_mask(dir.file("m.pgm")).bits == pc.liver_mask.bits);
  CHECK(load_labels(dir.file("t.pgm")).labels == pc.truth.labels);
}
