#include <doctest.h>

#include <random>

#include "cocyclelab/mat2.hpp"
#include "oracles.hpp"

using namespace cocyclelab;

TEST_CASE("svd2 basics") {
  SUBCASE("identity") {
    const Svd2 sv = svd2(Mat2::identity());
    CHECK(sv.sigma1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sv.sigma2 == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("diagonal") {
    const Svd2 sv = svd2(Mat2::diagonal(2, 0.5));
    CHECK(sv.sigma1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sv.sigma2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(proj_dist(sv.expand_dir, 0.0) < 1e-12);
    CHECK(proj_dist(sv.contract_dir, kPi / 2) < 1e-12);
  }
  SUBCASE("[[2,1],[1,1]] against the quadratic-formula value") {
    // Largest eigenvalue of M^T M is (7 + 3 sqrt 5)/2.
    const double expected = std::sqrt((7 + 3 * std::sqrt(5.0)) / 2);
    const Svd2 sv = svd2(Mat2(2, 1, 1, 1));
    CHECK(sv.sigma1 == doctest::Approx(expected).epsilon(1e-14));
    CHECK(sv.sigma1 == doctest::Approx(2.618).epsilon(1e-3));
    CHECK(sv.sigma1 == doctest::Approx(oracles::sampled_operator_norm(Mat2(2, 1, 1, 1)))
                           .epsilon(1e-8));
  }
}

TEST_CASE("singular value identities") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Mat2 m = oracles::random_sl2_near_identity(rng, 2.0);
    const Svd2 sv = svd2(m);
    CHECK(sv.sigma1 * sv.sigma2 ==
          doctest::Approx(std::fabs(m.det)).epsilon(1e-12));
    // |M| = |M^{-1}| for SL2
    CHECK(operator_norm(m) == doctest::Approx(operator_norm(m.inverse())).epsilon(1e-12));
    // sigma1/sigma2 = sigma1^2/|det|
    CHECK(sv.sigma1 / sv.sigma2 ==
          doctest::Approx(sv.sigma1 * sv.sigma1 / std::fabs(m.det)).epsilon(1e-12));
  }
}

TEST_CASE("rotation") {
  CHECK(operator_norm(Mat2::rotation(0) - Mat2::identity()) < 1e-15);
  const Mat2 quarter = Mat2::rotation(kPi / 2);
  CHECK(quarter.m00 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(quarter.m01 == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(quarter.m10 == doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (int i = 0; i < 1000; ++i)
    CHECK(operator_norm(Mat2::rotation(u(rng))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("arc_image") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, kPi);
  std::uniform_real_distribution<double> h(0.05, kPi / 2 - 0.05);

  SUBCASE("identity and rotations preserve shape") {
    const ProjectiveArc a(0.3, 0.4);
    const ProjectiveArc ia = arc_image(Mat2::identity(), a);
    CHECK(proj_dist(ia.center, a.center) < 1e-12);
    CHECK(ia.half_width == doctest::Approx(a.half_width).epsilon(1e-12));
    const ProjectiveArc ra = arc_image(Mat2::rotation(1.1), a);
    CHECK(proj_dist(ra.center, wrap_pi(a.center + 1.1)) < 1e-12);
    CHECK(ra.half_width == doctest::Approx(a.half_width).epsilon(1e-12));
  }

  SUBCASE("diagonal squeeze against dense sampling") {
    // Full line minus a vertical-centered band maps inside a narrow
    // horizontal-centered arc.
    const ProjectiveArc cone(0.0, kPi / 2 - 0.2);  // complement of vertical band
    const Mat2 d = Mat2::diagonal(2, 0.5);
    const ProjectiveArc img = arc_image(d, cone);
    CHECK(proj_dist(img.center, 0.0) < 1e-12);
    CHECK(img.half_width < cone.half_width);
    for (int i = 0; i < 10000; ++i) {
      const double ang = cone.center - cone.half_width +
                         2 * cone.half_width * (i / 10000.0) + 1e-9;
      if (!cone.contains_direction(ang)) continue;
      CHECK(img.contains_direction(oracles::image_direction(d, ang), -1e-9));
    }
  }

  SUBCASE("membership transport on random data") {
    for (int t = 0; t < 50; ++t) {
      const Mat2 m = oracles::random_sl2_near_identity(rng, 1.5);
      const ProjectiveArc arc(u(rng), h(rng));
      const ProjectiveArc img = arc_image(m, arc);
      for (int i = 0; i < 200; ++i) {
        const double ang =
            arc.center - arc.half_width + 2 * arc.half_width * ((i + 0.5) / 200.0);
        CHECK(img.contains_direction(oracles::image_direction(m, ang), -1e-9));
      }
    }
  }

  SUBCASE("composition consistency") {
    for (int t = 0; t < 50; ++t) {
      const Mat2 m = oracles::random_sl2_near_identity(rng, 1.0);
      const Mat2 n = oracles::random_sl2_near_identity(rng, 1.0);
      const ProjectiveArc arc(u(rng), h(rng));
      const ProjectiveArc two_step = arc_image(m, arc_image(n, arc));
      const ProjectiveArc one_step = arc_image(m * n, arc);
      CHECK(proj_dist(two_step.center, one_step.center) < 1e-9);
      CHECK(two_step.half_width == doctest::Approx(one_step.half_width).epsilon(1e-7));
    }
  }

  SUBCASE("inverse round trip contains the original") {
    for (int t = 0; t < 50; ++t) {
      const Mat2 m = oracles::random_sl2_near_identity(rng, 1.5);
      const ProjectiveArc arc(u(rng), h(rng));
      const ProjectiveArc back = arc_image(m, arc_image(m.inverse(), arc, true), true);
      CHECK(arc_contains(back, ProjectiveArc(arc.center, arc.half_width * (1 - 1e-7)), 0));
    }
  }

  SUBCASE("degenerate matrix rejected") {
    CHECK_THROWS_AS(arc_image(Mat2(1, 1, 1, 1), ProjectiveArc(0, 0.3)), Error);
  }
}

TEST_CASE("arc_contains") {
  const ProjectiveArc a(0.5, 0.4);
  CHECK(arc_contains(a, a, 0.0));
  CHECK_FALSE(arc_contains(a, ProjectiveArc::full_line(), 0.0));
  CHECK(arc_contains(ProjectiveArc::full_line(), a, 0.0));
  // randomized cross-check against direction sampling
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, kPi);
  std::uniform_real_distribution<double> h(0.05, kPi / 2 - 0.05);
  for (int t = 0; t < 200; ++t) {
    const ProjectiveArc outer(u(rng), h(rng));
    const ProjectiveArc inner(u(rng), h(rng));
    const bool claimed = arc_contains(outer, inner, 0.0);
    bool sampled = true;
    for (int i = 0; i <= 500 && sampled; ++i) {
      const double ang =
          inner.center - inner.half_width + 2 * inner.half_width * (i / 500.0);
      sampled = outer.contains_direction(ang, -1e-9);
    }
    if (claimed) CHECK(sampled);
    if (!sampled) CHECK_FALSE(claimed);
  }
}

TEST_CASE("min_growth_on_arc") {
  SUBCASE("identity") { CHECK(min_growth_on_arc(Mat2::identity(), ProjectiveArc(0.7, 0.3)) ==
                              doctest::Approx(1.0).epsilon(1e-14)); }
  SUBCASE("full line gives the co-norm") {
    CHECK(min_growth_on_arc(Mat2::diagonal(2, 0.5), ProjectiveArc::full_line()) ==
          doctest::Approx(0.5).epsilon(1e-14));
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
      const Mat2 m = oracles::random_sl2_near_identity(rng, 1.5);
      CHECK(min_growth_on_arc(m, ProjectiveArc::full_line()) ==
            doctest::Approx(co_norm(m)).epsilon(1e-12));
    }
  }
  SUBCASE("boundary minimum against dense sampling") {
    const Mat2 m = Mat2::diagonal(4, 0.25);
    const ProjectiveArc arc(0.0, kPi / 6);
    const double closed = min_growth_on_arc(m, arc);
    const double expected = std::sqrt(16 * std::pow(std::cos(kPi / 6), 2) +
                                      std::pow(std::sin(kPi / 6), 2) / 16);
    CHECK(closed == doctest::Approx(expected).epsilon(1e-14));
    CHECK(closed == doctest::Approx(oracles::sampled_min_growth(m, arc)).epsilon(1e-9));
  }
  SUBCASE("random cross-check") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, kPi);
    std::uniform_real_distribution<double> h(0.05, kPi / 2 - 0.05);
    for (int t = 0; t < 30; ++t) {
      const Mat2 m = oracles::random_sl2_near_identity(rng, 2.0);
      const ProjectiveArc arc(u(rng), h(rng));
      const double closed = min_growth_on_arc(m, arc);
      const double sampled = oracles::sampled_min_growth(m, arc, 50000);
      CHECK(closed <= sampled + 1e-9);
      CHECK(closed == doctest::Approx(sampled).epsilon(1e-6));
    }
  }
}

TEST_CASE("arc_hull") {
  SUBCASE("single arc") {
    const ProjectiveArc a(1.0, 0.3);
    const ProjectiveArc hull = arc_hull({a});
    CHECK(proj_dist(hull.center, a.center) < 1e-12);
    CHECK(hull.half_width == doctest::Approx(a.half_width).epsilon(1e-12));
  }
  SUBCASE("two overlapping arcs") {
    const ProjectiveArc hull = arc_hull({ProjectiveArc(0.2, 0.3), ProjectiveArc(0.6, 0.3)});
    CHECK(hull.contains_direction(0.2));
    CHECK(hull.contains_direction(0.6));
    CHECK(hull.half_width == doctest::Approx((0.9 - (-0.1)) / 2).epsilon(1e-9));
  }
  SUBCASE("wrap-around") {
    const ProjectiveArc hull = arc_hull({ProjectiveArc(0.05, 0.2), ProjectiveArc(kPi - 0.05, 0.2)});
    CHECK(hull.contains_direction(0.0));
    CHECK(hull.half_width < 0.5);
  }
  SUBCASE("covering union reports full") {
    CHECK(arc_hull({ProjectiveArc(0.0, 1.0), ProjectiveArc(1.5, 1.0), ProjectiveArc(2.8, 1.0)})
              .is_full());
  }
}
