#include <doctest.h>

#include <random>

#include "cocyclelab/gallery.hpp"
#include "oracles.hpp"

using namespace cocyclelab;

namespace {

SymbolSequence spaced_ones(int m) {  // (1 0^{2m})^inf
  Word w(static_cast<std::size_t>(2 * m + 1), 0);
  w[0] = 1;
  return SymbolSequence::periodic(w);
}

}  // namespace

TEST_CASE("k_of") {
  CHECK_FALSE(k_of(homoclinic_point()).has_value());
  CHECK(k_of(SymbolSequence::constant(1)).value() == 1);
  for (int m : {1, 3, 7, 12}) {
    CHECK(k_of(spaced_ones(m)).value() == 2 * m + 1);
  }
  SUBCASE("nearest 1 can sit in the past") {
    // 1 at -2 and at 0, zeros elsewhere
    const SymbolSequence x({0}, {1, 0, 1}, -2, {0});
    CHECK(k_of(x).value() == 2);
  }
}

TEST_CASE("theta") {
  const CounterexampleParams& p = CounterexampleParams::standard();
  CHECK(theta(homoclinic_point(), p) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(theta(zero_fixed_point(), p) == 0.0);
  SUBCASE("above the cutoff") {
    const int k = 2 * 11 + 1;  // 23 > k0
    REQUIRE(k > p.k0);
    CHECK(theta(spaced_ones(11), p) ==
          doctest::Approx(kPi / 2 - std::pow(2.0, -k / 8.0)).epsilon(1e-15));
  }
  SUBCASE("at or below the cutoff the rotation is off") {
    CHECK(theta(SymbolSequence::periodic({1, 0}), p) == 0.0);  // k = 2
    CHECK(theta(spaced_ones(6), p) == 0.0);                    // k = 13 = k0
  }
  SUBCASE("continuity at the homoclinic point") {
    for (int r = p.k0 + 1; r <= 64; ++r) {
      Word w(static_cast<std::size_t>(r), 0);
      w[0] = 1;  // k(x) = r for the periodic point (1 0^{r-1})^inf
      const SymbolSequence x = SymbolSequence::periodic(w);
      REQUIRE(k_of(x).value() == r);
      CHECK(std::fabs(theta(x, p) - kPi / 2) ==
            doctest::Approx(std::pow(2.0, -r / 8.0)).epsilon(1e-12));
    }
  }
  SUBCASE("distance to q equals 2^{-k} on V") {
    std::mt19937_64 rng(71);
    const SymbolSequence q = homoclinic_point();
    int tested = 0;
    for (int t = 0; t < 200; ++t) {
      const SymbolSequence x = oracles::random_binary_point(rng, 8);
      if (x.at(0) != 1) continue;
      const auto k = k_of(x);
      if (!k) continue;
      ++tested;
      CHECK(distance(x, q) == doctest::Approx(std::pow(2.0, -static_cast<double>(*k)))
                                  .epsilon(1e-15));
    }
    CHECK(tested > 50);
  }
}

TEST_CASE("determine_k0") {
  const K0Scan scan = determine_k0_scan();
  CHECK(scan.k0 == 13);
  CHECK(scan.first_k_holding[0] == 14);  // the binding inequality 2^{-k/8} < 0.3
  CHECK(scan.monotone);
  for (std::size_t i = 1; i < 6; ++i) CHECK(scan.first_k_holding[i] <= 14);
  CHECK(CounterexampleParams::standard().k0 == 13);
}

TEST_CASE("first_return") {
  const CocycleSpec spec = make_builtin_spec();
  SUBCASE("all-ones fixed point") {
    const auto step = first_return(spec, SymbolSequence::constant(1));
    CHECK(step.return_time == 1);
    CHECK(step.next_point == SymbolSequence::constant(1));
  }
  SUBCASE("self-return family") {
    for (int m : {2, 7, 15}) {
      const auto step = first_return(spec, spaced_ones(m));
      CHECK(step.return_time == 2 * m + 1);
      CHECK(step.next_point == spaced_ones(m));
      CHECK(step.k_here.value() == 2 * m + 1);
      CHECK(step.k_here.value() <= step.return_time);
      CHECK(step.k_next.value() <= step.return_time);
    }
  }
  SUBCASE("homoclinic point has no return") {
    CHECK_THROWS_AS(first_return(spec, homoclinic_point()), Error);
  }
  SUBCASE("a single future 1 still returns") {
    // core (1 0^{20} 1), zero tails
    Word core(22, 0);
    core[0] = 1;
    core[21] = 1;
    const SymbolSequence x({0}, core, 0, {0});
    const auto step = first_return(spec, x);
    CHECK(step.return_time == 21);
  }
  SUBCASE("induced matrix is the return product") {
    const auto step = first_return(spec, spaced_ones(8));
    const Mat2 expected = oracles::naive_product(spec, spaced_ones(8), 17);
    CHECK(operator_norm(step.induced.recombined() - expected) / operator_norm(expected) <
          1e-12);
  }
}

TEST_CASE("cone_of") {
  const CounterexampleParams& p = CounterexampleParams::standard();
  SUBCASE("below the cutoff is undefined") {
    CHECK_THROWS_AS(cone_of(SymbolSequence::periodic({1, 0}), p), Error);
    CHECK_THROWS_AS(cone_of(homoclinic_point(), p), Error);
    CHECK_THROWS_AS(cone_of(zero_fixed_point(), p), Error);
  }
  SUBCASE("formula at k = k0 + 1") {
    Word w(static_cast<std::size_t>(p.k0 + 2), 0);
    w[0] = 1;
    const SymbolSequence x = SymbolSequence::periodic(w);
    REQUIRE(k_of(x).value() == p.k0 + 2);
    const ProjectiveArc cone = cone_of(x, p);
    const double beta = std::pow(2.0, -(p.k0 + 2) / 2.0 + 0.25);
    const double delta = std::pow(2.0, -(p.k0 + 2) / 8.0);
    CHECK(cone.half_width == doctest::Approx(kPi / 2 - beta).epsilon(1e-13));
    CHECK(proj_dist(cone.center, wrap_pi(delta + kPi / 2)) < 1e-13);
    // the excluded band is genuinely excluded
    CHECK_FALSE(cone.contains_direction(delta));
    CHECK(cone.contains_direction(0.0));
    CHECK(cone.contains_direction(kPi / 2));
  }
  SUBCASE("deep points approach the complement of the vertical band") {
    const ProjectiveArc cone = cone_of(spaced_ones(40), p);
    CHECK(cone.half_width > kPi / 2 - 1e-5);
    CHECK(proj_dist(cone.center, kPi / 2) < 0.01);
  }
}

TEST_CASE("verify_cone_step") {
  const CocycleSpec spec = make_builtin_spec();
  const CounterexampleParams& p = CounterexampleParams::standard();
  SUBCASE("self-return family m = 7..30") {
    for (int m = 7; m <= 30; ++m) {
      const ConeStepReport rep = verify_cone_step(spec, spaced_ones(m), p);
      CHECK(rep.pass);
      CHECK(rep.inclusion_slack > 0);
      CHECK(rep.log_growth >= rep.log_growth_required);
      CHECK(rep.tan_gamma <= rep.tan_gamma_bound + 4e-15);
    }
  }
  SUBCASE("mixed generated points with k above the cutoff") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 100; ++t) {
      // 1s spaced by gaps all above k0, periodic right tail
      const auto gap = [&] { return p.k0 + 1 + static_cast<int>(rng() % 47); };
      Word core;
      core.push_back(1);
      const int blocks = 1 + static_cast<int>(rng() % 3);
      for (int b = 0; b < blocks; ++b) {
        const int g = gap();
        for (int i = 0; i < g; ++i) core.push_back(0);
        core.push_back(1);
      }
      Word right(static_cast<std::size_t>(gap()), 0);
      right.back() = 1;
      Word left(static_cast<std::size_t>(gap()), 0);
      const SymbolSequence x(left, core, 0, right);
      REQUIRE(k_of(x).value() > p.k0);
      const ConeStepReport rep = verify_cone_step(spec, x, p);
      CHECK(rep.pass);
    }
  }
  SUBCASE("corrupted beta fails as a negative control") {
    CounterexampleParams bad = p;
    bad.beta_scale = 0.5;
    CHECK_THROWS_AS(verify_cone_step(spec, spaced_ones(7), bad), Error);
    try {
      verify_cone_step(spec, spaced_ones(7), bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConeStepViolated);
    }
  }
  SUBCASE("bridge steps through the low-k regime") {
    // k(x) = 2 <= k0: horizontal-cone source, rotation-free block
    const SymbolSequence x = SymbolSequence::periodic({1, 0});
    const ConeStepReport rep = verify_cone_step(spec, x, p);
    CHECK(rep.pass);
    CHECK(rep.return_time == 2);
  }
}

TEST_CASE("verify_not_uh") {
  const CocycleSpec spec = make_builtin_spec();
  const NotUhReport rep = verify_not_uh(spec, 25);
  CHECK(rep.pass);
  CHECK(rep.max_norm_deviation <= 1e-10);
  CHECK(rep.all_probes_falsified);
  SUBCASE("contrast: the zero fixed point grows like 2^n") {
    const ProductResult pr = product(spec, zero_fixed_point(), 20);
    CHECK(pr.log_norm() == doctest::Approx(20 * std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("verify_exponent_bound") {
  const CocycleSpec spec = make_builtin_spec();
  const ExponentBoundReport rep = verify_exponent_bound(spec, 10, 40, 20180613);
  CHECK(rep.pass);
  CHECK(rep.gap_pass);
  CHECK(rep.deep_zero_pass);
  CHECK(rep.track_pass);
  CHECK(rep.off_v_pass);
  CHECK(rep.worst_track_margin >= 0);
  SUBCASE("deep-zero family against the eigenvalue oracle") {
    for (int m : {7, 9, 11}) {
      const int per = 2 * m + 1;
      Word w(static_cast<std::size_t>(per), 0);
      w[0] = 1;
      const double lp = periodic_exponent(spec, PeriodicOrbit(w)).lambda_plus;
      const Mat2 av = oracles::naive_product(spec, spaced_ones(m), per);
      CHECK(lp ==
            doctest::Approx(std::log(oracles::eigen_moduli(av).first) / per).epsilon(1e-10));
      CHECK(lp >= std::log(2.0) / 2);
    }
  }
  SUBCASE("the alternating orbit is rotation-free with exponent log 2") {
    const double lp = periodic_exponent(spec, PeriodicOrbit(Word{0, 1})).lambda_plus;
    CHECK(lp == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  }
  SUBCASE("cone nesting along self-return orbits") {
    const CounterexampleParams& p = CounterexampleParams::standard();
    // Rotation-free family first: widths shrink by 4^{-N} per return and
    // stay above double angular resolution for many steps.
    const SymbolSequence low = SymbolSequence::periodic({1, 0});
    const Mat2 av_low = first_return(spec, low).induced.recombined();
    {
      ProjectiveArc arc = horizontal_cone();
      std::vector<ProjectiveArc> nested;
      for (int j = 0; j < 10; ++j) {
        arc = arc_image(av_low, arc);
        nested.push_back(arc);
      }
      for (std::size_t j = 1; j < nested.size(); ++j)
        CHECK(arc_contains(nested[j - 1], nested[j], 0));
      for (const auto& a : nested) CHECK(a.contains_direction(0.0));  // horizontal limit
    }
    // Rotation-active family: one resolvable nesting stage, and the image
    // pins down the expanding direction of the return matrix.
    const SymbolSequence x = spaced_ones(7);
    const Mat2 av = first_return(spec, x).induced.recombined();
    const ProjectiveArc cone = cone_of(x, p);
    const ProjectiveArc image = arc_image(av, cone);
    CHECK(arc_contains(cone, image, 0));
    double len, expand_image;
    av.apply_direction(svd2(av).expand_dir, len, expand_image);
    CHECK(cone.contains_direction(expand_image));
    CHECK(image.contains_direction(expand_image));
  }
}
