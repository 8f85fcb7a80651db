#include <doctest.h>

#include <random>

#include "cocyclelab/gallery.hpp"
#include "cocyclelab/transfer.hpp"
#include "oracles.hpp"

using namespace cocyclelab;

namespace {

CocycleSpec constant_spec(const Mat2& m, double alpha = 0.5) {
  return CocycleSpec::one_step(TransitionMatrix::full_shift(2), {m, m}, alpha);
}

// Bunched non-UH corpus for the transfer chain.
std::vector<CocycleSpec> transfer_corpus(std::mt19937_64& rng) {
  std::vector<CocycleSpec> out;
  out.push_back(constant_spec(Mat2::rotation(0.7)));
  out.push_back(CocycleSpec::one_step(TransitionMatrix::full_shift(2),
                                      {Mat2::rotation(0.29), Mat2::rotation(0.61)}, 0.5));
  const TransitionMatrix q = TransitionMatrix::full_shift(2);
  std::map<Word, Mat2> table;
  for (const auto& w : admissible_words(q, 3))
    table[w] = oracles::random_sl2_near_identity(rng, 0.03);
  out.push_back(CocycleSpec::locally_constant(q, -1, 1, table, 0.5));
  return out;
}

}  // namespace

TEST_CASE("find_slow_point") {
  SUBCASE("rotations have norm one everywhere") {
    SlowPointSearch search;
    const SlowPoint slow = find_slow_point(constant_spec(Mat2::rotation(0.5)), 9, search);
    CHECK(slow.log_norm == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("diagonal has no slow point") {
    SlowPointSearch search;
    const SlowPoint slow = find_slow_point(constant_spec(Mat2::diagonal(2, 0.5)), 9, search);
    CHECK(slow.log_norm == doctest::Approx(9 * std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("builtin: homoclinic samples give exact norm one") {
    SlowPointSearch search;
    const int n = 7;
    search.extra_points.push_back(shift(homoclinic_point(), -n));
    const SlowPoint slow = find_slow_point(make_builtin_spec(), 2 * n, search);
    CHECK(slow.log_norm == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(slow.point == shift(homoclinic_point(), -n));
  }
  SUBCASE("empty search set") {
    SlowPointSearch search;
    search.max_period = 0;
    CHECK_THROWS_AS(find_slow_point(constant_spec(Mat2::identity()), 3, search), Error);
  }
}

TEST_CASE("build_shadow") {
  SUBCASE("already periodic: trivial closure") {
    const CocycleSpec spec = constant_spec(Mat2::rotation(0.3));
    const SymbolSequence zero = SymbolSequence::constant(0);
    const Shadow sh = build_shadow(spec, zero, 3);
    CHECK(sh.n1 == 1);
    CHECK(sh.connecting.empty());
    CHECK(sh.orbit.period() == 1);
    CHECK(sh.p == zero);
    CHECK(sh.y == zero);
  }
  SUBCASE("homoclinic segment over the full shift") {
    const CocycleSpec spec = make_builtin_spec();
    const SymbolSequence x = shift(homoclinic_point(), 2);  // the 1 sits at -2
    // use T^{-2} q instead: 1 at +2
    const SymbolSequence x2 = shift(homoclinic_point(), -2);
    const Shadow sh = build_shadow(spec, x2, 4);
    CHECK(sh.n1 == 1);
    CHECK(sh.orbit.word() == Word{0, 0, 0, 0, 1});
    // structural facts, coordinatewise
    CHECK(agree_right_of(sh.y, x2, 0));
    CHECK(agree_left_of(sh.y, sh.p, 0));
    CHECK(agree_left_of(shift(sh.y, 4), shift(sh.p, 4), 0));
    CHECK(agree_right_of(shift(sh.y, 4), shift(x2, 4), 0));
    (void)x;
  }
  SUBCASE("golden mean: connecting word closes the loop") {
    const TransitionMatrix gm = validate_sft({{1, 1}, {1, 0}});
    const CocycleSpec spec =
        CocycleSpec::one_step(gm, {Mat2::rotation(0.2), Mat2::rotation(0.4)}, 0.5);
    // x = (01)^inf has x_0 = 0; pick the phase with x_0 = 1 so x_{n0} = 1 too
    const SymbolSequence x = SymbolSequence::periodic({1, 0});
    const Shadow sh = build_shadow(spec, x, 4);  // x_4 = 1, x_0 = 1
    CHECK(sh.n1 == 2);
    CHECK(sh.connecting == Word{0});
    CHECK(is_admissible_word(gm, sh.orbit.word(), true));
    CHECK(is_admissible(gm, sh.y));
  }
}

TEST_CASE("transfer_bound") {
  SUBCASE("constant rotation: identity holonomies, zero exponent") {
    const CocycleSpec spec = constant_spec(Mat2::rotation(0.7));
    SlowPointSearch search;
    const TransferReport rep = run_transfer(spec, 10, 0.05, search);
    CHECK(rep.bound_holds);
    CHECK(rep.lambda_plus_p == 0.0);
    CHECK(rep.log_c == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.exponent_bound == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.identity_residual <= 10 * rep.holonomy_error_budget);
    for (double f : rep.factor_norms) CHECK(f == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("mild diagonal: periodic input reduces to the direct bound") {
    const CocycleSpec spec = constant_spec(Mat2::diagonal(1.1, 1 / 1.1));
    SlowPointSearch search;
    search.max_period = 5;
    const SlowPoint slow = find_slow_point(spec, 10, search);
    const Shadow sh = build_shadow(spec, slow.point, 10);
    const TransferReport rep = transfer_bound(spec, slow.point, sh, 10, 0.2);
    CHECK(rep.bound_holds);
    CHECK(rep.lambda_plus_p == doctest::Approx(std::log(1.1)).epsilon(1e-10));
    CHECK(rep.log_norm_x == doctest::Approx(10 * std::log(1.1)).epsilon(1e-10));
    // the bound value itself: (5 log C + log|A^{n0}(x)|) / (n0 + n1)
    CHECK(rep.exponent_bound >= std::log(1.1) - 1e-12);
  }
  SUBCASE("whole corpus: chain inequalities and residual budget") {
    std::mt19937_64 rng(131);
    for (const auto& spec : transfer_corpus(rng)) {
      for (long long n0 : {6LL, 10LL, 14LL}) {
        SlowPointSearch search;
        const TransferReport rep = run_transfer(spec, n0, 0.1, search);
        CHECK(rep.bound_holds);
        CHECK(rep.lambda_plus_p <= rep.exponent_bound + 1e-8);
        CHECK(rep.identity_residual <= 10 * rep.holonomy_error_budget);
        CHECK(rep.n1 <= spec.base().max_min_path());
      }
    }
  }
  SUBCASE("contrapositive: slow growth forces a small-exponent orbit") {
    // with eps = tau/4 and the rotation corpus, the produced p violates the
    // tau-gap, matching the theorem's contradiction route
    const double tau = 0.2;
    const CocycleSpec spec = constant_spec(Mat2::rotation(0.7));
    SlowPointSearch search;
    const SlowPoint slow = find_slow_point(spec, 20, search);
    REQUIRE(slow.log_norm <= (tau / 4) * 20);
    const Shadow sh = build_shadow(spec, slow.point, 20);
    const TransferReport rep = transfer_bound(spec, slow.point, sh, 20, tau / 4);
    CHECK(rep.lambda_plus_p <= tau / 2);
    const auto scan = gap_scan(spec, sh.orbit.period(), tau);
    CHECK(scan.verdict == GapVerdict::Violated);
  }
  SUBCASE("not bunched is rejected") {
    const CocycleSpec spec = make_builtin_spec();
    SlowPointSearch search;
    CHECK_THROWS_AS(run_transfer(spec, 8, 0.1, search), Error);
  }
}
