#include "levy_chaos/error.hpp"
#include "levy_chaos/taylor.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace levy_chaos;
using test_support::Q;

namespace {

template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

JumpPath<Rational> sample_path(std::uint64_t seed) {
  auto f = random_fixture(seed, 6, 8);
  return f.path;
}

}  // namespace

TEST_SUITE("taylor") {
  TEST_CASE("exponential of two increments") {
    const auto terms = taylor_terms(exp_functional<Rational>({Q("1/2"), 1}, 2, Rational(3)));
    REQUIRE(terms.size() == 6);
    const std::vector<std::pair<std::vector<unsigned>, Rational>> expected{
        {{0, 0}, 1}, {{1, 0}, 3}, {{0, 1}, 3}, {{2, 0}, Q("9/2")}, {{1, 1}, 9}, {{0, 2}, Q("9/2")}};
    for (std::size_t r = 0; r < terms.size(); ++r) {
      CHECK(terms[r].exponents == expected[r].first);
      CHECK(terms[r].coefficient == expected[r].second);
    }
  }

  TEST_CASE("a cross monomial keeps only itself") {
    const auto f = poly_functional<Rational>({Q("1/2"), 1}, 4, {{{1, 1}, Rational(5)}});
    const auto terms = taylor_terms(f);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].exponents == std::vector<unsigned>{1, 1});
    CHECK(terms[0].coefficient == 5);
    CHECK(f.value({2.0, 3.0}) == 30.0);
  }

  TEST_CASE("forward contract coefficients") {
    const auto f = forward_functional(100.0, 0.05, 1.0, 0.5, 3);
    const double scale = 100.0 * std::exp(0.025);
    const auto terms = taylor_terms(f);
    REQUIRE(terms.size() == 4);
    const double factorial[] = {1, 1, 2, 6};
    for (unsigned k = 0; k < 4; ++k) {
      CHECK(terms[k].exponents == std::vector<unsigned>{k});
      CHECK(terms[k].coefficient == doctest::Approx(scale / factorial[k]));
    }
    CHECK(f.value({0.1}) == doctest::Approx(scale * std::exp(0.1)));
    CHECK(error_code([] { (void)forward_functional(-1.0, 0.0, 1.0, 0.5, 2); }) == "taylor.invalid_parameter");
    CHECK(error_code([] { (void)forward_functional(1.0, 0.0, 1.0, 1.5, 2); }) == "taylor.invalid_parameter");
  }

  TEST_CASE("polynomial functionals are reproduced exactly") {
    const std::vector<TaylorTerm<Rational>> monomials{
        {{2, 1, 0}, Q("1/3")}, {{0, 0, 3}, Rational(-2)}, {{1, 1, 1}, Rational(4)}, {{0, 0, 0}, Rational(7)}};
    const auto f = poly_functional<Rational>({Q("1/4"), Q("1/2"), 1}, 3, monomials);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto path = sample_path(300 + seed);
      const auto v = eval_functional(f, path);
      const Rational x1 = path.value(Q("1/4"));
      const Rational x2 = path.value(Q("1/2")) - x1;
      const Rational x3 = path.value(1) - path.value(Q("1/2"));
      const Rational direct = Q("1/3") * x1 * x1 * x2 - 2 * x3 * x3 * x3 + 4 * x1 * x2 * x3 + 7;
      CHECK(v.truncated_direct == direct);
      CHECK(v.approx == direct);
    }
    CHECK(error_code([] { (void)poly_functional<Rational>({1}, 2, {{{1, 1}, Rational(1)}}); }) ==
          "taylor.invalid_monomial");
  }

  TEST_CASE("products over disjoint intervals") {
    const auto f = exp_functional<Rational>({Q("1/2"), 1}, 5, Q("1/2"));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto v = eval_functional(f, sample_path(400 + seed));
      CHECK(v.approx == v.truncated_direct);
    }
  }

  TEST_CASE("exponential truncation error shrinks with the order") {
    const auto f = exp_functional<double>({0.5, 1.0}, 8);
    const auto rows = truncation_study(f, {2, 4, 6, 8}, LevyModel::parse("gamma:a=10,b=20"), 5, 1e-2, 1,
                                       Substrate::Exact);
    REQUIRE(rows.size() == 4);
    for (std::size_t r = 1; r < rows.size(); ++r) CHECK(rows[r].mean_abs_error < rows[r - 1].mean_abs_error);
    for (const auto& row : rows) CHECK(row.max_abs_chaos_error < 1e-10);
  }

  TEST_CASE("malformed grids") {
    CHECK(error_code([] { (void)taylor_terms(exp_functional<double>({0.5, 0.5}, 2)); }) ==
          "taylor.overlapping_intervals");
    CHECK(error_code([] { (void)taylor_terms(exp_functional<double>({0.7, 0.3}, 2)); }) ==
          "taylor.overlapping_intervals");
    CHECK(error_code([] { (void)taylor_terms(exp_functional<double>({}, 2)); }) == "taylor.invalid_grid");
  }
}
