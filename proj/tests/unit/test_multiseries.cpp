#include <doctest.h>

#include "schottky/error.hpp"
#include "schottky/multiseries.hpp"

using namespace schottky;

namespace {

MultiSeries sample(int cap) {
  MultiSeries y1 = MultiSeries::variable(2, cap, 0), y2 = MultiSeries::variable(2, cap, 1);
  return MultiSeries::constant(2, cap, mpq_class(3, 2)) + y1 * mpq_class(-2) + y1 * y2 * mpq_class(5, 7) + y2.pow(3);
}

}  // namespace

TEST_CASE("keys are graded") {
  auto k = MultiSeries::key({2, 3});
  CHECK(MultiSeries::degree(k) == 5);
  CHECK(MultiSeries::exponents(k, 2) == std::vector<int>{2, 3});
  CHECK(MultiSeries::key({1, 0}) < MultiSeries::key({0, 2}));
}

TEST_CASE("inverse and powers") {
  MultiSeries s = sample(8);
  MultiSeries one = MultiSeries::constant(2, 8, 1);
  CHECK(s * s.inverse() == one);
  CHECK(s.pow(3) == s * s * s);
  CHECK(s.pow(0) == one);
  MultiSeries y1 = MultiSeries::variable(2, 8, 0);
  CHECK_THROWS_AS(y1.inverse(), Error);
}

TEST_CASE("products truncate at the cap") {
  MultiSeries y1 = MultiSeries::variable(1, 4, 0);
  CHECK(y1.pow(5).is_zero());
  CHECK(y1.pow(4).coeff({4}) == 1);
}

TEST_CASE("(1 - y)^-1 is the geometric series") {
  MultiSeries s = MultiSeries::constant(1, 10, 1) - MultiSeries::variable(1, 10, 0);
  MultiSeries inv = s.inverse();
  for (int n = 0; n <= 10; ++n) CHECK(inv.coeff({n}) == 1);
}

TEST_CASE("specialize and evaluate commute with products") {
  MultiSeries a = sample(6), b = sample(6).inverse();
  std::vector<mpq_class> pt{mpq_class(1, 3), mpq_class(-2, 5)};
  // Exact for polynomials below the cap.
  MultiSeries c = sample(10);
  MultiSeries c2 = c * c;
  CHECK(evaluate(c2, pt) == evaluate(c, pt) * evaluate(c, pt));
  MultiSeries s = specialize(c, {std::nullopt, mpq_class(0)});
  CHECK(s.nvars() == 2);
  CHECK(s.coeff({1, 0}) == -2);
  CHECK(s.coeff({1, 1}) == 0);
  CHECK((a * b).constant_term() == 1);
}

TEST_CASE("primitivity reports") {
  MultiSeries s = MultiSeries::constant(1, 4, mpq_class(2)) + MultiSeries::variable(1, 4, 0) * mpq_class(1, 3);
  auto rep = primitivity_check(s, {2, 3, 5});
  CHECK(rep[0].p_integral);
  CHECK(rep[0].primitive);
  CHECK_FALSE(rep[1].p_integral);
  CHECK_FALSE(rep[1].obstructions.empty());
  CHECK(rep[2].primitive);
  MultiSeries t = MultiSeries::constant(1, 4, mpq_class(6));
  CHECK_FALSE(primitivity_check(t, {2})[0].primitive);
}

TEST_CASE("string form") {
  MultiSeries y = MultiSeries::variable(2, 4, 1);
  CHECK((y * y * mpq_class(3)).to_string().find("y2^2") != std::string::npos);
}
