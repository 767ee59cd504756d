#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "idt/metrics.hpp"

using namespace idt;

using V = std::vector<std::size_t>;

TEST_CASE("accuracy") {
  CHECK(accuracy(V{0, 1, 1, 1}, V{0, 0, 1, 1}) == 0.75);
  CHECK(accuracy(V{1, 1, 0, 0}, V{0, 0, 1, 1}) == 0.0);
  CHECK_THROWS_AS(accuracy(V{}, V{}), std::invalid_argument);
  CHECK_THROWS_AS(accuracy(V{1}, V{1, 0}), std::invalid_argument);
}

TEST_CASE("macro F1") {
  CHECK(macro_f1(V{0, 1, 1, 1}, V{0, 0, 1, 1}, 2) == doctest::Approx(11.0 / 15.0).epsilon(1e-12));
  CHECK(macro_f1(V{1, 1, 1, 1}, V{0, 0, 1, 1}, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(macro_f1(V{0, 1, 2}, V{0, 1, 2}, 3) == 1.0);
  // Balanced classes with symmetric confusion: equals accuracy.
  CHECK(macro_f1(V{0, 1, 1, 0}, V{0, 0, 1, 1}, 2) == doctest::Approx(accuracy(V{0, 1, 1, 0}, V{0, 0, 1, 1})));
  CHECK_THROWS_AS(macro_f1(V{1}, V{1, 0}, 2), std::invalid_argument);
}

TEST_CASE("fidelity") {
  V a(100, 1), b(100, 1);
  for (int i = 0; i < 8; ++i) b[i] = 0;
  CHECK(fidelity(a, b) == doctest::Approx(0.92));
  CHECK(fidelity(a, a) == 1.0);
  CHECK(fidelity(V{0, 1}, V{1, 0}) == 0.0);
  CHECK_THROWS_AS(fidelity(V{0}, V{}), std::invalid_argument);
}

TEST_CASE("mean and population standard deviation") {
  const std::vector<double> v = {1.0, 1.0, 0.9, 1.0};
  const auto m = mean_std(v);
  CHECK(m.mean == doctest::Approx(0.975));
  CHECK(m.std == doctest::Approx(0.0433012702));
  CHECK(mean_std(std::vector<double>{0.5}).std == 0.0);
}
