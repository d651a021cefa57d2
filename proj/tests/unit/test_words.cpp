#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "schottky/error.hpp"
#include "schottky/words.hpp"

using namespace schottky;

namespace {

int mobius_mu(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

// Primitive cyclically reduced classes of length n in the free group of rank g,
// by Möbius inversion over the count of cyclically reduced words.
long necklace_count(int g, int n) {
  auto cr = [g](int m) {
    long p = 1;
    for (int i = 0; i < m; ++i) p *= 2 * g - 1;
    return p + 1 + (g - 1) * (m % 2 == 0 ? 2 : 0);
  };
  long s = 0;
  for (int dd = 1; dd <= n; ++dd)
    if (n % dd == 0) s += mobius_mu(n / dd) * cr(dd);
  return s / n;
}

Word random_reduced(std::mt19937& rng, int rank, int len) {
  Word w{rank, {}};
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  while (static_cast<int>(w.size()) < len) {
    Letter l = code_letter(pick(rng));
    if (!w.empty() && w.letters.back() == -l) continue;
    w.letters.push_back(l);
  }
  return w;
}

}  // namespace

TEST_CASE("class counts match the necklace formula") {
  for (int g : {1, 2, 3}) {
    auto counts = class_counts(g, 9);
    for (int n = 1; n <= 9; ++n) CHECK(static_cast<long>(counts[n]) == necklace_count(g, n));
  }
  auto c = class_counts(2, 2);
  CHECK(c[1] == 4);
  CHECK(c[2] == 4);
}

TEST_CASE("enumeration is in shell order and each class is its own canonical form") {
  auto ws = enumerate_classes(2, 7);
  CHECK(std::is_sorted(ws.begin(), ws.end(), shell_less));
  std::set<std::vector<int>> seen;
  for (const Word& w : ws) {
    CHECK(canonicalize(w) == w);
    CHECK(is_primitive(w));
    CHECK(is_cyclically_reduced(w));
    CHECK(seen.insert(w.letters).second);
  }
}

TEST_CASE("canonical form is invariant under rotation") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    Word w = random_reduced(rng, 3, 1 + t % 9);
    if (!is_cyclically_reduced(w)) continue;
    Word c = canonicalize(w);
    Word rot = w;
    std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
    CHECK(canonicalize(rot) == c);
  }
}

TEST_CASE("reduction and inverses") {
  Word w{2, {1, 2, -2, -1, 2}};
  CHECK(free_reduce(w) == Word{2, {2}});
  CHECK(cyclic_reduce(Word{2, {-1, 2, 1}}) == Word{2, {2}});
  CHECK_THROWS_AS(cyclic_reduce(Word{2, {1, -1}}), Error);
  CHECK(inverse(Word{2, {1, -2}}) == Word{2, {2, -1}});
  CHECK_FALSE(is_primitive(Word{2, {1, 2, 1, 2}}));
  CHECK_THROWS_AS(check_letters(Word{2, {3}}), Error);
}

TEST_CASE("letter codes follow 1 < -1 < 2 < -2") {
  CHECK(letter_code(1) == 0);
  CHECK(letter_code(-1) == 1);
  CHECK(letter_code(2) == 2);
  CHECK(letter_code(-2) == 3);
  for (int c = 0; c < 8; ++c) CHECK(letter_code(code_letter(c)) == c);
}
