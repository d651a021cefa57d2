#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "schottky/moebius.hpp"

namespace schottky {

// Letters are ±1..±g; -i stands for the inverse of generator i.
using Letter = int;

// Position in the fixed letter order 1 < -1 < 2 < -2 < ...
inline int letter_code(Letter l) { return 2 * ((l < 0 ? -l : l) - 1) + (l < 0); }
inline Letter code_letter(int c) { return (c & 1) ? -(c / 2 + 1) : (c / 2 + 1); }

struct Word {
  int rank = 0;
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  std::string to_string() const;
};

bool operator==(const Word& x, const Word& y);
// Shell order: shorter first, then lexicographic in the letter order.
bool shell_less(const Word& x, const Word& y);

void check_letters(const Word& w);
Word free_reduce(const Word& w);
// Free and cyclic reduction. Throws EmptyWord when a nonempty input is trivial.
Word cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);
bool is_primitive(const Word& w);
// Least rotation of the cyclic reduction: the representative of the class.
Word canonicalize(const Word& w);
Word inverse(const Word& w);

std::vector<Word> enumerate_classes(int rank, int max_len);
// counts[L] = number of primitive classes of length L (counts[0] = 0).
std::vector<std::size_t> class_counts(int rank, int max_len);

MoebiusMap evaluate(const Word& w, const MarkedSchottkyGroup& g);

// Depth-first walk over reduced prefixes that can still extend to a least
// rotation (the Fredricksen-Kessler-Maiorana prenecklace test), emitting every
// primitive cyclically reduced class once, by its least rotation. Within one
// length the emission order is lexicographic. Optionally restricted to words
// starting with one letter code.
//
// extend(const State& parent, int code, State& child) builds the state of a
// one-letter-longer prefix; visit(const int* codes, int len, const State&) is
// called for each class.
template <class State, class Extend, class Visit>
void walk_classes(int rank, int max_len, const State& root, Extend&& extend, Visit&& visit, int first_code = -1) {
  if (max_len < 1 || rank < 1) return;
  const int k = 2 * rank;
  std::vector<int> w(max_len + 1);
  std::vector<int> period(max_len + 1);
  std::vector<int> next(max_len + 1);
  std::vector<State> st(max_len + 1, root);
  // Iterative DFS; positions are 1-based, w[t] is the letter at depth t.
  int t = 1;
  next[1] = first_code >= 0 ? first_code : 0;
  const int last_first = first_code >= 0 ? first_code : k - 1;
  while (t >= 1) {
    int c = next[t];
    int limit = (t == 1) ? last_first : k - 1;
    if (t > 1) {
      int base = w[t - period[t - 1]];
      if (c < base) c = base;
      if (c == (w[t - 1] ^ 1)) ++c;
    }
    if (c > limit) {
      --t;
      continue;
    }
    next[t] = c + 1;
    w[t] = c;
    if (t == 1) {
      period[1] = 1;
    } else {
      period[t] = (c == w[t - period[t - 1]]) ? period[t - 1] : t;
    }
    extend(st[t - 1], c, st[t]);
    if (period[t] == t && (t == 1 || w[1] != (w[t] ^ 1))) visit(&w[1], t, st[t]);
    if (t < max_len) {
      ++t;
      next[t] = 0;
    }
  }
}

}  // namespace schottky
