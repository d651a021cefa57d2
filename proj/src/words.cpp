#include "schottky/words.hpp"

#include <algorithm>

#include "schottky/error.hpp"

namespace schottky {

std::string Word::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(letters[i]);
  }
  return s + "]";
}

bool operator==(const Word& x, const Word& y) { return x.letters == y.letters; }

bool shell_less(const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    int a = letter_code(x.letters[i]), b = letter_code(y.letters[i]);
    if (a != b) return a < b;
  }
  return false;
}

void check_letters(const Word& w) {
  for (Letter l : w.letters)
    if (l == 0 || l > w.rank || l < -w.rank)
      fail(ErrorCode::RankMismatch, "letter " + std::to_string(l) + " outside rank " + std::to_string(w.rank));
}

Word free_reduce(const Word& w) {
  check_letters(w);
  Word out{w.rank, {}};
  for (Letter l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == -l) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.letters.size();
  while (hi - lo >= 2 && r.letters[lo] == -r.letters[hi - 1]) {
    ++lo;
    --hi;
  }
  Word out{w.rank, std::vector<Letter>(r.letters.begin() + lo, r.letters.begin() + hi)};
  if (out.empty() && !w.empty()) fail(ErrorCode::EmptyWord, "word " + w.to_string() + " is trivial");
  return out;
}

bool is_cyclically_reduced(const Word& w) {
  const auto& l = w.letters;
  for (std::size_t i = 1; i < l.size(); ++i)
    if (l[i] == -l[i - 1]) return false;
  return l.size() < 2 || l.front() != -l.back();
}

bool is_primitive(const Word& w) {
  Word r = cyclic_reduce(w);
  const std::size_t n = r.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    if (std::equal(r.letters.begin() + p, r.letters.end(), r.letters.begin())) return false;
  }
  return n > 0;
}

Word canonicalize(const Word& w) {
  Word r = cyclic_reduce(w);
  const std::size_t n = r.size();
  Word best = r;
  std::vector<Letter> rot(n);
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) rot[i] = r.letters[(s + i) % n];
    Word cand{w.rank, rot};
    if (shell_less(cand, best)) best = cand;
  }
  return best;
}

Word inverse(const Word& w) {
  Word out{w.rank, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

std::vector<Word> enumerate_classes(int rank, int max_len) {
  if (rank < 1) fail(ErrorCode::InvalidParameter, "rank must be positive");
  if (max_len < 0) fail(ErrorCode::InvalidParameter, "max_len must be non-negative");
  std::vector<std::vector<Word>> shells(max_len + 1);
  struct Empty {};
  walk_classes(
      rank, max_len, Empty{}, [](const Empty&, int, Empty&) {},
      [&](const int* codes, int len, const Empty&) {
        Word w{rank, {}};
        w.letters.reserve(len);
        for (int i = 0; i < len; ++i) w.letters.push_back(code_letter(codes[i]));
        shells[len].push_back(std::move(w));
      });
  std::vector<Word> out;
  for (auto& s : shells)
    for (auto& w : s) out.push_back(std::move(w));
  return out;
}

std::vector<std::size_t> class_counts(int rank, int max_len) {
  if (rank < 1) fail(ErrorCode::InvalidParameter, "rank must be positive");
  std::vector<std::size_t> counts(std::max(max_len, 0) + 1, 0);
  struct Empty {};
  walk_classes(
      rank, max_len, Empty{}, [](const Empty&, int, Empty&) {},
      [&](const int*, int len, const Empty&) { ++counts[len]; });
  return counts;
}

MoebiusMap evaluate(const Word& w, const MarkedSchottkyGroup& g) {
  if (w.rank != g.rank) fail(ErrorCode::RankMismatch, "word rank differs from group rank");
  check_letters(w);
  MoebiusMap m = MoebiusMap::identity();
  for (Letter l : w.letters) {
    const MoebiusMap& gen = g.generators[(l < 0 ? -l : l) - 1];
    m = compose(m, l > 0 ? gen : gen.inverse());
  }
  return m;
}

}  // namespace schottky
