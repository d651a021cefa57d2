#include "schottky/arithdefo.hpp"

#include "schottky/error.hpp"

namespace schottky {

namespace {

struct Prefix {
  SeriesMatrix m;
  int depth = 0;
};

SeriesMatrix identity_matrix(int g, int cap) {
  return {MultiSeries::constant(g, cap, 1), MultiSeries(g, cap), MultiSeries(g, cap), MultiSeries::constant(g, cap, 1)};
}

MultiSeries word_monomial(const Word& w, int cap) {
  std::vector<int> e(w.rank, 0);
  for (Letter l : w.letters) ++e[(l < 0 ? -l : l) - 1];
  return MultiSeries::monomial(w.rank, cap, e, 1);
}

// q = M u where M = det(w) is the monomial y_{|σ(1)|}...y_{|σ(l)|}: u solves
// u = (1 + M^2 u^2)/(tr^2 - 2M), needed only through degree D - l.
MultiSeries factored_multiplier(const SeriesMatrix& m, int len, int rank, int cap, const MultiSeries& M) {
  const int ucap = cap - len;
  MultiSeries tr = (m[0] + m[3]).truncated(ucap);
  MultiSeries t = tr * tr - M.truncated(ucap) * mpq_class(2);
  MultiSeries tinv = t.inverse();
  MultiSeries m2 = (M * M).truncated(ucap);
  MultiSeries one = MultiSeries::constant(rank, ucap, 1);
  MultiSeries u = tinv;
  if (2 * len <= ucap) {
    for (int it = 0; it <= ucap; ++it) {
      MultiSeries next = (one + m2 * u * u) * tinv;
      if (next == u) break;
      u = std::move(next);
    }
  }
  MultiSeries q(rank, cap);
  for (const auto& [k, c] : u.terms()) q.add_term(k, c);
  return q * M;
}

MultiSeries class_product(const ArithConfig& cfg, int first) {
  validate(cfg);
  const int D = cfg.degree;
  const int g = cfg.g;
  std::vector<SeriesMatrix> gens = phi_generators(cfg);
  std::vector<SeriesMatrix> letters(2 * g);
  for (int c = 0; c < 2 * g; ++c) letters[c] = letter_matrix(gens, code_letter(c));
  MultiSeries prod = MultiSeries::constant(g, D, 1);
  Prefix root{identity_matrix(g, D), 0};
  walk_classes(
      g, D, root,
      [&](const Prefix& parent, int c, Prefix& child) {
        child.depth = parent.depth + 1;
        child.m = mat_mul(parent.m, letters[c]);
        for (auto& e : child.m) e = e.truncated(D - child.depth);
      },
      [&](const int* codes, int len, const Prefix& p) {
        Word w{g, {}};
        for (int j = 0; j < len; ++j) w.letters.push_back(code_letter(codes[j]));
        MultiSeries M = word_monomial(w, D);
        MultiSeries q = factored_multiplier(p.m, len, g, D, M);
        MultiSeries one = MultiSeries::constant(g, D, 1);
        MultiSeries qn = q.pow(first);
        for (int n = first; n * len <= D; ++n) {
          prod = prod * (one - qn);
          qn = qn * q;
        }
      });
  return prod;
}

}  // namespace

ArithConfig make_arith_config(int g, const std::vector<mpq_class>& free_values, int degree) {
  if (g < 1) fail(ErrorCode::InvalidParameter, "g must be at least 1");
  if (g > MultiSeries::kMaxVars) fail(ErrorCode::InvalidParameter, "g is limited to 7");
  if (degree < 0 || degree > MultiSeries::kMaxCap) fail(ErrorCode::InvalidParameter, "degree out of range");
  const std::size_t expected = g >= 2 ? 2 * g - 3 : 0;
  if (free_values.size() != expected)
    fail(ErrorCode::InvalidParameter, "expected " + std::to_string(expected) + " x-values for g = " + std::to_string(g));
  ArithConfig cfg;
  cfg.g = g;
  cfg.degree = degree;
  cfg.x.assign(2 * g, std::nullopt);
  cfg.x[letter_code(1)] = mpq_class(0);
  if (g >= 2) {
    cfg.x[letter_code(2)] = mpq_class(1);
    cfg.x[letter_code(-2)] = free_values[0];
    for (int i = 3; i <= g; ++i) {
      cfg.x[letter_code(i)] = free_values[2 * i - 5];
      cfg.x[letter_code(-i)] = free_values[2 * i - 4];
    }
  }
  validate(cfg);
  return cfg;
}

void validate(const ArithConfig& cfg) {
  if (static_cast<int>(cfg.x.size()) != 2 * cfg.g) fail(ErrorCode::InvalidParameter, "x table has the wrong size");
  for (std::size_t a = 0; a < cfg.x.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.x.size(); ++b) {
      const auto& u = cfg.x[a];
      const auto& v = cfg.x[b];
      if ((!u && !v) || (u && v && *u == *v))
        fail(ErrorCode::CoincidentFixedPoints, "x values must be pairwise distinct");
    }
  if (cfg.x[letter_code(-1)]) fail(ErrorCode::InvalidParameter, "x_{-1} must be infinity");
}

SeriesMatrix mat_mul(const SeriesMatrix& x, const SeriesMatrix& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

std::vector<SeriesMatrix> phi_generators(const ArithConfig& cfg) {
  validate(cfg);
  const int g = cfg.g, D = cfg.degree;
  std::vector<SeriesMatrix> out;
  out.reserve(g);
  auto cst = [&](const mpq_class& c) { return MultiSeries::constant(g, D, c); };
  out.push_back({cst(1), MultiSeries(g, D), MultiSeries(g, D), MultiSeries::variable(g, D, 0)});
  for (int i = 2; i <= g; ++i) {
    const mpq_class& xp = *cfg.at(i);
    const mpq_class& xm = *cfg.at(-i);
    MultiSeries y = MultiSeries::variable(g, D, i - 1);
    mpq_class s = 1 / (xp - xm);
    // (x_i y - x_{-i}, x_i x_{-i}(1 - y); y - 1, x_i - x_{-i} y) / (x_i - x_{-i})
    out.push_back({(y * xp - cst(xm)) * s, (cst(1) - y) * mpq_class(xp * xm * s), (y - cst(1)) * s,
                   (cst(xp) - y * xm) * s});
  }
  return out;
}

SeriesMatrix letter_matrix(const std::vector<SeriesMatrix>& gens, Letter l) {
  const SeriesMatrix& m = gens.at((l < 0 ? -l : l) - 1);
  if (l > 0) return m;
  return {m[3], -m[1], -m[2], m[0]};
}

SeriesMatrix word_matrix(const Word& w, const ArithConfig& cfg) {
  if (w.rank != cfg.g) fail(ErrorCode::RankMismatch, "word rank differs from g");
  check_letters(w);
  std::vector<SeriesMatrix> gens = phi_generators(cfg);
  SeriesMatrix m = identity_matrix(cfg.g, cfg.degree);
  for (Letter l : w.letters) m = mat_mul(m, letter_matrix(gens, l));
  return m;
}

MultiSeries word_multiplier_series(const Word& w, const ArithConfig& cfg) {
  if (w.empty()) fail(ErrorCode::EmptyWord, "the identity has no multiplier");
  if (!is_cyclically_reduced(w)) fail(ErrorCode::InvalidParameter, "word must be cyclically reduced");
  SeriesMatrix m = word_matrix(w, cfg);
  const int g = cfg.g, D = cfg.degree;
  MultiSeries det = m[0] * m[3] - m[1] * m[2];
  MultiSeries tr = m[0] + m[3];
  MultiSeries t = tr * tr - det * mpq_class(2);
  MultiSeries tinv = t.inverse();
  MultiSeries one = MultiSeries::constant(g, D, 1);
  MultiSeries q(g, D);
  for (int it = 0; it <= D + 1; ++it) {
    MultiSeries next = det * (q * q + one) * tinv;
    if (next == q) break;
    q = std::move(next);
  }
  return q;
}

MultiSeries multiplier_equation_residual(const Word& w, const ArithConfig& cfg, const MultiSeries& q) {
  SeriesMatrix m = word_matrix(w, cfg);
  MultiSeries det = m[0] * m[3] - m[1] * m[2];
  MultiSeries tr = m[0] + m[3];
  return det * q * q - (tr * tr - det * mpq_class(2)) * q + det;
}

bool divisible_by_word_monomial(const MultiSeries& q, const Word& w) {
  std::vector<int> need(q.nvars(), 0);
  for (Letter l : w.letters) ++need.at((l < 0 ? -l : l) - 1);
  for (const auto& [k, c] : q.terms()) {
    auto e = MultiSeries::exponents(k, q.nvars());
    for (int i = 0; i < q.nvars(); ++i)
      if (e[i] < need[i]) return false;
  }
  return true;
}

MultiSeries f1_series(const ArithConfig& cfg) { return class_product(cfg, 1); }

MultiSeries fk_series(const ArithConfig& cfg, int k) {
  if (k < 1) fail(ErrorCode::InvalidParameter, "k must be at least 1");
  MultiSeries prod = class_product(cfg, k);
  const int g = cfg.g, D = cfg.degree;
  MultiSeries one = MultiSeries::constant(g, D, 1);
  MultiSeries y1 = MultiSeries::variable(g, D, 0);
  for (int j = 1; j < k; ++j) {
    MultiSeries f = one - y1.pow(j);
    prod = prod * f * f;
  }
  if (g >= 2 && k >= 2) prod = prod * (one - MultiSeries::variable(g, D, 1).pow(k - 1));
  return prod;
}

MoebiusMap specialize_generator(const ArithConfig& cfg, int i, const mpq_class& y) {
  if (i < 1 || i > cfg.g) fail(ErrorCode::InvalidParameter, "generator index out of range");
  std::vector<SeriesMatrix> gens = phi_generators(cfg);
  std::vector<mpq_class> point(cfg.g, 0);
  point[i - 1] = y;
  MoebiusMap m;
  Complex* slot[4] = {&m.a, &m.b, &m.c, &m.d};
  for (int e = 0; e < 4; ++e) *slot[e] = Complex(to_real(evaluate(gens[i - 1][e], point)));
  return m;
}

MoebiusMap specialize_word(const Word& w, const ArithConfig& cfg, const std::vector<mpq_class>& y) {
  if (static_cast<int>(y.size()) != cfg.g) fail(ErrorCode::InvalidParameter, "one y value per generator");
  check_letters(w);
  ExactMoebiusMap acc;
  std::vector<SeriesMatrix> gens = phi_generators(cfg);
  for (Letter l : w.letters) {
    SeriesMatrix m = letter_matrix(gens, l);
    ExactMoebiusMap e;
    GaussianRational* slot[4] = {&e.a, &e.b, &e.c, &e.d};
    for (int j = 0; j < 4; ++j) *slot[j] = GaussianRational(evaluate(m[j], y));
    acc = compose(acc, e);
  }
  return acc.to_floating();
}

}  // namespace schottky
