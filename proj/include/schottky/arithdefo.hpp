#pragma once

#include <array>
#include <optional>
#include <vector>

#include "schottky/moebius.hpp"
#include "schottky/multiseries.hpp"
#include "schottky/words.hpp"

namespace schottky {

// Fixed points x_{±i} specialized to rationals; only y_1..y_g stay formal.
// x_1 = 0, x_{-1} = ∞ and x_2 = 1 are fixed by the normalization.
struct ArithConfig {
  int g = 0;
  int degree = 10;
  std::vector<std::optional<mpq_class>> x;  // by letter_code; nullopt is ∞

  const std::optional<mpq_class>& at(Letter l) const { return x.at(letter_code(l)); }
};

// free_values lists x_{-2}, x_3, x_{-3}, ..., x_g, x_{-g} (2g - 3 values for g >= 2).
ArithConfig make_arith_config(int g, const std::vector<mpq_class>& free_values, int degree = 10);
// Throws CoincidentFixedPoints unless the x values are pairwise distinct.
void validate(const ArithConfig& cfg);

using SeriesMatrix = std::array<MultiSeries, 4>;  // a, b, c, d

SeriesMatrix mat_mul(const SeriesMatrix& x, const SeriesMatrix& y);

// φ_1 = diag(1, y_1); for i >= 2, S diag(y_i, 1) S^-1 with S = (x_i x_{-i}; 1 1),
// scaled so the determinant is exactly y_i. As a Möbius map φ_i attracts to
// x_{-i}, repels from x_i and has multiplier y_i.
std::vector<SeriesMatrix> phi_generators(const ArithConfig& cfg);
// Generator matrix for a letter; inverse letters use the adjugate.
SeriesMatrix letter_matrix(const std::vector<SeriesMatrix>& gens, Letter l);
SeriesMatrix word_matrix(const Word& w, const ArithConfig& cfg);

// The multiplier root of det q^2 - (tr^2 - 2 det) q + det = 0 vanishing at
// y = 0, by the iteration q <- det (q^2 + 1)/(tr^2 - 2 det) from q = 0.
MultiSeries word_multiplier_series(const Word& w, const ArithConfig& cfg);
// det q^2 - (tr^2 - 2 det) q + det for a candidate q, through the degree cap.
MultiSeries multiplier_equation_residual(const Word& w, const ArithConfig& cfg, const MultiSeries& q);
// True iff every monomial of q is divisible by y_{|σ(1)|} ... y_{|σ(l)|}.
bool divisible_by_word_monomial(const MultiSeries& q, const Word& w);

// Products over primitive classes of length <= cfg.degree, truncated at that degree.
MultiSeries f1_series(const ArithConfig& cfg);
MultiSeries fk_series(const ArithConfig& cfg, int k);

// The Möbius map of φ_i at y_i = y.
MoebiusMap specialize_generator(const ArithConfig& cfg, int i, const mpq_class& y);
// Word evaluated at numeric y values.
MoebiusMap specialize_word(const Word& w, const ArithConfig& cfg, const std::vector<mpq_class>& y);

}  // namespace schottky
