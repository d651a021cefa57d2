#pragma once

#include "schottky/numeric.hpp"

namespace schottky {

// log of the Glaisher-Kinkelin constant, by Euler-Maclaurin summation of
// sum j log j, at the working precision.
Real log_glaisher();
// zeta'(-1) = 1/12 - log A.
Real zeta_prime_minus_one();

// d_k = 6k^2 - 6k + 1.
long long mumford_d(int k);
// a(g, n) = (2g - 2 + n)(-12 zeta'(-1) + 1/2).
Real deligne_a(int g, int n = 0);
// c_g = (2π)^{2g} exp((g - 1)(24 zeta'(-1) + 1)/6).
Real c_g(int g);
// c_{g;k} = exp((g - 1)(24 zeta'(-1) + 2 d_k - 1)/6).
Real c_gk(int g, int k);

}  // namespace schottky
