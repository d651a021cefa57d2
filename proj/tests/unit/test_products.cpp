#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "schottky/error.hpp"
#include "schottky/products.hpp"
#include "schottky/words.hpp"

using namespace schottky;

namespace {

// prod_{m >= start} (1 - q^m)^2 for real 0 < q < 1, enough terms for 128 bits.
Real rank_one_product(const Real& q, int start) {
  Real p = 1, qm = 1;
  for (int m = 1; m < start; ++m) qm *= q;
  for (int m = start; m < start + 200; ++m) {
    qm *= q;
    p *= (1 - qm) * (1 - qm);
  }
  return p;
}

}  // namespace

TEST_CASE("rank one products are squared Euler products") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("R1");
  MultiplierSpectrum s = class_spectrum(g, 8);
  Real q("0.1");
  CHECK(test::d(abs(f1(s, 8).value - Complex(rank_one_product(q, 1)))) < 1e-35);
  // Rank one: F_k = (1-q)^2...(1-q^{k-1})^2 prod_{m>=k}(1-q^m)^2 = F_1.
  CHECK(test::d(abs(fk(s, 3, 8).value - Complex(rank_one_product(q, 1)))) < 1e-35);
  Real z = 1 / ((1 - q * q) * (1 - q * q));
  CHECK(test::d(abs(ruelle_zeta(s, Complex(2), 8).value - Complex(z))) < 1e-35);
}

TEST_CASE("ratio identity holds on real groups") {
  PrecisionScope p(128);
  for (const char* name : {"A1", "A2"}) {
    MultiplierSpectrum s = class_spectrum(test::group(name), 10);
    for (int k : {2, 3, 4}) {
      RatioCheck r = check_ratio_identity(s, k, 10);
      CHECK(test::d(r.residual) < 1e-9);
    }
  }
}

TEST_CASE("ratio identity rejects complex groups") {
  PrecisionScope p(128);
  MultiplierSpectrum s = class_spectrum(test::group("B"), 4);
  try {
    check_ratio_identity(s, 2, 4);
    FAIL("expected NotRealGroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRealGroup);
  }
}

TEST_CASE("spectrum multipliers agree with word evaluation") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  MultiplierSpectrum s = class_spectrum(g, 5);
  auto ws = enumerate_classes(2, 5);
  REQUIRE(ws.size() == s.q.size());
  for (std::size_t i = 0; i < ws.size(); i += 7) CHECK(test::d(abs(s.q[i] - multiplier(evaluate(ws[i], g)))) < 1e-30);
}

TEST_CASE("parallel spectra are bitwise identical") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("B");
  MultiplierSpectrum a = class_spectrum(g, 8, 1), b = class_spectrum(g, 8, 3);
  REQUIRE(a.q.size() == b.q.size());
  bool same = true;
  for (std::size_t i = 0; i < a.q.size(); ++i) same = same && a.q[i] == b.q[i];
  CHECK(same);
  CHECK(f1(a, 8).value == f1(b, 8).value);
}

TEST_CASE("degeneration approaches the rank one product") {
  PrecisionScope p(128);
  MarkedSchottkyGroup g = test::group("A1");
  Real t("1e-3");
  MarkedSchottkyGroup gt = degenerate_family(g, 0, Complex(t));
  CHECK(test::d(abs(multiplier(gt.generators[1]) - Complex(t))) < 1e-30);
  Complex base = f1(class_spectrum(make_group({g.generators[0]}), 8), 8).value;
  Complex v = f1(class_spectrum(gt, 8), 8).value;
  CHECK(test::d(abs(v - base)) < 1e-2);
}

TEST_CASE("shell table") {
  PrecisionScope p(128);
  MultiplierSpectrum s = class_spectrum(test::group("R1"), 6);
  CHECK(emit_shell_table(f1(s, 0)) == "length,log_re,log_im,cumulative_re,cumulative_im\n");

  TruncatedValue v = f1(s, 6);
  std::istringstream in(emit_shell_table(v));
  std::string line;
  std::getline(in, line);
  int rows = 0;
  Real prev = -1, last_cum = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 5);
    Real mag = abs(parse_real(cols[1]));
    // Rank one: only length 1 carries classes; later shells are empty.
    if (rows == 1) CHECK(mag > 0);
    if (prev > 0) CHECK(mag < prev);
    if (mag > 0) prev = mag;
    last_cum = parse_real(cols[3]);
  }
  CHECK(rows == 6);
  CHECK(test::d(abs(last_cum - v.log_value.re)) <= test::d(pow2(-120)));
}

TEST_CASE("shell table rows decay on a rank two group") {
  PrecisionScope p(128);
  TruncatedValue v = f1(class_spectrum(test::group("A1"), 10), 10);
  for (int L = 2; L <= 10; ++L) CHECK(abs(v.shells[L]) < abs(v.shells[L - 1]));
}
