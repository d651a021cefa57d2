#include "schottky/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "schottky/acceptance.hpp"
#include "schottky/arithdefo.hpp"
#include "schottky/bundled.hpp"
#include "schottky/constants.hpp"
#include "schottky/eichler.hpp"
#include "schottky/error.hpp"
#include "schottky/periods.hpp"
#include "schottky/products.hpp"
#include "schottky/tate.hpp"
#include "schottky/words.hpp"

namespace schottky {

namespace {

using nlohmann::json;

// Subcommand-specific options, filled by CLI11.
struct Extra {
  int rank = 2;
  bool count_only = false;
  std::string what = "f1";
  int k = 2;
  std::string s = "2";
  bool csv = false;
  int seeds = 0;
  std::string z0 = "2";
  int order = 40;
  int g = 2;
  std::vector<std::string> x_values;
  std::string word;
  bool f1 = false;
  int fk = 0;
  std::vector<unsigned long> mod_p;
  std::string suite = "all";
  bool no_determinism = false;
};

json base_doc(const RunConfig& cfg) {
  return {{"schema", kSchema}, {"command", cfg.subcommand}, {"precision_bits", cfg.precision_bits}};
}

json cjson(cdouble z) { return json::array({z.real(), z.imag()}); }

json cmatrix(const std::vector<std::vector<cdouble>>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (cdouble z : row) r.push_back(cjson(z));
    out.push_back(r);
  }
  return out;
}

Complex parse_complex_arg(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return Complex(parse_real(text));
  return Complex(parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1)));
}

Word parse_word(const std::string& text, int rank) {
  Word w{rank, {}};
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int l = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      w.letters.push_back(l);
    } catch (const std::logic_error&) {
      fail(ErrorCode::ParseError, "bad letter '" + tok + "' in word");
    }
  }
  check_letters(w);
  return w;
}

json value_json(const TruncatedValue& v) {
  json warnings = json::array();
  for (const auto& w : v.warnings) warnings.push_back(w);
  return {{"value", complex_to_json(v.value)},
          {"log_value", complex_to_json(v.log_value)},
          {"max_len", v.max_len},
          {"m_max", v.m_max},
          {"log_tail", to_string(v.log_tail, 6)},
          {"tail_estimate", to_string(v.tail_estimate, 6)},
          {"warnings", warnings}};
}

void require_positive(int v, const char* name) {
  if (v <= 0) fail(ErrorCode::InvalidParameter, std::string(name) + " must be positive");
}

unsigned resolve_precision(unsigned given, const GroupSpec* spec) {
  if (given) return given;
  if (const char* env = std::getenv("SCHOTTKY_PRECISION_BITS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (!*env || *end) fail(ErrorCode::InvalidParameter, "SCHOTTKY_PRECISION_BITS must be an integer");
    return static_cast<unsigned>(v);
  }
  if (spec && spec->precision_bits) return *spec->precision_bits;
  return kDefaultPrecisionBits;
}

bool needs_group(const std::string& cmd) {
  return cmd == "products" || cmd == "zeta" || cmd == "periods" || cmd == "eichler";
}

// Returns the document to print, or a CSV table through csv_out.
json dispatch(RunConfig& cfg, const Extra& x, std::string& csv_out) {
  std::optional<GroupSpec> spec;
  if (needs_group(cfg.subcommand)) spec = resolve_group_spec(cfg.group);
  cfg.precision_bits = resolve_precision(cfg.precision_bits, spec ? &*spec : nullptr);
  if (cfg.precision_bits < 64) fail(ErrorCode::InvalidParameter, "precision must be at least 64 bits");
  PrecisionScope scope(cfg.precision_bits);
  json doc = base_doc(cfg);
  const std::string& cmd = cfg.subcommand;

  if (cmd == "classes") {
    int L = cfg.max_len ? cfg.max_len : 6;
    auto counts = class_counts(x.rank, L);
    doc["rank"] = x.rank;
    doc["max_len"] = L;
    doc["counts"] = json(std::vector<std::size_t>(counts.begin() + 1, counts.end()));
    if (!x.count_only) {
      json classes = json::array();
      for (const Word& w : enumerate_classes(x.rank, L)) classes.push_back(w.letters);
      doc["classes"] = classes;
    }
    return doc;
  }

  if (cmd == "products" || cmd == "zeta") {
    MarkedSchottkyGroup g = spec->build();
    int L = cfg.max_len ? cfg.max_len : 10;
    MultiplierSpectrum s = class_spectrum(g, L, cfg.workers);
    int m_max = cfg.m_max ? cfg.m_max : -1;
    std::string what = cmd == "zeta" ? "zeta" : x.what;
    doc["group"] = group_summary(g);
    doc["what"] = what;
    if (what == "ratio") {
      RatioCheck rc = check_ratio_identity(s, x.k, L, m_max);
      doc["k"] = x.k;
      doc["max_len"] = L;
      doc["lhs"] = complex_to_json(rc.lhs);
      doc["rhs"] = complex_to_json(rc.rhs);
      doc["residual"] = to_string(rc.residual, 6);
      doc["tail_bound"] = to_string(rc.tail_bound, 6);
      return doc;
    }
    TruncatedValue v;
    if (what == "f1") {
      v = f1(s, L, m_max);
    } else if (what == "fk") {
      v = fk(s, x.k, L, m_max);
      doc["k"] = x.k;
    } else if (what == "zeta") {
      Complex sarg = parse_complex_arg(x.s);
      v = ruelle_zeta(s, sarg, L);
      doc["s"] = complex_to_json(sarg);
    } else if (what == "modified") {
      v = modified_ruelle(s, x.k, L);
      doc["k"] = x.k;
    } else {
      fail(ErrorCode::InvalidParameter, "unknown --what '" + what + "'");
    }
    if (x.csv || cfg.format == "csv") {
      csv_out = emit_shell_table(v);
      return nullptr;
    }
    doc["result"] = value_json(v);
    return doc;
  }

  if (cmd == "periods") {
    MarkedSchottkyGroup g = spec->build();
    PeriodMatrix pm = period_matrix(g, cfg.max_len ? cfg.max_len : 10, cfg.nodes ? cfg.nodes : 1024);
    doc["max_len"] = pm.max_len;
    doc["tau"] = cmatrix(pm.tau);
    doc["tau_sym"] = cmatrix(pm.tau_sym);
    doc["asymmetry"] = pm.asymmetry;
    doc["im_eigenvalues"] = pm.im_eigenvalues;
    doc["im_positive_definite"] = pm.im_positive_definite;
    doc["normalization_error"] = pm.normalization.max_error;
    return doc;
  }

  if (cmd == "eichler") {
    MarkedSchottkyGroup g = spec->build();
    int dim = (2 * x.k - 1) * (g.rank - 1);
    int count = x.seeds ? x.seeds : dim + 2;
    int L = cfg.max_len ? cfg.max_len : 6;
    NormalizedBasis nb = normalized_basis(g, x.k, default_seeds(g, x.k, count), L, cfg.nodes ? cfg.nodes : 512);
    doc["k"] = x.k;
    doc["max_len"] = L;
    doc["seeds"] = count;
    doc["dim"] = nb.dim;
    doc["gram"] = cmatrix(nb.gram);
    doc["gram_residual"] = nb.gram_residual;
    doc["condition"] = nb.condition;
    doc["singular_values"] = nb.singular_values;
    return doc;
  }

  if (cmd == "tate-check") {
    require_positive(x.order, "--order");
    WeierstrassCheck w = weierstrass_check(parse_rational(x.z0), x.order);
    TateCoefficients tc = tate_coefficients(x.order);
    json a4 = json::array(), a6 = json::array();
    for (int n = 0; n <= x.order; ++n) {
      a4.push_back(tc.a4[n].get_str());
      a6.push_back(tc.a6[n].get_str());
    }
    doc["z0"] = x.z0;
    doc["order"] = x.order;
    doc["exact_zero"] = w.exact_zero;
    doc["first_nonzero"] = w.first_nonzero;
    doc["a4"] = a4;
    doc["a6"] = a6;
    return doc;
  }

  if (cmd == "telescope") {
    require_positive(x.order, "--order");
    TelescopeCheck t = telescoping_check(x.k, x.order);
    doc["k"] = x.k;
    doc["order"] = x.order;
    doc["exact_zero"] = t.exact_zero;
    doc["first_nonzero"] = t.first_nonzero;
    return doc;
  }

  if (cmd == "expand") {
    std::vector<mpq_class> free;
    for (const auto& v : x.x_values) free.push_back(parse_rational(v));
    ArithConfig ac = make_arith_config(x.g, free, cfg.degree);
    MultiSeries series;
    int chosen = (!x.word.empty()) + x.f1 + (x.fk > 0);
    if (chosen != 1) fail(ErrorCode::InvalidParameter, "give exactly one of --word, --f1, --fk");
    if (!x.word.empty()) {
      Word w = parse_word(x.word, x.g);
      series = word_multiplier_series(w, ac);
      doc["word"] = w.letters;
      doc["divisible_by_word_monomial"] = divisible_by_word_monomial(series, w);
    } else if (x.f1) {
      series = f1_series(ac);
      doc["product"] = "f1";
    } else {
      series = fk_series(ac, x.fk);
      doc["product"] = "fk";
      doc["k"] = x.fk;
    }
    doc["g"] = x.g;
    doc["degree"] = cfg.degree;
    doc["terms"] = series.terms().size();
    doc["series"] = series.to_string();
    if (!x.mod_p.empty()) {
      json reports = json::array();
      for (const auto& rep : primitivity_check(series, x.mod_p))
        reports.push_back({{"p", rep.p}, {"p_integral", rep.p_integral}, {"primitive", rep.primitive},
                           {"obstructions", rep.obstructions}});
      doc["mod_p"] = reports;
    }
    return doc;
  }

  if (cmd == "constants") {
    doc["g"] = x.g;
    doc["k"] = x.k;
    doc["d_k"] = mumford_d(x.k);
    doc["zeta_prime_minus_one"] = to_string(zeta_prime_minus_one());
    doc["log_glaisher"] = to_string(log_glaisher());
    doc["deligne_a"] = to_string(deligne_a(x.g));
    doc["c_g"] = to_string(c_g(x.g));
    doc["c_gk"] = to_string(c_gk(x.g, x.k));
    return doc;
  }

  // verify
  std::vector<int> ids;
  if (x.suite != "all") {
    std::stringstream ss(x.suite);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        ids.push_back(std::stoi(tok));
      } catch (const std::logic_error&) {
        fail(ErrorCode::InvalidParameter, "--suite takes 'all' or a comma list of criterion ids");
      }
    }
  }
  AcceptanceOptions opts;
  opts.precision_bits = cfg.precision_bits;
  opts.workers = cfg.workers;
  opts.check_determinism = !x.no_determinism;
  auto results = run_criteria(opts, ids);
  json report = acceptance_report(results, opts);
  report["suite"] = x.suite;
  report["command"] = "verify";
  return report;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Extra x;
  CLI::App app{"Schottky group products, periods, Eichler pairings and generalized Tate curve expansions"};
  app.require_subcommand(1);
  app.add_option("--group", cfg.group, "group JSON path or bundled:NAME");
  app.add_option("--precision", cfg.precision_bits, "working precision in bits (>= 64)");
  app.add_option("--workers", cfg.workers, "worker threads");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  auto* classes = app.add_subcommand("classes", "primitive conjugacy classes in shell order");
  classes->add_option("--rank", x.rank);
  classes->add_option("--max-len", cfg.max_len);
  classes->add_flag("--count-only", x.count_only);

  auto* products = app.add_subcommand("products", "truncated products over primitive classes");
  products->add_option("--what", x.what)->check(CLI::IsMember({"f1", "fk", "zeta", "modified", "ratio"}));
  products->add_option("--k", x.k);
  products->add_option("--max-len", cfg.max_len);
  products->add_option("--m-max", cfg.m_max);
  products->add_option("--s", x.s, "real or re,im");
  products->add_flag("--csv", x.csv, "per-shell table instead of JSON");

  auto* zeta = app.add_subcommand("zeta", "Ruelle zeta function for Re(s) > 1");
  zeta->add_option("--s", x.s, "real or re,im");
  zeta->add_option("--max-len", cfg.max_len);
  zeta->add_flag("--csv", x.csv);

  auto* periods = app.add_subcommand("periods", "normalized differentials and the period matrix");
  periods->add_option("--max-len", cfg.max_len);
  periods->add_option("--nodes", cfg.nodes);

  auto* eichler = app.add_subcommand("eichler", "normalized k-differentials against Eichler cocycles");
  eichler->add_option("--k", x.k);
  eichler->add_option("--max-len", cfg.max_len);
  eichler->add_option("--nodes", cfg.nodes);
  eichler->add_option("--seeds", x.seeds);

  auto* tate = app.add_subcommand("tate-check", "Tate curve coefficients and the Weierstrass identity");
  tate->add_option("--z0", x.z0);
  tate->add_option("--order", x.order);

  auto* tele = app.add_subcommand("telescope", "telescoping product identity");
  tele->add_option("--k", x.k);
  tele->add_option("--order", x.order);

  auto* expand = app.add_subcommand("expand", "exact expansions in y_1..y_g");
  expand->add_option("--g", x.g);
  expand->add_option("--x-values", x.x_values, "x_-2, x_3, x_-3, ...")->delimiter(',');
  expand->add_option("--degree", cfg.degree);
  expand->add_option("--word", x.word, "letters, e.g. 1,-2,2");
  expand->add_flag("--f1", x.f1);
  expand->add_option("--fk", x.fk);
  expand->add_option("--mod-p", x.mod_p)->delimiter(',');

  auto* constants = app.add_subcommand("constants", "ζ'(-1), d_k, c_g and c_{g;k}");
  constants->add_option("--g", x.g);
  constants->add_option("--k", x.k);

  auto* verify = app.add_subcommand("verify", "acceptance suite");
  verify->add_option("--suite", x.suite, "all or a comma list of criterion ids");
  verify->add_flag("--no-determinism", x.no_determinism, "skip the repeated pass of criterion 12");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    require_positive(cfg.workers, "--workers");
    require_positive(cfg.degree, "--degree");
    if (cfg.max_len < 0 || cfg.m_max < 0 || cfg.nodes < 0)
      fail(ErrorCode::InvalidParameter, "numeric parameters must be positive");
    std::string csv;
    json doc = dispatch(cfg, x, csv);
    if (!csv.empty()) {
      out << csv;
    } else {
      out << doc.dump(2) << "\n";
    }
    if (cfg.subcommand == "verify" && doc["passed"] != doc["total"]) return 1;
    return 0;
  } catch (const Error& e) {
    err << "error: " << error_name(e.code()) << ": " << e.what() << "\n";
    json doc = base_doc(cfg);
    doc["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
    out << doc.dump(2) << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace schottky
