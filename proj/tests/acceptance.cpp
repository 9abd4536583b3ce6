// Acceptance runner: twelve exact criteria, one line each, zero tolerance.
// Exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lehn/binomial.hpp"
#include "lehn/catalog.hpp"
#include "lehn/cohomology.hpp"
#include "lehn/dsl.hpp"
#include "lehn/error.hpp"
#include "lehn/runner.hpp"
#include "lehn/series.hpp"

using namespace lehn;

namespace {

struct Ctx {
  int checked = 0;
  int failures = 0;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      ++failures;
      if (details.size() < 4) details.push_back(what);
    }
  }
};

Series poly(Var v, int order, std::initializer_list<long> c) {
  return Series::from_coefficients(v, order, c);
}

std::string fmt(const char* pattern, long a, long b = 0, long c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// ---- criterion bodies ------------------------------------------------------

void criterion_reversion(Ctx& c) {
  c.expect(lehn_w_of_z(3) == poly(Var::z, 3, {0, 1, -9, 94}),
           "w(z) does not start z - 9z^2 + 94z^3");
  Series z = lehn_z_of_w(3);
  c.expect(z == poly(Var::w, 3, {0, 1, 9, 68}),
           "z(w) does not start w + 9w^2 + 68w^3");
}

void criterion_splitting(Ctx& c) {
  auto families = universal_series_w(12);
  for (long H2 = -2; H2 <= 6; ++H2)
    for (long chi = -1; chi <= 3; ++chi)
      for (long HK = -2; HK <= 4; ++HK) {
        if ((H2 - HK) % 2 != 0) continue;
        for (long K2 = -3; K2 <= 2; ++K2) {
          SurfaceInvariants si(H2, chi, HK, K2);
          c.expect(family_product_z(families, si) == lehn_rhs(si, 12),
                   fmt("family product != direct expansion at H2=%ld, "
                       "chi=%ld, HK=%ld",
                       H2, chi, HK) +
                       fmt(", K2=%ld", K2));
        }
      }
}

void criterion_blowup_vanishing(Ctx& c) {
  auto families = universal_series_w(8);
  for (int n = 1; n <= 8; ++n)
    for (long k = n - 1; k <= 3 * n; ++k) {
      Rational got =
          blowup_coefficient_check(n, k, BlowupModel::K3Blowup, families)
              .coefficient;
      c.expect(got == binom_general(k - n + 1, n),
               fmt("coefficient != binom(k-n+1, n) at n=%ld, k=%ld", n, k));
      if (k <= 2 * n - 2)
        c.expect(got.is_zero(), fmt("no vanishing at n=%ld, k=%ld", n, k));
      if (k == 2 * n - 1)
        c.expect(got == Rational(1),
                 fmt("endpoint k=2n-1 at n=%ld is not binom(n, n) = 1", n));
    }
}

void criterion_k3_closed_form(Ctx& c) {
  auto families = universal_series_w(10);
  for (long H2 = 0; H2 <= 20; H2 += 2) {
    SurfaceInvariants si(H2, 2, 0, 0);
    Series f = family_product_z(families, si);
    for (int n = 0; n <= 10; ++n)
      c.expect(f.coefficient(n) ==
                   pow(Rational(2), n) * binom_general(H2 / 2 + 2 - 2 * n, n),
               fmt("K3 closed form off at H2=%ld, n=%ld", H2, n));
  }
}

void criterion_model_blowups(Ctx& c) {
  auto families = universal_series_w(6);
  for (int n = 1; n <= 6; ++n)
    for (long k = 0; k <= 3 * n; ++k) {
      CoefficientCheck e =
          blowup_coefficient_check(n, k, BlowupModel::Enriques2, families);
      c.expect(e.coefficient == binom_general(k - n + 3, n),
               fmt("Enriques blowup off at n=%ld, k=%ld", n, k));
      CoefficientCheck a =
          blowup_coefficient_check(n, k, BlowupModel::Abelian3, families);
      c.expect(a.coefficient == binom_general(k - n + 5, n),
               fmt("abelian blowup off at n=%ld, k=%ld", n, k));
    }
}

void criterion_binomial_sum(Ctx& c) {
  for (long r = -3; r <= 5; ++r)
    for (long d = -5; d <= 10; ++d)
      c.expect(binomial_sum_check(d, r, 12).equal,
               fmt("binomial-sum identity fails at r=%ld, d=%ld", r, d));
  for (int n = 1; n <= 6; ++n)
    for (long k = 0; k <= 3 * n; ++k) {
      bool ok = true;
      std::string detail;
      try {
        Rational v = residue_chain_check(n, k);
        ok = v == binom_general(k - n + 1, n);
        if (!ok) detail = fmt("residue chain value off at n=%ld, k=%ld", n, k);
      } catch (const Error& e) {
        ok = false;
        detail = e.what();
      }
      c.expect(ok, detail);
    }
}

void criterion_p1_geometry(Ctx& c) {
  for (int r = 1; r <= 4; ++r)
    for (long d = -5; d <= 12; ++d)
      for (int n = 1; n <= 8; ++n)
        c.expect(segre_integral_p1(d, r, n) ==
                     pow(Rational(-1), n) *
                         binom_general(d - static_cast<long>(r) * n + r, n),
                 fmt("Segre integral off at d=%ld, r=%ld, n=%ld", d, r, n));

  // Rank 1 reproduces the genus-zero curve expansion.
  for (long d = -5; d <= 12; ++d) {
    Series f = curve_segre_rhs(CurveInvariants(d, 0), 8);
    for (int n = 1; n <= 8; ++n)
      c.expect(f.coefficient(n) == segre_integral_p1(d, 1, n),
               fmt("curve series != rank-1 Segre integral at d=%ld, n=%ld",
                   d, n));
  }
}

void criterion_t_forms(Ctx& c) {
  // Construction cross-verifies the t-forms against the w-forms and throws
  // on any mismatch; comparing against the independently composed
  // z-expansions closes the loop at order 15.
  UniversalT ut = universal_series_t(15);
  auto zfam = universal_series_w(15);
  for (int i = 0; i < 4; ++i) {
    Series from_z = compose(zfam[i].series, ut.z_of_t);
    c.expect(from_z == ut.families[i].series,
             fmt("series %ld: z-expansion does not recompose to the t-form",
                 i + 1));
  }
}

void criterion_conjectures(Ctx& c) {
  Conjecture2Series c2 = conjecture2_series(12);
  Conjecture1Series minus = conjecture1_series(-2, 12);
  Conjecture1Series plus = conjecture1_series(2, 12);

  c.expect(c2.w_of_t == minus.w_of_t, "w mismatch against rank -2");
  Series tau =
      -Series::identity(Var::t, 12) / poly(Var::t, 12, {1, 2});
  c.expect(compose(plus.w_of_t, tau) == c2.w_of_t,
           "w mismatch against rank +2 after t -> -t/(1+2t)");
  c.expect(c2.a2_t * c2.aneg2_t == Series::constant(Var::t, Rational(1), 12),
           "a2 * a_{-2} != 1");
  c.expect(c2.b2_t == c2.bneg2_t, "b2 != b_{-2}");

  Conjecture1Series r1 = conjecture1_series(1, 12);
  c.expect(r1.a1_z == poly(Var::z, 12, {1, 1}), "rank 1: A1 != 1 + z");
  c.expect(r1.a2_z == poly(Var::z, 12, {1}), "rank 1: A2 != 1");
  c.expect(r1.a3_z == poly(Var::z, 12, {1}), "rank 1: A3 != 1");
}

void criterion_verlinde(Ctx& c) {
  for (int r = 1; r <= 4; ++r)
    for (long chi = 0; chi <= 10; ++chi)
      for (int n = 0; n <= 8; ++n)
        c.expect(
            verlinde_k3_coefficient(r, chi, n) ==
                binom_general(
                    chi - (static_cast<long>(r) * r - 1) * (n - 1), n),
            fmt("coefficient off at r=%ld, chi=%ld, n=%ld", r, chi, n));
}

// -- criterion 11: the shipped manifest against direct constructions --------

Rational dsl_coefficient(const dsl::CheckSpec& spec,
                         const dsl::Bindings& b,
                         std::map<std::string, Series>& reversion_cache) {
  Series f = dsl::evaluate(spec.series_expr, b, spec.inner_variable,
                           spec.order);
  int n = static_cast<int>(
      dsl::evaluate_scalar(spec.target_coefficient, b).to_long());
  if (!spec.change_of_variables) return f.coefficient(n);

  std::string key = dsl::print_expr(spec.change_of_variables);
  for (const auto& [name, value] : b)
    key += "|" + name + "=" + std::to_string(value);
  key += "@" + std::to_string(spec.order);
  auto it = reversion_cache.find(key);
  if (it == reversion_cache.end()) {
    Series subst = dsl::evaluate(spec.change_of_variables, b,
                                 spec.inner_variable, spec.order);
    it = reversion_cache.emplace(key, revert(subst, Var::z)).first;
  }
  return compose(f, it->second).coefficient(n);
}

void criterion_dsl_equivalence(Ctx& c) {
  std::vector<dsl::CheckSpec> specs = dsl::parse_manifest(default_manifest());
  c.expect(specs.size() >= 10, "shipped manifest is unexpectedly small");

  std::map<std::string, Series> cache;
  auto fam8 = universal_series_w(8);
  auto fam6 = universal_series_w(6);

  for (const dsl::CheckSpec& spec : specs) {
    // Direct construction of the same quantity, keyed by check name.
    std::function<Rational(const dsl::Bindings&)> direct;
    if (spec.name.rfind("lehn-reversion-z", 0) == 0) {
      direct = [&spec](const dsl::Bindings& b) {
        (void)b;
        int n = static_cast<int>(
            dsl::evaluate_scalar(spec.target_coefficient, {}).to_long());
        return lehn_w_of_z(spec.order).coefficient(n);
      };
    } else if (spec.name == "k3-blowup-coefficient") {
      direct = [&fam8](const dsl::Bindings& b) {
        return blowup_coefficient_check(static_cast<int>(b.at("n")),
                                        b.at("k"), BlowupModel::K3Blowup,
                                        fam8)
            .coefficient;
      };
    } else if (spec.name == "k3-closed-form") {
      direct = [&spec](const dsl::Bindings& b) {
        SurfaceInvariants si(b.at("H2"), 2, 0, 0);
        return lehn_rhs(si, spec.order)
            .coefficient(static_cast<int>(b.at("n")));
      };
    } else if (spec.name == "enriques-blowup-coefficient") {
      direct = [&fam6](const dsl::Bindings& b) {
        return blowup_coefficient_check(static_cast<int>(b.at("n")),
                                        b.at("k"), BlowupModel::Enriques2,
                                        fam6)
            .coefficient;
      };
    } else if (spec.name == "abelian-blowup-coefficient") {
      direct = [&fam6](const dsl::Bindings& b) {
        return blowup_coefficient_check(static_cast<int>(b.at("n")),
                                        b.at("k"), BlowupModel::Abelian3,
                                        fam6)
            .coefficient;
      };
    } else if (spec.name == "curve-secant-coefficient") {
      direct = [&spec](const dsl::Bindings& b) {
        return curve_segre_rhs(CurveInvariants(b.at("d"), 0), spec.order)
            .coefficient(static_cast<int>(b.at("n")));
      };
    } else if (spec.name == "rank-binomial-sum") {
      direct = [&spec](const dsl::Bindings& b) {
        return rank_binomial_series_z(b.at("d"), b.at("r"), spec.order)
            .coefficient(static_cast<int>(b.at("n")));
      };
    } else if (spec.name == "verlinde-k3-coefficient") {
      direct = [&spec](const dsl::Bindings& b) {
        long rho = b.at("rho");
        int n = static_cast<int>(b.at("n"));
        Rational via_sum =
            rank_binomial_series_z(b.at("chi"), rho, spec.order)
                .coefficient(n);
        // Perfect-square rho + 1 also routes through the reversion pipeline.
        for (int r = 1; r <= 4; ++r)
          if (static_cast<long>(r) * r == rho + 1) {
            Rational via_pipeline =
                verlinde_k3_coefficient(r, b.at("chi"), n);
            if (!(via_pipeline == via_sum))
              throw Error("verlinde pipeline disagrees with binomial sum");
          }
        return via_sum;
      };
    } else if (spec.name == "residue-w-form") {
      direct = [](const dsl::Bindings& b) {
        return residue_chain_check(static_cast<int>(b.at("n")), b.at("k"));
      };
    } else if (spec.name == "residue-u-form") {
      direct = [&spec](const dsl::Bindings& b) {
        int n = static_cast<int>(b.at("n"));
        return pow(poly(Var::u, spec.order, {1, 1}), b.at("k") - n + 1)
            .coefficient(n);
      };
    } else if (spec.name == "sqrt-binomial-series") {
      direct = [&spec](const dsl::Bindings& b) {
        return sqrt(poly(Var::t, spec.order, {1, 1}))
            .coefficient(static_cast<int>(b.at("n")));
      };
    } else if (spec.name == "halved-change-of-variables") {
      direct = [&spec](const dsl::Bindings& b) {
        int n = static_cast<int>(b.at("n"));
        return pow(Rational(2), n) *
               rank_binomial_series_z(b.at("d"), 1, spec.order)
                   .coefficient(n);
      };
    } else if (spec.name == "fractional-power-product") {
      direct = [&spec](const dsl::Bindings& b) {
        Series onet = poly(Var::t, spec.order, {1, 1});
        return (pow(onet, Rational(5, 2)) * pow(onet, Rational(-1, 2)))
            .coefficient(static_cast<int>(b.at("n")));
      };
    }

    if (!direct) {
      c.expect(false, "no direct construction mapped for '" + spec.name +
                          "' (unmapped shipped check)");
      continue;
    }

    for (const dsl::Bindings& b : dsl::expand_grid(spec)) {
      Rational via_dsl = dsl_coefficient(spec, b, cache);
      Rational via_catalog = direct(b);
      Rational via_expected = dsl::evaluate_scalar(spec.expected, b);
      bool ok = via_dsl == via_catalog && via_dsl == via_expected;
      if (!ok) {
        std::string detail = spec.name + ": dsl " + via_dsl.str() +
                             ", direct " + via_catalog.str() + ", expected " +
                             via_expected.str() + " at";
        for (const auto& [name, value] : b)
          detail += " " + name + "=" + std::to_string(value);
        c.expect(false, detail);
      } else {
        c.expect(true, "");
      }
    }
  }

  // Printer roundtrip on the shipped manifest.
  std::vector<dsl::CheckSpec> again =
      dsl::parse_manifest(dsl::print_manifest(specs));
  bool same = again.size() == specs.size();
  for (std::size_t i = 0; same && i < specs.size(); ++i)
    same = dsl::check_equal(specs[i], again[i]);
  c.expect(same, "parse-print-parse changed the manifest");

  // Seeded-invalid corpus: twenty manifests, each rejected with a position.
  for (int i = 1; i <= 20; ++i) {
    char name[40];
    std::snprintf(name, sizeof name, "/invalid/inv%02d.lehn", i);
    std::ifstream in(std::string(LEHN_TEST_DATA_DIR) + name,
                     std::ios::binary);
    if (!in.good()) {
      c.expect(false, std::string("missing corpus file") + name);
      continue;
    }
    std::ostringstream os;
    os << in.rdbuf();
    try {
      dsl::parse_manifest(os.str());
      c.expect(false, std::string("accepted invalid manifest") + name);
    } catch (const dsl::ParseError& e) {
      c.expect(e.line() >= 1 && e.col() >= 1,
               std::string("no position for") + name);
    }
  }
}

// -- criterion 12: the harness end to end ------------------------------------

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
  static int counter = 0;
  std::string out = "/tmp/lehn-acceptance-" + std::to_string(::getpid()) +
                    "-" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(LEHN_VERIFY_BIN) + " " + args + " > " + out +
                    " 2> /dev/null";
  int status = std::system(cmd.c_str());
  if (stdout_text) {
    std::ifstream in(out, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    *stdout_text = os.str();
  }
  std::remove(out.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_harness(Ctx& c) {
  c.expect(run_cli("--suite conjectures") == 0, "passing suite must exit 0");
  c.expect(run_cli(std::string("--manifest ") + LEHN_TEST_DATA_DIR +
                   "/failing.lehn --suite failing") == 1,
           "failing manifest must exit 1");
  c.expect(run_cli("--suite no-such-suite") == 2, "unknown suite must exit 2");
  c.expect(run_cli(std::string("--manifest ") + LEHN_TEST_DATA_DIR +
                   "/invalid/inv01.lehn --suite inv01") == 2,
           "manifest parse error must exit 2");
  c.expect(run_cli("--bogus-flag") == 2, "usage error must exit 2");

  std::string first, second;
  int e1 = run_cli("--suite higher-rank --format json", &first);
  int e2 = run_cli("--suite higher-rank --format json", &second);
  c.expect(e1 == 0 && e2 == 0, "machine-format run did not pass");
  c.expect(!first.empty() && first == second,
           "machine-format output is not byte-deterministic");
}

struct Criterion {
  int id;
  std::string title;
  std::function<void(Ctx&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "reversion of the change of variables: w = z - 9z^2 + 94z^3 - ...",
       criterion_reversion},
      {2, "universal splitting over the full surface-invariant grid, order 12",
       criterion_splitting},
      {3,
       "blowup coefficients equal binom(k-n+1, n) for n <= 8; zero exactly "
       "on n-1 <= k <= 2n-2, value 1 at k = 2n-1",
       criterion_blowup_vanishing},
      {4, "K3 closed form [z^n] = 2^n binom(H2/2 + 2 - 2n, n)",
       criterion_k3_closed_form},
      {5, "Enriques and abelian blowup coefficient formulas",
       criterion_model_blowups},
      {6, "binomial-sum identity and the three-route residue chain",
       criterion_binomial_sum},
      {7, "P^1 Segre integrals match signed binomials; rank 1 matches the "
          "curve series",
       criterion_p1_geometry},
      {8, "t-form and w-form universal series agree through order 15",
       criterion_t_forms},
      {9, "rank +-2 series symmetry and the rank-1 specialization",
       criterion_conjectures},
      {10, "Verlinde-style K3 coefficients over the full grid",
       criterion_verlinde},
      {11, "shipped manifest equals direct constructions; printer roundtrip; "
           "invalid corpus rejected",
       criterion_dsl_equivalence},
      {12, "harness exit codes and byte-deterministic machine reports",
       criterion_harness},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    Ctx ctx;
    std::string error;
    try {
      cr.body(ctx);
    } catch (const Error& e) {
      error = e.what();
    } catch (const std::exception& e) {
      error = e.what();
    }

    bool ok = error.empty() && ctx.failures == 0;
    std::printf("criterion %2d  %s  %s", cr.id, ok ? "PASS" : "FAIL",
                cr.title.c_str());
    if (ok) {
      std::printf("  (%d checks)\n", ctx.checked);
    } else {
      std::printf("\n");
      if (!error.empty()) std::printf("    error: %s\n", error.c_str());
      for (const std::string& d : ctx.details)
        std::printf("    %s\n", d.c_str());
      if (ctx.failures > static_cast<int>(ctx.details.size()))
        std::printf("    ... %d failing checks in total\n", ctx.failures);
      ++failed;
    }
  }

  if (failed == 0)
    std::printf("acceptance: all 12 criteria passed\n");
  else
    std::printf("acceptance: %d of 12 criteria FAILED\n", failed);
  return failed == 0 ? 0 : 1;
}
