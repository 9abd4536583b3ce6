#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "lehn/binomial.hpp"
#include "lehn/catalog.hpp"
#include "lehn/cohomology.hpp"
#include "lehn/dsl.hpp"
#include "lehn/runner.hpp"
#include "lehn/version.hpp"

namespace lehn {

std::string status_label(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::ErrorStatus: return "error";
  }
  return "error";
}

const std::vector<std::string>& builtin_suite_names() {
  static const std::vector<std::string> names = {
      "lehn", "curve", "higher-rank", "conjectures", "verlinde", "chern"};
  return names;
}

const std::string& default_manifest() {
  static const std::string text =
#include "default_manifest.inc"
      ;  // NOLINT
  return text;
}

namespace {

using Params = std::map<std::string, long>;

struct Ctx {
  int order;                         // run order for series comparisons
  std::optional<int> order_override; // raw flag value, for manifest checks
  const Params& filter;
  std::vector<CheckResult>& out;
};

bool filter_keeps(const Params& filter, const Params& params) {
  for (const auto& [key, value] : filter) {
    auto it = params.find(key);
    if (it == params.end() || it->second != value) return false;
  }
  return true;
}

// A check that compares two whole series. On pass the values stay empty; on
// fail they hold both sides at the first mismatching order.
void add_identity(Ctx& c, const std::string& name, Params params,
                  const std::function<IdentityReport()>& run) {
  if (!filter_keeps(c.filter, params)) return;
  CheckResult r;
  r.check = name;
  r.params = std::move(params);
  try {
    IdentityReport rep = run();
    if (rep.equal) {
      r.status = Status::Pass;
      r.message = "identity through order " + std::to_string(rep.compared_order);
    } else {
      r.status = Status::Fail;
      r.first_mismatch_order = rep.first_mismatch;
      r.computed = rep.lhs_value;
      r.expected = rep.rhs_value;
      r.message = "series differ";
    }
  } catch (const Error& e) {
    r.status = Status::ErrorStatus;
    r.message = e.what();
  }
  c.out.push_back(std::move(r));
}

// A check that compares one exact rational against a prediction.  The target
// order is recorded on failure.
void add_value(Ctx& c, const std::string& name, Params params,
               const std::function<Rational()>& compute,
               const std::function<Rational()>& predict,
               std::optional<int> target_order = std::nullopt) {
  if (!filter_keeps(c.filter, params)) return;
  CheckResult r;
  r.check = name;
  r.params = std::move(params);
  try {
    Rational computed = compute();
    Rational expected = predict();
    r.computed = computed;
    r.expected = expected;
    if (computed == expected) {
      r.status = Status::Pass;
    } else {
      r.status = Status::Fail;
      r.first_mismatch_order = target_order;
      r.message = "value mismatch";
    }
  } catch (const Error& e) {
    r.status = Status::ErrorStatus;
    r.message = e.what();
  }
  c.out.push_back(std::move(r));
}

void add_error(Ctx& c, const std::string& name, const std::string& message) {
  CheckResult r;
  r.check = name;
  r.status = Status::ErrorStatus;
  r.message = message;
  c.out.push_back(std::move(r));
}

// ---- built-in suites -------------------------------------------------------

void run_lehn_suite(Ctx& c) {
  const int N = std::max(c.order, 1);

  add_identity(c, "lehn/reversion", {}, [] {
    return compare_series(
        lehn_w_of_z(3),
        Series::from_coefficients(Var::z, 3, {0, 1, -9, 94}));
  });
  add_identity(c, "lehn/reversion-roundtrip-zw", {}, [N] {
    return compare_series(compose(lehn_z_of_w(N), lehn_w_of_z(N)),
                          Series::identity(Var::z, N));
  });
  add_identity(c, "lehn/reversion-roundtrip-wz", {}, [N] {
    return compare_series(compose(lehn_w_of_z(N), lehn_z_of_w(N)),
                          Series::identity(Var::w, N));
  });

  const int NF = std::max(N, 10);
  std::array<SeriesFamily, 4> families = universal_series_w(NF);

  for (long H2 = -2; H2 <= 6; ++H2)
    for (long chi = -1; chi <= 3; ++chi)
      for (long HK = -2; HK <= 4; ++HK)
        for (long K2 = -3; K2 <= 2; ++K2) {
          if ((H2 - HK) % 2 != 0) continue;
          Params p{{"H2", H2}, {"HK", HK}, {"K2", K2}, {"chi", chi}};
          add_identity(c, "lehn/splitting", std::move(p),
                       [&families, H2, chi, HK, K2, N] {
                         SurfaceInvariants si(H2, chi, HK, K2);
                         return compare_series(
                             family_product_z(families, si).truncated(N),
                             lehn_rhs(si, N));
                       });
        }

  for (long H2 = 0; H2 <= 20; H2 += 2)
    for (int n = 0; n <= 10; ++n) {
      Params p{{"H2", H2}, {"n", n}};
      add_value(
          c, "lehn/k3-closed-form", std::move(p),
          [&families, H2, n] {
            SurfaceInvariants k3(H2, 2, 0, 0);
            return family_product_z(families, k3).coefficient(n);
          },
          [H2, n] {
            return pow(Rational(2), n) *
                   binom_general(H2 / 2 + 2 - 2 * n, n);
          },
          n);
    }

  struct BlowupSuite {
    const char* name;
    BlowupModel model;
    int max_n;
    bool k_from_vanishing_edge;
  };
  const BlowupSuite blowups[] = {
      {"lehn/blowup-k3", BlowupModel::K3Blowup, 8, true},
      {"lehn/blowup-enriques", BlowupModel::Enriques2, 6, false},
      {"lehn/blowup-abelian", BlowupModel::Abelian3, 6, false},
  };
  for (const BlowupSuite& bs : blowups) {
    const long offset = blowup_model_data(bs.model).binom_offset;
    for (int n = 1; n <= bs.max_n; ++n) {
      long k_lo = bs.k_from_vanishing_edge ? n - 1 : 0;
      for (long k = k_lo; k <= 3 * n; ++k) {
        Params p{{"k", k}, {"n", n}};
        add_value(
            c, bs.name, std::move(p),
            [&families, n, k, &bs] {
              return blowup_coefficient_check(n, k, bs.model, families)
                  .coefficient;
            },
            [n, k, offset] { return binom_general(k - n + 1 + offset, n); },
            n);
      }
    }
  }

  for (int n = 1; n <= 6; ++n)
    for (long k = 0; k <= 3 * n; ++k) {
      Params p{{"k", k}, {"n", n}};
      add_value(
          c, "lehn/residue-chain", std::move(p),
          [n, k] { return residue_chain_check(n, k); },
          [n, k] { return binom_general(k - n + 1, n); }, n);
    }

  try {
    UniversalT ut = universal_series_t(N);
    Series t_of_z = revert(ut.z_of_t, Var::z);
    for (int i = 0; i < 4; ++i) {
      const SeriesFamily& fam = ut.families[i];
      add_identity(c, "lehn/t-form-" + family_label(fam.name), {},
                   [&fam, &t_of_z, &families] {
                     return compare_series(compose(fam.series, t_of_z),
                                           families[static_cast<std::size_t>(
                                               static_cast<int>(fam.name))]
                                               .series);
                   });
    }
  } catch (const Error& e) {
    add_error(c, "lehn/t-form", e.what());
  }
}

void run_curve_suite(Ctx& c) {
  const int N = std::max(c.order, 1);
  for (long d = -5; d <= 10; ++d)
    for (int n = 0; n <= 12; ++n) {
      Params p{{"d", d}, {"n", n}};
      add_value(
          c, "curve/secant-coefficient", std::move(p),
          [d, n] {
            return curve_segre_rhs(CurveInvariants(d, 0), n).coefficient(n);
          },
          [d, n] {
            return pow(Rational(-1), n) * binom_general(d - n + 1, n);
          },
          n);
    }
  for (long d = -5; d <= 10; ++d)
    for (long g = 0; g <= 5; ++g) {
      Params p{{"d", d}, {"g", g}};
      add_identity(c, "curve/genus-factorization", std::move(p), [d, g, N] {
        Series base = curve_segre_rhs(CurveInvariants(d, 0), N);
        Series unit = curve_segre_rhs(CurveInvariants(0, 0), N);
        return compare_series(curve_segre_rhs(CurveInvariants(d, g), N),
                              base * pow(unit, -g));
      });
    }
  for (long d = -5; d <= 10; ++d) {
    Params p{{"d", d}};
    add_identity(c, "curve/rank1-agreement", std::move(p), [d, N] {
      return compare_series(curve_segre_rhs(CurveInvariants(d, 0), N),
                            alternate_signs(rank_binomial_series_z(d, 1, N)));
    });
  }
}

void run_higher_rank_suite(Ctx& c) {
  const int N = std::max(c.order, 1);
  for (long r = -3; r <= 5; ++r)
    for (long d = -5; d <= 10; ++d) {
      Params p{{"d", d}, {"r", r}};
      add_identity(c, "higher-rank/binomial-sum", std::move(p),
                   [d, r, N] { return binomial_sum_check(d, r, N); });
    }
  for (int r = 1; r <= 4; ++r)
    for (long d = -5; d <= 12; ++d) {
      Params p{{"d", d}, {"r", r}};
      if (!filter_keeps(c.filter, p)) continue;
      CheckResult result;
      result.check = "higher-rank/curve-formula";
      result.params = std::move(p);
      try {
        HigherRankReport rep = higher_rank_curve_check(r, d, N);
        if (rep.all_ok()) {
          result.status = Status::Pass;
          result.message = "all layers agree through order " +
                           std::to_string(rep.order);
        } else {
          result.status = Status::Fail;
          std::string failed;
          auto note = [&failed](const char* layer) {
            if (!failed.empty()) failed += ", ";
            failed += layer;
          };
          if (!rep.binomial_sum.equal) note("binomial-sum");
          if (!rep.sign_transport.equal) note("sign-transport");
          if (!rep.alternating_sum.equal) note("closed-form");
          if (!rep.segre_matches) note("cohomology");
          result.message = "layer mismatch: " + failed;
          if (!rep.alternating_sum.equal) {
            result.first_mismatch_order = rep.alternating_sum.first_mismatch;
            result.computed = rep.alternating_sum.lhs_value;
            result.expected = rep.alternating_sum.rhs_value;
          } else if (!rep.segre_matches) {
            result.first_mismatch_order = rep.segre_first_mismatch;
          }
        }
      } catch (const Error& e) {
        result.status = Status::ErrorStatus;
        result.message = e.what();
      }
      c.out.push_back(std::move(result));
    }
}

void run_conjectures_suite(Ctx& c) {
  const int N = std::max(c.order, 1);
  add_identity(c, "conjectures/c1-rank1-a1", {}, [N] {
    Conjecture1Series c1 = conjecture1_series(1, N);
    return compare_series(c1.a1_z, Series::constant(Var::z, Rational(1), N) +
                                       Series::identity(Var::z, N));
  });
  add_identity(c, "conjectures/c1-rank1-a2", {}, [N] {
    Conjecture1Series c1 = conjecture1_series(1, N);
    return compare_series(c1.a2_z, Series::constant(Var::z, Rational(1), N));
  });
  add_identity(c, "conjectures/c1-rank1-a3", {}, [N] {
    Conjecture1Series c1 = conjecture1_series(1, N);
    return compare_series(c1.a3_z, Series::constant(Var::z, Rational(1), N));
  });
  add_identity(c, "conjectures/c2-a-product", {}, [N] {
    Conjecture2Series c2 = conjecture2_series(N);
    return compare_series(c2.a2_t * c2.aneg2_t,
                          Series::constant(Var::t, Rational(1), N));
  });
  add_identity(c, "conjectures/c2-b-equal", {}, [N] {
    Conjecture2Series c2 = conjecture2_series(N);
    return compare_series(c2.b2_t, c2.bneg2_t);
  });
  add_identity(c, "conjectures/c2-w-rank-neg2", {}, [N] {
    return compare_series(conjecture2_series(N).w_of_t,
                          conjecture1_series(-2, N).w_of_t);
  });
  add_identity(c, "conjectures/c2-w-rank-pos2", {}, [N] {
    Series t = Series::identity(Var::t, N);
    Series tau = (-t) / (Series::constant(Var::t, Rational(1), N) +
                         t.scaled(Rational(2)));
    return compare_series(conjecture2_series(N).w_of_t,
                          compose(conjecture1_series(2, N).w_of_t, tau));
  });
  if (filter_keeps(c.filter, {})) {
    CheckResult probe;
    probe.check = "conjectures/c1-probe";
    probe.status = Status::Pass;  // informational: reports, never gates
    try {
      ProbeReport rep = conjecture1_lehn_probe(N);
      std::string summary = "informational";
      for (const ProbeComparison& cmp : rep.comparisons) {
        summary += "; " + cmp.label + ": ";
        if (cmp.agrees) {
          summary += "agrees through order " +
                     std::to_string(cmp.compared_order);
        } else {
          summary += "differs at order " +
                     std::to_string(cmp.first_mismatch.value_or(-1));
        }
      }
      probe.message = summary;
    } catch (const Error& e) {
      probe.status = Status::ErrorStatus;
      probe.message = e.what();
    }
    c.out.push_back(std::move(probe));
  }
}

void run_verlinde_suite(Ctx& c) {
  for (int r = 1; r <= 4; ++r)
    for (long chi = 0; chi <= 10; ++chi)
      for (int n = 0; n <= 8; ++n) {
        Params p{{"chi", chi}, {"n", n}, {"r", r}};
        add_value(
            c, "verlinde/k3-coefficient", std::move(p),
            [r, chi, n] { return verlinde_k3_coefficient(r, chi, n); },
            [r, chi, n] {
              return binom_general(
                  chi - static_cast<long>(r) * r * (n - 1) + (n - 1), n);
            },
            n);
      }
}

void run_chern_suite(Ctx& c) {
  for (int r = 1; r <= 4; ++r)
    for (long d = -5; d <= 12; ++d)
      for (int n = 1; n <= 8; ++n) {
        Params p{{"d", d}, {"n", n}, {"r", r}};
        add_value(
            c, "chern/segre-binomial", std::move(p),
            [d, r, n] { return segre_integral_p1(d, r, n); },
            [d, r, n] {
              return pow(Rational(-1), n) *
                     binom_general(d - static_cast<long>(r) * n + r, n);
            },
            n);
      }
}

// ---- manifest suites -------------------------------------------------------

void collect_parameter_names(const dsl::ExprPtr& e,
                             std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == dsl::ExprKind::Parameter) out.insert(e->parameter);
  collect_parameter_names(e->child0, out);
  collect_parameter_names(e->child1, out);
}

void run_manifest_suite(Ctx& c, const std::string& label,
                        const std::string& text, const std::string& origin) {
  std::vector<dsl::CheckSpec> specs;
  try {
    specs = dsl::parse_manifest(text);
  } catch (const dsl::ParseError& e) {
    throw Error(origin + ": " + e.what());
  }
  std::map<std::string, Series> reversions;
  for (const dsl::CheckSpec& spec : specs) {
    const int effective =
        c.order_override ? *c.order_override : spec.order;
    const std::string name = label + "/" + spec.name;
    std::set<std::string> subst_params;
    collect_parameter_names(spec.change_of_variables, subst_params);

    for (const dsl::Bindings& b : dsl::expand_grid(spec)) {
      if (!filter_keeps(c.filter, b)) continue;
      CheckResult r;
      r.check = name;
      r.params = b;
      try {
        Rational target = dsl::evaluate_scalar(spec.target_coefficient, b);
        if (!target.is_integer() || target.sign() < 0)
          throw Error("target coefficient must be a non-negative integer");
        long n = target.to_long();
        if (n > effective)
          throw Error("order too small for target coefficient " +
                      std::to_string(n) + " (order " +
                      std::to_string(effective) + ")");
        Series series =
            dsl::evaluate(spec.series_expr, b, spec.inner_variable, effective);
        Rational computed;
        if (spec.change_of_variables) {
          std::string key = std::to_string(effective) + "|" +
                            dsl::print_expr(spec.change_of_variables);
          for (const std::string& pn : subst_params)
            key += "|" + pn + "=" + std::to_string(b.at(pn));
          auto it = reversions.find(key);
          if (it == reversions.end()) {
            Series subst = dsl::evaluate(spec.change_of_variables, b,
                                         spec.inner_variable, effective);
            it = reversions.emplace(key, revert(subst, Var::z)).first;
          }
          computed = compose(series, it->second)
                         .coefficient(static_cast<int>(n));
        } else {
          computed = series.coefficient(static_cast<int>(n));
        }
        Rational expected = dsl::evaluate_scalar(spec.expected, b);
        r.computed = computed;
        r.expected = expected;
        if (computed == expected) {
          r.status = Status::Pass;
        } else {
          r.status = Status::Fail;
          r.first_mismatch_order = static_cast<int>(n);
          r.message = "value mismatch";
        }
      } catch (const Error& e) {
        r.status = Status::ErrorStatus;
        r.message = e.what();
      }
      c.out.push_back(std::move(r));
    }
  }
}

struct ManifestSource {
  std::string label;
  std::string text;
  std::string origin;
};

std::vector<ManifestSource> load_user_manifests(
    const std::vector<std::string>& paths) {
  std::vector<ManifestSource> out;
  std::set<std::string> used = {"all", "default"};
  for (const std::string& n : builtin_suite_names()) used.insert(n);
  for (const std::string& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read manifest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string label = std::filesystem::path(path).stem().string();
    if (label.empty()) label = "manifest";
    if (!used.insert(label).second)
      throw Error("duplicate suite name '" + label +
                  "' from manifest: " + path);
    out.push_back({label, buf.str(), path});
  }
  return out;
}

}  // namespace

SuiteReport run_suite(const std::string& suite, const RunOptions& options) {
  auto start = std::chrono::steady_clock::now();
  if (options.order_override && *options.order_override < 0)
    throw Error("order must be non-negative");

  SuiteReport report;
  report.suite = suite;
  report.version = kVersion;
  report.order = options.order_override.value_or(12);

  Ctx c{report.order, options.order_override, options.param_filter,
        report.results};
  std::vector<ManifestSource> user = load_user_manifests(options.manifest_paths);

  const std::map<std::string, std::function<void(Ctx&)>> builtins = {
      {"lehn", run_lehn_suite},           {"curve", run_curve_suite},
      {"higher-rank", run_higher_rank_suite},
      {"conjectures", run_conjectures_suite},
      {"verlinde", run_verlinde_suite},   {"chern", run_chern_suite},
  };

  if (suite == "all") {
    for (const std::string& name : builtin_suite_names())
      builtins.at(name)(c);
    run_manifest_suite(c, "default", default_manifest(), "default manifest");
    for (const ManifestSource& m : user)
      run_manifest_suite(c, m.label, m.text, m.origin);
  } else if (auto it = builtins.find(suite); it != builtins.end()) {
    it->second(c);
  } else if (suite == "default") {
    run_manifest_suite(c, "default", default_manifest(), "default manifest");
  } else {
    const ManifestSource* found = nullptr;
    for (const ManifestSource& m : user)
      if (m.label == suite) found = &m;
    if (found == nullptr) throw Error("unknown suite '" + suite + "'");
    run_manifest_suite(c, found->label, found->text, found->origin);
  }

  for (const CheckResult& r : report.results) {
    switch (r.status) {
      case Status::Pass: ++report.counts.pass; break;
      case Status::Fail: ++report.counts.fail; break;
      case Status::ErrorStatus: ++report.counts.error; break;
    }
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace lehn
