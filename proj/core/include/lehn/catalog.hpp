#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lehn/series.hpp"

namespace lehn {

// Default truncation order for the catalog constructors; every stated
// expansion fits with margin and all grids run in seconds at this order.
inline constexpr int kCatalogOrder = 16;

// Intersection-theoretic invariants of a polarized surface (S, H).
// The derived exponents a, b, c drive the closed-form Segre series; c is the
// Euler characteristic chi(H) by Riemann-Roch, which forces H2 - HK even.
struct SurfaceInvariants {
  long H2;    // H.H
  long chiO;  // chi(O_S)
  long HK;    // H.K_S
  long K2;    // K_S.K_S

  SurfaceInvariants(long H2, long chiO, long HK, long K2);

  long a() const { return HK - 2 * K2; }
  long b() const { return H2 - 2 * HK + K2 + 3 * chiO; }
  long c() const { return (H2 - HK) / 2 + chiO; }
  long chi_H() const { return c(); }
};

// Invariants of a pair (C, V): degree d, genus g, rank r (default 1, the
// line-bundle case).
struct CurveInvariants {
  long d;
  long g;
  long r;

  CurveInvariants(long d, long g, long r = 1);

  long chiO() const { return 1 - g; }
};

enum class FamilyName { A1, A2, A3, A4, A5, F, G, SmallA, SmallB };
enum class SeriesForm { WForm, TForm, ZExpansion };

std::string family_label(FamilyName name);

// One member of a universal-series family, together with the coordinate it
// is presented in and the rank parameter when the family depends on one.
struct SeriesFamily {
  FamilyName name;
  std::optional<int> rank_parameter;
  SeriesForm form;
  Series series;
};

// Outcome of comparing two series through the smaller of their orders.
struct IdentityReport {
  bool equal = false;
  int compared_order = 0;
  std::optional<int> first_mismatch;
  Rational lhs_value;  // values at the first mismatch when unequal
  Rational rhs_value;
};
IdentityReport compare_series(const Series& lhs, const Series& rhs);

// ---- Curve case ----------------------------------------------------------

// Closed form of the curve Segre series in z: expands
// (1-w)^(d+2*chi) / (1-2w)^chi with chi = 1-g and substitutes the reversion
// of z = w(1-w).  Requires rank 1.
Series curve_segre_rhs(const CurveInvariants& ci, int order);

// ---- Surface case (rank 1) ----------------------------------------------

// The change of variables z = w(1-w)(1-2w)^4 / (1-6w+6w^2)^3 and its
// compositional inverse w(z) = z - 9z^2 + 94z^3 - ...
Series lehn_z_of_w(int order);
Series lehn_w_of_z(int order);

// The closed-form integrand (1-w)^a (1-2w)^b / (1-6w+6w^2)^c in w.
Series lehn_integrand_w(const SurfaceInvariants& si, int order);

// Full closed form as a z-series: integrand composed with w(z).
Series lehn_rhs(const SurfaceInvariants& si, int order);

// The four universal series A1..A4 as z-expansions, built from their closed
// w-forms and composed with w(z).
std::array<SeriesFamily, 4> universal_series_w(int order = kCatalogOrder);

// The same four series in the t-coordinate, where z = t(1+t)^2/2 and
// w = (1 - sqrt((1+t)/(1+3t)))/2.  Construction is verified internally
// against the w-forms: each t-form equals the w-form after substituting
// w(t), and z(w(t)) = z(t); a mismatch throws (implementation bug).
struct UniversalT {
  std::array<SeriesFamily, 4> families;
  Series z_of_t;
  Series w_of_t;
};
UniversalT universal_series_t(int order = kCatalogOrder);

// A1^H2 * A2^chiO * A3^HK * A4^K2 for z-expansion families.
Series family_product_z(const std::array<SeriesFamily, 4>& families,
                        const SurfaceInvariants& si);

// ---- Blowup coefficient checks -------------------------------------------

// Blowup of a K3 at one point, of an Enriques surface at two points, of an
// abelian or bielliptic surface at three points.
enum class BlowupModel { K3Blowup, Enriques2, Abelian3 };

struct BlowupModelData {
  long chiO;
  long K2;
  long binom_offset;  // expected value is binom(k - n + 1 + offset, n)
};
BlowupModelData blowup_model_data(BlowupModel model);

struct CoefficientCheck {
  Rational coefficient;
  Rational expected;
};

// [z^n] of the universal-series product for the model invariants with
// H.K = k and H2 solved from the imposed condition chi(H) = 3n-1, paired
// with the predicted binomial.  Requires n >= 1.
CoefficientCheck blowup_coefficient_check(int n, long k, BlowupModel model);
// Variant over precomputed z-expansion families of order >= n.
CoefficientCheck blowup_coefficient_check(
    int n, long k, BlowupModel model,
    const std::array<SeriesFamily, 4>& families);

// [z^n] of (1-w)^(k+2) (1-2w)^(-k+6n-1) / (1-6w+6w^2)^(3n-1) computed three
// independent ways: (i) reversion/composition to z, (ii) the w-residue form
// [w^n] (1-w)^(k-n+1) (1-2w)^(-k+2n-2), (iii) the u-residue form
// [u^n] (1+u)^(k-n+1) alongside binom(k-n+1, n).  All routes must agree;
// a mismatch throws (implementation bug).  Requires n >= 1.
Rational residue_chain_check(int n, long k);

// ---- Higher rank on curves -----------------------------------------------

// Sum over n of binom(d - r*n + r, n) z^n from the binomial formula alone.
Series rank_binomial_series_z(long d, long r, int order);

// With z = t(1+t)^r: sum binom(d-rn+r, n) z^n = (1+t)^(d+r+1) / (1+(r+1)t),
// compared in t after composing the z-side through the change of variables.
// Valid for any integer r.
IdentityReport binomial_sum_check(long d, long r, int order);

// Three-layer verification of the rank-r curve formula for r >= 1.
struct HigherRankReport {
  long r = 0;
  long d = 0;
  int order = 0;
  IdentityReport binomial_sum;    // binomial sum vs closed form in t
  IdentityReport sign_transport;  // alternating-sign bridge between the
                                  // z = t(1+t)^r and z = -t(1+t)^r forms
  IdentityReport alternating_sum; // signed sum vs A1(z)^d A2(z), in z
  bool segre_matches = false;     // cohomology pipeline vs the signed sum
  std::optional<int> segre_first_mismatch;

  bool all_ok() const {
    return binomial_sum.equal && sign_transport.equal &&
           alternating_sum.equal && segre_matches;
  }
};
HigherRankReport higher_rank_curve_check(int r, long d, int order);

// ---- Higher rank on surfaces (conjectural series) -------------------------

// Closed forms of Conjecture 1 for rank r+1 bundles on K-trivial surfaces,
// in t and recomposed in z.  Requires r != 0.
struct Conjecture1Series {
  int r = 0;
  int order = 0;
  Series a1_t{Var::t, 0}, a2_t{Var::t, 0}, a3_t{Var::t, 0};
  Series z_of_t{Var::t, 0}, w_of_t{Var::t, 0};
  Series a1_z{Var::z, 0}, a2_z{Var::z, 0}, a3_z{Var::z, 0};
  Series w_of_z{Var::z, 0};
};
Conjecture1Series conjecture1_series(int r, int order = kCatalogOrder);

// The rank +-2 series of Conjecture 2 under w = t(2+3t)^3 / (16(1+t)^4).
// a2 and a_{-2} are built by algebraically distinct routes and must satisfy
// a2 * a_{-2} = 1; b2 and b_{-2} are built from two rearrangements of the
// squared closed form (the raw form has an irrational constant) and must
// agree.  The shared w must match Conjecture 1 at r = -2 literally and at
// r = +2 under the parameter involution t -> -t/(1+2t).  Violations throw.
struct Conjecture2Series {
  int order = 0;
  Series a2_t{Var::t, 0}, aneg2_t{Var::t, 0};
  Series b2_t{Var::t, 0}, bneg2_t{Var::t, 0};
  Series w_of_t{Var::t, 0};
};
Conjecture2Series conjecture2_series(int order = kCatalogOrder);

// ---- Verlinde series -------------------------------------------------------

// f_r = (1+t)^(r^2) / (1+r^2 t) and g_r = 1+t under z = t(1+t)^(r^2-1).
struct VerlindeSeries {
  int r = 0;
  int order = 0;
  Series f_t{Var::t, 0}, g_t{Var::t, 0};
  Series z_of_t{Var::t, 0};
};
VerlindeSeries verlinde_series(int r, int order = kCatalogOrder);

// [z^n] f_r g_r^chiH computed through the reversion pipeline (never from the
// binomial formula); the K3 specialization predicts
// binom(chiH - (r^2-1)(n-1), n).
Rational verlinde_k3_coefficient(int r, long chiH, int n);

// ---- Reporting probe -------------------------------------------------------

// Compares the two candidate bridges between the Conjecture 1 series at
// r = -2 and the rank-1 surface series: A1*sqrt(A2) vs A1_lehn and
// A2*sqrt(A3) vs A2_lehn, as z-expansions.  Reports; never asserts.
struct ProbeComparison {
  std::string label;
  bool agrees = false;
  int compared_order = 0;
  std::optional<int> first_mismatch;
  Rational lhs_value;  // at the first mismatch when disagreeing
  Rational rhs_value;
};
struct ProbeReport {
  int order = 0;
  std::vector<ProbeComparison> comparisons;
  std::string text;  // deterministic human-readable rendering
};
ProbeReport conjecture1_lehn_probe(int order = kCatalogOrder);

}  // namespace lehn
