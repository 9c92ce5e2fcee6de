#pragma once

// Local F-invariants at F_p-rational points of S/I, S = F_p[x_1..x_n].
//
// Everything is computed after moving the point to the origin. Lengths of
// quotients supported at the origin are then global vector-space dimensions
// of S/J, counted through standard monomials.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charp/ideal.hpp"

namespace charp {

struct FinvOptions {
  Budget budget;
  /// Convergence threshold on the last two normalized values.
  double tolerance = 1e-2;
  /// Allowed slack when checking (e(R)-1)(1-s) >= e_HK - 1.
  double hl_tolerance = 0.05;
  /// Largest n used by the Hilbert-Samuel difference table.
  int hilbert_samuel_n_max = 8;
};

class LocalRingAtPoint {
 public:
  /// Throws PointNotOnVariety when a generator of I does not vanish at
  /// `point`, UnitIdeal when I = S.
  LocalRingAtPoint(Ideal I, std::vector<Fp> point, const Budget& budget = {});
  static LocalRingAtPoint at_origin(Ideal I, const Budget& budget = {});

  const RingPtr& ring() const noexcept { return ideal_.ring(); }
  std::uint32_t characteristic() const noexcept { return ring()->field().characteristic(); }
  std::size_t nvars() const noexcept { return ring()->nvars(); }
  int dim() const noexcept { return dim_; }

  const Ideal& ideal() const noexcept { return ideal_; }
  const std::vector<Fp>& point() const noexcept { return point_; }
  /// I moved so that the point sits at the origin.
  const Ideal& translated() const noexcept { return translated_; }
  /// (x_1, ..., x_n) in translated coordinates.
  Ideal maximal() const { return Ideal::maximal_at_origin(ring()); }
  /// An ideal given in original coordinates, moved along with I.
  Ideal localize(const Ideal& J) const { return translate(J, point_); }

 private:
  Ideal ideal_;
  std::vector<Fp> point_;
  Ideal translated_;
  int dim_ = 0;
};

struct HKRecord {
  std::uint32_t e = 0;
  std::uint64_t q = 1;
  std::uint64_t lambda = 0;
  Rational normalized;  // lambda / q^d
};

struct SplitRecord {
  std::uint32_t e = 0;
  std::uint64_t q = 1;
  std::uint64_t a_e = 0;
  Rational s_e;  // a_e / q^d
};

enum class Confidence { Exact, Converged, Inconclusive };
std::string_view confidence_name(Confidence c);

/// Extrapolated limit of a normalized sequence. `raw` holds the unnormalized
/// integers (lambda_e or a_e) for e = 1..e_used.
struct LimitEstimate {
  Rational value;
  std::uint32_t e_used = 0;
  std::vector<std::uint64_t> raw;
  std::vector<Rational> values;
  std::vector<Rational> successive_diffs;
  Confidence confidence = Confidence::Inconclusive;
};

/// Fits value + c/q through the last two points. Exact when the sequence is
/// constant; converged when the last two values differ by less than
/// `tolerance`.
LimitEstimate extrapolate(std::vector<Rational> values, std::vector<std::uint64_t> raw, std::uint32_t p,
                          double tolerance);

/// lambda(S / (I_0 + J_0^{[q]})), J defaulting to the maximal ideal. Throws
/// NotPrimary when J is not primary to the point modulo I.
HKRecord hk_function(const LocalRingAtPoint& L, std::uint32_t e, const std::optional<Ideal>& J = std::nullopt,
                     const FinvOptions& opts = {});
LimitEstimate hk_estimate(const LocalRingAtPoint& L, std::uint32_t e_max, const FinvOptions& opts = {});

/// Fedder: S/I is F-pure at the point iff (I_0^{[p]} : I_0) is not inside m^{[p]}.
bool fedder_is_fpure(const LocalRingAtPoint& L, const FinvOptions& opts = {});

/// (I_0^{[q]} : I_0), the lift of Hom(F^e_* R, R) as an F^e_* S-module generator set.
Ideal frobenius_trace_ideal(const LocalRingAtPoint& L, std::uint32_t e, const FinvOptions& opts = {});

/// Lift of the e-th splitting ideal: (m^{[q]} : (I_0^{[q]} : I_0)).
Ideal splitting_ideal(const LocalRingAtPoint& L, std::uint32_t e, const FinvOptions& opts = {});
/// a_e = lambda(S / I_e), computed as q^n - lambda(S / ((I_0^{[q]} : I_0) + m^{[q]})).
SplitRecord splitting_number(const LocalRingAtPoint& L, std::uint32_t e, const FinvOptions& opts = {});
LimitEstimate fsig_estimate(const LocalRingAtPoint& L, std::uint32_t e_max, const FinvOptions& opts = {});

/// ceil(t (q - 1)) for rational t >= 0.
std::uint64_t pair_exponent(const Rational& t, std::uint64_t q);

/// Splitting number of the pair (R, a^t): lambda(S / (m^{[q]} : a^{ceil(t(q-1))} (I_0^{[q]} : I_0))).
/// `a` is given in original coordinates.
SplitRecord pair_splitting_number(const LocalRingAtPoint& L, const Ideal& a, const Rational& t, std::uint32_t e,
                                  const FinvOptions& opts = {});

/// max{ r : a^r not inside m^{[q]} + I_0 }, by binary search over r.
std::uint64_t nu_invariant(const LocalRingAtPoint& L, const Ideal& a, std::uint32_t e, const FinvOptions& opts = {});

enum class HlStatus { Satisfied, Violated, Vacuous, Unavailable };
std::string_view hl_status_name(HlStatus s);

/// Diagnostic summary. `regular` and `f_pure` are exact tests; every other
/// field is derived from limit estimates and is never a proof.
struct DiagnosticFlags {
  int dim = 0;
  bool regular = false;
  bool f_pure = false;
  LimitEstimate hk;
  LimitEstimate fsig;
  std::optional<Rational> hilbert_samuel;
  /// e_HK <= 1 + max(1/d!, 1/e(R)); unset when e(R) is unavailable.
  std::optional<bool> predicted_sfr_gorenstein;
  HlStatus hl = HlStatus::Unavailable;
  double hl_lhs = 0;
  double hl_rhs = 0;
};

DiagnosticFlags classify(const LocalRingAtPoint& L, std::uint32_t e_max, const FinvOptions& opts = {});

double to_double(const Rational& r);

}  // namespace charp
