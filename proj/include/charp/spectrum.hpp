#pragma once

// Global invariants of R = T_1 x ... x T_k, each T_i = F_p[vars_i]/I_i.
//
// Local values are only ever computed at F_p-rational closed points (alpha = 0
// there), so a component's gamma equals its dimension and Z_R is a union of
// whole components. Global values are extremal over a finite sample set and
// are reported with the direction of the bound they give.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charp/finv.hpp"
#include "charp/kernels.hpp"

namespace charp {

struct Component {
  std::string name;
  Ideal ideal;
  std::optional<std::vector<Ideal>> declared_min_primes;
};

class RingPresentation {
 public:
  /// Validates: non-empty, shared characteristic, proper ideals, declared
  /// minimal primes proper and containing I.
  explicit RingPresentation(std::vector<Component> components, const Budget& budget = {});

  std::uint32_t characteristic() const noexcept { return components_.front().ideal.ring()->field().characteristic(); }
  const std::vector<Component>& components() const noexcept { return components_; }
  const Component& component(std::size_t i) const { return components_.at(i); }
  std::size_t size() const noexcept { return components_.size(); }

 private:
  std::vector<Component> components_;
};

struct GammaData {
  std::vector<int> dims;
  std::vector<int> alpha_at_closed_point;  // 0 for rational points
  std::vector<int> gamma_per_component;    // alpha at a minimal prime = dim
  /// false when declared minimal primes have different dimensions
  std::vector<bool> equidimensional;
  int gamma = 0;
  std::vector<std::size_t> z_components;
  bool z_is_spec = false;
};

GammaData gamma_data(const RingPresentation& R, const Budget& budget = {});

struct PrimeSample {
  std::size_t component = 0;
  std::vector<Fp> point;
  /// Generic point of a component declared prime (its local ring is a field).
  bool whole_component = false;
  std::string label;
};

/// Jacobian criterion: rank of (dg_i/dx_j)(point) equals n - dim.
bool jacobian_regular(const Ideal& I, int dim, std::span<const Fp> point);

/// Deterministic pseudo-random smooth F_p-points of a component, excluding
/// `exclude`. Exhaustive over F_p^n when p^n <= 10^6, random probing beyond.
std::vector<PrimeSample> random_smooth_points(const RingPresentation& R, std::size_t component, std::size_t count,
                                              std::uint64_t seed, std::span<const std::vector<Fp>> exclude = {});

struct SampleValue {
  PrimeSample sample;
  bool in_z = false;
  bool jacobian_regular = false;
  std::optional<LimitEstimate> estimate;
};

enum class BoundDirection { LowerBound, UpperBound, Exact };
std::string_view bound_name(BoundDirection b);

struct GlobalEstimate {
  LimitEstimate value;
  std::optional<std::size_t> extremal_sample;  // index into per_sample
  std::vector<SampleValue> per_sample;
  BoundDirection bound = BoundDirection::LowerBound;
  bool z_rule_applied = false;
  GammaData gamma;
};

/// max of local e_HK over samples on Z_R; samples off Z_R are kept in the
/// table but excluded from the max.
GlobalEstimate global_hk(const RingPresentation& R, const std::vector<PrimeSample>& samples, std::uint32_t e_max,
                         const FinvOptions& opts = {}, kernels::Exec exec = kernels::Exec::Parallel);

/// 0 (exact) when Z_R != Spec R; otherwise min of local F-signatures.
GlobalEstimate global_fsig(const RingPresentation& R, const std::vector<PrimeSample>& samples, std::uint32_t e_max,
                           const FinvOptions& opts = {}, kernels::Exec exec = kernels::Exec::Parallel);

struct SemicontinuityRow {
  PrimeSample sample;
  HKRecord record;
};

struct SemicontinuityReport {
  std::uint32_t e = 0;
  SemicontinuityRow special;
  std::vector<SemicontinuityRow> nearby;
  /// Indices into `nearby` whose normalized value exceeds the special one.
  std::vector<std::size_t> violations;
  bool holds() const noexcept { return violations.empty(); }
};

/// Checks lambda_e(special)/q^d >= lambda_e(P)/q^d for every nearby P on the
/// same equidimensional component.
SemicontinuityReport semicontinuity_probe(const RingPresentation& R, const PrimeSample& special,
                                          const std::vector<PrimeSample>& nearby, std::uint32_t e,
                                          const FinvOptions& opts = {}, kernels::Exec exec = kernels::Exec::Parallel);

struct PairSpec {
  Ideal a;  // original coordinates of the base ring
  Rational t;
};

struct FlatRow {
  std::uint32_t e = 0;
  std::uint64_t q = 1;
  HKRecord hk_base, hk_ext;
  SplitRecord split_base, split_ext;
  std::optional<SplitRecord> pair_base, pair_ext;
  bool hk_equal = false;      // lambda_T = q^k lambda_R
  bool fsig_equal = false;    // a_T = q^k a_R
  bool pair_equal = true;
  bool monotone = false;      // normalized HK non-decreasing, s_e non-increasing
};

struct FlatExtensionReport {
  int extra_vars = 0;
  std::vector<FlatRow> rows;
  bool all_equal() const noexcept;
  bool all_monotone() const noexcept;
};

/// R -> T = R[t_1..t_k] localized at (m, t): polynomial extension with a
/// regular closed fiber.
LocalRingAtPoint extend_by_variables(const LocalRingAtPoint& L, int extra_vars, const Budget& budget = {});

FlatExtensionReport flat_extension_check(const LocalRingAtPoint& L, int extra_vars, std::uint32_t e_max,
                                         const FinvOptions& opts = {}, const std::optional<PairSpec>& pair = std::nullopt);

}  // namespace charp
