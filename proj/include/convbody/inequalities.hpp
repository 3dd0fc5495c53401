#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convbody/convolution.hpp"
#include "convbody/thetabody.hpp"

namespace convbody {

/// One inequality evaluated on one input, oriented as lhs >= rhs.
struct InequalityReport {
  std::string name;
  std::string inputs;
  int n = 0;
  double theta = -1.0;  // negative when the check has no θ
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;      // lhs − rhs, or worst per-direction gap for inclusions
  double tightness = 1.0;  // lhs / rhs
  bool passed = false;
  bool skipped = false;    // nothing to verify (unbounded C₁, ball-only path, ...)
  double mc_error = 0.0;
  double quad_error = 0.0;
  double tol = 0.0;        // violations down to −tol are accepted
  uint64_t seed = 0;
  std::string note;
};

struct CheckOptions {
  uint64_t seed = kDefaultSeed;
  int theta_grid = 64;  // trapezoid intervals for the θ-integral
  int samples = 200;    // random (a, b) pairs for the intermediate-set check
};

InequalityReport check_bm_theta(const NormalizedPair& pair, double theta, const SphereGrid& grid,
                                const CheckOptions& opt = {});

/// The five equivalent Brunn–Minkowski statements, all with
/// φ_n(θ) = (1 − θ^{1/n})^n: forms.sum_root on (K, L); forms.mixed_root,
/// forms.geometric and forms.min on (λK, (1−λ)L); forms.unit on unit-volume
/// rescalings.
std::vector<InequalityReport> check_equivalent_forms(const NormalizedPair& pair, double theta,
                                                     double lambda, const SphereGrid& grid,
                                                     const CheckOptions& opt = {});

/// Each link of the inclusion chain as a per-direction comparison:
/// Π*-hull ⊆ K+_θL, (1−θ^{1/n})(K+L) ⊆ K+_θL, intermediate set ⊆ K+_θL and
/// K+_θL ⊆ n(1−θ^{1/n})C₁.
std::vector<InequalityReport> check_inclusion_chain(const NormalizedPair& pair, double theta,
                                                    const SphereGrid& grid,
                                                    const CheckOptions& opt = {});

/// (K+_{θ0}L)/(1−θ0^{1/n}) ⊆ (K+_θL)/(1−θ^{1/n}) for all θ0 <= θ in thetas.
InequalityReport check_monotonicity(const NormalizedPair& pair, const std::vector<double>& thetas,
                                    const SphereGrid& grid, const CheckOptions& opt = {});

/// {inequality |C₁| >= C(2n,n) n^{−n} |K||L|/M, identity ∫|K+_θL|dθ = |K||L|/M}.
std::vector<InequalityReport> check_zhang_extension(const NormalizedPair& pair,
                                                    const SphereGrid& grid,
                                                    const CheckOptions& opt = {});

InequalityReport check_rogers_shephard(const NormalizedPair& pair, const CheckOptions& opt = {});

/// m-fold Brunn–Minkowski bound, the two-sided Rogers–Shephard/Zhang chain and
/// θ-monotonicity with exponent 1/((m−1)n).
std::vector<InequalityReport> check_mfold(const NormalizedTuple& tuple, double theta,
                                          const SphereGrid& grid, const CheckOptions& opt = {});

enum class EqualityCase { SimplexPair, HomotheticSimplices, Generic };
const char* to_string(EqualityCase c);

/// Heuristic at tolerance 1e-7: both are n-simplices and −L = z + λK.
EqualityCase detect_equality_case(const ConvexBody& k, const ConvexBody& l);

/// The integral ∫₀¹|K+_θL|dθ on a graded trapezoid rule; error is the
/// difference to the half-resolution rule.
struct ThetaIntegral {
  double value = 0.0;
  double quad_error = 0.0;
  double mc_error = 0.0;
};
ThetaIntegral theta_volume_integral(const NormalizedPair& pair, const SphereGrid& grid,
                                    int intervals);

struct FuzzOptions {
  std::vector<std::string> checks{"bm", "forms", "chain", "monotone", "zhang", "rs"};
  std::vector<double> thetas{0.2, 0.5, 0.8};
  int directions = 0;  // 0: 1024 for n = 2, library default otherwise
  CheckOptions check;
};

/// Runs the selected checks on `count` random pairs. Deterministic in seed.
std::vector<InequalityReport> fuzz(uint64_t seed, int n, int count, const FuzzOptions& opt = {});

/// Names accepted by the checks option and the CLI.
const std::vector<std::string>& known_checks();

}  // namespace convbody
