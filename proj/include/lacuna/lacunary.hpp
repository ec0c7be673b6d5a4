#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lacuna/linalg.hpp"
#include "lacuna/operator.hpp"

namespace lacuna {

/// k verified finite-support solutions with pairwise disjoint supports, all
/// inside `window`; proves dim V_L >= k.
struct DimensionCertificate {
  Window window;
  std::vector<FiniteSolution> solutions;

  [[nodiscard]] std::size_t k() const noexcept { return solutions.size(); }
};

enum class Ray { Positive, Negative };

/// Blocks A_1, A_2, ... of a lacunary solution under construction, in
/// construction order (outward along `ray`). gap_profile[i] is the distance
/// between the facing support ends of blocks i and i+1; gap_targets[i] is the
/// minimum that was demanded for it.
struct PartialLacunarySolution {
  Ray ray = Ray::Positive;
  std::vector<FiniteSolution> blocks;
  std::vector<std::int64_t> gap_profile;
  std::vector<std::int64_t> gap_targets;

  /// The sum of the blocks, a single finite-support solution.
  [[nodiscard]] FiniteSolution assembled() const;
  [[nodiscard]] Window covered_window() const;
};

struct Inconclusive {
  std::int64_t max_kernel_dim = 0;  // largest kernel dimension seen
  std::int64_t max_disjoint = 0;    // most disjoint solutions / blocks found
  std::string reason;
};

using CertifyResult = std::variant<DimensionCertificate, Inconclusive>;
using BuildResult = std::variant<PartialLacunarySolution, Inconclusive>;

/// Greedy leftmost-first extraction of pairwise-support-disjoint solutions
/// from a kernel basis.
[[nodiscard]] std::vector<FiniteSolution> disjoint_solutions(const KernelBasis& basis);

/// Grows symmetric windows [-N, N], N = r+1, 2(r+1), 4(r+1), ... <= budget,
/// until k disjoint verified solutions are found.
[[nodiscard]] CertifyResult certify_dimension(const OperatorSpec& op, std::int64_t k,
                                              std::int64_t budget);

/// Cuts x at maximal zero runs of length >= r+1 inside `w` and returns the
/// flanked pieces as finite-support solutions, leftmost first. An empty
/// result means no cut was possible. Throws NotASolutionOnWindow if x fails
/// an equation inside the window.
[[nodiscard]] std::vector<FiniteSolution> split_lacunary(const OperatorSpec& op,
                                                         const SequenceSpec& x, const Window& w,
                                                         std::int64_t max_pieces);

/// Inductive block construction along a ray inside [-budget, budget]: each
/// new block starts at least max(l + 1, previous gap + 1) past the last one
/// (l = blocks so far). Stops once a gap >= min_gap appears. The positive ray
/// is tried first, then the negative one.
[[nodiscard]] BuildResult build_lacunary(const OperatorSpec& op, std::int64_t min_gap,
                                         std::int64_t budget);

/// Single-ray variant of build_lacunary.
[[nodiscard]] BuildResult build_lacunary_on_ray(const OperatorSpec& op, std::int64_t min_gap,
                                                std::int64_t budget, Ray ray);

struct VerifyReport {
  bool passed = true;
  std::vector<std::string> failures;

  void fail(std::string why) {
    passed = false;
    failures.push_back(std::move(why));
  }
};

[[nodiscard]] VerifyReport verify(const OperatorSpec& op, const DimensionCertificate& cert);
[[nodiscard]] VerifyReport verify(const OperatorSpec& op, const KernelBasis& basis);
[[nodiscard]] VerifyReport verify(const OperatorSpec& op, const PartialLacunarySolution& sol);

}  // namespace lacuna
