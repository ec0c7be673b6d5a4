#include "lacuna/lacunary.hpp"

#include <algorithm>
#include <unordered_set>

#include "lacuna/error.hpp"

namespace lacuna {

namespace {

std::string window_text(const Window& w) {
  return "[" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]";
}

}  // namespace

std::vector<FiniteSolution> disjoint_solutions(const KernelBasis& basis) {
  std::vector<FiniteSolution> candidates;
  for (const auto& v : basis.vectors) {
    if (auto sol = FiniteSolution::from_window_vector(basis.window.lo, v)) {
      candidates.push_back(std::move(*sol));
    }
  }
  std::ranges::stable_sort(candidates, [](const FiniteSolution& a, const FiniteSolution& b) {
    if (a.min_support() != b.min_support()) return a.min_support() < b.min_support();
    return a.max_support() < b.max_support();
  });

  std::unordered_set<std::int64_t> used;
  std::vector<FiniteSolution> picked;
  for (auto& sol : candidates) {
    const auto support = sol.support();
    if (std::ranges::any_of(support, [&](std::int64_t n) { return used.contains(n); })) continue;
    used.insert(support.begin(), support.end());
    picked.push_back(std::move(sol));
  }
  return picked;
}

CertifyResult certify_dimension(const OperatorSpec& op, std::int64_t k, std::int64_t budget) {
  if (k < 1 || budget < 1) precondition_failed("k and budget must be positive");
  Inconclusive inconclusive;
  for (std::int64_t half = op.order() + 1; half <= budget; half *= 2) {
    const Window w(-half, half);
    const KernelBasis basis = finite_support_kernel(op, w);
    inconclusive.max_kernel_dim =
        std::max(inconclusive.max_kernel_dim, static_cast<std::int64_t>(basis.dimension()));
    auto solutions = disjoint_solutions(basis);
    inconclusive.max_disjoint =
        std::max(inconclusive.max_disjoint, static_cast<std::int64_t>(solutions.size()));
    if (static_cast<std::int64_t>(solutions.size()) >= k) {
      solutions.erase(solutions.begin() + k, solutions.end());
      return DimensionCertificate{w, std::move(solutions)};
    }
  }
  inconclusive.reason = "budget " + std::to_string(budget) + " exhausted with " +
                        std::to_string(inconclusive.max_disjoint) + " of " + std::to_string(k) +
                        " disjoint solutions";
  return inconclusive;
}

std::vector<FiniteSolution> split_lacunary(const OperatorSpec& op, const SequenceSpec& x,
                                           const Window& w, std::int64_t max_pieces) {
  if (max_pieces < 1) precondition_failed("max_pieces must be positive");
  if (const auto bad = first_residual_failure(op, x, w)) throw NotASolutionOnWindow(*bad);

  const std::vector<Rational> values = sample(x, w);
  const auto min_run = static_cast<std::size_t>(op.order() + 1);

  // Maximal zero runs long enough to isolate everything between them.
  struct Run {
    std::size_t begin, end;  // half-open positions in `values`
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < values.size();) {
    if (values[i] != 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < values.size() && values[j] == 0) ++j;
    if (j - i >= min_run) runs.push_back({i, j});
    i = j;
  }

  std::vector<FiniteSolution> pieces;
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
    if (static_cast<std::int64_t>(pieces.size()) == max_pieces) break;
    const std::span<const Rational> segment(values.data() + runs[r].end,
                                            runs[r + 1].begin - runs[r].end);
    auto piece =
        FiniteSolution::from_window_vector(w.lo + static_cast<std::int64_t>(runs[r].end), segment);
    if (!piece) continue;
    if (!is_global_solution_finite(op, *piece)) {
      throw Error(ErrorCode::VerificationFailure,
                  "piece on " + window_text(piece->span()) + " is not a global solution");
    }
    pieces.push_back(std::move(*piece));
  }
  return pieces;
}

FiniteSolution PartialLacunarySolution::assembled() const {
  const Window w = covered_window();
  std::vector<Rational> values(static_cast<std::size_t>(w.size()));
  for (const auto& block : blocks) {
    for (std::int64_t n = block.min_support(); n <= block.max_support(); ++n) {
      values[static_cast<std::size_t>(n - w.lo)] += block(n);
    }
  }
  return FiniteSolution(w.lo, std::move(values));
}

Window PartialLacunarySolution::covered_window() const {
  if (blocks.empty()) precondition_failed("no blocks to cover");
  std::int64_t lo = blocks.front().min_support();
  std::int64_t hi = blocks.front().max_support();
  for (const auto& b : blocks) {
    lo = std::min(lo, b.min_support());
    hi = std::max(hi, b.max_support());
  }
  return {lo, hi};
}

namespace {

struct RayOutcome {
  std::optional<PartialLacunarySolution> solution;
  std::int64_t blocks_found = 0;
  std::int64_t max_kernel_dim = 0;
};

// Block nearest the frontier inside the search window, if any.
std::optional<FiniteSolution> nearest_block(const KernelBasis& basis, Ray ray) {
  std::optional<FiniteSolution> best;
  for (const auto& v : basis.vectors) {
    auto sol = FiniteSolution::from_window_vector(basis.window.lo, v);
    if (!sol) continue;
    const bool better = !best || (ray == Ray::Positive ? sol->min_support() < best->min_support()
                                                       : sol->max_support() > best->max_support());
    if (better) best = std::move(sol);
  }
  return best;
}

RayOutcome build_on_ray(const OperatorSpec& op, std::int64_t min_gap, std::int64_t budget, Ray ray) {
  RayOutcome outcome;
  PartialLacunarySolution partial;
  partial.ray = ray;
  const bool forward = ray == Ray::Positive;
  std::int64_t frontier = forward ? -budget : budget;  // first admissible index

  for (;;) {
    const auto placed = static_cast<std::int64_t>(partial.blocks.size());
    std::int64_t target = 0;
    if (placed > 0) {
      target = placed + 1;
      if (!partial.gap_profile.empty()) target = std::max(target, partial.gap_profile.back() + 1);
      const auto& prev = partial.blocks.back();
      frontier = forward ? prev.max_support() + target : prev.min_support() - target;
    }
    if (frontier < -budget || frontier > budget) return outcome;

    std::optional<FiniteSolution> block;
    for (std::int64_t len = op.order() + 1;; len *= 2) {
      const Window w = forward ? Window(frontier, std::min(frontier + len - 1, budget))
                               : Window(std::max(frontier - len + 1, -budget), frontier);
      const KernelBasis basis = finite_support_kernel(op, w);
      outcome.max_kernel_dim =
          std::max(outcome.max_kernel_dim, static_cast<std::int64_t>(basis.dimension()));
      block = nearest_block(basis, ray);
      if (block || (forward ? w.hi == budget : w.lo == -budget)) break;
    }
    if (!block) return outcome;

    if (placed > 0) {
      const auto& prev = partial.blocks.back();
      const std::int64_t gap =
          forward ? block->min_support() - prev.max_support() : prev.min_support() - block->max_support();
      partial.gap_profile.push_back(gap);
      partial.gap_targets.push_back(target);
    }
    partial.blocks.push_back(std::move(*block));
    outcome.blocks_found = static_cast<std::int64_t>(partial.blocks.size());
    if (!partial.gap_profile.empty() && partial.gap_profile.back() >= min_gap) {
      outcome.solution = std::move(partial);
      return outcome;
    }
  }
}

}  // namespace

BuildResult build_lacunary_on_ray(const OperatorSpec& op, std::int64_t min_gap, std::int64_t budget,
                                  Ray ray) {
  if (min_gap < 1 || budget < 1) precondition_failed("gap and budget must be positive");
  RayOutcome outcome = build_on_ray(op, min_gap, budget, ray);
  if (outcome.solution) return std::move(*outcome.solution);
  return Inconclusive{outcome.max_kernel_dim, outcome.blocks_found,
                      "no gap >= " + std::to_string(min_gap) + " reached on the " +
                          (ray == Ray::Positive ? "positive" : "negative") + " ray"};
}

BuildResult build_lacunary(const OperatorSpec& op, std::int64_t min_gap, std::int64_t budget) {
  if (min_gap < 1 || budget < 1) precondition_failed("gap and budget must be positive");
  Inconclusive inconclusive;
  for (const Ray ray : {Ray::Positive, Ray::Negative}) {
    RayOutcome outcome = build_on_ray(op, min_gap, budget, ray);
    if (outcome.solution) return std::move(*outcome.solution);
    inconclusive.max_kernel_dim = std::max(inconclusive.max_kernel_dim, outcome.max_kernel_dim);
    inconclusive.max_disjoint = std::max(inconclusive.max_disjoint, outcome.blocks_found);
  }
  inconclusive.reason = "no gap >= " + std::to_string(min_gap) + " reached on either ray within [" +
                        std::to_string(-budget) + ", " + std::to_string(budget) + "]";
  return inconclusive;
}

VerifyReport verify(const OperatorSpec& op, const DimensionCertificate& cert) {
  VerifyReport report;
  if (cert.solutions.empty()) report.fail("certificate holds no solutions");
  std::unordered_set<std::int64_t> used;
  for (std::size_t i = 0; i < cert.solutions.size(); ++i) {
    const auto& sol = cert.solutions[i];
    const std::string label = "solution " + std::to_string(i);
    if (!cert.window.contains(sol.span())) report.fail(label + " leaves " + window_text(cert.window));
    if (!is_global_solution_finite(op, sol)) report.fail(label + " is not a global solution");
    for (auto n : sol.support()) {
      if (!used.insert(n).second) report.fail(label + " overlaps an earlier support at " + std::to_string(n));
    }
  }
  return report;
}

VerifyReport verify(const OperatorSpec& op, const KernelBasis& basis) {
  VerifyReport report;
  RationalMatrix stacked(basis.vectors.size(), static_cast<std::size_t>(basis.window.size()));
  for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
    const auto& v = basis.vectors[i];
    const std::string label = "vector " + std::to_string(i);
    if (static_cast<std::int64_t>(v.size()) != basis.window.size()) {
      report.fail(label + " has the wrong length");
      continue;
    }
    const auto sol = FiniteSolution::from_window_vector(basis.window.lo, v);
    if (!sol) {
      report.fail(label + " is zero");
      continue;
    }
    if (!is_global_solution_finite(op, *sol)) report.fail(label + " is not a global solution");
    for (std::size_t j = 0; j < v.size(); ++j) stacked(i, j) = v[j];
  }
  if (report.passed && rank_and_nullspace(stacked).rank != basis.vectors.size()) {
    report.fail("vectors are linearly dependent");
  }
  return report;
}

VerifyReport verify(const OperatorSpec& op, const PartialLacunarySolution& sol) {
  VerifyReport report;
  if (sol.blocks.empty()) report.fail("no blocks");
  if (sol.gap_profile.size() + 1 != sol.blocks.size() && !sol.blocks.empty()) {
    report.fail("gap profile length does not match block count");
  }
  if (sol.gap_targets.size() != sol.gap_profile.size()) report.fail("gap targets length mismatch");
  for (std::size_t i = 0; i < sol.blocks.size(); ++i) {
    if (!is_global_solution_finite(op, sol.blocks[i])) {
      report.fail("block " + std::to_string(i) + " is not a global solution");
    }
  }
  if (!report.passed) return report;
  const bool forward = sol.ray == Ray::Positive;
  for (std::size_t i = 0; i < sol.gap_profile.size(); ++i) {
    const auto& a = sol.blocks[i];
    const auto& b = sol.blocks[i + 1];
    const std::int64_t gap = forward ? b.min_support() - a.max_support() : a.min_support() - b.max_support();
    const std::string label = "gap " + std::to_string(i);
    if (gap != sol.gap_profile[i]) report.fail(label + " does not match the blocks");
    if (gap < static_cast<std::int64_t>(i) + 2) report.fail(label + " is below " + std::to_string(i + 2));
    if (gap < sol.gap_targets[i]) report.fail(label + " is below its target");
  }
  return report;
}

}  // namespace lacuna
