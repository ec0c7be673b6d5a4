#include "lacuna/corpus.hpp"

#include <random>

#include "lacuna/error.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/linalg.hpp"

namespace lacuna::corpus {

OperatorSpec example1_operator(std::int64_t r, const std::optional<std::vector<Rational>>& values) {
  if (r < 1) precondition_failed("example1_operator needs r >= 1");
  const std::int64_t m = r + 1;
  std::vector<Rational> vals(static_cast<std::size_t>(m), Rational(1));
  if (values) {
    if (static_cast<std::int64_t>(values->size()) != m) {
      precondition_failed("example1_operator needs one value per coefficient");
    }
    vals = *values;
  }
  std::vector<SequenceSpec> coeffs;
  for (std::int64_t k = 0; k <= r; ++k) {
    const Rational& v = vals[static_cast<std::size_t>(k)];
    if (v == 0) {
      throw Error(ErrorCode::ZeroValueRejected,
                  "value for coefficient " + std::to_string(k) + " is zero");
    }
    coeffs.push_back(SequenceSpec::residue_polynomial(m, {{floor_mod(-k, m), Polynomial{{v}}}}));
  }
  return OperatorSpec(std::move(coeffs));
}

SequenceSpec example1_lacunary(std::int64_t r) {
  if (r < 1) precondition_failed("example1_lacunary needs r >= 1");
  return SequenceSpec::geometric_support(r + 1, 1, 1);
}

std::vector<ResidueMask> example1_coefficient_masks(std::int64_t r) {
  std::vector<ResidueMask> masks;
  for (std::int64_t k = 0; k <= r; ++k) masks.emplace_back(r + 1, std::set{floor_mod(-k, r + 1)});
  return masks;
}

ResidueMask nonzero_residues(std::int64_t modulus) {
  ResidueMask mask = ResidueMask::all(modulus);
  mask.allowed.erase(0);
  return mask;
}

OperatorSpec fibonacci_operator() {
  return OperatorSpec({SequenceSpec::constant(-1), SequenceSpec::constant(-1), SequenceSpec::constant(1)});
}

OperatorSpec random_residue_operator(std::int64_t r, std::int64_t modulus, std::uint64_t seed) {
  if (r < 1 || r > 6 || modulus < 1 || modulus > 6) {
    precondition_failed("random residue operators need 1 <= r <= 6 and 1 <= modulus <= 6");
  }
  // Raw engine output only: distributions are implementation-defined and
  // would break cross-platform reproducibility.
  std::mt19937_64 rng(seed);
  constexpr std::int64_t kConstants[] = {-3, -2, -1, 1, 2, 3};
  std::vector<SequenceSpec> coeffs;
  for (std::int64_t k = 0; k <= r; ++k) {
    std::map<std::int64_t, Polynomial> classes;
    for (std::int64_t rho = 0; rho < modulus; ++rho) {
      if ((rng() & 1U) == 0) continue;
      classes[rho] = Polynomial{{Rational(kConstants[rng() % 6])}};
    }
    coeffs.push_back(SequenceSpec::residue_polynomial(modulus, std::move(classes)));
  }
  return OperatorSpec(std::move(coeffs));
}

namespace {

std::string window_text(const Window& w) {
  return "[" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]";
}

struct FactChecker {
  const CorpusEntry& entry;

  FactOutcome operator()(const KernelDimension& f) const {
    const auto dim = static_cast<std::int64_t>(finite_support_kernel(entry.op, f.window).dimension());
    return {dim == f.expected, "finite-support kernel on " + window_text(f.window) + " has dimension " +
                                   std::to_string(dim) + " (expected " + std::to_string(f.expected) + ")"};
  }
  FactOutcome operator()(const FreeKernelDimension& f) const {
    const auto dim = free_kernel_dim(entry.op, f.window);
    return {dim == f.expected, "free kernel on " + window_text(f.window) + " has dimension " +
                                   std::to_string(dim) + " (expected " + std::to_string(f.expected) + ")"};
  }
  FactOutcome operator()(const CertifiesDimension& f) const {
    const auto result = certify_dimension(entry.op, f.k, f.budget);
    const auto* cert = std::get_if<DimensionCertificate>(&result);
    const bool ok = (cert != nullptr) == f.expect_certificate && (!cert || verify(entry.op, *cert).passed);
    return {ok, "certify k=" + std::to_string(f.k) + " budget=" + std::to_string(f.budget) + ": " +
                    (cert ? "certificate" : "inconclusive")};
  }
  FactOutcome operator()(const SplitPieceCount& f) const {
    if (!entry.lacunary) return {false, "entry has no lacunary sequence"};
    const auto pieces = split_lacunary(entry.op, *entry.lacunary, f.window, 1'000'000);
    const auto n = static_cast<std::int64_t>(pieces.size());
    return {n == f.expected, "split on " + window_text(f.window) + " gives " + std::to_string(n) +
                                 " pieces (expected " + std::to_string(f.expected) + ")"};
  }
  FactOutcome operator()(const ResidueCertified& f) const {
    if (!entry.masks || !entry.lacunary) return {false, "entry has no residue masks"};
    const auto cert = residue_certificate(entry.op, entry.masks->coefficients, entry.masks->solution,
                                          &*entry.lacunary);
    return {cert.certified() == f.expected,
            std::string("residue certificate ") + (cert.certified() ? "issued" : "refused")};
  }
  FactOutcome operator()(const LacunaryResidualsVanish& f) const {
    if (!entry.lacunary) return {false, "entry has no lacunary sequence"};
    for (std::int64_t n = f.equations.lo; n <= f.equations.hi; ++n) {
      if (residual(entry.op, *entry.lacunary, n) != 0) {
        return {false, "residual nonzero at n = " + std::to_string(n)};
      }
    }
    return {true, "residuals vanish for n in " + window_text(f.equations)};
  }
};

CorpusEntry example1_entry(std::int64_t r, std::int64_t dim8, std::int64_t dim50, std::int64_t dim100,
                           std::int64_t pieces) {
  CorpusEntry e{"example1-r" + std::to_string(r), example1_operator(r), example1_lacunary(r),
                ResidueMasks{example1_coefficient_masks(r), nonzero_residues(r + 1)}, {}};
  e.known_facts = {
      KernelDimension{{0, 8}, dim8},
      KernelDimension{{0, 50}, dim50},
      KernelDimension{{0, 100}, dim100},
      CertifiesDimension{10, 100, true},
      SplitPieceCount{{0, 1000}, pieces},
      ResidueCertified{true},
      LacunaryResidualsVanish{{-r, 500}},
  };
  return e;
}

}  // namespace

FactOutcome check_fact(const CorpusEntry& entry, const KnownFact& fact) {
  return std::visit(FactChecker{entry}, fact);
}

std::vector<CorpusEntry> entries() {
  std::vector<CorpusEntry> out;
  // Kernel dimensions count the n in [0, N] with (r+1) not dividing n.
  out.push_back(example1_entry(1, 4, 25, 50, 8));
  out.push_back(example1_entry(2, 6, 34, 67, 8));
  out.push_back(example1_entry(3, 6, 38, 75, 7));
  out[1].known_facts.push_back(FreeKernelDimension{{0, 8}, 6});
  out[1].known_facts.push_back(CertifiesDimension{50, 100, true});

  out.push_back(CorpusEntry{"fibonacci", fibonacci_operator(), std::nullopt, std::nullopt,
                            {KernelDimension{{0, 199}, 0}, FreeKernelDimension{{0, 10}, 2},
                             CertifiesDimension{1, 200, false}}});
  out.push_back(CorpusEntry{"zero-r2", OperatorSpec::zero(2), std::nullopt, std::nullopt,
                            {KernelDimension{{0, 4}, 5}, FreeKernelDimension{{0, 4}, 5},
                             CertifiesDimension{7, 8, true}}});
  return out;
}

std::optional<CorpusEntry> find(const std::string& name) {
  for (auto& e : entries()) {
    if (e.name == name) return std::move(e);
  }
  return std::nullopt;
}

}  // namespace lacuna::corpus
