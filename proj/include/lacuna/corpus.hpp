#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lacuna/operator.hpp"

namespace lacuna::corpus {

/// Coefficient k is nonzero only when (r+1) | (n+k), where it equals
/// values[k] (default 1). Throws Error(ZeroValueRejected) on a zero value.
[[nodiscard]] OperatorSpec example1_operator(std::int64_t r,
                                             const std::optional<std::vector<Rational>>& values = {});

/// Indicator of { (r+1) 2^m + 1 : m >= 0 }.
[[nodiscard]] SequenceSpec example1_lacunary(std::int64_t r);

/// Masks matching example1_operator(r): coefficient k lives on -k mod (r+1).
[[nodiscard]] std::vector<ResidueMask> example1_coefficient_masks(std::int64_t r);

/// Residues 1..m-1 modulo m.
[[nodiscard]] ResidueMask nonzero_residues(std::int64_t modulus);

/// x(n+2) - x(n+1) - x(n) with constant coefficients.
[[nodiscard]] OperatorSpec fibonacci_operator();

/// Seeded residue-pattern operator: each coefficient is supported on a random
/// subset of classes mod `modulus`, with small nonzero integer constants.
/// Requires 1 <= r <= 6 and 1 <= modulus <= 6.
[[nodiscard]] OperatorSpec random_residue_operator(std::int64_t r, std::int64_t modulus,
                                                   std::uint64_t seed);

struct KernelDimension {
  Window window;
  std::int64_t expected;
};
struct FreeKernelDimension {
  Window window;
  std::int64_t expected;
};
struct CertifiesDimension {
  std::int64_t k;
  std::int64_t budget;
  bool expect_certificate;
};
struct SplitPieceCount {
  Window window;
  std::int64_t expected;
};
struct ResidueCertified {
  bool expected;
};
struct LacunaryResidualsVanish {
  Window equations;  // every n in this range
};

using KnownFact = std::variant<KernelDimension, FreeKernelDimension, CertifiesDimension,
                               SplitPieceCount, ResidueCertified, LacunaryResidualsVanish>;

struct ResidueMasks {
  std::vector<ResidueMask> coefficients;
  ResidueMask solution;
};

struct CorpusEntry {
  std::string name;
  OperatorSpec op;
  std::optional<SequenceSpec> lacunary;
  std::optional<ResidueMasks> masks;
  std::vector<KnownFact> known_facts;
};

struct FactOutcome {
  bool passed;
  std::string description;
};

[[nodiscard]] FactOutcome check_fact(const CorpusEntry& entry, const KnownFact& fact);

[[nodiscard]] std::vector<CorpusEntry> entries();
[[nodiscard]] std::optional<CorpusEntry> find(const std::string& name);

}  // namespace lacuna::corpus
