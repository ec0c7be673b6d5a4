#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "lacuna/corpus.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/linalg.hpp"
#include "lacuna/operator.hpp"
#include "lacuna/sequence.hpp"

namespace lacuna::json_io {

using Json = nlohmann::json;

// Every *_from_json throws Error(ParseError) naming the offending field.

[[nodiscard]] Json to_json(const Rational& value);
[[nodiscard]] Rational rational_from_json(const Json& j);

[[nodiscard]] Json to_json(const Window& w);
[[nodiscard]] Window window_from_json(const Json& j);

[[nodiscard]] Json to_json(const SequenceSpec& spec);
[[nodiscard]] SequenceSpec sequence_from_json(const Json& j);

[[nodiscard]] Json to_json(const OperatorSpec& op);
[[nodiscard]] OperatorSpec operator_from_json(const Json& j);

[[nodiscard]] Json to_json(const FiniteSolution& x);
[[nodiscard]] FiniteSolution finite_solution_from_json(const Json& j);

[[nodiscard]] Json to_json(const ResidueMask& mask);
[[nodiscard]] ResidueMask residue_mask_from_json(const Json& j);

[[nodiscard]] Json to_json(const KernelBasis& basis);
[[nodiscard]] KernelBasis kernel_basis_from_json(const Json& j);

[[nodiscard]] Json to_json(const DimensionCertificate& cert);
[[nodiscard]] DimensionCertificate dimension_certificate_from_json(const Json& j);

[[nodiscard]] Json to_json(const PartialLacunarySolution& sol);
[[nodiscard]] PartialLacunarySolution partial_lacunary_from_json(const Json& j);

[[nodiscard]] Json to_json(const Inconclusive& inc);

[[nodiscard]] Json to_json(const corpus::KnownFact& fact);
[[nodiscard]] Json to_json(const corpus::CorpusEntry& entry);
/// Names and known facts of every corpus entry.
[[nodiscard]] Json corpus_manifest();

/// Parses JSON text; syntax errors become Error(ParseError) with line and
/// column. `source` names the input in the message.
[[nodiscard]] Json parse_document(std::string_view text, std::string_view source);

/// Canonical textual form: two-space indent, sorted keys, trailing newline.
[[nodiscard]] std::string dump(const Json& j);

}  // namespace lacuna::json_io
