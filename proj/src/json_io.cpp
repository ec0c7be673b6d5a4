#include "lacuna/json_io.hpp"

#include <algorithm>

#include "lacuna/error.hpp"

namespace lacuna::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key, const char* context) {
  if (!j.is_object()) bad(std::string(context) + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string(context) + ": missing field \"" + key + "\"");
  return *it;
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + ": expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t integer_field(const Json& j, const char* key, const char* context) {
  return integer(field(j, key, context), (std::string(context) + "." + key).c_str());
}

const Json& array_field(const Json& j, const char* key, const char* context) {
  const Json& a = field(j, key, context);
  if (!a.is_array()) bad(std::string(context) + "." + key + ": expected an array");
  return a;
}

Json rationals_to_json(std::span<const Rational> values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + ": expected an array of rationals");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

// Representation invariants surface as parse errors when they come from input.
template <typename F>
auto parsing(const char* context, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    bad(std::string(context) + ": " + e.what());
  }
}

std::string fact_name(const corpus::KnownFact& fact) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, corpus::KernelDimension>) return "kernel_dimension";
        if constexpr (std::is_same_v<T, corpus::FreeKernelDimension>) return "free_kernel_dimension";
        if constexpr (std::is_same_v<T, corpus::CertifiesDimension>) return "certifies_dimension";
        if constexpr (std::is_same_v<T, corpus::SplitPieceCount>) return "split_piece_count";
        if constexpr (std::is_same_v<T, corpus::ResidueCertified>) return "residue_certified";
        if constexpr (std::is_same_v<T, corpus::LacunaryResidualsVanish>) return "lacunary_residuals_vanish";
      },
      fact);
}

}  // namespace

Json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return to_rational(j.get<std::int64_t>());
  if (!j.is_string()) bad("expected a rational string \"p/q\"");
  return parse_rational(j.get<std::string>());
}

Json to_json(const Window& w) { return Json::array({w.lo, w.hi}); }

Window window_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("window: expected [lo, hi]");
  return parsing("window", [&] { return Window(integer(j[0], "window.lo"), integer(j[1], "window.hi")); });
}

Json to_json(const SequenceSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FiniteTable>) {
          return {{"kind", "finite_table"},
                  {"anchor", s.anchor},
                  {"values", rationals_to_json(s.values)},
                  {"default", to_json(s.fallback)}};
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return {{"kind", "periodic"},
                  {"period", s.period},
                  {"values", rationals_to_json(s.values)},
                  {"offset", s.offset}};
        } else if constexpr (std::is_same_v<T, ResiduePolynomial>) {
          Json classes = Json::object();
          for (const auto& [residue, poly] : s.per_class) {
            classes[std::to_string(residue)] = rationals_to_json(poly.coeffs);
          }
          return {{"kind", "residue_poly"}, {"modulus", s.modulus}, {"perClass", classes}};
        } else {
          return {{"kind", "geometric_support"},
                  {"scale", s.scale},
                  {"shift", s.shift},
                  {"value", to_json(s.value)},
                  {"allowNegativeExponent", s.allow_negative_exponent}};
        }
      },
      spec.variant());
}

SequenceSpec sequence_from_json(const Json& j) {
  constexpr const char* ctx = "sequence";
  const Json& kind_json = field(j, "kind", ctx);
  if (!kind_json.is_string()) bad("sequence.kind: expected a string");
  const auto kind = kind_json.get<std::string>();
  return parsing(ctx, [&] {
    if (kind == "finite_table") {
      Rational fallback = 0;
      if (j.contains("default")) fallback = rational_from_json(j["default"]);
      return SequenceSpec::finite_table(integer_field(j, "anchor", ctx),
                                        rationals_from_json(field(j, "values", ctx), "sequence.values"),
                                        fallback);
    }
    if (kind == "periodic") {
      const std::int64_t offset = j.contains("offset") ? integer_field(j, "offset", ctx) : 0;
      return SequenceSpec::periodic(integer_field(j, "period", ctx),
                                    rationals_from_json(field(j, "values", ctx), "sequence.values"), offset);
    }
    if (kind == "residue_poly") {
      const Json& classes = field(j, "perClass", ctx);
      if (!classes.is_object()) bad("sequence.perClass: expected an object");
      std::map<std::int64_t, Polynomial> per_class;
      for (const auto& [key, coeffs] : classes.items()) {
        std::int64_t residue = 0;
        try {
          std::size_t used = 0;
          residue = std::stoll(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::logic_error&) {
          bad("sequence.perClass: key \"" + key + "\" is not an integer residue");
        }
        per_class[residue] = Polynomial{rationals_from_json(coeffs, "sequence.perClass")};
      }
      return SequenceSpec::residue_polynomial(integer_field(j, "modulus", ctx), std::move(per_class));
    }
    if (kind == "geometric_support") {
      bool negative = false;
      if (j.contains("allowNegativeExponent")) {
        if (!j["allowNegativeExponent"].is_boolean()) bad("sequence.allowNegativeExponent: expected a boolean");
        negative = j["allowNegativeExponent"].get<bool>();
      }
      return SequenceSpec::geometric_support(integer_field(j, "scale", ctx), integer_field(j, "shift", ctx),
                                             rational_from_json(field(j, "value", ctx)), negative);
    }
    bad("sequence.kind: unknown kind \"" + kind + "\"");
  });
}

Json to_json(const OperatorSpec& op) {
  Json coeffs = Json::array();
  for (const auto& c : op.coeffs()) coeffs.push_back(to_json(c));
  return {{"order", op.order()}, {"coeffs", coeffs}};
}

OperatorSpec operator_from_json(const Json& j) {
  constexpr const char* ctx = "operator";
  const std::int64_t order = integer_field(j, "order", ctx);
  const Json& coeffs = array_field(j, "coeffs", ctx);
  if (order < 0 || static_cast<std::int64_t>(coeffs.size()) != order + 1) {
    bad("operator: \"coeffs\" must hold order + 1 sequences");
  }
  std::vector<SequenceSpec> specs;
  for (const auto& c : coeffs) specs.push_back(sequence_from_json(c));
  return OperatorSpec(std::move(specs));
}

Json to_json(const FiniteSolution& x) {
  return {{"anchor", x.anchor()}, {"values", rationals_to_json(x.values())}};
}

FiniteSolution finite_solution_from_json(const Json& j) {
  constexpr const char* ctx = "finite solution";
  return parsing(ctx, [&] {
    return FiniteSolution(integer_field(j, "anchor", ctx),
                          rationals_from_json(field(j, "values", ctx), "finite solution.values"));
  });
}

Json to_json(const ResidueMask& mask) {
  return {{"modulus", mask.modulus}, {"allowed", Json(mask.allowed)}};
}

ResidueMask residue_mask_from_json(const Json& j) {
  constexpr const char* ctx = "mask";
  std::set<std::int64_t> allowed;
  for (const auto& r : array_field(j, "allowed", ctx)) allowed.insert(integer(r, "mask.allowed"));
  return parsing(ctx, [&] { return ResidueMask(integer_field(j, "modulus", ctx), std::move(allowed)); });
}

Json to_json(const KernelBasis& basis) {
  Json vectors = Json::array();
  for (const auto& v : basis.vectors) vectors.push_back(rationals_to_json(v));
  return {{"window", to_json(basis.window)}, {"vectors", vectors}};
}

KernelBasis kernel_basis_from_json(const Json& j) {
  constexpr const char* ctx = "kernel basis";
  KernelBasis out{window_from_json(field(j, "window", ctx)), {}};
  for (const auto& v : array_field(j, "vectors", ctx)) {
    out.vectors.push_back(rationals_from_json(v, "kernel basis.vectors"));
  }
  return out;
}

Json to_json(const DimensionCertificate& cert) {
  Json sols = Json::array();
  for (const auto& s : cert.solutions) sols.push_back(to_json(s));
  return {{"k", cert.k()}, {"window", to_json(cert.window)}, {"solutions", sols}};
}

DimensionCertificate dimension_certificate_from_json(const Json& j) {
  constexpr const char* ctx = "certificate";
  DimensionCertificate cert{window_from_json(field(j, "window", ctx)), {}};
  for (const auto& s : array_field(j, "solutions", ctx)) cert.solutions.push_back(finite_solution_from_json(s));
  if (integer_field(j, "k", ctx) != static_cast<std::int64_t>(cert.k())) {
    bad("certificate: \"k\" does not match the number of solutions");
  }
  return cert;
}

Json to_json(const PartialLacunarySolution& sol) {
  Json blocks = Json::array();
  for (const auto& b : sol.blocks) blocks.push_back(to_json(b));
  return {{"ray", sol.ray == Ray::Positive ? "positive" : "negative"},
          {"blocks", blocks},
          {"gapProfile", Json(sol.gap_profile)},
          {"gapTargets", Json(sol.gap_targets)}};
}

PartialLacunarySolution partial_lacunary_from_json(const Json& j) {
  constexpr const char* ctx = "lacunary prefix";
  PartialLacunarySolution sol;
  const Json& ray = field(j, "ray", ctx);
  if (ray == "positive") {
    sol.ray = Ray::Positive;
  } else if (ray == "negative") {
    sol.ray = Ray::Negative;
  } else {
    bad("lacunary prefix.ray: expected \"positive\" or \"negative\"");
  }
  for (const auto& b : array_field(j, "blocks", ctx)) sol.blocks.push_back(finite_solution_from_json(b));
  for (const auto& g : array_field(j, "gapProfile", ctx)) sol.gap_profile.push_back(integer(g, "gapProfile"));
  for (const auto& g : array_field(j, "gapTargets", ctx)) sol.gap_targets.push_back(integer(g, "gapTargets"));
  return sol;
}

Json to_json(const Inconclusive& inc) {
  return {{"status", "inconclusive"},
          {"maxKernelDim", inc.max_kernel_dim},
          {"maxDisjoint", inc.max_disjoint},
          {"reason", inc.reason}};
}

Json to_json(const corpus::KnownFact& fact) {
  Json out = std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, corpus::KernelDimension> ||
                      std::is_same_v<T, corpus::FreeKernelDimension> ||
                      std::is_same_v<T, corpus::SplitPieceCount>) {
          return {{"window", to_json(f.window)}, {"expected", f.expected}};
        } else if constexpr (std::is_same_v<T, corpus::CertifiesDimension>) {
          return {{"k", f.k}, {"budget", f.budget}, {"expectCertificate", f.expect_certificate}};
        } else if constexpr (std::is_same_v<T, corpus::ResidueCertified>) {
          return {{"expected", f.expected}};
        } else {
          return {{"equations", to_json(f.equations)}};
        }
      },
      fact);
  out["fact"] = fact_name(fact);
  return out;
}

Json to_json(const corpus::CorpusEntry& entry) {
  Json facts = Json::array();
  for (const auto& f : entry.known_facts) facts.push_back(to_json(f));
  Json out = {{"name", entry.name}, {"operator", to_json(entry.op)}, {"knownFacts", facts}};
  if (entry.lacunary) out["lacunarySolution"] = to_json(*entry.lacunary);
  if (entry.masks) {
    Json coeffs = Json::array();
    for (const auto& m : entry.masks->coefficients) coeffs.push_back(to_json(m));
    out["masks"] = {{"coefficients", coeffs}, {"solution", to_json(entry.masks->solution)}};
  }
  return out;
}

Json corpus_manifest() {
  Json list = Json::array();
  for (const auto& e : corpus::entries()) {
    Json facts = Json::array();
    for (const auto& f : e.known_facts) facts.push_back(to_json(f));
    list.push_back({{"name", e.name}, {"knownFacts", facts}});
  }
  return {{"entries", list}};
}

Json parse_document(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto before = text.substr(0, offset);
    const std::size_t line = 1 + static_cast<std::size_t>(std::ranges::count(before, '\n'));
    const auto line_start = before.rfind('\n');
    const std::size_t column = line_start == std::string_view::npos ? offset + 1 : offset - line_start;
    bad(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
        ": invalid JSON");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lacuna::json_io
