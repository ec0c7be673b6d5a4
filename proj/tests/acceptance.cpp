#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <string>

#include <unistd.h>

#include "lacuna/cli.hpp"
#include "lacuna/corpus.hpp"
#include "lacuna/json_io.hpp"
#include "lacuna/lacunary.hpp"
#include "oracle/naive.hpp"

using namespace lacuna;

namespace {

// Runtime limits in seconds.
constexpr double kLimitKernelCase = 1.0;
constexpr double kLimitCertify = 5.0;
constexpr double kLimitSplit = 1.0;
constexpr double kLimitBuild = 2.0;
constexpr double kLimitOracleSuite = 30.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double t = seconds_since(t0);
  if (!out.passed) ++failures;
  std::printf("[%s] criterion %d: %s (%.3f s)%s%s\n", out.passed ? "PASS" : "FAIL", id, title, t,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

std::string str(std::int64_t v) { return std::to_string(v); }

oracle::Coefficient coefficients_of(const OperatorSpec& op) {
  return [op](std::int64_t k, std::int64_t n) { return oracle::Q(op.coeff(k)(n)); };
}

Outcome example1_kernel_dimensions() {
  Outcome out;
  for (std::int64_t r = 1; r <= 3; ++r) {
    const auto op = corpus::example1_operator(r);
    for (std::int64_t n_max : {8, 50, 100}) {
      std::int64_t expected = 0;
      for (std::int64_t n = 0; n <= n_max; ++n) expected += n % (r + 1) != 0;
      const auto naive = static_cast<std::int64_t>(oracle::confined_nullity(oracle::example1(r), r, 0, n_max));
      const auto t0 = Clock::now();
      const auto dim = static_cast<std::int64_t>(finite_support_kernel(op, {0, n_max}).dimension());
      const double t = seconds_since(t0);
      const std::string tag = "r=" + str(r) + " N=" + str(n_max);
      out.require(naive == expected, tag + ": oracle " + str(naive) + " vs count " + str(expected));
      out.require(dim == expected, tag + ": got " + str(dim) + ", expected " + str(expected));
      out.require(t < kLimitKernelCase, tag + ": took " + std::to_string(t) + " s");
    }
  }
  return out;
}

Outcome dimension_certification() {
  Outcome out;
  const auto op = corpus::example1_operator(2);
  const auto t0 = Clock::now();
  const auto result = certify_dimension(op, 50, 100);
  const auto* cert = std::get_if<DimensionCertificate>(&result);
  out.require(cert != nullptr, "certify_dimension was inconclusive");
  if (!cert) return out;
  out.require(cert->k() == 50, "certificate holds " + str(static_cast<std::int64_t>(cert->k())) + " solutions");
  for (std::size_t i = 0; i < cert->solutions.size(); ++i) {
    const auto& s = cert->solutions[i];
    out.require(is_global_solution_finite(op, s), "solution " + str(static_cast<std::int64_t>(i)) + " fails");
    out.require(cert->window.contains(s.span()), "solution outside the certificate window");
    for (std::size_t j = i + 1; j < cert->solutions.size(); ++j) {
      out.require(supports_disjoint(s, cert->solutions[j]), "overlapping supports");
    }
  }
  const std::string text = json_io::dump(json_io::to_json(*cert));
  const auto reloaded = json_io::dimension_certificate_from_json(json_io::parse_document(text, "certificate"));
  const auto report = verify(op, reloaded);
  out.require(report.passed, "verify on the serialized certificate failed");
  const double t = seconds_since(t0);
  out.require(t < kLimitCertify, "took " + std::to_string(t) + " s");
  return out;
}

Outcome lacunary_split() {
  Outcome out;
  const auto op = corpus::example1_operator(2);
  const auto t0 = Clock::now();
  const auto pieces = split_lacunary(op, corpus::example1_lacunary(2), {0, 1000}, std::int64_t{1} << 40);
  const double t = seconds_since(t0);
  const std::vector<std::vector<std::int64_t>> expected{{4, 7}, {13}, {25}, {49}, {97}, {193}, {385}, {769}};
  out.require(pieces.size() == expected.size(), "got " + str(static_cast<std::int64_t>(pieces.size())) + " pieces");
  for (std::size_t i = 0; i < pieces.size() && i < expected.size(); ++i) {
    out.require(pieces[i].support() == expected[i], "piece " + str(static_cast<std::int64_t>(i)) + " has the wrong support");
    out.require(is_global_solution_finite(op, pieces[i]), "piece " + str(static_cast<std::int64_t>(i)) + " is not a solution");
  }
  out.require(t < kLimitSplit, "took " + std::to_string(t) + " s");
  return out;
}

Outcome lacunary_construction() {
  Outcome out;
  const auto op = corpus::example1_operator(2);
  const auto t0 = Clock::now();
  const auto result = build_lacunary(op, 20, 200);
  const double t = seconds_since(t0);
  const auto* sol = std::get_if<PartialLacunarySolution>(&result);
  out.require(sol != nullptr, "build_lacunary was inconclusive");
  if (!sol) return out;
  const auto& gaps = sol->gap_profile;
  out.require(!gaps.empty() && gaps.back() >= 20, "largest gap below 20");
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    out.require(gaps[i] >= static_cast<std::int64_t>(i) + 2, "gap " + str(static_cast<std::int64_t>(i)) + " below i+2");
    if (i > 0) out.require(gaps[i] > gaps[i - 1], "gap profile not strictly increasing");
  }
  const auto whole = sol->assembled();
  const std::int64_t r = op.order();
  const Window w{whole.min_support() - r, whole.max_support() + r};
  out.require(!first_residual_failure(op, whole.as_sequence(), w), "assembled prefix fails the windowed check");
  out.require(is_global_solution_finite(op, whole), "assembled prefix is not a global solution");
  out.require(verify(op, *sol).passed, "verify rejects the prefix");
  out.require(t < kLimitBuild, "took " + std::to_string(t) + " s");
  return out;
}

Outcome fibonacci_control() {
  Outcome out;
  const auto op = corpus::fibonacci_operator();
  for (std::int64_t len = 1; len <= 200; ++len) {
    for (std::int64_t lo : {-137, 0, 1000}) {
      const Window w{lo, lo + len - 1};
      out.require(finite_support_kernel(op, w).dimension() == 0, "nonzero kernel on [" + str(w.lo) + "," + str(w.hi) + "]");
    }
  }
  out.require(oracle::confined_nullity(oracle::fibonacci(), 2, 0, 199) == 0, "oracle disagrees on [0,199]");
  out.require(free_kernel_dim(op, {0, 10}) == 2, "free kernel dimension is not 2");
  out.require(free_kernel_dim(op, {-50, 149}) == 2, "free kernel dimension on [-50,149] is not 2");
  out.require(oracle::free_nullity(oracle::fibonacci(), 2, 0, 10) == 2, "oracle free nullity is not 2");

  const auto result = certify_dimension(op, 1, 200);
  out.require(std::holds_alternative<Inconclusive>(result), "certify_dimension did not return Inconclusive");

  const auto dir = std::filesystem::temp_directory_path() / ("lacuna_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto path = (dir / "fibonacci.json").string();
  std::ofstream(path) << json_io::dump(json_io::to_json(op));
  cli::CliConfig config;
  config.command = cli::Command::Certify;
  config.operator_path = path;
  config.k = 1;
  config.budget = 200;
  const auto run = cli::run(config);
  std::filesystem::remove_all(dir);
  out.require(run.exit_code == cli::kExitInconclusive, "CLI exit code " + str(run.exit_code) + ", expected 2");
  return out;
}

Outcome oracle_equivalence() {
  Outcome out;
  const auto t0 = Clock::now();
  std::size_t nullspace_vectors = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::int64_t r = 1 + static_cast<std::int64_t>(seed % 3);
    const std::int64_t modulus = 1 + static_cast<std::int64_t>((seed / 3) % 4);
    const auto op = corpus::random_residue_operator(r, modulus, seed);
    const auto coeff = coefficients_of(op);
    std::mt19937_64 rng(seed ^ 0x5eedULL);
    const auto lo = static_cast<std::int64_t>(rng() % 41) - 20;
    const auto len = static_cast<std::int64_t>(12 + rng() % 29);
    const std::int64_t inner_len = 1 + len / 3;
    const std::int64_t mid_len = 2 * len / 3;
    const std::vector<Window> nested{{lo, lo + inner_len - 1}, {lo, lo + mid_len - 1}, {lo - (len - mid_len), lo + mid_len - 1}};
    const std::string tag = "seed " + std::to_string(seed);

    std::size_t previous = 0;
    for (const auto& w : nested) {
      for (auto mode : {WindowMode::SupportConfined, WindowMode::FreeBoundary}) {
        const auto m = window_matrix(op, w, mode);
        const std::int64_t r_lo = mode == WindowMode::SupportConfined ? w.lo - r : w.lo;
        const auto reference = oracle::equations(coeff, r, w.lo, w.hi, r_lo, w.hi - (mode == WindowMode::FreeBoundary ? r : 0));
        bool same_matrix = m.rows() == reference.size();
        for (std::size_t i = 0; same_matrix && i < m.rows(); ++i) {
          same_matrix = std::equal(m.row(i).begin(), m.row(i).end(), reference[i].begin(), reference[i].end());
        }
        out.require(same_matrix, tag + ": window matrix differs from the equations");
        const auto rn = rank_and_nullspace(m);
        const auto naive = oracle::reduce(reference, static_cast<std::size_t>(w.size()));
        out.require(rn.rank == naive.rank, tag + ": rank " + std::to_string(rn.rank) + " vs oracle " + std::to_string(naive.rank));
        out.require(rn.basis.size() == naive.nullspace.size(), tag + ": nullity differs from the oracle");
        for (const auto& v : rn.basis) {
          ++nullspace_vectors;
          const auto image = m.apply(v);
          out.require(std::ranges::all_of(image, [](const Rational& e) { return e == 0; }), tag + ": M v != 0");
        }
      }
      const std::size_t dim = finite_support_kernel(op, w).dimension();
      out.require(dim >= previous, tag + ": kernel dimension shrank under window growth");
      previous = dim;
    }
  }
  const double t = seconds_since(t0);
  out.require(nullspace_vectors > 0, "no nullspace vectors were exercised");
  out.require(t < kLimitOracleSuite, "took " + std::to_string(t) + " s");
  return out;
}

Outcome certificate_calculus() {
  Outcome out;
  for (std::int64_t r = 1; r <= 3; ++r) {
    const auto op = corpus::example1_operator(r);
    const auto masks = corpus::example1_coefficient_masks(r);
    const auto lacunary = corpus::example1_lacunary(r);
    const std::string tag = "r=" + str(r);

    const auto cert = residue_certificate(op, masks, corpus::nonzero_residues(r + 1), &lacunary);
    out.require(cert.certified(), tag + ": nonzero residues not certified");

    // Any sequence living on the nonzero residues must solve the equation.
    std::mt19937_64 rng(static_cast<std::uint64_t>(r));
    std::vector<Rational> values;
    for (std::int64_t n = -r; n <= 500; ++n) {
      values.emplace_back(n % (r + 1) == 0 ? 0 : static_cast<long>(rng() % 9) - 4);
    }
    const auto table = SequenceSpec::finite_table(-r, values, 0);
    const Window w{-r, 500};
    for (const auto* x : {&lacunary, &table}) {
      out.require(!first_residual_failure(op, *x, w), tag + ": certified sequence fails a residual");
      const auto naive = oracle::example1(r);
      for (std::int64_t n = w.lo; n <= w.hi - r; ++n) {
        oracle::Q sum = 0;
        for (std::int64_t k = 0; k <= r; ++k) sum += naive(k, n) * oracle::Q((*x)(n + k));
        if (sum != 0) {
          out.require(false, tag + ": oracle residual nonzero at " + str(n));
          break;
        }
      }
    }

    const auto with_zero = corpus::nonzero_residues(r + 1);
    auto allowed = with_zero.allowed;
    allowed.insert(0);
    const auto bad = residue_certificate(op, masks, ResidueMask(r + 1, allowed));
    out.require(!bad.certified(), tag + ": mask containing residue 0 was certified");
    const auto only_zero = residue_certificate(op, masks, ResidueMask(r + 1, {0}));
    out.require(!only_zero.certified(), tag + ": mask {0} was certified");

    // The collision is real: a point mass at a multiple of r+1 is not a solution.
    const auto spike = SequenceSpec::finite_table(0, {1}, 0);
    out.require(first_residual_failure(op, spike, w).has_value(), tag + ": uncertified witness solves the equation");
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "example1 finite-support kernel dimensions", example1_kernel_dimensions);
  criterion(2, "dimension certificate k=50, budget=100", dimension_certification);
  criterion(3, "split of the lacunary solution on [0,1000]", lacunary_split);
  criterion(4, "lacunary construction G=20, budget=200", lacunary_construction);
  criterion(5, "Fibonacci negative control", fibonacci_control);
  criterion(6, "oracle equivalence on 100 random operators", oracle_equivalence);
  criterion(7, "residue certificates", certificate_calculus);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
