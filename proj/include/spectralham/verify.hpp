#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectralham/conditions.hpp"
#include "spectralham/families.hpp"

namespace spectralham {

enum class Outcome { pass, fail, inconclusive, unclaimed };
const char* to_string(Outcome o);

enum class VerifyTarget {
  lemma_1_3,
  lemma_1_4,
  lemma_1_6_p1,
  lemma_1_6_p2,
  prop_3_x,
  prop_4_1,
  section5_M,
  section5_B,
  edge_bounds,
  crosscheck,
  check,
  families,
};
const char* to_string(VerifyTarget t);
VerifyTarget parse_verify_target(std::string_view text);

struct RunParams {
  std::vector<std::size_t> ks;
  std::vector<std::size_t> ns;
  EnumerationMode mode = EnumerationMode::orbit;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  double margin = 1e-6;
  bool allow_below_threshold = false;
  /// Seconds per exact comparison before falling back to the interval; 0 = none.
  double time_budget = 0.0;
  std::size_t jobs = 1;
};

/// One verified claim. Items outside a statement's hypotheses are reported
/// as unclaimed rather than failed.
struct RunItem {
  std::string target;
  std::string subject;
  std::string claim;
  Outcome outcome = Outcome::inconclusive;
  std::string method;
  std::string detail;
  std::string key;
  nlohmann::json data;
};

struct RunSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
  std::size_t unclaimed = 0;

  std::size_t total() const { return pass + fail + inconclusive + unclaimed; }
};

struct VerificationRun {
  std::string name;
  RunParams params;
  std::vector<RunItem> items;
  /// Rows of the theorem-applicability table for section5 runs.
  std::vector<nlohmann::json> table;
  std::vector<std::string> notes;

  RunSummary summary() const;
  bool ok() const { return summary().fail == 0; }
  void append(VerificationRun other);
};

/// Lemma targets: lemma_1_3 (M1 u L1, q >= 2(n-k-1)), lemma_1_4 (M2 u L2,
/// q < 2(n-k-1), plus q > 2n-2k-3), lemma_1_6_p1 (B1, q >= 2n-k),
/// lemma_1_6_p2 (B2, q < 2n-k). Every comparison uses exact inertia.
VerificationRun cmd_verify_lemma(VerifyTarget target, std::size_t k, std::size_t n, const RunParams& params);

/// M' rows when n meets the non-bipartite threshold, B' rows when n meets
/// the bipartite one (both with allow_below_threshold).
VerificationRun cmd_section5(std::size_t k, std::size_t n, const RunParams& params);

/// Eigenvector propositions on the q-maximizing orbit representative of
/// M2/L2 (non-bipartite threshold) and B2 (bipartite threshold).
VerificationRun cmd_verify_props(std::size_t k, std::size_t n, const RunParams& params);

VerificationRun cmd_check(const Graph& g, const std::string& source, std::size_t k,
                          const std::vector<TheoremId>& theorems, const RunParams& params);

/// Random graphs with forced minimum degree; every hamiltonian_guaranteed
/// conclusion is audited against exact search.
VerificationRun cmd_crosscheck(std::size_t n_max, std::size_t samples, std::uint64_t seed, const RunParams& params);

/// Upper bounds fy_bound and ln_bipartite_bound against certified q on
/// family members and complete graphs.
VerificationRun cmd_edge_bounds(std::size_t k, std::size_t n, const RunParams& params);

VerificationRun cmd_families(FamilyTag tag, std::size_t k, std::size_t n, const RunParams& params);

/// Evaluates fn(i) for i in [0, count) on up to `jobs` threads; results keep
/// index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, std::size_t jobs, Fn fn);

enum class OutputFormat { text, json, csv };
OutputFormat parse_output_format(std::string_view text);

void write_run(std::ostream& out, const VerificationRun& run, OutputFormat format);
nlohmann::json to_json(const VerificationRun& run);

}  // namespace spectralham

#include "spectralham/detail/parallel.hpp"
