// spectralham: batch verification runs over the extremal families.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectralham/graph_io.hpp"
#include "spectralham/verify.hpp"

using namespace spectralham;

namespace {

struct Options {
  std::vector<std::size_t> ks;
  std::vector<std::size_t> ns;
  std::string n_range;
  std::string mode = "orbit";
  std::string format = "text";
  std::string output;
  RunParams params;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--k", o.ks, "Degree parameter k (repeatable)");
  cmd->add_option("--n", o.ns, "Order parameter n (repeatable)");
  cmd->add_option("--n-range", o.n_range, "Inclusive range A..B of n");
  cmd->add_option("--mode", o.mode, "orbit | exhaustive | sample")->check(CLI::IsMember({"orbit", "exhaustive", "sample"}));
  cmd->add_option("--samples", o.params.samples, "Members drawn in sample mode");
  cmd->add_option("--seed", o.params.seed, "Random seed");
  cmd->add_option("--tol", o.params.tol, "Eigenvalue interval tolerance");
  cmd->add_option("--margin", o.params.margin, "Minimum certified-interval margin");
  cmd->add_option("--format", o.format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--output", o.output, "Write the report here instead of stdout");
  cmd->add_flag("--allow-below-threshold", o.params.allow_below_threshold,
                "Run below the statement's threshold; results are marked out of hypothesis");
  cmd->add_option("--time-budget", o.params.time_budget, "Seconds per exact comparison (0 = unlimited)");
  cmd->add_option("--jobs", o.params.jobs, "Worker threads");
}

std::vector<std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw CLI::ValidationError("--n-range", "expected A..B");
  const std::size_t a = std::stoul(text.substr(0, dots));
  const std::size_t b = std::stoul(text.substr(dots + 2));
  if (a > b) throw CLI::ValidationError("--n-range", "empty range");
  std::vector<std::size_t> out;
  for (std::size_t n = a; n <= b; ++n) out.push_back(n);
  return out;
}

// Smallest n meeting each theorem's threshold, plus one above for k = 2.
std::vector<std::size_t> default_ns(std::size_t k, bool bipartite) {
  if (bipartite) return k == 2 ? std::vector<std::size_t>{74} : std::vector<std::size_t>{thm2_threshold(k)};
  return k == 2 ? std::vector<std::size_t>{48, 53} : std::vector<std::size_t>{thm1_threshold(k)};
}

std::vector<std::size_t> resolve_ns(const Options& o, std::size_t k, bool bipartite) {
  std::vector<std::size_t> ns = o.ns;
  if (!o.n_range.empty()) {
    auto r = parse_range(o.n_range);
    ns.insert(ns.end(), r.begin(), r.end());
  }
  return ns.empty() ? default_ns(k, bipartite) : ns;
}

void finish_params(Options& o) { o.params.mode = parse_enumeration_mode(o.mode); }

int emit(const Options& o, const VerificationRun& run) {
  const OutputFormat fmt = parse_output_format(o.format);
  if (o.output.empty()) {
    write_run(std::cout, run, fmt);
  } else {
    std::ofstream out(o.output);
    if (!out) throw std::runtime_error("cannot write " + o.output);
    write_run(out, run, fmt);
  }
  return run.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Hamiltonicity conditions: family construction and verification runs"};
  app.require_subcommand(1);

  Options lemma_opts, s5_opts, props_opts, check_opts, cross_opts, fam_opts;

  std::string lemma_target;
  auto* lemma = app.add_subcommand("verify-lemma", "Compare every family member against a lemma's threshold");
  lemma->add_option("target", lemma_target, "lemma_1_3 | lemma_1_4 | lemma_1_6_p1 | lemma_1_6_p2 | edge_bounds")
      ->required()
      ->check(CLI::IsMember({"lemma_1_3", "lemma_1_4", "lemma_1_6_p1", "lemma_1_6_p2", "edge_bounds"}));
  add_common(lemma, lemma_opts);

  auto* s5 = app.add_subcommand("section5", "Spectral and Hamiltonicity claims for M' and B'");
  add_common(s5, s5_opts);

  auto* props = app.add_subcommand("verify-props", "Eigenvector propositions on the extremal members");
  add_common(props, props_opts);

  std::string graph_file;
  std::vector<std::string> theorem_names;
  auto* check = app.add_subcommand("check", "Run the theorem checkers and decide on one graph");
  check->add_option("graph", graph_file, "Edge-list or graph6 file")->required()->check(CLI::ExistingFile);
  check->add_option("--theorem", theorem_names, "Theorem id (repeatable); default all");
  add_common(check, check_opts);

  std::size_t n_max = 16;
  auto* cross = app.add_subcommand("crosscheck", "Audit theorem conclusions against exact search");
  cross->add_option("--n-max", n_max, "Largest order generated (<= 20)");
  add_common(cross, cross_opts);
  cross_opts.params.samples = 1000;
  cross_opts.params.seed = 7;

  std::string fam_tag;
  auto* fam = app.add_subcommand("families", "Dump family members as JSON");
  fam->add_option("tag", fam_tag, "M1 | M2 | L1 | L2 | B1 | B2")->required();
  add_common(fam, fam_opts);
  fam_opts.format = "json";

  CLI11_PARSE(app, argc, argv);

  try {
    if (*lemma) {
      Options& o = lemma_opts;
      finish_params(o);
      if (o.ks.empty()) o.ks = {2};
      VerificationRun run;
      for (std::size_t k : o.ks) {
        if (lemma_target == "edge_bounds") {
          for (std::size_t n : resolve_ns(o, k, false)) run.append(cmd_edge_bounds(k, n, o.params));
          continue;
        }
        const VerifyTarget t = parse_verify_target(lemma_target);
        const bool bip = t == VerifyTarget::lemma_1_6_p1 || t == VerifyTarget::lemma_1_6_p2;
        for (std::size_t n : resolve_ns(o, k, bip)) run.append(cmd_verify_lemma(t, k, n, o.params));
      }
      return emit(o, run);
    }
    if (*s5) {
      Options& o = s5_opts;
      finish_params(o);
      if (o.ks.empty()) o.ks = {3};
      VerificationRun run;
      for (std::size_t k : o.ks) {
        std::vector<std::size_t> ns = resolve_ns(o, k, false);
        if (o.ns.empty() && o.n_range.empty()) ns.push_back(thm2_threshold(k));
        for (std::size_t n : ns) run.append(cmd_section5(k, n, o.params));
      }
      return emit(o, run);
    }
    if (*props) {
      Options& o = props_opts;
      finish_params(o);
      if (o.ks.empty()) o.ks = {2};
      VerificationRun run;
      for (std::size_t k : o.ks) {
        std::vector<std::size_t> ns = resolve_ns(o, k, false);
        if (o.ns.empty() && o.n_range.empty()) ns = {default_ns(k, false).front(), default_ns(k, true).front()};
        for (std::size_t n : ns) run.append(cmd_verify_props(k, n, o.params));
      }
      return emit(o, run);
    }
    if (*check) {
      Options& o = check_opts;
      finish_params(o);
      const Graph g = load_graph_file(graph_file);
      std::vector<TheoremId> ids;
      for (const auto& t : theorem_names) ids.push_back(parse_theorem_id(t));
      if (ids.empty()) {
        ids = {TheoremId::THM_NI16, TheoremId::THM_1, TheoremId::THM_LN_ADJ, TheoremId::THM_LN_Q,
               TheoremId::THM_2,    TheoremId::EDGE_THM, TheoremId::EDGE_THM_BIP};
      }
      const std::size_t k = o.ks.empty() ? 2 : o.ks.front();
      return emit(o, cmd_check(g, graph_file, k, ids, o.params));
    }
    if (*cross) {
      Options& o = cross_opts;
      finish_params(o);
      return emit(o, cmd_crosscheck(n_max, o.params.samples, o.params.seed, o.params));
    }
    if (*fam) {
      Options& o = fam_opts;
      finish_params(o);
      if (o.ks.empty()) o.ks = {2};
      const FamilyTag tag = parse_family_tag(fam_tag);
      const bool bip = base_of(tag) == FamilyBase::B;
      VerificationRun run;
      for (std::size_t k : o.ks)
        for (std::size_t n : resolve_ns(o, k, bip)) run.append(cmd_families(tag, k, n, o.params));
      return emit(o, run);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << graph_file << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
