#include "spectralham/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spectralham/graph_io.hpp"
#include "spectralham/hamilton.hpp"
#include "spectralham/spectral.hpp"

namespace spectralham {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "PASS";
    case Outcome::fail: return "FAIL";
    case Outcome::inconclusive: return "INCONCLUSIVE";
    case Outcome::unclaimed: return "UNCLAIMED";
  }
  return "?";
}

namespace {

constexpr VerifyTarget kTargets[] = {
    VerifyTarget::lemma_1_3,  VerifyTarget::lemma_1_4,  VerifyTarget::lemma_1_6_p1, VerifyTarget::lemma_1_6_p2,
    VerifyTarget::prop_3_x,   VerifyTarget::prop_4_1,   VerifyTarget::section5_M,   VerifyTarget::section5_B,
    VerifyTarget::edge_bounds, VerifyTarget::crosscheck, VerifyTarget::check,       VerifyTarget::families,
};

}  // namespace

const char* to_string(VerifyTarget t) {
  switch (t) {
    case VerifyTarget::lemma_1_3: return "lemma_1_3";
    case VerifyTarget::lemma_1_4: return "lemma_1_4";
    case VerifyTarget::lemma_1_6_p1: return "lemma_1_6_p1";
    case VerifyTarget::lemma_1_6_p2: return "lemma_1_6_p2";
    case VerifyTarget::prop_3_x: return "prop_3_x";
    case VerifyTarget::prop_4_1: return "prop_4_1";
    case VerifyTarget::section5_M: return "section5_M";
    case VerifyTarget::section5_B: return "section5_B";
    case VerifyTarget::edge_bounds: return "edge_bounds";
    case VerifyTarget::crosscheck: return "crosscheck";
    case VerifyTarget::check: return "check";
    case VerifyTarget::families: return "families";
  }
  return "?";
}

VerifyTarget parse_verify_target(std::string_view text) {
  for (VerifyTarget t : kTargets)
    if (text == to_string(t)) return t;
  throw std::invalid_argument("unknown target '" + std::string(text) + "'");
}

RunSummary VerificationRun::summary() const {
  RunSummary s;
  for (const auto& item : items) {
    switch (item.outcome) {
      case Outcome::pass: ++s.pass; break;
      case Outcome::fail: ++s.fail; break;
      case Outcome::inconclusive: ++s.inconclusive; break;
      case Outcome::unclaimed: ++s.unclaimed; break;
    }
  }
  return s;
}

void VerificationRun::append(VerificationRun other) {
  if (name.empty()) {
    name = std::move(other.name);
    params = std::move(other.params);
  } else {
    name += "; " + other.name;
    for (auto k : other.params.ks)
      if (std::find(params.ks.begin(), params.ks.end(), k) == params.ks.end()) params.ks.push_back(k);
    for (auto n : other.params.ns)
      if (std::find(params.ns.begin(), params.ns.end(), n) == params.ns.end()) params.ns.push_back(n);
  }
  for (auto& i : other.items) items.push_back(std::move(i));
  for (auto& r : other.table) table.push_back(std::move(r));
  for (auto& n : other.notes) notes.push_back(std::move(n));
}

namespace {

std::string fmt(double v, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string run_name(const char* target, std::size_t k, std::size_t n) {
  return std::string(target) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
}

VerificationRun start(const std::string& name, std::size_t k, std::size_t n, const RunParams& params) {
  VerificationRun run;
  run.name = name;
  run.params = params;
  run.params.ks = {k};
  run.params.ns = {n};
  return run;
}

CompareConfig compare_config(const RunParams& p) {
  CompareConfig c;
  c.policy = ComparePolicy::exact;
  c.tol = p.tol;
  c.margin = p.margin;
  if (p.time_budget > 0) c.deadline = Deadline::after(std::chrono::duration<double>(p.time_budget));
  return c;
}

SpectralConfig spectral_config(const RunParams& p) {
  SpectralConfig s;
  s.tol = p.tol;
  return s;
}

CheckConfig check_config(const RunParams& p) { return {compare_config(p), spectral_config(p)}; }

bool meets_nonbipartite(std::size_t k, std::size_t n) { return k > 1 && n >= thm1_threshold(k); }
bool meets_bipartite(std::size_t k, std::size_t n) { return k > 1 && n >= thm2_threshold(k); }

void require_threshold(bool met, const RunParams& p, const std::string& what) {
  if (!met && !p.allow_below_threshold) {
    throw std::invalid_argument(what + " is below the statement's threshold; pass --allow-below-threshold to explore");
  }
}

/// Below threshold nothing is claimed; the observation is kept in the detail.
void mark_out_of_hypothesis(RunItem& item) {
  item.detail = std::string("out of hypothesis, observed ") + to_string(item.outcome) + "; " + item.detail;
  item.outcome = Outcome::unclaimed;
}

enum class Want { less, at_least, greater };

const char* want_symbol(Want w) {
  switch (w) {
    case Want::less: return "<";
    case Want::at_least: return ">=";
    case Want::greater: return ">";
  }
  return "?";
}

Outcome grade(const ThresholdVerdict& v, Want want) {
  if (v.relation == Relation::undecided) return Outcome::inconclusive;
  switch (want) {
    case Want::less: return v.relation == Relation::less ? Outcome::pass : Outcome::fail;
    case Want::at_least: return v.at_least() ? Outcome::pass : Outcome::fail;
    case Want::greater: return v.relation == Relation::greater ? Outcome::pass : Outcome::fail;
  }
  return Outcome::inconclusive;
}

RunItem threshold_item(const std::string& target, const std::string& subject, const char* quantity,
                       const ThresholdVerdict& v, Want want, const std::string& threshold_text) {
  RunItem item;
  item.target = target;
  item.subject = subject;
  item.claim = std::string(quantity) + " " + want_symbol(want) + " " + threshold_text;
  item.outcome = grade(v, want);
  item.method = to_string(v.method);
  item.detail = std::string(quantity) + " " + to_symbol(v.relation) + " " + threshold_text + "; " + v.detail;
  item.data = to_json(v);
  return item;
}

std::string subject_of(const FamilyMember& m) {
  return m.tag() + "_" + std::to_string(m.k) + "(" + std::to_string(m.n) + ") " + m.describe();
}

std::vector<FamilyMember> members_of(FamilyTag tag, std::size_t k, std::size_t n, const RunParams& p) {
  EnumerationSpec spec;
  spec.tag = tag;
  spec.k = k;
  spec.n = n;
  spec.mode = p.mode;
  spec.samples = p.samples;
  spec.seed = p.seed;
  return enumerate_family(spec);
}

void sort_items(std::vector<RunItem>& items) {
  std::stable_sort(items.begin(), items.end(), [](const RunItem& a, const RunItem& b) { return a.key < b.key; });
}

}  // namespace

// ---------------------------------------------------------------------------

VerificationRun cmd_verify_lemma(VerifyTarget target, std::size_t k, std::size_t n, const RunParams& params) {
  std::vector<FamilyTag> tags;
  Want want = Want::less;
  bool bipartite = false;
  switch (target) {
    case VerifyTarget::lemma_1_3: tags = {FamilyTag::M1, FamilyTag::L1}; want = Want::at_least; break;
    case VerifyTarget::lemma_1_4: tags = {FamilyTag::M2, FamilyTag::L2}; want = Want::less; break;
    case VerifyTarget::lemma_1_6_p1: tags = {FamilyTag::B1}; want = Want::at_least; bipartite = true; break;
    case VerifyTarget::lemma_1_6_p2: tags = {FamilyTag::B2}; want = Want::less; bipartite = true; break;
    default: throw std::invalid_argument(std::string("not a lemma target: ") + to_string(target));
  }
  const bool claimed = bipartite ? meets_bipartite(k, n) : meets_nonbipartite(k, n);
  require_threshold(claimed, params, run_name(to_string(target), k, n));

  const auto ni = static_cast<std::int64_t>(n);
  const auto ki = static_cast<std::int64_t>(k);
  const std::int64_t t = bipartite ? 2 * ni - ki : 2 * (ni - ki - 1);

  std::vector<FamilyMember> members;
  for (FamilyTag tag : tags) {
    auto batch = members_of(tag, k, n, params);
    members.insert(members.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  }
  const std::string tname = to_string(target);
  auto per_member = parallel_map<std::vector<RunItem>>(members.size(), params.jobs, [&](std::size_t i) {
    const FamilyMember& m = members[i];
    std::vector<RunItem> out;
    const CompareConfig cfg = compare_config(params);
    auto v = try_compare_threshold(m.graph, MatrixKind::signless_laplacian, Rational(t), cfg);
    out.push_back(threshold_item(tname, subject_of(m), "q", v, want, std::to_string(t)));
    if (target == VerifyTarget::lemma_1_4) {
      const std::int64_t lower = 2 * ni - 2 * ki - 3;
      auto w = try_compare_threshold(m.graph, MatrixKind::signless_laplacian, Rational(lower), cfg);
      out.push_back(threshold_item(tname, subject_of(m), "q", w, Want::greater, std::to_string(lower)));
    }
    for (auto& item : out) {
      item.key = m.key();
      item.data["member"] = to_json(m);
      if (!claimed) mark_out_of_hypothesis(item);
    }
    return out;
  });

  VerificationRun run = start(run_name(tname.c_str(), k, n), k, n, params);
  for (auto& batch : per_member)
    for (auto& item : batch) run.items.push_back(std::move(item));
  sort_items(run.items);
  return run;
}

// ---------------------------------------------------------------------------

namespace {

constexpr TheoremId kAllTheorems[] = {TheoremId::THM_NI16, TheoremId::THM_1,    TheoremId::THM_LN_ADJ,
                                      TheoremId::THM_LN_Q, TheoremId::THM_2,    TheoremId::EDGE_THM,
                                      TheoremId::EDGE_THM_BIP};

RunItem conclusion_item(const std::string& target, const std::string& subject, const TheoremReport& r,
                        Conclusion expected) {
  RunItem item;
  item.target = target;
  item.subject = subject;
  item.claim = std::string(to_string(r.id)) + " concludes " + to_string(expected);
  item.outcome = r.conclusion == expected ? Outcome::pass : Outcome::fail;
  item.method = to_string(r.condition.method);
  std::string failed;
  for (const auto& h : r.hypotheses)
    if (!h.holds) failed += (failed.empty() ? "" : ", ") + h.name;
  item.detail = std::string("conclusion ") + to_string(r.conclusion) + "; condition " +
                to_string(r.condition.relation) + (failed.empty() ? "" : "; failed hypotheses: " + failed);
  item.data = to_json(r);
  return item;
}

RunItem cycle_item(const std::string& target, const std::string& subject, const Graph& g) {
  RunItem item;
  item.target = target;
  item.subject = subject;
  item.claim = "closure-certified Hamiltonian cycle passes verify_cycle";
  item.method = "closure";
  HamVerdict c = closure_certify(g);
  if (c.status == HamStatus::hamiltonian && c.cycle && verify_cycle(g, *c.cycle)) {
    item.outcome = Outcome::pass;
    item.detail = c.detail;
    item.data["cycle"] = *c.cycle;
    return item;
  }
  item.outcome = Outcome::fail;
  item.detail = "closure: " + c.detail;
  HamVerdict d = decide(g);
  item.detail += std::string("; decide: ") + to_string(d.status) + " by " + to_string(d.method);
  if (d.cut) {
    item.detail += " (cut of size " + std::to_string(d.cut->cut.size()) + " leaves " +
                   std::to_string(d.cut->components) + " components)";
    item.data["cut"] = d.cut->cut;
  }
  return item;
}

nlohmann::json table_row(const std::string& graph, const Graph& g, std::size_t k, const CheckConfig& cfg) {
  nlohmann::json row = {{"graph", graph}};
  for (TheoremId id : kAllTheorems) row[to_string(id)] = to_string(check_theorem(id, g, k, cfg).conclusion);
  HamVerdict d = decide(g);
  row["decide"] = std::string(to_string(d.status)) + " (" + to_string(d.method) + ")";
  return row;
}

}  // namespace

VerificationRun cmd_section5(std::size_t k, std::size_t n, const RunParams& params) {
  if (k < 3) throw std::invalid_argument("section5 needs k >= 3");
  const bool m_claimed = meets_nonbipartite(k, n);
  const bool b_claimed = meets_bipartite(k, n);
  require_threshold(m_claimed || b_claimed, params, run_name("section5", k, n));
  VerificationRun run = start(run_name("section5", k, n), k, n, params);
  const auto ni = static_cast<std::int64_t>(n);
  const auto ki = static_cast<std::int64_t>(k);
  const CheckConfig cfg = check_config(params);

  if (m_claimed || params.allow_below_threshold) {
    const FamilyMember mp = make_M_prime(k, n);
    const std::string subject = "M'_" + std::to_string(k) + "(" + std::to_string(n) + ")";
    const std::string target = to_string(VerifyTarget::section5_M);
    std::vector<RunItem> items;
    const std::int64_t tl = ni - ki - 1;
    items.push_back(threshold_item(target, subject, "lambda",
                                   try_compare_threshold(mp.graph, MatrixKind::adjacency, Rational(tl),
                                                         compare_config(params)),
                                   Want::less, std::to_string(tl)));
    const std::int64_t tq = 2 * (ni - ki - 1);
    items.push_back(threshold_item(target, subject, "q",
                                   try_compare_threshold(mp.graph, MatrixKind::signless_laplacian, Rational(tq),
                                                         compare_config(params)),
                                   Want::at_least, std::to_string(tq)));
    items.push_back(cycle_item(target, subject, mp.graph));
    items.push_back(conclusion_item(target, subject, check_nikiforov(mp.graph, k, cfg), Conclusion::not_applicable));
    items.push_back(conclusion_item(target, subject, check_thm1(mp.graph, k, cfg),
                                    Conclusion::hamiltonian_guaranteed));
    TheoremReport bip = check_thm2(mp.graph, k, cfg);
    RunItem note = conclusion_item(target, subject, bip, Conclusion::not_applicable);
    note.outcome = Outcome::unclaimed;
    note.claim = "bipartite theorem on M' (reported for reference)";
    note.detail += "; M' is not bipartite, the non-bipartite theorem is the one that applies";
    items.push_back(std::move(note));
    for (std::size_t i = 0; i < items.size(); ++i) {
      items[i].key = "0M" + std::to_string(i);
      if (!m_claimed) mark_out_of_hypothesis(items[i]);
    }
    for (auto& i : items) run.items.push_back(std::move(i));
    run.table.push_back(table_row(subject, mp.graph, k, cfg));
  }

  if (b_claimed || params.allow_below_threshold) {
    const FamilyMember bp = make_B_prime(k, n);
    const std::string subject = "B'_" + std::to_string(k) + "(" + std::to_string(n) + ")";
    const std::string target = to_string(VerifyTarget::section5_B);
    std::vector<RunItem> items;

    RunItem lam;
    lam.target = target;
    lam.subject = subject;
    lam.claim = "lambda(B') < lambda(B_" + std::to_string(k) + "(" + std::to_string(n) + "))";
    lam.method = to_string(CompareMethod::certified_interval);
    ThresholdVerdict v;
    for (double tol : {params.tol, 1e-12, 1e-14}) {
      SpectralConfig sc = spectral_config(params);
      sc.tol = tol;
      EigenEstimate a = lambda_max(bp.graph, sc);
      EigenEstimate b = ReferenceSpectra::instance().get(FamilyBase::B, k, n, MatrixKind::adjacency, tol);
      v = compare_estimates(a, b);
      v.threshold_value = b.value;
      if (v.relation != Relation::undecided && v.margin > params.margin) break;
    }
    if (v.relation == Relation::undecided) {
      lam.outcome = Outcome::inconclusive;
    } else if (v.relation == Relation::less) {
      lam.outcome = v.margin > params.margin ? Outcome::pass : Outcome::inconclusive;
    } else {
      lam.outcome = Outcome::fail;
    }
    lam.detail = "margin " + fmt(v.margin, 4) + "; " + v.detail;
    lam.data = to_json(v);
    items.push_back(std::move(lam));

    const std::int64_t tq = 2 * ni - ki;
    items.push_back(threshold_item(target, subject, "q",
                                   try_compare_threshold(bp.graph, MatrixKind::signless_laplacian, Rational(tq),
                                                         compare_config(params)),
                                   Want::at_least, std::to_string(tq)));
    items.push_back(cycle_item(target, subject, bp.graph));
    items.push_back(conclusion_item(target, subject, check_li_ning(bp.graph, k, MatrixKind::adjacency, cfg),
                                    Conclusion::not_applicable));

    // Literal construction has an edge inside one side, so it is not bipartite;
    // the condition-only reading evaluates q against 2n - k regardless.
    TheoremReport literal = check_thm2(bp.graph, k, cfg);
    RunItem lit = conclusion_item(target, subject, literal, literal.conclusion);
    lit.outcome = Outcome::unclaimed;
    lit.claim = "bipartite theorem on B', literal reading";
    items.push_back(std::move(lit));
    RunItem cond;
    cond.target = target;
    cond.subject = subject;
    cond.claim = "bipartite theorem on B', condition-only reading";
    cond.outcome = Outcome::unclaimed;
    cond.method = to_string(literal.condition.method);
    cond.detail = std::string("q ") + to_symbol(literal.condition.relation) + " " + std::to_string(tq) +
                  "; min degree " + std::to_string(min_degree(bp.graph)) + "; would conclude " +
                  (literal.condition_holds ? "hamiltonian_guaranteed" : "not_applicable");
    items.push_back(std::move(cond));

    for (std::size_t i = 0; i < items.size(); ++i) {
      items[i].key = "1B" + std::to_string(i);
      if (!b_claimed) mark_out_of_hypothesis(items[i]);
    }
    for (auto& i : items) run.items.push_back(std::move(i));
    run.table.push_back(table_row(subject, bp.graph, k, cfg));
    run.table.push_back(table_row("B_" + std::to_string(k) + "(" + std::to_string(n) + ")", make_B(k, n).graph, k, cfg));
  }
  return run;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t tie_break(const FamilyMember& m) {
  const auto& c = m.classes;
  switch (m.base) {
    case FamilyBase::M: return edges_within(m.graph, c.Y);
    case FamilyBase::L: return m.graph.degree(c.Y.front());
    case FamilyBase::B: {
      VertexSet yz = c.Y;
      yz.insert(yz.end(), c.Z.begin(), c.Z.end());
      std::sort(yz.begin(), yz.end());
      return edges_within(m.graph, yz);
    }
  }
  return 0;
}

}  // namespace

VerificationRun cmd_verify_props(std::size_t k, std::size_t n, const RunParams& params) {
  const bool m_claimed = meets_nonbipartite(k, n);
  const bool b_claimed = meets_bipartite(k, n);
  require_threshold(m_claimed || b_claimed, params, run_name("verify-props", k, n));
  VerificationRun run = start(run_name("verify-props", k, n), k, n, params);
  std::vector<std::pair<FamilyTag, bool>> tags;
  if (m_claimed || params.allow_below_threshold) {
    if (n >= 2 * k + 1) tags.emplace_back(FamilyTag::M2, m_claimed);
    if (n >= k + 2) tags.emplace_back(FamilyTag::L2, m_claimed);
  }
  if ((b_claimed || params.allow_below_threshold) && n >= 2 * k) tags.emplace_back(FamilyTag::B2, b_claimed);

  const CheckConfig cfg = check_config(params);
  for (std::size_t ti = 0; ti < tags.size(); ++ti) {
    const auto [tag, claimed] = tags[ti];
    auto members = members_of(tag, k, n, params);
    if (members.empty()) continue;
    std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
    auto qs = parallel_map<EigenEstimate>(members.size(), params.jobs,
                                          [&](std::size_t i) { return q_max(members[i].graph, cfg.spectral); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
      const double slack = std::max(qs[i].width(), qs[best].width());
      if (qs[i].value > qs[best].value + slack) {
        best = i;
      } else if (std::fabs(qs[i].value - qs[best].value) <= slack && tie_break(members[i]) > tie_break(members[best])) {
        best = i;
      }
    }
    const FamilyMember& m = members[best];
    const std::string subject = "extremal " + subject_of(m);
    const std::string target =
        to_string(tag == FamilyTag::B2 ? VerifyTarget::prop_4_1 : VerifyTarget::prop_3_x);
    run.notes.push_back(std::string(to_string(tag)) + ": extremal member " + m.describe() + " (q = " +
                        fmt(qs[best].value) + ", " + std::to_string(members.size()) + " representatives)");
    try {
      auto checks = eigvec_structure_report(m, cfg);
      for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& pc = checks[i];
        RunItem item;
        item.target = target;
        item.subject = subject;
        item.claim = pc.id + ": " + pc.statement;
        item.outcome = pc.outcome == PropOutcome::holds   ? Outcome::pass
                       : pc.outcome == PropOutcome::fails ? Outcome::fail
                                                          : Outcome::inconclusive;
        item.method = pc.id.starts_with("3.1") || pc.id.starts_with("4.1.1") ? "exact-inertia" : "certified-interval";
        std::string detail = pc.detail.empty() ? "" : pc.detail + "; ";
        if (!pc.vacuous) detail += "lhs " + fmt(pc.lhs) + ", rhs " + fmt(pc.rhs) + ", margin " + fmt(pc.margin, 4);
        item.detail = pc.vacuous ? "vacuous; " + pc.detail : detail;
        item.data = to_json(pc);
        char key[16];
        std::snprintf(key, sizeof key, "%02zu%03zu", ti, i);
        item.key = key;
        if (!claimed) mark_out_of_hypothesis(item);
        run.items.push_back(std::move(item));
      }
    } catch (const UnconvergedEigenvector& e) {
      RunItem item;
      item.target = target;
      item.subject = subject;
      item.claim = "eigenvector propositions";
      item.outcome = Outcome::inconclusive;
      item.detail = e.what();
      run.items.push_back(std::move(item));
    }
  }
  return run;
}

// ---------------------------------------------------------------------------

namespace {

/// Any hamiltonian_guaranteed must be Hamiltonian, any exception member
/// non-Hamiltonian (all exceptions are spanning subgraphs of non-Hamiltonian
/// graphs).
std::optional<std::string> contradiction(const TheoremReport& r, HamStatus truth) {
  if (truth == HamStatus::undecided) return std::nullopt;
  if (r.conclusion == Conclusion::hamiltonian_guaranteed && truth == HamStatus::non_hamiltonian)
    return "concludes hamiltonian_guaranteed but the graph is not Hamiltonian";
  if (r.conclusion == Conclusion::exception_member && truth == HamStatus::hamiltonian)
    return "reports an exception member but the graph is Hamiltonian";
  return std::nullopt;
}

}  // namespace

VerificationRun cmd_check(const Graph& g, const std::string& source, std::size_t k,
                          const std::vector<TheoremId>& theorems, const RunParams& params) {
  VerificationRun run = start("check " + source + " k=" + std::to_string(k), k, g.order(), params);
  const std::size_t delta = min_degree(g);
  if (k > delta) run.notes.push_back("k = " + std::to_string(k) + " exceeds min degree " + std::to_string(delta));
  DecideConfig dc;
  HamVerdict d = decide(g, dc);
  const CheckConfig cfg = check_config(params);
  for (std::size_t i = 0; i < theorems.size(); ++i) {
    TheoremReport r = check_theorem(theorems[i], g, k, cfg);
    RunItem item = conclusion_item("check", source, r, r.conclusion);
    item.claim = std::string(to_string(r.id)) + ": " + to_string(r.conclusion);
    if (auto why = contradiction(r, d.status)) {
      item.outcome = Outcome::fail;
      item.detail += "; " + *why;
    }
    if (r.exception) item.detail += "; exception: " + r.exception->family + " (" + r.exception->detail + ")";
    item.key = "0" + std::to_string(i);
    run.items.push_back(std::move(item));
  }
  RunItem ham;
  ham.target = "check";
  ham.subject = source;
  ham.claim = std::string("decide: ") + to_string(d.status);
  ham.outcome = Outcome::pass;
  ham.method = to_string(d.method);
  ham.detail = d.detail;
  if (ham.detail.empty()) {
    if (d.cycle) ham.detail = "cycle through all " + std::to_string(g.order()) + " vertices, verified";
    else if (d.cut) ham.detail = "cut of size " + std::to_string(d.cut->cut.size()) + " leaves " + std::to_string(d.cut->components) + " components";
    else if (d.status == HamStatus::non_hamiltonian) ham.detail = "no cycle in exhaustive search";
    else ham.detail = "no certificate found";
  }
  if (d.status == HamStatus::undecided) ham.outcome = Outcome::inconclusive;
  if (d.cycle) ham.data["cycle"] = *d.cycle;
  if (d.cut) ham.data["cut"] = {{"set", d.cut->cut}, {"components", d.cut->components}};
  if (d.status == HamStatus::hamiltonian && !(d.cycle && verify_cycle(g, *d.cycle))) ham.outcome = Outcome::fail;
  if (d.status == HamStatus::non_hamiltonian && d.cut && !verify_cut(g, *d.cut)) ham.outcome = Outcome::fail;
  ham.key = "1";
  run.items.push_back(std::move(ham));
  return run;
}

// ---------------------------------------------------------------------------

namespace {

void force_min_degree(std::vector<std::vector<bool>>& adj, std::size_t k, std::mt19937_64& rng,
                      const std::vector<int>* side) {
  const std::size_t n = adj.size();
  for (Vertex v = 0; v < n; ++v) {
    auto deg = [&] { return static_cast<std::size_t>(std::count(adj[v].begin(), adj[v].end(), true)); };
    while (deg() < k) {
      std::vector<Vertex> options;
      for (Vertex u = 0; u < n; ++u)
        if (u != v && !adj[v][u] && (!side || (*side)[u] != (*side)[v])) options.push_back(u);
      if (options.empty()) break;
      Vertex u = options[uniform_below(rng, options.size())];
      adj[v][u] = adj[u][v] = true;
    }
  }
}

Graph from_matrix(const std::vector<std::vector<bool>>& adj) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < adj.size(); ++u)
    for (Vertex v = u + 1; v < adj.size(); ++v)
      if (adj[u][v]) es.push_back(make_edge(u, v));
  return make_graph(adj.size(), es);
}

struct Sample {
  Graph graph;
  std::size_t k;
  std::string origin;
};

/// One third dense random graphs, one third balanced bipartite, one third
/// perturbations of the extremal graphs.
Sample random_sample(std::size_t n_max, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = 1 + uniform_below(rng, 3);
  const std::uint64_t kind = uniform_below(rng, 3);
  if (kind == 0) {
    const std::size_t n = 5 + uniform_below(rng, n_max - 4);
    const double p = 0.35 + 0.6 * unit(rng);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (unit(rng) < p) adj[u][v] = adj[v][u] = true;
    force_min_degree(adj, k, rng, nullptr);
    return {from_matrix(adj), k, "dense p=" + fmt(p, 3)};
  }
  if (kind == 1) {
    const std::size_t half = 3 + uniform_below(rng, n_max / 2 - 2);
    const std::size_t n = 2 * half;
    std::vector<int> side(n);
    for (Vertex v = 0; v < n; ++v) side[v] = v < half ? 0 : 1;
    const double p = 0.4 + 0.55 * unit(rng);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (Vertex u = 0; u < half; ++u)
      for (Vertex v = half; v < n; ++v)
        if (unit(rng) < p) adj[u][v] = adj[v][u] = true;
    force_min_degree(adj, std::min(k, half), rng, &side);
    std::vector<Side> sides(n);
    for (Vertex v = 0; v < n; ++v) sides[v] = v < half ? Side::S : Side::T;
    Graph g = from_matrix(adj);
    return {Graph::make(n, g.edges(), sides), std::min(k, half), "bipartite p=" + fmt(p, 3)};
  }
  // Perturbed extremal graph: a few random edge flips on M, L or B.
  const std::uint64_t base = uniform_below(rng, 3);
  FamilyMember m;
  std::size_t kk = k;
  if (base == 0) {
    kk = std::max<std::size_t>(2, k);
    const std::size_t lo = 2 * kk + 1;
    m = make_M(kk, lo + uniform_below(rng, n_max - lo + 1));
  } else if (base == 1) {
    m = make_L(kk, kk + 2 + uniform_below(rng, n_max - kk - 1));
  } else {
    kk = std::max<std::size_t>(2, k);
    if (2 * kk > n_max / 2) kk = 2;
    const std::size_t lo = 2 * kk;
    m = make_B(kk, lo + uniform_below(rng, n_max / 2 - lo + 1));
  }
  const std::size_t n = m.graph.order();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const Edge& e : m.graph.edges()) adj[e.u][e.v] = adj[e.v][e.u] = true;
  const std::size_t flips = uniform_below(rng, 4);
  for (std::size_t f = 0; f < flips; ++f) {
    Vertex u = static_cast<Vertex>(uniform_below(rng, n));
    Vertex v = static_cast<Vertex>(uniform_below(rng, n));
    if (u == v) continue;
    adj[u][v] = adj[v][u] = !adj[u][v];
  }
  force_min_degree(adj, kk, rng, nullptr);
  Graph g = from_matrix(adj);
  if (auto sides = balanced_bipartition(g)) g = Graph::make(n, g.edges(), *sides);
  return {g, kk, m.tag() + "_" + std::to_string(kk) + "(" + std::to_string(m.n) + ") +" + std::to_string(flips) +
                     " flips"};
}

}  // namespace

VerificationRun cmd_crosscheck(std::size_t n_max, std::size_t samples, std::uint64_t seed, const RunParams& params) {
  if (n_max > 20) throw std::invalid_argument("crosscheck needs n_max <= 20");
  if (n_max < 8) throw std::invalid_argument("crosscheck needs n_max >= 8");
  VerificationRun run = start("crosscheck n_max=" + std::to_string(n_max) + " samples=" + std::to_string(samples) +
                                  " seed=" + std::to_string(seed),
                              0, n_max, params);
  run.params.ks.clear();
  run.params.seed = seed;
  run.params.samples = samples;
  std::mt19937_64 rng(seed);
  std::vector<Sample> graphs;
  graphs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) graphs.push_back(random_sample(n_max, rng));

  const CheckConfig cfg = check_config(params);
  auto items = parallel_map<RunItem>(graphs.size(), params.jobs, [&](std::size_t i) {
    const Sample& s = graphs[i];
    RunItem item;
    item.target = "crosscheck";
    char key[16];
    std::snprintf(key, sizeof key, "%06zu", i);
    item.key = key;
    item.subject = "#" + std::to_string(i) + " " + s.origin + " n=" + std::to_string(s.graph.order());
    item.claim = "theorem conclusions agree with exact search";
    item.method = "exact-dp";
    const HamStatus truth = exact_hamiltonian(s.graph).status;
    std::size_t guaranteed = 0, exceptions = 0;
    std::vector<std::string> problems;
    const std::size_t delta = min_degree(s.graph);
    for (std::size_t k = 1; k <= std::min(s.k, delta); ++k) {
      for (TheoremId id : kAllTheorems) {
        TheoremReport r = check_theorem(id, s.graph, k, cfg);
        guaranteed += r.conclusion == Conclusion::hamiltonian_guaranteed;
        exceptions += r.conclusion == Conclusion::exception_member;
        if (auto why = contradiction(r, truth))
          problems.push_back(std::string(to_string(id)) + " k=" + std::to_string(k) + " " + *why);
      }
    }
    item.outcome = problems.empty() ? Outcome::pass : Outcome::fail;
    item.detail = std::string(to_string(truth)) + "; " + std::to_string(guaranteed) + " guarantees, " +
                  std::to_string(exceptions) + " exceptions";
    for (const auto& p : problems) item.detail += "; " + p;
    item.data = {{"graph6", write_graph6(s.graph)},
                 {"hamiltonian", to_string(truth)},
                 {"guarantees", guaranteed},
                 {"exceptions", exceptions}};
    return item;
  });
  for (auto& i : items) run.items.push_back(std::move(i));
  std::size_t guaranteed = 0, exceptions = 0;
  for (const auto& i : run.items) {
    guaranteed += i.data["guarantees"].get<std::size_t>();
    exceptions += i.data["exceptions"].get<std::size_t>();
  }
  run.notes.push_back(std::to_string(guaranteed) + " hamiltonian_guaranteed and " + std::to_string(exceptions) +
                      " exception_member conclusions audited");
  return run;
}

// ---------------------------------------------------------------------------

VerificationRun cmd_edge_bounds(std::size_t k, std::size_t n, const RunParams& params) {
  VerificationRun run = start(run_name("edge_bounds", k, n), k, n, params);
  const SpectralConfig sc = spectral_config(params);
  struct Subject {
    std::string name;
    Graph graph;
    bool equality_fy = false;
    bool equality_ln = false;
    std::string key;
  };
  std::vector<Subject> subjects;
  subjects.push_back({"K_" + std::to_string(n), complete(n), true, false, "0a"});
  subjects.push_back({"K_" + std::to_string(n) + "," + std::to_string(n), complete_bipartite(n, n), false, true, "0b"});
  std::vector<FamilyTag> tags;
  if (k > 1 && n >= 2 * k + 1) tags.insert(tags.end(), {FamilyTag::M1, FamilyTag::M2});
  if (k >= 1 && n >= k + 2) tags.insert(tags.end(), {FamilyTag::L1, FamilyTag::L2});
  if (k > 1 && n >= 2 * k) tags.insert(tags.end(), {FamilyTag::B1, FamilyTag::B2});
  for (FamilyTag tag : tags) {
    for (auto& m : members_of(tag, k, n, params)) subjects.push_back({subject_of(m), m.graph, false, false, "1" + m.key()});
  }
  auto per = parallel_map<std::vector<RunItem>>(subjects.size(), params.jobs, [&](std::size_t i) {
    const Subject& s = subjects[i];
    std::vector<RunItem> out;
    EigenEstimate q = q_max(s.graph, sc);
    auto add = [&](const char* name, double bound, bool equality) {
      RunItem item;
      item.target = "edge_bounds";
      item.subject = s.name;
      item.key = s.key + name;
      item.method = "certified-interval";
      const double slack = std::max(q.width(), 1e-9 * std::max(1.0, q.value));
      if (equality) {
        item.claim = std::string(name) + " bound equals q";
        item.outcome = std::fabs(bound - q.value) <= slack ? Outcome::pass : Outcome::fail;
      } else {
        item.claim = std::string(name) + " bound >= q";
        item.outcome = bound >= q.lo ? Outcome::pass : Outcome::fail;
      }
      item.detail = "bound " + fmt(bound) + ", q in [" + fmt(q.lo, 15) + ", " + fmt(q.hi, 15) + "]";
      item.data = {{"bound", bound}, {"q_lo", q.lo}, {"q_hi", q.hi}};
      out.push_back(std::move(item));
    };
    add("fy", fy_bound(s.graph), false);
    if (s.equality_fy) add("fy", fy_bound(s.graph), true);
    if (balanced_bipartition(s.graph)) {
      add("ln", ln_bipartite_bound(s.graph), false);
      if (s.equality_ln) add("ln", ln_bipartite_bound(s.graph), true);
    }
    return out;
  });
  for (auto& batch : per)
    for (auto& i : batch) run.items.push_back(std::move(i));
  sort_items(run.items);
  return run;
}

VerificationRun cmd_families(FamilyTag tag, std::size_t k, std::size_t n, const RunParams& params) {
  VerificationRun run = start(run_name((std::string("families ") + to_string(tag)).c_str(), k, n), k, n, params);
  const FamilyMember intact = make_intact(base_of(tag), k, n);
  for (auto& m : members_of(tag, k, n, params)) {
    RunItem item;
    item.target = "families";
    item.subject = subject_of(m);
    item.claim = "intact graph minus the listed edges";
    item.method = "construction";
    item.key = m.key();
    Graph rebuilt = delete_edges(intact.graph, m.deleted);
    item.outcome = rebuilt.edges() == m.graph.edges() ? Outcome::pass : Outcome::fail;
    item.detail = std::to_string(m.graph.size()) + " edges";
    item.data = to_json(m);
    run.items.push_back(std::move(item));
  }
  sort_items(run.items);
  return run;
}

// ---------------------------------------------------------------------------

OutputFormat parse_output_format(std::string_view text) {
  if (text == "text") return OutputFormat::text;
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

nlohmann::json to_json(const VerificationRun& run) {
  const RunSummary s = run.summary();
  nlohmann::json items = nlohmann::json::array();
  for (const auto& i : run.items) {
    items.push_back({{"target", i.target},
                     {"subject", i.subject},
                     {"claim", i.claim},
                     {"outcome", to_string(i.outcome)},
                     {"method", i.method},
                     {"detail", i.detail},
                     {"data", i.data}});
  }
  const auto& p = run.params;
  const char* cache = std::getenv("SPECTRALHAM_CACHE_DIR");
  return {{"run", run.name},
          {"params",
           {{"k", p.ks},
            {"n", p.ns},
            {"mode", to_string(p.mode)},
            {"samples", p.samples},
            {"seed", p.seed},
            {"tol", p.tol},
            {"margin", p.margin},
            {"allow_below_threshold", p.allow_below_threshold},
            {"time_budget", p.time_budget}}},
          {"environment", {{"cache_dir", cache ? cache : ""}}},
          {"items", items},
          {"table", run.table},
          {"notes", run.notes},
          {"summary",
           {{"pass", s.pass}, {"fail", s.fail}, {"inconclusive", s.inconclusive}, {"unclaimed", s.unclaimed}}}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_table(std::ostream& out, const std::vector<nlohmann::json>& rows) {
  if (rows.empty()) return;
  std::vector<std::string> cols = {"graph"};
  for (TheoremId id : kAllTheorems) cols.push_back(to_string(id));
  cols.push_back("decide");
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r.value(cols[c], std::string()).size());
  }
  auto line = [&](auto cell) {
    for (std::size_t c = 0; c < cols.size(); ++c)
      out << std::left << std::setw(static_cast<int>(width[c]) + 2) << cell(c);
    out << "\n";
  };
  out << "\n";
  line([&](std::size_t c) { return cols[c]; });
  for (const auto& r : rows) line([&](std::size_t c) { return r.value(cols[c], std::string()); });
}

}  // namespace

void write_run(std::ostream& out, const VerificationRun& run, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: out << to_json(run).dump(2) << "\n"; return;
    case OutputFormat::csv:
      out << "target,subject,claim,outcome,method,detail\n";
      for (const auto& i : run.items) {
        out << csv_field(i.target) << "," << csv_field(i.subject) << "," << csv_field(i.claim) << ","
            << to_string(i.outcome) << "," << csv_field(i.method) << "," << csv_field(i.detail) << "\n";
      }
      return;
    case OutputFormat::text: break;
  }
  const auto& p = run.params;
  out << "== " << run.name << "  mode=" << to_string(p.mode) << " tol=" << p.tol << " margin=" << p.margin << "\n";
  // Long runs only list what needs attention.
  const bool terse = run.items.size() > 200;
  std::size_t hidden = 0;
  for (const auto& i : run.items) {
    if (terse && i.outcome == Outcome::pass) {
      ++hidden;
      continue;
    }
    out << std::left << std::setw(13) << to_string(i.outcome) << "[" << i.method << "] " << i.subject << ": "
        << i.claim << "  (" << i.detail << ")\n";
  }
  if (hidden) out << "(" << hidden << " passing items not shown; use --format json for all)\n";
  write_table(out, run.table);
  for (const auto& n : run.notes) out << "note: " << n << "\n";
  const RunSummary s = run.summary();
  out << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.inconclusive << " inconclusive, "
      << s.unclaimed << " unclaimed\n";
}

}  // namespace spectralham
