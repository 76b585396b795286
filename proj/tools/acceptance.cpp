// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Sweep bounds and runtime limits are fixed here and printed with each line.

#include "supercrystal/supercrystal.hpp"

#include <functional>
#include <iostream>

using namespace supercrystal;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

/// Properties of `rep` selected by name; fails on a missing name or an empty check count.
Outcome require_properties(const SuiteReport& rep, const std::vector<std::string>& names) {
  Outcome out;
  std::size_t total = 0;
  for (const auto& n : names) {
    const PropertyResult* pr = rep.find(n);
    if (!pr) return {false, "missing property: " + n};
    if (pr->checked == 0) return {false, "nothing checked: " + n};
    total += pr->checked;
    if (!pr->passed()) {
      out.ok = false;
      out.detail = n + " failed " + std::to_string(pr->failed) + "/" + std::to_string(pr->checked);
      if (pr->counterexample) out.detail += "; first: " + format_counterexample(*pr->counterexample);
      return out;
    }
  }
  out.detail = std::to_string(total) + " checks";
  return out;
}

std::vector<std::string> all_property_names(const SuiteReport& rep) {
  std::vector<std::string> out;
  for (const auto& pr : rep.properties) out.push_back(pr.name);
  return out;
}

Outcome criterion_worked_example() {
  auto ctx = ParityContext::from_parities({1, 1, 0, 0, 0}, 3);
  Weight lambda{1, -1, 1, 7, 5};
  const std::vector<std::tuple<Int, std::string, std::string>> sigs = {
      {0, "++-++", "++00+"}, {1, "--+00", "-0000"}, {2, "000--", "000--"}};
  for (const auto& [r, raw, red] : sigs) {
    if (r_signature(ctx, lambda, r).str() != raw) return {false, "sigma_" + std::to_string(r)};
    if (reduced_signature(ctx, lambda, r).str() != red) return {false, "reduced sigma_" + std::to_string(r)};
  }
  if (relevant_residues(ctx, lambda) != std::vector<Int>{0, 1, 2}) return {false, "relevant residues"};
  // expected classification of every (i, r)
  const std::map<std::pair<std::size_t, Int>, IndexKind> expect = {
      {{1, 1}, IndexKind::Good},     {{4, 2}, IndexKind::Good},     {{5, 2}, IndexKind::Normal},
      {{1, 0}, IndexKind::Conormal}, {{2, 0}, IndexKind::Conormal}, {{5, 0}, IndexKind::Cogood}};
  for (std::size_t i = 1; i <= 5; ++i) {
    for (Int r = 0; r < 3; ++r) {
      auto it = expect.find({i, r});
      IndexKind want = it == expect.end() ? IndexKind::NotClassified : it->second;
      if (classify_index(ctx, lambda, i, r).kind != want) {
        return {false, "classification of i=" + std::to_string(i) + " r=" + std::to_string(r)};
      }
    }
  }
  return {true, "3 signatures, 3 reductions, 15 classifications"};
}

void report(int n, const std::string& what, const Outcome& o, double secs, double limit) {
  bool ok = o.ok && (limit <= 0 || secs < limit);
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << ": " << what << "  [" << o.detail << "; " << secs
            << " s";
  if (limit > 0) std::cout << ", limit " << limit << " s";
  if (o.ok && !ok) std::cout << ", time limit exceeded";
  std::cout << "]\n";
}

}  // namespace

int main() {
  bool all_ok = true;
  auto run = [&](int n, const std::string& what, double limit, const std::function<Outcome()>& fn) {
    Stopwatch sw;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = sw.seconds();
    report(n, what, o, secs, limit);
    all_ok = all_ok && o.ok && (limit <= 0 || secs < limit);
  };

  // the exhaustive sweep of criteria 2-5: ranks 2..4, every parity sequence,
  // p in {0,2,3,5}, |lambda_i| <= 4
  SweepConfig sweep;
  sweep.min_rank = 2;
  sweep.max_rank = 4;
  sweep.window = 4;
  sweep.primes = {0, 2, 3, 5};

  run(1, "GL(3|2), p=3, lambda=(1,-1,1,7,5): signatures and classifications", 1.0, criterion_worked_example);

  run(2, "signature rule = tensor rule", 60.0, [&] {
    auto rep = verify_oracle_equivalence(sweep);
    return require_properties(rep, all_property_names(rep));
  });

  run(3, "crystal axioms", 0, [&] {
    auto rep = verify_crystal_axioms(sweep);
    return require_properties(rep, all_property_names(rep));
  });

  run(4, "normal/good criteria and the flip", 0, [&] {
    auto rep = verify_normal_criteria(sweep);
    return require_properties(rep, all_property_names(rep));
  });

  run(5, "odd reflections are crystal isomorphisms", 0, [&] {
    auto rep = verify_odd_reflection(sweep);
    return require_properties(rep, all_property_names(rep));
  });

  run(6, "linkage: (iii)<=>(iv) and (ii)<=>(iii), rank <= 4, |lambda_i| <= 3", 0, [&] {
    SweepConfig cfg = sweep;
    cfg.min_rank = 1;
    cfg.window = 3;
    auto rep = verify_linkage(cfg);
    return require_properties(rep, all_property_names(rep));
  });

  // the suite sweeps ranks 1..4 and restricts the centrality checks to rank <= 3
  run(7, "PBW identities, rank <= 4, plus centrality at rank <= 3", 300.0, [&] {
    SweepConfig cfg;
    cfg.max_rank = 4;
    cfg.seed = 1;
    auto rep = verify_pbw_identities(cfg);
    return require_properties(rep, all_property_names(rep));
  });

  SweepConfig verma;
  verma.max_rank = 4;
  verma.window = 3;
  verma.max_r = 4;
  verma.primes = {0, 2, 3, 5};
  std::optional<SuiteReport> verma_rep;
  auto verma_report = [&]() -> const SuiteReport& {
    if (!verma_rep) verma_rep = verify_verma_scalars(verma);
    return *verma_rep;
  };

  run(8, "Verma scalars: Z_r (rank <= 4, r <= 4) and raised lowering operators", 0, [&] {
    return require_properties(verma_report(), {"Z_r v_lambda = Z_r(lambda) v_lambda",
                                               "Z~_r v_lambda is a multiple of v_lambda",
                                               "E_i ... E_{j-1} S_{i,j}(A) v_lambda = ± prod b_{i,t}(lambda) v_lambda"});
  });

  run(9, "normality certificate nonzero mod p", 0, [&] {
    auto o = require_properties(verma_report(), {"normal i: the lowered-then-raised scalar is nonzero mod p"});
    o.detail += "; computed in the criterion 8 run";
    return o;
  });

  std::cout << (all_ok ? "ALL PASS" : "SOME CRITERIA FAILED") << '\n';
  return all_ok ? 0 : 1;
}
