// Randomized properties: interpreter vs compiled SQL, compositionality,
// context-freeness, round-trip printing and prefix-parser soundness.

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "prefix_check.hpp"
#include "qpl/compile.hpp"
#include "qpl/equivalence.hpp"
#include "qpl/interp.hpp"
#include "qpl/parser.hpp"
#include "qpl/printer.hpp"
#include "qpl/sqlite_backend.hpp"
#include "qpl/validator.hpp"
#include "random_case.hpp"

namespace qpl::testing {
namespace {

constexpr int kCases = 540;

ResultSet as_result(const Relation& r, bool ordered) {
  ResultSet rs;
  for (const auto& c : r.columns) rs.columns.push_back(c.name);
  rs.rows = r.rows;
  rs.ordered = ordered;
  return rs;
}

bool ordered_root(const QplPlan& plan) {
  const auto op = plan.step(plan_root(plan)).op;
  return op == OpKind::Sort || op == OpKind::TopSort;
}

bool same_relation(const Relation& a, const Relation& b) {
  if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].size() != b.rows[i].size()) return false;
    for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
      if (a.rows[i][j] != b.rows[i][j]) return false;
    }
  }
  return true;
}

TEST(Differential, InterpreterAgreesWithCompiledSql) {
  std::mt19937_64 rng(20240601);
  std::map<OpKind, int> seen;
  int nonempty = 0;
  for (int i = 0; i < kCases; ++i) {
    const auto c = random_case(rng, kAllOps[static_cast<std::size_t>(i) % kAllOps.size()]);
    const std::string text = pretty_print(c.plan);
    for (const auto& node : c.plan.steps()) ++seen[node.op];
    ASSERT_LE(plan_depth(c.plan, plan_root(c.plan)), 4) << text;
    const auto diags = validate(c.plan, c.db.schema);
    ASSERT_FALSE(has_errors(diags)) << text << "\n" << to_json(diags.front()).dump();
    const auto expected = as_result(eval_plan(c.plan, c.db), ordered_root(c.plan));
    SqliteBackend backend(c.db);
    const auto program = compile_to_cte(c.plan, c.db.schema);
    const auto actual = execute(program, backend);
    ASSERT_EQ(actual.ordered, expected.ordered);
    if (!expected.rows.empty()) ++nonempty;
    ASSERT_TRUE(results_equivalent(expected, actual, 1e-6))
        << "case " << i << "\n" << text << "\n" << program.to_sql() << "\ninterp rows "
        << expected.rows.size() << ", sql rows " << actual.rows.size();
  }
  for (auto op : kAllOps) EXPECT_GT(seen[op], 0) << to_string(op);
  // Guards against a generator that only produces empty results.
  EXPECT_GT(nonempty, kCases / 2) << nonempty;
}

TEST(Compositionality, EverySubPlanEvaluatesToItsIntermediateRelation) {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < kCases; ++i) {
    const auto c = random_case(rng, kAllOps[static_cast<std::size_t>(i) % kAllOps.size()]);
    const auto all = eval_all(c.plan, c.db);
    SqliteBackend backend(c.db);
    for (int k = 1; k <= c.plan.size(); ++k) {
      const QplPlan sub = c.plan.extract(k);
      const Relation standalone = eval_plan(sub, c.db);
      ASSERT_TRUE(same_relation(standalone, all[static_cast<std::size_t>(k)]))
          << "case " << i << " step " << k << "\n" << pretty_print(c.plan);
      const auto sql = execute(compile_to_cte(sub, c.db.schema), backend);
      ASSERT_TRUE(results_equivalent(as_result(standalone, ordered_root(sub)), sql))
          << "case " << i << " step " << k << "\n" << pretty_print(sub);
    }
  }
}

TEST(ContextFreeness, ReplacingASubtreeByItsOutputKeepsTheRoot) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    const auto c = random_case(rng, kAllOps[static_cast<std::size_t>(i) % kAllOps.size()]);
    const auto all = eval_all(c.plan, c.db);
    const int root = plan_root(c.plan);
    for (int k = 1; k < c.plan.size(); ++k) {
      const auto replaced = eval_all(c.plan, c.db, {{k, all[static_cast<std::size_t>(k)]}});
      ASSERT_TRUE(same_relation(replaced[static_cast<std::size_t>(root)],
                                all[static_cast<std::size_t>(root)]))
          << pretty_print(c.plan) << "\nreplaced step " << k;
    }
  }
}

TEST(FilterScanFusion, ScanPredicateEqualsFilterOverPlainScan) {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const auto c = random_case(rng, OpKind::Scan);
    const QplNode& scan = c.plan.step(1);
    if (!scan.predicate) continue;
    QplNode plain = scan;
    plain.predicate.reset();
    plain.distinct.reset();
    plain.output.clear();
    for (const auto& col : c.db.schema.find_table(scan.table)->columns) {
      plain.output.push_back(ColumnRef{std::nullopt, col.name});
    }
    QplNode filter;
    filter.op = OpKind::Filter;
    filter.inputs = {1};
    filter.predicate = scan.predicate;
    filter.distinct = scan.distinct;
    filter.output = scan.output;
    const QplPlan fused({plain, filter});
    EXPECT_TRUE(same_bag(eval_plan(c.plan, c.db), eval_plan(fused, c.db))) << pretty_print(c.plan);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(RoundTrip, PrettyPrintThenParseIsIdentity) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto c = random_case(rng, kAllOps[static_cast<std::size_t>(i) % kAllOps.size()]);
    const std::string text = pretty_print(c.plan);
    EXPECT_EQ(parse(text), c.plan) << text;
    EXPECT_EQ(pretty_print(parse(text)), text);
  }
}

TEST(Equivalence, ReflexiveAndSymmetricOnRandomResults) {
  std::mt19937_64 rng(11);
  std::vector<ResultSet> results;
  for (int i = 0; i < 60; ++i) {
    const auto c = random_case(rng, kAllOps[static_cast<std::size_t>(i) % kAllOps.size()]);
    results.push_back(as_result(eval_plan(c.plan, c.db), ordered_root(c.plan)));
  }
  for (const auto& a : results) {
    EXPECT_TRUE(results_equivalent(a, a, 0.0));
    for (const auto& b : results) {
      for (double eps : {0.0, 1e-6, 0.5}) {
        EXPECT_EQ(results_equivalent(a, b, eps), results_equivalent(b, a, eps));
      }
    }
  }
}

TEST(PrefixParser, EveryPrefixOfCorpusPlansIsViable) {
  const auto corpus = corpus_plans(100, 404);
  ASSERT_EQ(corpus.size(), 100u);
  for (const auto& text : corpus) {
    std::string why;
    EXPECT_TRUE(prefixes_accepted(text, &why)) << why << "\n" << text;
  }
}

TEST(PrefixParser, SingleTokenMutationsAreRejectedSoundly) {
  const auto corpus = corpus_plans(100, 404);
  std::mt19937_64 rng(808);
  std::map<MutationVerdict, int> counts;
  for (int i = 0; i < 1000; ++i) {
    const auto m = mutate(corpus[static_cast<std::size_t>(i) % corpus.size()], rng);
    const auto r = check_mutation(m);
    ++counts[r.verdict];
    EXPECT_NE(r.verdict, MutationVerdict::Violation) << m.kind << " at " << m.anchor << ": "
                                                     << r.detail << "\n" << m.text;
  }
  EXPECT_GT(counts[MutationVerdict::RejectedEarly], 0);
}

}  // namespace
}  // namespace qpl::testing
