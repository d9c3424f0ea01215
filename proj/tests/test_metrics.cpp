#include <cmath>
#include <optional>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "lpmkit/errors.hpp"
#include "lpmkit/metrics.hpp"
#include "lpmkit/petri.hpp"
#include "lpmkit/process_tree.hpp"
#include "support/fixtures.hpp"

using namespace lpmkit;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<AcceptingPetriNet> trio() {
  return {tree_to_net(fixtures::tree_a()), tree_to_net(fixtures::tree_b()),
          tree_to_net(fixtures::tree_c())};
}

}  // namespace

TEST_CASE("coverage counts explained events over all events") {
  const SequenceDatabase db = fixtures::fixture_db();
  REQUIRE_THAT(coverage(db, trio()), WithinAbs(38.0 / 39.0, 1e-12));
  REQUIRE_THAT(coverage(db, {tree_to_net(fixtures::tree_a())}),
               WithinAbs(16.0 / 39.0, 1e-12));
  REQUIRE_THAT(coverage(db, {tree_to_net(fixtures::tree_b())}),
               WithinAbs(22.0 / 39.0, 1e-12));
  REQUIRE(coverage(db, std::vector<AcceptingPetriNet>{}) == 0.0);
  REQUIRE(coverage(SequenceDatabase(), trio()) == 0.0);
}

TEST_CASE("replay precision is 1 when every enabled continuation is used") {
  const SequenceDatabase db = parse_lines("a b\n");
  REQUIRE_THAT(non_redundancy(db, {tree_to_net(parse_tree("→(a,b)"))}),
               WithinAbs(1.0, 1e-12));
  REQUIRE(non_redundancy(db, std::vector<AcceptingPetriNet>{}) == 1.0);
}

TEST_CASE("unused loop continuations lower replay precision") {
  const SequenceDatabase db = parse_lines("a b\n");
  REQUIRE_THAT(non_redundancy(db, {tree_to_net(parse_tree("↻(→(a,b))"))}),
               WithinAbs(2.0 / 3.0, 1e-12));
}

TEST_CASE("unused alternative branches lower replay precision") {
  const SequenceDatabase db = parse_lines("a b\n");
  REQUIRE_THAT(non_redundancy(db, {tree_to_net(parse_tree("×(→(a,b),z)"))}),
               WithinAbs(3.0 / 5.0, 1e-12));
}

TEST_CASE("behavior never observed drives replay precision to zero") {
  const SequenceDatabase db = parse_lines("a b\n");
  REQUIRE_THAT(non_redundancy(db, {tree_to_net(parse_tree("→(a,b,c)"))}),
               WithinAbs(0.0, 1e-12));
}

TEST_CASE("duplicating a model leaves replay precision unchanged") {
  const SequenceDatabase db = parse_lines("a b\na b a b\n");
  const AcceptingPetriNet net = tree_to_net(parse_tree("→(a,b)"));
  REQUIRE_THAT(non_redundancy(db, {net, net}),
               WithinAbs(non_redundancy(db, {net}), 1e-12));
}

TEST_CASE("the f-score is the harmonic mean with a zero guard") {
  REQUIRE(fscore_value(0.0, 0.0) == 0.0);
  REQUIRE_THAT(fscore_value(1.0, 1.0), WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(fscore_value(0.5, 1.0), WithinAbs(2.0 / 3.0, 1e-12));
  REQUIRE_THAT(fscore_value(1.0, 0.5), WithinAbs(2.0 / 3.0, 1e-12));

  const SequenceDatabase db = parse_lines("a b\n");
  const std::vector<AcceptingPetriNet> nets{tree_to_net(parse_tree("→(a,b)"))};
  REQUIRE_THAT(fscore(db, nets), WithinAbs(1.0, 1e-12));
}

TEST_CASE("split complexity counts distinct consumer postsets per place") {
  REQUIRE(cardoso(tree_to_net(fixtures::tree_a()).net) == 6);
  REQUIRE(cardoso(tree_to_net(fixtures::tree_b()).net) == 8);
  REQUIRE(cardoso(tree_to_net(fixtures::tree_c()).net) == 4);
  REQUIRE(cardoso(tree_to_net(parse_tree("A")).net) == 1);
}

TEST_CASE("reachability complexity of the standing examples") {
  REQUIRE(cyclomatic(tree_to_net(parse_tree("A"))) == 1);
  REQUIRE(cyclomatic(tree_to_net(parse_tree("→(A,B)"))) == 1);
  REQUIRE(cyclomatic(tree_to_net(parse_tree("×(A,B)"))) == 2);
  REQUIRE(cyclomatic(tree_to_net(parse_tree("∧(A,B)"))) == 2);
  REQUIRE(cyclomatic(tree_to_net(parse_tree("↻(A)"))) == 3);
  REQUIRE(cyclomatic(tree_to_net(fixtures::tree_a())) == 3);
  REQUIRE(cyclomatic(tree_to_net(fixtures::tree_b())) == 3);
  REQUIRE(cyclomatic(tree_to_net(fixtures::tree_c())) == 2);
}

TEST_CASE("improper completion yields no reachability complexity") {
  // A reachable deadlock that is not the final marking.
  AcceptingPetriNet dead;
  dead.net.places = {Place{"p0"}, Place{"p1"}, Place{"p2"}};
  Transition a;
  a.id = "t0";
  a.label = "a";
  a.pre = {0};
  a.post = {2};
  Transition b;
  b.id = "t1";
  b.label = "b";
  b.pre = {0};
  b.post = {1};
  dead.net.transitions = {a, b};
  dead.initial_marking = {1, 0, 0};
  dead.final_marking = {0, 1, 0};
  REQUIRE(cyclomatic(dead) == std::nullopt);

  // A reachable marking strictly covering the final marking.
  AcceptingPetriNet unbounded;
  unbounded.net.places = {Place{"p0"}, Place{"p1"}};
  Transition grow;
  grow.id = "t0";
  grow.label = "a";
  grow.pre = {0};
  grow.post = {0, 1};
  unbounded.net.transitions = {grow};
  unbounded.initial_marking = {1, 0};
  unbounded.final_marking = {0, 1};
  REQUIRE(cyclomatic(unbounded) == std::nullopt);
}

TEST_CASE("reachability exploration enforces its node budget") {
  REQUIRE_THROWS_AS(cyclomatic(merge_global(trio()), 2), ResourceError);
}

TEST_CASE("database variability matches hand-computed values") {
  REQUIRE_THAT(perplexity(parse_lines("a b\n")), WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(perplexity(parse_lines("a b\nb a\n")), WithinAbs(2.0, 1e-12));
  REQUIRE_THAT(perplexity(fixtures::fixture_db()),
               WithinAbs(2.5896540052828874, 1e-9));
  REQUIRE_THROWS_AS(perplexity(SequenceDatabase()), ArgumentError);
}

TEST_CASE("set evaluation aggregates the member metrics") {
  const SequenceDatabase db = fixtures::fixture_db();
  const LpmSetReport report = evaluate(db, trio());
  REQUIRE_THAT(report.coverage, WithinAbs(38.0 / 39.0, 1e-12));
  REQUIRE(report.non_redundancy > 0.0);
  REQUIRE(report.non_redundancy <= 1.0);
  REQUIRE_THAT(report.fscore,
               WithinAbs(fscore_value(report.coverage, report.non_redundancy), 1e-12));
  REQUIRE(report.pattern_count == 3);
  REQUIRE(report.transition_count == 5 + 8 + 4);
  REQUIRE(report.cardoso == 6 + 8 + 4);
  REQUIRE(report.cyclomatic == 3 + 3 + 2);
}

TEST_CASE("serial and multi-threaded metrics agree") {
  const SequenceDatabase db = fixtures::fixture_db();
  const std::vector<AcceptingPetriNet> nets = trio();
  REQUIRE(coverage(db, nets, kDefaultStateBudget, Mode::serial) ==
          coverage(db, nets, kDefaultStateBudget, Mode::multi_threaded));
  REQUIRE(non_redundancy(db, nets, kDefaultStateBudget, Mode::serial) ==
          non_redundancy(db, nets, kDefaultStateBudget, Mode::multi_threaded));
}
