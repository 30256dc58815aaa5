#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "simon/error.hpp"
#include "simon/group.hpp"
#include "support.hpp"

using namespace simon;
using simon::test::group;

namespace {

// Brute-force oracles, independent of the library's class and subgroup code.

std::multiset<int> brute_class_sizes(const GroupTable& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  std::multiset<int> sizes;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    std::set<int> cls;
    for (int y = 0; y < g.order(); ++y) cls.insert(g.mul(g.mul(y, x), g.inv(y)));
    for (int c : cls) seen[static_cast<std::size_t>(c)] = true;
    sizes.insert(static_cast<int>(cls.size()));
  }
  return sizes;
}

std::set<int> closure(const GroupTable& g, std::set<int> s) {
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int b : cur) grew |= s.insert(g.mul(a, b)).second;
  }
  return s;
}

std::multiset<int> order_profile(const GroupTable& g) {
  std::multiset<int> out;
  for (int x = 0; x < g.order(); ++x) out.insert(g.element_order(x));
  return out;
}

std::set<int> as_set(const Subgroup& s) { return {s.elements.begin(), s.elements.end()}; }

}  // namespace

TEST(GroupCatalog, CyclicTwoHasOneInvolution) {
  const auto& g = group("Z2");
  EXPECT_EQ(g.order(), 2);
  EXPECT_EQ(involutions(g).size(), 1u);
}

TEST(GroupCatalog, SymmetricThreeClassSizes) {
  const auto& g = group("S3");
  EXPECT_EQ(g.order(), 6);
  std::multiset<int> lib;
  for (const auto& c : g.classes()) lib.insert(static_cast<int>(c.size()));
  EXPECT_EQ(lib, (std::multiset<int>{1, 2, 3}));
  EXPECT_EQ(lib, brute_class_sizes(g));
}

TEST(GroupCatalog, WreathOfZ2IsDihedralOfOrderEight) {
  const auto& w = group("Wreath(Z2)");
  EXPECT_EQ(w.order(), 8);
  EXPECT_EQ(order_profile(w), order_profile(group("D4")));
  EXPECT_EQ(brute_class_sizes(w), brute_class_sizes(group("D4")));
}

TEST(GroupCatalog, EveryTableIsAGroup) {
  for (const auto& name : catalog_group_names()) {
    SCOPED_TRACE(name);
    const auto& g = group(name);
    const int e = g.identity();
    for (int a = 0; a < g.order(); ++a) {
      EXPECT_EQ(g.mul(a, e), a);
      EXPECT_EQ(g.mul(g.inv(a), a), e);
      for (int b = 0; b < g.order(); ++b)
        for (int c = 0; c < g.order(); ++c) ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    }
    std::multiset<int> lib;
    for (const auto& c : g.classes()) lib.insert(static_cast<int>(c.size()));
    EXPECT_EQ(lib, brute_class_sizes(g));
    EXPECT_EQ(g.classes().front(), std::vector<int>{e});
  }
}

TEST(GroupCatalog, ElementsResolveByNameAndIndex) {
  const auto& g = group("S3");
  EXPECT_EQ(g.resolve("e"), g.identity());
  EXPECT_EQ(g.resolve("(123)"), 3);
  EXPECT_EQ(g.resolve("4"), 4);
  EXPECT_THROW(g.resolve("(1234)"), ParseError);
  EXPECT_THROW(g.resolve("6"), ParseError);
}

TEST(GroupCatalog, SpecParsingRejectsUnknownNames) {
  EXPECT_THROW(GroupSpec::parse("X7"), ParseError);
  EXPECT_THROW(build_group(GroupSpec::parse("S5")), ValidationError);
}

TEST(Commutator, MatchesBruteForceClosure) {
  EXPECT_EQ(commutator_subgroup(group("Z2")).order(), 1);
  const auto& s3 = group("S3");
  const Subgroup a3 = commutator_subgroup(s3);
  EXPECT_EQ(a3.order(), 3);
  for (int x : a3.elements) EXPECT_NE(s3.element_order(x), 2);
  const auto& q8 = group("Q8");
  EXPECT_EQ(as_set(commutator_subgroup(q8)), (std::set<int>{q8.resolve("1"), q8.resolve("-1")}));
  for (const auto& name : catalog_group_names()) {
    const auto& g = group(name);
    std::set<int> comm;
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b) comm.insert(g.commutator(a, b));
    EXPECT_EQ(as_set(commutator_subgroup(g)), closure(g, comm)) << name;
  }
}

TEST(NormalSubgroups, Counts) {
  EXPECT_EQ(normal_subgroups(group("Z2")).size(), 2u);
  EXPECT_EQ(normal_subgroups(group("S3")).size(), 3u);
  const auto s4 = normal_subgroups(group("S4"));
  std::multiset<int> orders;
  for (const auto& n : s4) orders.insert(n.order());
  EXPECT_EQ(orders, (std::multiset<int>{1, 4, 12, 24}));
}

TEST(NormalSubgroups, AreNormalAndClassUnions) {
  for (const char* name : {"S4", "D6", "Q8", "Wreath(Z3)"}) {
    const auto& g = group(name);
    for (const auto& n : normal_subgroups(g)) {
      EXPECT_TRUE(is_subgroup(g, n));
      for (int x : n.elements)
        for (int y = 0; y < g.order(); ++y) EXPECT_TRUE(n.contains(g.conjugate(y, x)));
    }
  }
}

TEST(Quotient, Examples) {
  const auto& s3 = group("S3");
  EXPECT_EQ(quotient_group(s3, Subgroup{[&] {
                             std::vector<int> all(6);
                             for (int i = 0; i < 6; ++i) all[static_cast<std::size_t>(i)] = i;
                             return all;
                           }()})
                .table.order(),
            1);
  EXPECT_EQ(quotient_group(s3, commutator_subgroup(s3)).table.order(), 2);
  const auto& q8 = group("Q8");
  const Quotient q = quotient_group(q8, center(q8));
  ASSERT_EQ(q.table.order(), 4);
  for (int x = 0; x < 4; ++x) EXPECT_EQ(q.table.mul(x, x), q.table.identity());
  for (int x = 0; x < q8.order(); ++x)
    for (int y = 0; y < q8.order(); ++y)
      EXPECT_EQ(q.projection[static_cast<std::size_t>(q8.mul(x, y))],
                q.table.mul(q.projection[static_cast<std::size_t>(x)], q.projection[static_cast<std::size_t>(y)]));
}

TEST(Involutions, Examples) {
  EXPECT_EQ(involutions(group("Z2")), std::vector<int>{1});
  const auto& s3 = group("S3");
  const auto inv = involutions(s3);
  ASSERT_EQ(inv.size(), 3u);
  for (int x : inv) EXPECT_EQ(s3.class_of(x), s3.class_of(inv.front()));
  EXPECT_EQ(conjugacy_class_of(s3, inv.front()), inv);
  const auto& q8 = group("Q8");
  ASSERT_EQ(involutions(q8), std::vector<int>{q8.resolve("-1")});
  EXPECT_TRUE(center(q8).contains(q8.resolve("-1")));
}

TEST(Center, Examples) {
  EXPECT_EQ(center(group("Z6")).order(), 6);
  EXPECT_EQ(center(group("S3")).order(), 1);
  const auto& q8 = group("Q8");
  EXPECT_EQ(as_set(center(q8)), (std::set<int>{q8.resolve("1"), q8.resolve("-1")}));
}

TEST(GroupFile, RoundTripsThroughExport) {
  const auto& s3 = group("S3");
  const GroupTable back = parse_group_file(export_group_file(s3));
  ASSERT_EQ(back.order(), 6);
  for (int a = 0; a < 6; ++a) {
    EXPECT_EQ(back.name(a), s3.name(a));
    for (int b = 0; b < 6; ++b) EXPECT_EQ(back.mul(a, b), s3.mul(a, b));
  }
}

TEST(GroupFile, RejectsMalformedInput) {
  EXPECT_THROW(parse_group_file(""), ParseError);
  EXPECT_THROW(parse_group_file("2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_group_file("2\n0 x\n1 0\n"), ParseError);
  EXPECT_THROW(parse_group_file("3\n0 1 2\n1 0 2\n2 2 0\n"), ParseError);
  // x * y = -x - y mod 3: a Latin square without identity or associativity
  EXPECT_THROW(parse_group_file("3\n0 2 1\n2 1 0\n1 0 2\n"), ParseError);
  EXPECT_THROW(parse_group_file("30\n"), GuardExceeded);
}
