#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/errors.hpp"
#include "test_util.hpp"

using namespace coxcert;
using testutil::load_system;
using testutil::make_system;

namespace {

std::string type_name(const CoxeterSystem& sys) {
  const auto decomp = classify_finite_type(sys, Subset::full(sys.rank()));
  REQUIRE(decomp.components.size() == 1);
  REQUIRE(decomp.is_spherical);
  return decomp.components[0].type->name();
}

std::vector<std::vector<int>> member_lists(const std::vector<Subset>& subsets) {
  std::vector<std::vector<int>> out;
  for (const auto& t : subsets) out.push_back(t.members());
  return out;
}

}  // namespace

TEST_CASE("parser accepts the documented format") {
  const auto sys = load_system("a2.cox");
  CHECK(sys.rank() == 2);
  CHECK(sys.labels() == std::vector<std::string>{"s", "t"});
  CHECK(sys.order(0, 1) == CoxOrder::finite(3));
  CHECK(sys.order(0, 0) == CoxOrder::one());
  CHECK(sys.label_index("t") == 1);
  CHECK(sys.label_index("x") == -1);

  const auto inf = load_system("dihedral_inf.cox");
  CHECK(inf.order(0, 1).is_infinite());

  const auto empty = load_system("rank0.cox");
  CHECK(empty.rank() == 0);

  const auto unlabeled = load_system("a3.cox");
  CHECK(unlabeled.labels() == std::vector<std::string>{"s1", "s2", "s3"});
}

TEST_CASE("parser rejects malformed systems with positions") {
  auto reject = [](const char* text) {
    CHECK_THROWS_AS(parse_coxeter_system(text), ParseError);
  };
  reject("");
  reject("rank\n");
  reject("rank -1\n");
  reject("rank two\n");
  reject("size 2\n1 3\n3 1\n");
  reject("rank 2\n1 3\n");                       // missing row
  reject("rank 2\n1 3 2\n3 1 2\n");              // wrong row width
  reject("rank 2\n1 3\n3 1\n1 3\n3 1\n");        // extra rows
  reject("rank 2\n2 3\n3 1\n");                  // diagonal not 1
  reject("rank 2\n1 1\n1 1\n");                  // off-diagonal 1
  reject("rank 2\n1 3\n4 1\n");                  // asymmetric
  reject("rank 2\n1 x\nx 1\n");                  // non-numeric
  reject("rank 2\nlabels s\n1 3\n3 1\n");        // label count
  reject("rank 2\nlabels s s\n1 3\n3 1\n");      // duplicate labels
  try {
    parse_coxeter_system("rank 2\n1 3\n4 1\n");
    FAIL("asymmetric matrix was accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("row") != std::string::npos);
  }
}

TEST_CASE("canonical text is frozen and round-trips") {
  const auto a2 = load_system("a2.cox");
  CHECK(a2.canonical_text() == "rank 2\nlabels s t\n1 3\n3 1\n");

  const auto inf = load_system("dihedral_inf.cox");
  CHECK(inf.canonical_text() == "rank 2\nlabels s t\n1 0\n0 1\n");

  for (const char* name :
       {"a1.cox", "a3.cox", "h3.cox", "f4.cox", "affine_a2.cox", "universal_w3.cox",
        "aug_d.cox", "rank0.cox"}) {
    const auto sys = load_system(name);
    const auto reparsed = parse_coxeter_system(sys.canonical_text());
    CHECK(reparsed.canonical_text() == sys.canonical_text());
  }
}

TEST_CASE("subset ordering, parsing, and set operations") {
  const Subset empty;
  const Subset s0({0}, 3);
  const Subset s01({0, 1}, 3);
  const Subset s02({0, 2}, 3);
  const Subset s1({1}, 3);
  CHECK(empty < s0);
  CHECK(s0 < s01);
  CHECK(s01 < s02);
  CHECK(s02 < s1);

  CHECK(Subset::parse("2,0", 3) == Subset({0, 2}, 3));
  CHECK(Subset::parse(" 1 , 2 ", 3) == Subset({1, 2}, 3));
  CHECK(Subset::parse("", 3) == Subset());
  CHECK_THROWS_AS(Subset::parse("0,,1", 3), ParseError);
  CHECK_THROWS_AS(Subset::parse("0,1,", 3), ParseError);
  CHECK_THROWS_AS(Subset::parse("a", 3), ParseError);
  CHECK_THROWS_AS(Subset::parse("3", 3), InvalidArgument);   // out of range
  CHECK_THROWS_AS(Subset::parse("-1", 3), InvalidArgument);
  CHECK_THROWS_AS(Subset::parse("1,1", 3), ParseError);  // duplicate

  CHECK(s01.contains(1));
  CHECK_FALSE(s01.contains(2));
  CHECK(s0.with(2) == s02);
  CHECK(s02.without(2) == s0);
  CHECK(s0.is_subset_of(s01));
  CHECK_FALSE(s1.is_subset_of(s02));
  CHECK(Subset::full(3) == Subset({0, 1, 2}, 3));
}

TEST_CASE("classification recognizes every irreducible finite type") {
  CHECK(type_name(load_system("a1.cox")) == "A1");
  CHECK(type_name(load_system("a2.cox")) == "A2");
  CHECK(type_name(load_system("a3.cox")) == "A3");
  CHECK(type_name(load_system("b3.cox")) == "B3");
  CHECK(type_name(load_system("d4.cox")) == "D4");
  CHECK(type_name(load_system("f4.cox")) == "F4");
  CHECK(type_name(load_system("h3.cox")) == "H3");
  CHECK(type_name(load_system("i2_5.cox")) == "I2(5)");
  CHECK(type_name(load_system("i2_7.cox")) == "I2(7)");

  // Rank-2 crystallographic names collapse into the dihedral family.
  CHECK(type_name(make_system(2, {4})) == "I2(4)");
  CHECK(type_name(make_system(2, {6})) == "I2(6)");

  CHECK(type_name(make_system(4, {3, 2, 2, 3, 2, 3})) == "A4");
  CHECK(type_name(make_system(4, {4, 2, 2, 3, 2, 3})) == "B4");
  CHECK(type_name(make_system(4, {5, 2, 2, 3, 2, 3})) == "H4");

  // E-series: a path with one extra node on the third vertex.
  CHECK(type_name(make_system(
            6, {3, 2, 2, 2, 2, 3, 2, 2, 2, 3, 2, 3, 3, 2, 2})) == "E6");
  CHECK(type_name(make_system(7, {3, 2, 2, 2, 2, 2, 3, 2, 2, 2, 2, 3, 2, 2, 3,
                                  3, 2, 2, 3, 2, 2})) == "E7");
  CHECK(type_name(make_system(8, {3, 2, 2, 2, 2, 2, 2, 3, 2, 2, 2, 2, 2, 3, 2,
                                  2, 2, 3, 3, 2, 2, 2, 3, 2, 2, 3, 2, 2})) == "E8");
}

TEST_CASE("classification rejects non-finite diagrams") {
  auto not_spherical = [](const CoxeterSystem& sys) {
    CHECK_FALSE(classify_finite_type(sys, Subset::full(sys.rank())).is_spherical);
  };
  not_spherical(load_system("affine_a2.cox"));   // cycle
  not_spherical(load_system("affine_b2.cox"));   // (4,4) path
  not_spherical(load_system("dihedral_inf.cox"));
  not_spherical(make_system(4, {4, 2, 2, 3, 2, 4}));     // (4,3,4) path
  not_spherical(make_system(4, {3, 2, 2, 5, 2, 3}));     // m=5 in the middle
  not_spherical(make_system(5, {5, 2, 2, 2, 3, 2, 2, 3, 2, 3}));  // H5
  not_spherical(make_system(5, {3, 2, 2, 2, 4, 2, 2, 3, 2, 3}));  // F5
  // Star with four arms (degree-4 hub).
  not_spherical(make_system(5, {3, 3, 3, 3, 2, 2, 2, 2, 2, 2}));
  // Two trivalent nodes.
  not_spherical(make_system(
      6, {3, 3, 3, 2, 2, 2, 2, 3, 2, 2, 3, 3, 2, 2, 2}));
}

TEST_CASE("decomposition splits commuting components") {
  const auto sys = load_system("aug_a.cox");  // triangle of 3s plus a commuting node
  const auto decomp = classify_finite_type(sys, Subset({0, 1, 3}, 4));
  REQUIRE(decomp.components.size() == 2);
  CHECK(decomp.is_spherical);
  CHECK(decomp.components[0].nodes == std::vector<int>{0, 1});
  CHECK(decomp.components[0].type->name() == "A2");
  CHECK(decomp.components[1].nodes == std::vector<int>{3});
  CHECK(decomp.components[1].type->name() == "A1");
  CHECK(to_decimal(order_of(decomp)) == "12");
}

TEST_CASE("spherical enumeration is lexicographic and complete") {
  const auto a3 = load_system("a3.cox");
  CHECK(enumerate_spherical_subsets(a3).size() == 8);
  CHECK(member_lists(maximal_spherical_subsets(a3)) ==
        std::vector<std::vector<int>>{{0, 1, 2}});

  const auto tri = load_system("affine_a2.cox");
  CHECK(member_lists(enumerate_spherical_subsets(tri)) ==
        std::vector<std::vector<int>>{{}, {0}, {0, 1}, {0, 2}, {1}, {1, 2}, {2}});
  CHECK(member_lists(maximal_spherical_subsets(tri)) ==
        std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});

  const auto univ = load_system("universal_w3.cox");
  CHECK(member_lists(maximal_spherical_subsets(univ)) ==
        std::vector<std::vector<int>>{{0}, {1}, {2}});

  const auto aug_d = load_system("aug_d.cox");
  CHECK(member_lists(maximal_spherical_subsets(aug_d)) ==
        std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2, 3}});

  const auto empty = load_system("rank0.cox");
  CHECK(member_lists(enumerate_spherical_subsets(empty)) ==
        std::vector<std::vector<int>>{{}});
  CHECK(member_lists(maximal_spherical_subsets(empty)) ==
        std::vector<std::vector<int>>{{}});
}

TEST_CASE("enumeration rank cap") {
  std::vector<unsigned> inf_edges(21 * 20 / 2, 0);
  const auto big = make_system(21, inf_edges);
  CHECK_THROWS_AS(enumerate_spherical_subsets(big), CapExceeded);
  CHECK_NOTHROW(enumerate_spherical_subsets(big, 21));
}

TEST_CASE("closed-form orders of the finite types") {
  auto order_name = [](const CoxeterSystem& sys) {
    return to_decimal(order_of(classify_finite_type(sys, Subset::full(sys.rank()))));
  };
  CHECK(order_name(load_system("a1.cox")) == "2");
  CHECK(order_name(load_system("a2.cox")) == "6");
  CHECK(order_name(load_system("a3.cox")) == "24");
  CHECK(order_name(load_system("b3.cox")) == "48");
  CHECK(order_name(load_system("d4.cox")) == "192");
  CHECK(order_name(load_system("f4.cox")) == "1152");
  CHECK(order_name(load_system("h3.cox")) == "120");
  CHECK(order_name(load_system("i2_7.cox")) == "14");
  CHECK(order_name(make_system(2, {4})) == "8");
  CHECK(order_name(make_system(2, {6})) == "12");
  CHECK(order_name(make_system(4, {5, 2, 2, 3, 2, 3})) == "14400");
  CHECK(order_name(make_system(
            6, {3, 2, 2, 2, 2, 3, 2, 2, 2, 3, 2, 3, 3, 2, 2})) == "51840");
  CHECK(order_name(make_system(7, {3, 2, 2, 2, 2, 2, 3, 2, 2, 2, 2, 3, 2, 2, 3,
                                   3, 2, 2, 3, 2, 2})) == "2903040");
  CHECK(order_name(make_system(8, {3, 2, 2, 2, 2, 2, 2, 3, 2, 2, 2, 2, 2, 3, 2,
                                   2, 2, 3, 3, 2, 2, 2, 3, 2, 2, 3, 2, 2})) ==
        "696729600");

  CHECK_THROWS_AS(
      order_of(classify_finite_type(load_system("affine_a2.cox"), Subset::full(3))),
      InvalidArgument);
}

TEST_CASE("decimal rendering of wide orders") {
  CHECK(to_decimal(GroupOrder(0)) == "0");
  CHECK(to_decimal(GroupOrder(1)) == "1");
  GroupOrder fact = 1;
  for (unsigned k = 2; k <= 22; ++k) fact *= k;
  CHECK(to_decimal(fact) == "1124000727777607680000");  // 22! exceeds 64 bits
}

TEST_CASE("induced subsystem keeps orders and labels") {
  const auto sys = load_system("affine_a2.cox");
  const auto sub = induced_subsystem(sys, Subset({0, 2}, 3));
  CHECK(sub.rank() == 2);
  CHECK(sub.labels() == std::vector<std::string>{"a", "c"});
  CHECK(sub.order(0, 1) == CoxOrder::finite(3));
}

TEST_CASE("cyclotomic order covers every finite bond") {
  CHECK(load_system("a2.cox").cyclotomic_order() % 6 == 0);
  CHECK(load_system("a2.cox").cyclotomic_order() % 4 == 0);
  const auto h3 = load_system("h3.cox");
  CHECK(h3.cyclotomic_order() % 10 == 0);
  CHECK(load_system("rank0.cox").cyclotomic_order() == 4);
  CHECK(load_system("dihedral_inf.cox").cyclotomic_order() == 4);
}
