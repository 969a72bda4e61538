#include <doctest.h>

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/errors.hpp"
#include "coxcert/quotients.hpp"
#include "coxcert/word_engine.hpp"
#include "test_util.hpp"

using namespace coxcert;
using testutil::load_system;
using testutil::random_word;

namespace {

Permutation perm(std::vector<int> images) { return Permutation(std::move(images)); }

std::vector<std::pair<std::string, std::string>> generator_cycles(
    const std::vector<PermQuotient>& qs) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& q : qs) {
    REQUIRE(q.images.size() == 2);
    out.emplace_back(q.images[0].cycle_string(), q.images[1].cycle_string());
  }
  return out;
}

nlohmann::json quotients_json(const std::vector<PermQuotient>& qs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& q : qs) arr.push_back(q.to_json());
  return arr;
}

}  // namespace

TEST_CASE("permutation arithmetic and cycle notation") {
  const auto id3 = Permutation::identity(3);
  CHECK(id3.is_identity());
  CHECK(id3.is_involution());
  CHECK(id3.cycle_string() == "()");

  const auto a = perm({1, 0, 2});  // (1 2)
  const auto b = perm({0, 2, 1});  // (2 3)
  CHECK(a.is_involution());
  CHECK_FALSE(a.is_identity());
  CHECK(a.cycle_string() == "(1 2)");
  CHECK(b.cycle_string() == "(2 3)");
  CHECK(perm({1, 0, 3, 2}).cycle_string() == "(1 2)(3 4)");

  // Left-to-right product: (a*b)(x) = b(a(x)).
  const auto ab = a * b;
  CHECK(ab.images() == std::vector<int>{2, 0, 1});
  CHECK(ab.cycle_string() == "(1 3 2)");
  CHECK_FALSE(ab.is_involution());
  CHECK((ab * ab.inverse()).is_identity());
  CHECK(ab.inverse().images() == std::vector<int>{1, 2, 0});
  CHECK(a.apply(0) == 1);

  CHECK_THROWS_AS(perm({0, 0}), InvalidArgument);
  CHECK_THROWS_AS(perm({0, 2}), InvalidArgument);
  CHECK_THROWS_AS(Permutation::identity(0), InvalidArgument);
  CHECK_THROWS_AS(a * id3 * perm({1, 0}), InvalidArgument);  // degree mismatch
}

TEST_CASE("search order is canonical: degree, then lexicographic images") {
  const auto sys = load_system("dihedral_inf.cox");
  const auto qs = search_quotients(sys, 2, 100);
  // Degree 1 admits only the all-identity assignment, which is skipped.
  REQUIRE(qs.size() == 3);
  CHECK(generator_cycles(qs) ==
        std::vector<std::pair<std::string, std::string>>{
            {"()", "(1 2)"}, {"(1 2)", "()"}, {"(1 2)", "(1 2)"}});
  for (const auto& q : qs) {
    CHECK(q.degree == 2);
    CHECK(q.image_order == 2);
    CHECK(verify_quotient(sys, q));
  }
  CHECK(search_quotients(sys, 3, 1000).size() == 3 + 15);
}

TEST_CASE("finite relations prune assignments") {
  const auto sys = load_system("a2.cox");  // m(s,t) = 3
  const auto qs = search_quotients(sys, 3, 100);
  REQUIRE(qs.size() == 10);
  CHECK(qs[0].degree == 2);
  CHECK(generator_cycles({qs[0]}) ==
        std::vector<std::pair<std::string, std::string>>{{"(1 2)", "(1 2)"}});

  // At degree 3 every pair of transpositions satisfies (st)^3 = 1, and the
  // identity image is excluded because its products have order 2.
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"(2 3)", "(2 3)"}, {"(2 3)", "(1 2)"}, {"(2 3)", "(1 3)"},
      {"(1 2)", "(2 3)"}, {"(1 2)", "(1 2)"}, {"(1 2)", "(1 3)"},
      {"(1 3)", "(2 3)"}, {"(1 3)", "(1 2)"}, {"(1 3)", "(1 3)"},
  };
  CHECK(generator_cycles({qs.begin() + 1, qs.end()}) == expected);
  for (std::size_t i = 1; i < qs.size(); ++i) {
    CHECK(qs[i].degree == 3);
    const bool equal_pair = qs[i].images[0] == qs[i].images[1];
    CHECK(qs[i].image_order == (equal_pair ? 2 : 6));
  }

  // The affine triangle forces matching transpositions on every edge.
  CHECK(search_quotients(load_system("affine_a2.cox"), 2, 100).size() == 1);
  CHECK(search_quotients(load_system("affine_a2.cox"), 3, 100).size() == 28);
}

TEST_CASE("rank zero has one trivial quotient per degree") {
  const auto qs = search_quotients(load_system("rank0.cox"), 3, 100);
  REQUIRE(qs.size() == 3);
  for (int d = 0; d < 3; ++d) {
    CHECK(qs[static_cast<std::size_t>(d)].degree == d + 1);
    CHECK(qs[static_cast<std::size_t>(d)].image_order == 1);
    CHECK(qs[static_cast<std::size_t>(d)].images.empty());
  }
}

TEST_CASE("search argument handling") {
  const auto sys = load_system("a2.cox");
  CHECK(search_quotients(sys, 3, 0).empty());
  CHECK(search_quotients(sys, 3, 4).size() == 4);
  CHECK_THROWS_AS(search_quotients(sys, 0, 10), InvalidArgument);
}

TEST_CASE("independent relation checker") {
  const auto sys = load_system("a2.cox");
  PermQuotient good;
  good.degree = 3;
  good.images = {perm({0, 2, 1}), perm({1, 0, 2})};
  good.image_order = 6;
  CHECK(verify_quotient(sys, good));

  PermQuotient wrong_rank = good;
  wrong_rank.images.pop_back();
  CHECK_FALSE(verify_quotient(sys, wrong_rank));

  PermQuotient wrong_degree = good;
  wrong_degree.degree = 4;
  CHECK_FALSE(verify_quotient(sys, wrong_degree));

  PermQuotient not_involution = good;
  not_involution.images[0] = perm({1, 2, 0});
  CHECK_FALSE(verify_quotient(sys, not_involution));

  PermQuotient broken_relation = good;
  broken_relation.images[1] = Permutation::identity(3);  // (st) has order 2
  CHECK_FALSE(verify_quotient(sys, broken_relation));

  // An infinite bond imposes no relation.
  PermQuotient free_pair = broken_relation;
  CHECK(verify_quotient(load_system("dihedral_inf.cox"), free_pair));
}

TEST_CASE("quotient images factor through the group") {
  std::mt19937 rng(314159);
  for (const char* name : {"a2.cox", "affine_a2.cox", "dihedral_inf.cox"}) {
    const auto sys = load_system(name);
    const WordEngine engine(sys);
    const auto qs = search_quotients(sys, 3, 6);
    for (const auto& q : qs)
      for (int iter = 0; iter < 10; ++iter) {
        const Word w = random_word(rng, sys.rank(), 8);
        const Word nf = engine.shortlex_normal_form(w).word();
        CHECK(q.image_of(w) == q.image_of(nf));
      }
  }
}

TEST_CASE("separating elements by finite quotients") {
  const auto dih = load_system("dihedral_inf.cox");
  const auto st = separate_element(dih, Word{{0, 1}}, 4);
  REQUIRE(st.has_value());
  CHECK(st->degree == 2);
  CHECK(st->images[0].cycle_string() == "()");
  CHECK(st->images[1].cycle_string() == "(1 2)");
  CHECK_FALSE(st->image_of(Word{{0, 1}}).is_identity());

  // In the m = 3 dihedral group the rotation st dies in every degree-2
  // quotient; the first separating one appears at degree 3.
  const auto a2 = load_system("a2.cox");
  CHECK_FALSE(separate_element(a2, Word{{0, 1}}, 2).has_value());
  const auto rot = separate_element(a2, Word{{0, 1}}, 3);
  REQUIRE(rot.has_value());
  CHECK(rot->degree == 3);
  CHECK(rot->images[0].cycle_string() == "(2 3)");
  CHECK(rot->images[1].cycle_string() == "(1 2)");

  // A generator itself separates at degree 2 via the sign-style quotient.
  const auto gen = separate_element(a2, Word{{1}}, 4);
  REQUIRE(gen.has_value());
  CHECK(gen->degree == 2);

  CHECK_THROWS_AS(separate_element(a2, Word{}, 4), InvalidArgument);
  CHECK_THROWS_AS(separate_element(a2, Word{{0, 0}}, 4), InvalidArgument);
  CHECK_THROWS_AS(separate_element(a2, Word{{0, 1, 0, 1, 0, 1}}, 4),
                  InvalidArgument);  // (st)^3 is the identity
  CHECK_THROWS_AS(separate_element(a2, Word{{5}}, 4), InvalidArgument);
  CHECK_THROWS_AS(separate_element(a2, Word{{0}}, 0), InvalidArgument);
}

TEST_CASE("normalizer and centralizer evidence") {
  const auto dih = load_system("dihedral_inf.cox");
  const Subset t0({0}, 2);

  PermQuotient s3;  // s -> (2 3), t -> (1 2), image S_3
  s3.degree = 3;
  s3.images = {perm({0, 2, 1}), perm({1, 0, 2})};
  s3.image_order = 6;
  REQUIRE(verify_quotient(dih, s3));

  const auto norm = normalizer_evidence(dih, t0, s3);
  CHECK(norm.kind == QuotientEvidence::Kind::normalizer);
  CHECK(norm.subgroup_image_order == 2);
  CHECK(norm.result_order == 2);  // a transposition is self-normalizing in S_3
  CHECK(norm.tight);
  const auto nj = norm.to_json();
  CHECK(nj.at("kind") == "normalizer");
  CHECK(nj.at("tight") == true);
  CHECK(nj.at("quotient").at("degree") == 3);

  const auto cent = centralizer_evidence(dih, t0, s3);
  CHECK(cent.kind == QuotientEvidence::Kind::centralizer);
  CHECK(cent.subgroup_image_order == 2);
  CHECK(cent.result_order == 2);
  CHECK(cent.tight);
  CHECK(cent.to_json().at("kind") == "centralizer");

  // A quotient killing the subgroup is loose: everything normalizes and
  // centralizes the trivial image.
  PermQuotient killing;
  killing.degree = 2;
  killing.images = {Permutation::identity(2), perm({1, 0})};
  killing.image_order = 2;
  const auto loose_n = normalizer_evidence(dih, t0, killing);
  CHECK(loose_n.subgroup_image_order == 1);
  CHECK(loose_n.result_order == 2);
  CHECK_FALSE(loose_n.tight);
  const auto loose_c = centralizer_evidence(dih, t0, killing);
  CHECK(loose_c.result_order == 2);
  CHECK_FALSE(loose_c.tight);

  // The whole group is its own normalizer when T maps onto the image.
  const auto a2 = load_system("a2.cox");
  const auto full = normalizer_evidence(a2, Subset::full(2), s3);
  CHECK(full.subgroup_image_order == 6);
  CHECK(full.result_order == 6);
  CHECK(full.tight);
  const auto full_c = centralizer_evidence(a2, Subset::full(2), s3);
  CHECK(full_c.result_order == 1);  // trivial center of S_3
  CHECK(full_c.tight);

  CHECK_THROWS_AS(normalizer_evidence(load_system("affine_a2.cox"),
                                      Subset::full(3), s3),
                  InvalidArgument);  // non-spherical subset
  PermQuotient invalid = s3;
  invalid.images[0] = perm({1, 2, 0});
  CHECK_THROWS_AS(normalizer_evidence(dih, t0, invalid), InvalidArgument);
}

TEST_CASE("parallel search matches serial byte for byte") {
  struct Case {
    const char* fixture;
    int max_degree;
    std::size_t max_count;
  };
  const Case cases[] = {
      {"a2.cox", 4, 1000},
      {"a2.cox", 4, 7},  // truncation crosses a degree boundary
      {"dihedral_inf.cox", 3, 1000},
      {"affine_a2.cox", 3, 10},
      {"rank0.cox", 3, 100},
  };
  for (const auto& c : cases) {
    CAPTURE(c.fixture);
    const auto sys = load_system(c.fixture);
    const auto serial =
        search_quotients(sys, c.max_degree, c.max_count, SearchMode::serial);
    const auto parallel =
        search_quotients(sys, c.max_degree, c.max_count, SearchMode::parallel);
    CHECK(quotients_json(serial).dump() == quotients_json(parallel).dump());
  }
}
