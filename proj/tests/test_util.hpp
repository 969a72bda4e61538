#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coxcert/coxeter.hpp"
#include "coxcert/word_engine.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline coxcert::CoxeterSystem load_system(const std::string& name) {
  return coxcert::parse_coxeter_system(read_fixture(name));
}

// Rank-n system built from the strict upper triangle, row by row; 0 = infinity.
inline coxcert::CoxeterSystem make_system(int rank,
                                          const std::vector<unsigned>& upper) {
  using coxcert::CoxOrder;
  std::vector<std::vector<CoxOrder>> m(
      rank, std::vector<CoxOrder>(rank, CoxOrder::one()));
  std::size_t k = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      const unsigned v = upper.at(k++);
      const CoxOrder o = v == 0 ? CoxOrder::infinity() : CoxOrder::finite(v);
      m[i][j] = o;
      m[j][i] = o;
    }
  REQUIRE(k == upper.size());
  return coxcert::CoxeterSystem(std::move(m));
}

inline coxcert::Word random_word(std::mt19937& rng, int rank, int max_length) {
  std::uniform_int_distribution<int> len(0, max_length);
  std::uniform_int_distribution<int> letter(0, rank - 1);
  coxcert::Word w;
  const int n = len(rng);
  w.letters.reserve(n);
  for (int i = 0; i < n; ++i) w.letters.push_back(letter(rng));
  return w;
}

inline coxcert::Word reversed(const coxcert::Word& w) {
  coxcert::Word r = w;
  std::reverse(r.letters.begin(), r.letters.end());
  return r;
}

inline coxcert::Word concat(const coxcert::Word& a, const coxcert::Word& b) {
  coxcert::Word c = a;
  c.letters.insert(c.letters.end(), b.letters.begin(), b.letters.end());
  return c;
}

}  // namespace testutil
