#include "coxcert/word_engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "coxcert/errors.hpp"

namespace coxcert {

/*
 * Words
 */

void Word::validate(int rank) const {
  for (int s : letters)
    if (s < 0 || s >= rank)
      throw InvalidArgument("word letter " + std::to_string(s) +
                            " out of range for rank " + std::to_string(rank));
}

Word Word::parse(const CoxeterSystem& sys, std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    int s = sys.label_index(tok);
    if (s < 0) throw ParseError("unknown generator label '" + tok + "'");
    w.letters.push_back(s);
  }
  return w;
}

std::string Word::to_labels(const CoxeterSystem& sys) const {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += " ";
    out += sys.label(letters[i]);
  }
  return out;
}

/*
 * Element tables
 */

std::uint32_t ElementTable::multiply(std::uint32_t id, int generator) const {
  const auto& members = generators.members();
  auto it = std::lower_bound(members.begin(), members.end(), generator);
  if (it == members.end() || *it != generator)
    throw InvalidArgument("generator not in the table's sub-alphabet");
  return edges[id][static_cast<std::size_t>(it - members.begin())];
}

std::uint32_t ElementTable::apply_word(std::uint32_t id, const Word& w) const {
  for (int s : w.letters) id = multiply(id, s);
  return id;
}

std::optional<std::uint32_t> ElementTable::find(const std::vector<int>& nf) const {
  auto it = index.find(nf);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

/*
 * The engine
 */

namespace {

// m <- m * sigma, where sigma is a reflection matrix: the identity outside
// row s.  Touches only the entries that actually change.
void right_multiply_reflection(ExactMatrix& m, const ExactMatrix& sigma, int s) {
  const int n = m.dimension();
  for (int i = 0; i < n; ++i) {
    const AlgebraicReal c = m.at(i, s);
    if (c.is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      AlgebraicReal delta = sigma.at(s, j);
      if (j == s) delta = delta - m.field()->one();
      if (delta.is_zero()) continue;
      m.at(i, j) = m.at(i, j) + c * delta;
    }
  }
}

// m <- sigma * m: only row s of m changes.
void left_multiply_reflection(ExactMatrix& m, const ExactMatrix& sigma, int s) {
  const int n = m.dimension();
  std::vector<AlgebraicReal> row;
  row.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    AlgebraicReal acc = m.field()->zero();
    for (int k = 0; k < n; ++k) {
      const AlgebraicReal& c = sigma.at(s, k);
      if (c.is_zero() || m.at(k, j).is_zero()) continue;
      acc = acc + c * m.at(k, j);
    }
    row.push_back(std::move(acc));
  }
  for (int j = 0; j < n; ++j) m.at(s, j) = std::move(row[static_cast<std::size_t>(j)]);
}

// Sign of the root given by column s of m.  Roots have coordinates of one
// uniform sign; anything else means the matrix is not a group element.
Sign column_root_sign(const ExactMatrix& m, int s) {
  bool has_pos = false, has_neg = false;
  for (int i = 0; i < m.dimension(); ++i) {
    switch (sign_of(m.at(i, s))) {
      case Sign::positive: has_pos = true; break;
      case Sign::negative: has_neg = true; break;
      case Sign::zero: break;
    }
  }
  if (has_pos && has_neg)
    throw ConsistencyFault("root column has mixed coordinate signs");
  if (!has_pos && !has_neg)
    throw ConsistencyFault("root column is zero");
  return has_neg ? Sign::negative : Sign::positive;
}

}  // namespace

// Matrices of w (acting on simple-root coordinates) and of w^-1, updated a
// letter at a time: appending s on the right sends fwd to fwd*sigma_s and
// inv to sigma_s*inv.
struct WordEngine::Cursor {
  ExactMatrix fwd;
  ExactMatrix inv;

  explicit Cursor(const ExactMatrix& id) : fwd(id), inv(id) {}

  void append(const WordEngine& eng, int s) {
    right_multiply_reflection(fwd, eng.reflections_[static_cast<std::size_t>(s)], s);
    left_multiply_reflection(inv, eng.reflections_[static_cast<std::size_t>(s)], s);
  }
};

WordEngine::WordEngine(CoxeterSystem sys)
    : sys_(std::move(sys)),
      field_(CyclotomicField::get(sys_.cyclotomic_order())),
      identity_(ExactMatrix::identity(field_, sys_.rank())) {
  reflections_.reserve(static_cast<std::size_t>(sys_.rank()));
  for (int s = 0; s < sys_.rank(); ++s)
    reflections_.push_back(reflection_matrix(sys_, s));
}

bool WordEngine::is_left_descent(const Word& w, int s) const {
  w.validate(sys_.rank());
  if (s < 0 || s >= sys_.rank()) throw InvalidArgument("generator index out of range");
  Cursor c(identity_);
  for (int letter : w.letters) c.append(*this, letter);
  return column_root_sign(c.inv, s) == Sign::negative;
}

bool WordEngine::is_right_descent(const Word& w, int s) const {
  w.validate(sys_.rank());
  if (s < 0 || s >= sys_.rank()) throw InvalidArgument("generator index out of range");
  Cursor c(identity_);
  for (int letter : w.letters) c.append(*this, letter);
  return column_root_sign(c.fwd, s) == Sign::negative;
}

bool WordEngine::is_identity(const Word& w) const {
  w.validate(sys_.rank());
  Cursor c(identity_);
  for (int letter : w.letters) c.append(*this, letter);
  return c.inv == identity_;
}

namespace {

// Greedy normal form extraction: repeatedly take the smallest left descent.
// Consumes inv (the matrix of w^-1), multiplying the descent away on the
// right; eng's reflection matrices are applied through the cursor helpers.
std::vector<int> extract_normal_form(ExactMatrix inv, const ExactMatrix& identity,
                                     const std::vector<ExactMatrix>& reflections) {
  std::vector<int> out;
  const int n = inv.dimension();
  for (;;) {
    int descent = -1;
    for (int s = 0; s < n; ++s) {
      if (column_root_sign(inv, s) == Sign::negative) { descent = s; break; }
    }
    if (descent < 0) {
      if (!(inv == identity))
        throw ConsistencyFault("descent-free matrix is not the identity");
      return out;
    }
    out.push_back(descent);
    right_multiply_reflection(inv, reflections[static_cast<std::size_t>(descent)], descent);
  }
}

}  // namespace

NormalForm WordEngine::shortlex_normal_form(const Word& w) const {
  w.validate(sys_.rank());
  Cursor c(identity_);
  for (int letter : w.letters) c.append(*this, letter);
  return NormalForm{extract_normal_form(std::move(c.inv), identity_, reflections_)};
}

int WordEngine::length(const Word& w) const {
  return shortlex_normal_form(w).length();
}

/*
 * Braid-move oracle
 */

NormalForm WordEngine::tits_reduce_oracle(const Word& w, std::size_t length_cap) const {
  w.validate(sys_.rank());
  if (w.letters.size() > length_cap)
    throw CapExceeded("oracle word length " + std::to_string(w.letters.size()) +
                      " exceeds cap " + std::to_string(length_cap));

  std::string current;
  for (int s : w.letters) current.push_back(static_cast<char>(s));

  for (;;) {
    std::set<std::string> visited{current};
    std::deque<std::string> queue{current};
    bool deleted = false;
    while (!queue.empty() && !deleted) {
      std::string u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (u[i] == u[i + 1]) {
          current = u.substr(0, i) + u.substr(i + 2);
          deleted = true;
          break;
        }
      }
      if (deleted) break;
      // braid rewrites: replace an alternating run (s t s ...) of length
      // m(s,t) starting at position i with the run (t s t ...)
      for (std::size_t i = 0; i < u.size(); ++i) {
        const int s = u[i];
        for (int t = 0; t < sys_.rank(); ++t) {
          if (t == s) continue;
          CoxOrder m = sys_.order(s, t);
          if (m.is_infinite()) continue;
          const std::size_t len = m.value();
          if (i + len > u.size()) continue;
          bool matches = true;
          for (std::size_t j = 0; j < len; ++j) {
            const int expect = (j % 2 == 0) ? s : t;
            if (u[i + j] != expect) { matches = false; break; }
          }
          if (!matches) continue;
          std::string v = u;
          for (std::size_t j = 0; j < len; ++j)
            v[i + j] = static_cast<char>((j % 2 == 0) ? t : s);
          if (visited.insert(v).second) queue.push_back(v);
        }
      }
    }
    if (!deleted) {
      const std::string& least = *visited.begin();
      NormalForm nf;
      for (char c : least) nf.letters.push_back(static_cast<int>(c));
      return nf;
    }
  }
}

/*
 * Cayley enumeration
 */

ElementTable WordEngine::cayley_enumerate(const Subset& t, std::uint64_t cap) const {
  t.validate(sys_.rank());
  const auto& gens = t.members();
  const int k = t.size();

  ElementTable table;
  table.generators = t;

  struct Pending {
    std::uint32_t id;
    ExactMatrix fwd;
    ExactMatrix inv;
  };

  table.elements.push_back(NormalForm{});
  table.edges.emplace_back(static_cast<std::size_t>(k), UINT32_MAX);
  table.index.emplace(std::vector<int>{}, 0);

  std::deque<Pending> queue;
  queue.push_back({0, identity_, identity_});

  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    for (int pos = 0; pos < k; ++pos) {
      const int s = gens[static_cast<std::size_t>(pos)];
      // downward edges are recorded when the shorter endpoint is processed
      if (column_root_sign(cur.fwd, s) == Sign::negative) continue;
      ExactMatrix inv_next = cur.inv;
      left_multiply_reflection(inv_next, reflections_[static_cast<std::size_t>(s)], s);
      std::vector<int> nf = extract_normal_form(inv_next, identity_, reflections_);
      auto it = table.index.find(nf);
      std::uint32_t next_id;
      if (it != table.index.end()) {
        next_id = it->second;
      } else {
        next_id = static_cast<std::uint32_t>(table.elements.size());
        if (table.elements.size() >= cap)
          throw CapExceeded("parabolic subgroup exceeds the Cayley cap of " +
                            std::to_string(cap) + " elements");
        table.elements.push_back(NormalForm{nf});
        table.edges.emplace_back(static_cast<std::size_t>(k), UINT32_MAX);
        table.index.emplace(std::move(nf), next_id);
        ExactMatrix fwd_next = cur.fwd;
        right_multiply_reflection(fwd_next, reflections_[static_cast<std::size_t>(s)], s);
        queue.push_back({next_id, std::move(fwd_next), std::move(inv_next)});
      }
      table.edges[cur.id][static_cast<std::size_t>(pos)] = next_id;
      table.edges[next_id][static_cast<std::size_t>(pos)] = cur.id;
    }
  }

  // canonical order: by (length, lex) of normal form, identity first
  std::vector<std::uint32_t> order(table.elements.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto& x = table.elements[a].letters;
    const auto& y = table.elements[b].letters;
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  std::vector<std::uint32_t> new_id(order.size());
  for (std::uint32_t rank_pos = 0; rank_pos < order.size(); ++rank_pos)
    new_id[order[rank_pos]] = rank_pos;

  ElementTable out;
  out.generators = t;
  out.elements.resize(table.elements.size());
  out.edges.resize(table.edges.size());
  for (std::uint32_t old = 0; old < order.size(); ++old) {
    out.elements[new_id[old]] = std::move(table.elements[old]);
    std::vector<std::uint32_t> row = std::move(table.edges[old]);
    for (auto& e : row) {
      if (e == UINT32_MAX)
        throw ConsistencyFault("Cayley table has an unfilled edge");
      e = new_id[e];
    }
    out.edges[new_id[old]] = std::move(row);
  }
  for (std::uint32_t id = 0; id < out.elements.size(); ++id)
    out.index.emplace(out.elements[id].letters, id);
  return out;
}

/*
 * Longest elements and centers
 */

Word WordEngine::longest_element(const Subset& t) const {
  t.validate(sys_.rank());
  if (!classify_finite_type(sys_, t).is_spherical)
    throw InvalidArgument("longest element requested for a non-spherical subset");
  Cursor c(identity_);
  std::vector<int> word;
  for (;;) {
    int ascent = -1;
    for (int s : t.members()) {
      if (column_root_sign(c.fwd, s) == Sign::positive) { ascent = s; break; }
    }
    if (ascent < 0) break;
    c.append(*this, ascent);
    word.push_back(ascent);
  }
  return shortlex_normal_form(Word{std::move(word)}).word();
}

bool WordEngine::is_longest_element_central(const Subset& t) const {
  const Word w0 = longest_element(t);
  for (int s : t.members()) {
    Word test;
    test.letters = w0.letters;
    test.letters.push_back(s);
    test.letters.insert(test.letters.end(), w0.letters.begin(), w0.letters.end());
    test.letters.push_back(s);
    if (!is_identity(test)) return false;
  }
  return true;
}

GroupOrder WordEngine::center_order(const Subset& t) const {
  TypeDecomposition decomp = classify_finite_type(sys_, t);
  if (!decomp.is_spherical)
    throw InvalidArgument("center order requested for a non-spherical subset");
  GroupOrder order = 1;
  for (const auto& comp : decomp.components) {
    Subset sub(comp.nodes, sys_.rank());
    if (is_longest_element_central(sub)) order *= 2;
  }
  return order;
}

}  // namespace coxcert
