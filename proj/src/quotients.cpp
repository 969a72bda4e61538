#include "coxcert/quotients.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "coxcert/errors.hpp"

namespace coxcert {

/*
 * Permutations
 */

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
      throw InvalidArgument("image vector is not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int degree) {
  if (degree < 1) throw InvalidArgument("permutation degree must be at least 1");
  std::vector<int> im(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) im[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

bool Permutation::is_involution() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[static_cast<std::size_t>(apply(i))] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int i = 0; i < degree(); ++i) im[static_cast<std::size_t>(apply(i))] = i;
  return Permutation(std::move(im));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw InvalidArgument("permutation degrees differ");
  std::vector<int> im(a.images_.size());
  for (int i = 0; i < a.degree(); ++i)
    im[static_cast<std::size_t>(i)] = b.apply(a.apply(i));
  return Permutation(std::move(im));
}

std::string Permutation::cycle_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)] || apply(start) == start) continue;
    out += "(";
    int x = start;
    bool first = true;
    do {
      seen[static_cast<std::size_t>(x)] = true;
      if (!first) out += " ";
      out += std::to_string(x + 1);
      first = false;
      x = apply(x);
    } while (x != start);
    out += ")";
  }
  return out.empty() ? "()" : out;
}

/*
 * Quotients
 */

Permutation PermQuotient::image_of(const Word& w) const {
  Permutation acc = Permutation::identity(degree);
  for (int s : w.letters) {
    if (s < 0 || s >= static_cast<int>(images.size()))
      throw InvalidArgument("word letter out of range for quotient");
    acc = acc * images[static_cast<std::size_t>(s)];
  }
  return acc;
}

nlohmann::json PermQuotient::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& p : images) gens.push_back(p.cycle_string());
  return nlohmann::json{{"degree", degree},
                        {"generators", std::move(gens)},
                        {"image_order", image_order}};
}

nlohmann::json QuotientEvidence::to_json() const {
  const char* kind_name = "normalizer";
  if (kind == Kind::centralizer) kind_name = "centralizer";
  if (kind == Kind::separation) kind_name = "separation";
  return nlohmann::json{{"kind", kind_name},
                        {"quotient", quotient.to_json()},
                        {"subgroup_image_order", subgroup_image_order},
                        {"result_order", result_order},
                        {"tight", tight}};
}

bool verify_quotient(const CoxeterSystem& sys, const PermQuotient& q) {
  if (static_cast<int>(q.images.size()) != sys.rank()) return false;
  for (const auto& p : q.images) {
    if (p.degree() != q.degree) return false;
    if (!p.is_involution()) return false;
  }
  for (int s = 0; s < sys.rank(); ++s)
    for (int t = s + 1; t < sys.rank(); ++t) {
      CoxOrder m = sys.order(s, t);
      if (m.is_infinite()) continue;
      Permutation r = q.images[static_cast<std::size_t>(s)] *
                      q.images[static_cast<std::size_t>(t)];
      Permutation acc = Permutation::identity(q.degree);
      for (std::uint32_t i = 0; i < m.value(); ++i) acc = acc * r;
      if (!acc.is_identity()) return false;
    }
  return true;
}

namespace {

// All involutions of degree d (identity included), in lexicographic order
// of their image tuples.
std::vector<Permutation> involutions_of_degree(int d) {
  std::vector<Permutation> out;
  std::vector<int> im(static_cast<std::size_t>(d), -1);
  // Build by first unassigned point: fixing it gives the smallest image,
  // then pairing with each larger unassigned point in increasing order.
  std::function<void()> rec = [&]() {
    int pos = -1;
    for (int i = 0; i < d; ++i)
      if (im[static_cast<std::size_t>(i)] < 0) { pos = i; break; }
    if (pos < 0) {
      out.emplace_back(im);
      return;
    }
    im[static_cast<std::size_t>(pos)] = pos;
    rec();
    im[static_cast<std::size_t>(pos)] = -1;
    for (int q = pos + 1; q < d; ++q) {
      if (im[static_cast<std::size_t>(q)] >= 0) continue;
      im[static_cast<std::size_t>(pos)] = q;
      im[static_cast<std::size_t>(q)] = pos;
      rec();
      im[static_cast<std::size_t>(pos)] = -1;
      im[static_cast<std::size_t>(q)] = -1;
    }
  };
  rec();
  return out;
}

std::set<std::vector<int>> closure_set(int degree, const std::vector<Permutation>& gens,
                                       std::uint64_t cap) {
  std::set<std::vector<int>> seen;
  std::vector<Permutation> frontier;
  seen.insert(Permutation::identity(degree).images());
  frontier.push_back(Permutation::identity(degree));
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier)
      for (const auto& h : gens) {
        Permutation p = g * h;
        if (seen.insert(p.images()).second) {
          if (seen.size() > cap)
            throw CapExceeded("quotient image group exceeds the closure cap of " +
                              std::to_string(cap));
          next.push_back(std::move(p));
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

// Depth-first over generator assignments at one degree, pruning on every
// finite relation against already-assigned generators.  visit returns
// false to stop; the function reports whether enumeration should continue.
bool enumerate_at_degree(const CoxeterSystem& sys, int degree,
                         const std::function<bool(const PermQuotient&)>& visit) {
  const int rank = sys.rank();
  const std::vector<Permutation> invs = involutions_of_degree(degree);
  std::vector<const Permutation*> chosen(static_cast<std::size_t>(rank), nullptr);

  std::function<bool(int)> rec = [&](int g) -> bool {
    if (g == rank) {
      bool all_identity = true;
      for (const auto* p : chosen)
        if (!p->is_identity()) { all_identity = false; break; }
      if (all_identity && rank > 0) return true;
      PermQuotient q;
      q.degree = degree;
      for (const auto* p : chosen) q.images.push_back(*p);
      q.image_order = closure_set(degree, q.images, kQuotientClosureCap).size();
      if (!verify_quotient(sys, q))
        throw ConsistencyFault("search emitted a quotient failing independent verification");
      return visit(q);
    }
    for (const auto& p : invs) {
      bool ok = true;
      for (int h = 0; h < g && ok; ++h) {
        CoxOrder m = sys.order(h, g);
        if (m.is_infinite()) continue;
        Permutation r = *chosen[static_cast<std::size_t>(h)] * p;
        Permutation acc = Permutation::identity(degree);
        for (std::uint32_t i = 0; i < m.value(); ++i) acc = acc * r;
        ok = acc.is_identity();
      }
      if (!ok) continue;
      chosen[static_cast<std::size_t>(g)] = &p;
      if (!rec(g + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

}  // namespace

std::vector<PermQuotient> search_quotients(const CoxeterSystem& sys, int max_degree,
                                           std::size_t max_count, SearchMode mode) {
  if (max_degree < 1) throw InvalidArgument("max_degree must be at least 1");
  std::vector<PermQuotient> out;
  if (max_count == 0) return out;

  if (mode == SearchMode::serial) {
    for (int d = 1; d <= max_degree && out.size() < max_count; ++d) {
      enumerate_at_degree(sys, d, [&](const PermQuotient& q) {
        out.push_back(q);
        return out.size() < max_count;
      });
    }
    return out;
  }

  // Parallel: one task per degree, each collecting at most max_count;
  // merged in degree order and truncated, so output matches serial.
  std::vector<std::future<std::vector<PermQuotient>>> futures;
  for (int d = 1; d <= max_degree; ++d) {
    futures.push_back(std::async(std::launch::async, [&sys, d, max_count]() {
      std::vector<PermQuotient> local;
      enumerate_at_degree(sys, d, [&](const PermQuotient& q) {
        local.push_back(q);
        return local.size() < max_count;
      });
      return local;
    }));
  }
  for (auto& f : futures) {
    std::vector<PermQuotient> part = f.get();
    for (auto& q : part) {
      if (out.size() >= max_count) break;
      out.push_back(std::move(q));
    }
  }
  return out;
}

std::optional<PermQuotient> separate_element(const CoxeterSystem& sys, const Word& w,
                                             int max_degree) {
  if (max_degree < 1) throw InvalidArgument("max_degree must be at least 1");
  w.validate(sys.rank());
  WordEngine engine(sys);
  if (engine.shortlex_normal_form(w).length() == 0)
    throw InvalidArgument("cannot separate the identity element");

  std::optional<PermQuotient> found;
  for (int d = 1; d <= max_degree && !found; ++d) {
    enumerate_at_degree(sys, d, [&](const PermQuotient& q) {
      if (q.image_of(w).is_identity()) return true;
      // independent recheck: the image of the reversed word is the inverse,
      // which must be non-identity too
      Word rev{std::vector<int>(w.letters.rbegin(), w.letters.rend())};
      if (q.image_of(rev).is_identity())
        throw ConsistencyFault("separation witness failed the inverse recheck");
      found = q;
      return false;
    });
  }
  return found;
}

namespace {

QuotientEvidence subgroup_evidence(const CoxeterSystem& sys, const Subset& t,
                                   const PermQuotient& q,
                                   QuotientEvidence::Kind kind) {
  t.validate(sys.rank());
  if (!classify_finite_type(sys, t).is_spherical)
    throw InvalidArgument("quotient evidence requires a spherical subset");
  if (!verify_quotient(sys, q))
    throw InvalidArgument("quotient fails verification");

  std::vector<Permutation> sub_gens;
  for (int s : t.members()) sub_gens.push_back(q.images[static_cast<std::size_t>(s)]);

  const auto group = closure_set(q.degree, q.images, kQuotientClosureCap);
  const auto sub = closure_set(q.degree, sub_gens, kQuotientClosureCap);

  QuotientEvidence ev;
  ev.kind = kind;
  ev.quotient = q;
  ev.subgroup_image_order = sub.size();

  std::uint64_t count = 0;
  if (kind == QuotientEvidence::Kind::normalizer) {
    for (const auto& gi : group) {
      Permutation g{std::vector<int>(gi)};
      Permutation ginv = g.inverse();
      bool normalizes = true;
      for (const auto& h : sub_gens) {
        Permutation conj = ginv * h * g;
        if (!sub.count(conj.images())) { normalizes = false; break; }
      }
      if (normalizes) ++count;
    }
    ev.result_order = count;
    ev.tight = (count == ev.subgroup_image_order);
  } else {
    std::uint64_t center = 0;
    for (const auto& gi : group) {
      Permutation g{std::vector<int>(gi)};
      bool commutes = true;
      for (const auto& h : sub_gens)
        if (!(g * h == h * g)) { commutes = false; break; }
      if (commutes) {
        ++count;
        if (sub.count(gi)) ++center;
      }
    }
    ev.result_order = count;
    ev.tight = (count == center);
  }
  return ev;
}

}  // namespace

QuotientEvidence normalizer_evidence(const CoxeterSystem& sys, const Subset& t,
                                     const PermQuotient& q) {
  return subgroup_evidence(sys, t, q, QuotientEvidence::Kind::normalizer);
}

QuotientEvidence centralizer_evidence(const CoxeterSystem& sys, const Subset& t,
                                      const PermQuotient& q) {
  return subgroup_evidence(sys, t, q, QuotientEvidence::Kind::centralizer);
}

}  // namespace coxcert
