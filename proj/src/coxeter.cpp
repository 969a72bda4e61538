#include "coxcert/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "coxcert/errors.hpp"

namespace coxcert {

CoxOrder CoxOrder::finite(std::uint32_t m) {
  if (m == 0 || m == kInf) throw InvalidArgument("finite order out of range");
  return CoxOrder(m);
}

std::uint32_t CoxOrder::value() const {
  if (is_infinite()) throw InvalidArgument("order is infinite");
  return raw_;
}

/*
 * Subsets
 */

Subset::Subset(std::vector<int> members, int rank) : members_(std::move(members)) {
  validate(rank);
}

void Subset::validate(int rank) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] >= rank)
      throw InvalidArgument("subset index " + std::to_string(members_[i]) +
                            " out of range for rank " + std::to_string(rank));
    if (i > 0 && members_[i] <= members_[i - 1])
      throw InvalidArgument("subset indices must be strictly increasing");
  }
}

Subset Subset::full(int rank) {
  std::vector<int> m(rank);
  std::iota(m.begin(), m.end(), 0);
  return Subset(std::move(m), rank);
}

Subset Subset::parse(std::string_view text, int rank) {
  std::vector<int> members;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
      tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
      tok.remove_suffix(1);
    if (tok.empty()) throw ParseError("empty entry in subset list");
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError("subset entry '" + std::string(tok) + "' is not an integer");
    members.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    if (pos == text.size()) throw ParseError("trailing comma in subset list");
  }
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw ParseError("duplicate index in subset list");
  return Subset(std::move(members), rank);
}

bool Subset::contains(int s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

Subset Subset::with(int s) const {
  if (contains(s)) throw InvalidArgument("index already in subset");
  Subset out = *this;
  out.members_.insert(std::lower_bound(out.members_.begin(), out.members_.end(), s), s);
  return out;
}

Subset Subset::without(int s) const {
  if (!contains(s)) throw InvalidArgument("index not in subset");
  Subset out = *this;
  out.members_.erase(std::lower_bound(out.members_.begin(), out.members_.end(), s));
  return out;
}

bool Subset::is_subset_of(const Subset& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::string Subset::to_string(const std::vector<std::string>& labels) const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ",";
    out += labels.at(static_cast<std::size_t>(members_[i]));
  }
  out += "}";
  return out;
}

/*
 * Systems
 */

namespace {

unsigned gcd_u(unsigned a, unsigned b) { return std::gcd(a, b); }

unsigned lcm_capped(unsigned a, unsigned b) {
  // Ranks are tiny and orders are user input; keep a sanity bound so a
  // pathological file cannot demand an astronomically large field.
  unsigned long long l = static_cast<unsigned long long>(a) / gcd_u(a, b) * b;
  if (l > 1u << 24)
    throw InvalidArgument("cyclotomic order required by the label set is too large");
  return static_cast<unsigned>(l);
}

}  // namespace

CoxeterSystem::CoxeterSystem(std::vector<std::vector<CoxOrder>> orders,
                             std::vector<std::string> labels)
    : orders_(std::move(orders)), labels_(std::move(labels)) {
  const int n = static_cast<int>(orders_.size());
  for (const auto& row : orders_)
    if (static_cast<int>(row.size()) != n)
      throw InvalidArgument("order matrix is not square");
  for (int i = 0; i < n; ++i) {
    if (orders_[i][i] != CoxOrder::one())
      throw InvalidArgument("diagonal order must be 1");
    for (int j = i + 1; j < n; ++j) {
      if (orders_[i][j] != orders_[j][i])
        throw InvalidArgument("order matrix must be symmetric");
      if (orders_[i][j].is_finite() && orders_[i][j].value() < 2)
        throw InvalidArgument("off-diagonal order must be at least 2");
    }
  }
  if (labels_.empty()) {
    for (int i = 0; i < n; ++i) labels_.push_back("s" + std::to_string(i + 1));
  }
  if (static_cast<int>(labels_.size()) != n)
    throw InvalidArgument("label count does not match rank");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw InvalidArgument("empty generator label");
    if (!seen.insert(l).second) throw InvalidArgument("duplicate generator label " + l);
  }
  cyclo_order_ = 4;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (orders_[i][j].is_finite())
        cyclo_order_ = lcm_capped(cyclo_order_, 2 * orders_[i][j].value());
}

CoxOrder CoxeterSystem::order(int s, int t) const {
  if (s < 0 || s >= rank() || t < 0 || t >= rank())
    throw InvalidArgument("generator index out of range");
  return orders_[s][t];
}

const std::string& CoxeterSystem::label(int s) const {
  if (s < 0 || s >= rank()) throw InvalidArgument("generator index out of range");
  return labels_[static_cast<std::size_t>(s)];
}

int CoxeterSystem::label_index(std::string_view label) const {
  for (int i = 0; i < rank(); ++i)
    if (labels_[static_cast<std::size_t>(i)] == label) return i;
  return -1;
}

std::string CoxeterSystem::canonical_text() const {
  std::ostringstream out;
  out << "rank " << rank() << "\n";
  out << "labels";
  for (const auto& l : labels_) out << " " << l;
  out << "\n";
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < rank(); ++j) {
      if (j) out << " ";
      out << (orders_[i][j].is_infinite() ? 0u : orders_[i][j].value());
    }
    out << "\n";
  }
  return out.str();
}

/*
 * Parsing.  Format:
 *   rank N
 *   labels a b c        (optional)
 *   N rows of N orders; 0 stands for infinity.
 */

namespace {

struct Line {
  int number = 0;  // 1-based
  std::vector<std::string> tokens;
  std::vector<int> cols;  // 1-based start column per token
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line;
    line.number = number;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.emplace_back(raw.substr(start, i - start));
      line.cols.push_back(static_cast<int>(start) + 1);
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

unsigned parse_entry(const std::string& tok, int row, int col) {
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("matrix entry '" + tok + "' is not a nonnegative integer", row, col);
  return value;
}

}  // namespace

CoxeterSystem parse_coxeter_system(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty system description");

  std::size_t cursor = 0;
  const Line& head = lines[cursor];
  if (head.tokens.size() != 2 || head.tokens[0] != "rank")
    throw ParseError("first line must be 'rank N'", head.number, 1);
  int rank = 0;
  {
    const std::string& tok = head.tokens[1];
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), rank);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || rank < 0)
      throw ParseError("rank '" + tok + "' is not a nonnegative integer",
                       head.number, head.cols[1]);
  }
  ++cursor;

  std::vector<std::string> labels;
  if (cursor < lines.size() && lines[cursor].tokens[0] == "labels") {
    const Line& line = lines[cursor];
    labels.assign(line.tokens.begin() + 1, line.tokens.end());
    if (static_cast<int>(labels.size()) != rank)
      throw ParseError("labels line has " + std::to_string(labels.size()) +
                           " entries, expected " + std::to_string(rank),
                       line.number, 1);
    ++cursor;
  }

  std::vector<std::vector<CoxOrder>> orders;
  std::vector<std::vector<unsigned>> raw(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) {
    if (cursor >= lines.size())
      throw ParseError("expected " + std::to_string(rank) + " matrix rows, found " +
                       std::to_string(i));
    const Line& line = lines[cursor++];
    if (static_cast<int>(line.tokens.size()) != rank)
      throw ParseError("matrix row has " + std::to_string(line.tokens.size()) +
                           " entries, expected " + std::to_string(rank),
                       line.number, 1);
    auto& row = raw[static_cast<std::size_t>(i)];
    for (int j = 0; j < rank; ++j)
      row.push_back(parse_entry(line.tokens[static_cast<std::size_t>(j)],
                                line.number, line.cols[static_cast<std::size_t>(j)]));
    if (row[static_cast<std::size_t>(i)] != 1)
      throw ParseError("diagonal entry must be 1", line.number,
                       line.cols[static_cast<std::size_t>(i)]);
  }
  if (cursor < lines.size())
    throw ParseError("unexpected extra line", lines[cursor].number, 1);

  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (raw[i][j] != raw[j][i])
        throw ParseError("matrix is not symmetric at row " + std::to_string(i + 1) +
                             ", column " + std::to_string(j + 1),
                         -1, -1);

  for (int i = 0; i < rank; ++i) {
    std::vector<CoxOrder> row;
    for (int j = 0; j < rank; ++j) {
      unsigned v = raw[i][j];
      if (i != j && v == 1)
        throw ParseError("off-diagonal entry must be 0 (infinity) or at least 2 at row " +
                         std::to_string(i + 1) + ", column " + std::to_string(j + 1));
      row.push_back(v == 0 ? CoxOrder::infinity()
                           : (v == 1 ? CoxOrder::one() : CoxOrder::finite(v)));
    }
    orders.push_back(std::move(row));
  }
  try {
    return CoxeterSystem(std::move(orders), std::move(labels));
  } catch (const InvalidArgument& e) {
    // Constructor-level validation (e.g. duplicate labels) is still a
    // malformed file from the caller's point of view.
    throw ParseError(e.what());
  }
}

CoxeterSystem induced_subsystem(const CoxeterSystem& sys, const Subset& t) {
  t.validate(sys.rank());
  std::vector<std::vector<CoxOrder>> orders;
  std::vector<std::string> labels;
  for (int a : t.members()) {
    std::vector<CoxOrder> row;
    for (int b : t.members()) row.push_back(sys.order(a, b));
    orders.push_back(std::move(row));
    labels.push_back(sys.label(a));
  }
  return CoxeterSystem(std::move(orders), std::move(labels));
}

/*
 * Finite type classification.  Works on the diagram of the induced
 * subsystem: vertices T, edges where m(s,t) >= 3 or m(s,t) = infinity.
 */

std::string ComponentType::name() const {
  if (family == 'I') return "I2(" + std::to_string(dihedral_m) + ")";
  return std::string(1, family) + std::to_string(rank);
}

namespace {

// Positions are indices into the component's node list.
struct LocalEdge {
  int a, b;
  CoxOrder m;
};

std::optional<ComponentType> match_component(int k, const std::vector<LocalEdge>& edges,
                                             const std::vector<int>& degree) {
  for (const auto& e : edges)
    if (e.m.is_infinite()) return std::nullopt;
  if (k == 1) return ComponentType{'A', 1, 0};
  if (k == 2) {
    std::uint32_t m = edges.front().m.value();
    if (m == 3) return ComponentType{'A', 2, 0};
    return ComponentType{'I', 2, m};
  }
  if (static_cast<int>(edges.size()) != k - 1) return std::nullopt;  // has a cycle
  for (int d : degree)
    if (d >= 4) return std::nullopt;
  std::vector<int> branch_nodes;
  for (int v = 0; v < k; ++v)
    if (degree[v] == 3) branch_nodes.push_back(v);
  if (branch_nodes.size() >= 2) return std::nullopt;

  std::vector<std::vector<std::pair<int, std::uint32_t>>> adj(k);
  for (const auto& e : edges) {
    adj[e.a].push_back({e.b, e.m.value()});
    adj[e.b].push_back({e.a, e.m.value()});
  }

  if (branch_nodes.empty()) {
    // Path: walk from one endpoint and collect the k-1 labels.
    int start = -1;
    for (int v = 0; v < k; ++v)
      if (degree[v] == 1) { start = v; break; }
    if (start < 0) return std::nullopt;
    std::vector<std::uint32_t> lab;
    int prev = -1, cur = start;
    while (static_cast<int>(lab.size()) < k - 1) {
      bool advanced = false;
      for (auto [next, m] : adj[cur]) {
        if (next == prev) continue;
        lab.push_back(m);
        prev = cur;
        cur = next;
        advanced = true;
        break;
      }
      if (!advanced) return std::nullopt;
    }
    std::vector<int> big;  // positions of labels > 3
    for (int i = 0; i < static_cast<int>(lab.size()); ++i)
      if (lab[i] != 3) big.push_back(i);
    if (big.empty()) return ComponentType{'A', k, 0};
    if (big.size() > 1) return std::nullopt;
    const int pos = big.front();
    const std::uint32_t m = lab[static_cast<std::size_t>(pos)];
    const bool at_end = (pos == 0 || pos == k - 2);
    if (m == 4 && at_end) return ComponentType{'B', k, 0};
    if (m == 4 && k == 4 && pos == 1) return ComponentType{'F', 4, 0};
    if (m == 5 && at_end && k == 3) return ComponentType{'H', 3, 0};
    if (m == 5 && at_end && k == 4) return ComponentType{'H', 4, 0};
    return std::nullopt;
  }

  // One trivalent node; all labels must be 3, and the three arm lengths
  // decide between D and E.
  for (const auto& e : edges)
    if (e.m.value() != 3) return std::nullopt;
  const int hub = branch_nodes.front();
  std::vector<int> arms;
  for (auto [first, m] : adj[hub]) {
    (void)m;
    int len = 1, prev = hub, cur = first;
    while (degree[cur] == 2) {
      for (auto [next, m2] : adj[cur]) {
        (void)m2;
        if (next != prev) { prev = cur; cur = next; break; }
      }
      ++len;
    }
    if (degree[cur] == 3) return std::nullopt;  // would mean two hubs
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return ComponentType{'D', k, 0};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2) return ComponentType{'E', 6, 0};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3) return ComponentType{'E', 7, 0};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4) return ComponentType{'E', 8, 0};
  return std::nullopt;
}

}  // namespace

TypeDecomposition classify_finite_type(const CoxeterSystem& sys, const Subset& t) {
  t.validate(sys.rank());
  const auto& nodes = t.members();
  const int k = t.size();

  // Union-find over positions.
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      CoxOrder m = sys.order(nodes[i], nodes[j]);
      if (m == CoxOrder::finite(2)) continue;
      parent[find(i)] = find(j);
    }

  std::map<int, std::vector<int>> groups;  // root -> positions
  for (int i = 0; i < k; ++i) groups[find(i)].push_back(i);

  TypeDecomposition out;
  out.is_spherical = true;
  std::vector<DiagramComponent> comps;
  for (auto& [root, positions] : groups) {
    std::sort(positions.begin(), positions.end());
    std::vector<int> local(k, -1);
    DiagramComponent comp;
    for (int idx = 0; idx < static_cast<int>(positions.size()); ++idx) {
      local[positions[idx]] = idx;
      comp.nodes.push_back(nodes[positions[idx]]);
    }
    std::vector<LocalEdge> edges;
    std::vector<int> degree(positions.size(), 0);
    for (int ii = 0; ii < static_cast<int>(positions.size()); ++ii)
      for (int jj = ii + 1; jj < static_cast<int>(positions.size()); ++jj) {
        CoxOrder m = sys.order(nodes[positions[ii]], nodes[positions[jj]]);
        if (m == CoxOrder::finite(2)) continue;
        edges.push_back({ii, jj, m});
        ++degree[ii];
        ++degree[jj];
      }
    comp.type = match_component(static_cast<int>(positions.size()), edges, degree);
    if (!comp.type) out.is_spherical = false;
    comps.push_back(std::move(comp));
  }
  // Components sorted by least member for a deterministic report.
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return a.nodes.front() < b.nodes.front();
  });
  out.components = std::move(comps);
  return out;
}

/*
 * Spherical subset enumeration, bottom-up by cardinality.  A candidate is
 * classified only if every subset obtained by removing one element is
 * already known spherical (sphericity is closed under subsets).
 */

std::vector<Subset> enumerate_spherical_subsets(const CoxeterSystem& sys, int rank_cap) {
  const int n = sys.rank();
  if (n > rank_cap)
    throw CapExceeded("rank " + std::to_string(n) +
                      " exceeds the enumeration cap of " + std::to_string(rank_cap));
  std::set<std::vector<int>> spherical;
  std::vector<Subset> level = {Subset()};
  spherical.insert({});
  std::vector<Subset> out = {Subset()};

  for (int size = 1; size <= n; ++size) {
    std::vector<Subset> next;
    for (const Subset& base : level) {
      int lo = base.empty() ? 0 : base.members().back() + 1;
      for (int s = lo; s < n; ++s) {
        Subset cand = base.with(s);
        bool closed = true;
        for (int r : cand.members()) {
          if (r == s) continue;  // cand minus s is base, already spherical
          if (!spherical.count(cand.without(r).members())) { closed = false; break; }
        }
        if (!closed) continue;
        if (!classify_finite_type(sys, cand).is_spherical) continue;
        spherical.insert(cand.members());
        next.push_back(std::move(cand));
      }
    }
    if (next.empty()) break;
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subset> maximal_spherical_subsets(const CoxeterSystem& sys, int rank_cap) {
  std::vector<Subset> all = enumerate_spherical_subsets(sys, rank_cap);
  std::set<std::vector<int>> spherical;
  for (const auto& s : all) spherical.insert(s.members());
  std::vector<Subset> out;
  for (const auto& t : all) {
    bool maximal = true;
    for (int s = 0; s < sys.rank(); ++s) {
      if (t.contains(s)) continue;
      if (spherical.count(t.with(s).members())) { maximal = false; break; }
    }
    if (maximal) out.push_back(t);
  }
  return out;  // already lexicographically sorted
}

/*
 * Orders of the irreducible finite types.
 */

std::string to_decimal(GroupOrder n) {
  if (n == 0) return "0";
  std::string out;
  while (n > 0) {
    out += static_cast<char>('0' + static_cast<int>(n % 10));
    n /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

GroupOrder checked_mul(GroupOrder a, GroupOrder b) {
  if (a != 0 && b > static_cast<GroupOrder>(-1) / a)
    throw InvalidArgument("group order overflows 128 bits");
  return a * b;
}

GroupOrder factorial(int n) {
  GroupOrder f = 1;
  for (int i = 2; i <= n; ++i) f = checked_mul(f, static_cast<GroupOrder>(i));
  return f;
}

GroupOrder pow2(int n) {
  GroupOrder p = 1;
  for (int i = 0; i < n; ++i) p = checked_mul(p, 2);
  return p;
}

GroupOrder component_order(const ComponentType& t) {
  switch (t.family) {
    case 'A': return factorial(t.rank + 1);
    case 'B': return checked_mul(pow2(t.rank), factorial(t.rank));
    case 'D': return checked_mul(pow2(t.rank - 1), factorial(t.rank));
    case 'E':
      if (t.rank == 6) return 51840;
      if (t.rank == 7) return 2903040;
      return 696729600;
    case 'F': return 1152;
    case 'H': return t.rank == 3 ? 120 : 14400;
    case 'I': return 2 * static_cast<GroupOrder>(t.dihedral_m);
    default: throw InvalidArgument("unknown type family");
  }
}

}  // namespace

GroupOrder order_of(const TypeDecomposition& decomposition) {
  if (!decomposition.is_spherical)
    throw InvalidArgument("order requested for a non-spherical decomposition");
  GroupOrder order = 1;
  for (const auto& comp : decomposition.components)
    order = checked_mul(order, component_order(*comp.type));
  return order;
}

}  // namespace coxcert
