#include "simon/group.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "simon/error.hpp"

namespace simon {

bool Subgroup::contains(int g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

GroupTable GroupTable::from_table(int order, std::vector<int> mul,
                                  std::vector<std::string> names, int order_bound) {
  if (order <= 0) throw ValidationError("group order must be positive");
  if (order > order_bound) {
    throw ValidationError("group order " + std::to_string(order) +
                          " exceeds the configured bound " + std::to_string(order_bound));
  }
  const auto r = static_cast<std::size_t>(order);
  if (mul.size() != r * r) throw ValidationError("multiplication table has the wrong size");
  for (int v : mul) {
    if (v < 0 || v >= order) throw ValidationError("table entry out of range");
  }

  // Latin square
  for (std::size_t g = 0; g < r; ++g) {
    std::vector<char> row(r, 0), col(r, 0);
    for (std::size_t h = 0; h < r; ++h) {
      auto& seen_row = row[static_cast<std::size_t>(mul[g * r + h])];
      auto& seen_col = col[static_cast<std::size_t>(mul[h * r + g])];
      if (seen_row || seen_col) throw ValidationError("table is not a Latin square");
      seen_row = seen_col = 1;
    }
  }

  GroupTable t;
  t.order_ = order;
  t.mul_ = std::move(mul);

  t.identity_ = -1;
  for (int e = 0; e < order && t.identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < order && ok; ++g) ok = t.mul(e, g) == g && t.mul(g, e) == g;
    if (ok) t.identity_ = e;
  }
  if (t.identity_ < 0) throw ValidationError("table has no two-sided identity");

  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c))) {
          throw ValidationError("table is not associative at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
        }

  t.inv_.assign(r, -1);
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      if (t.mul(g, h) == t.identity_) t.inv_[static_cast<std::size_t>(g)] = h;

  if (names.empty()) {
    names.resize(r);
    for (int g = 0; g < order; ++g) names[static_cast<std::size_t>(g)] = std::to_string(g);
  }
  if (names.size() != r) throw ValidationError("name list has the wrong length");
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != r) throw ValidationError("element names are not distinct");
  t.names_ = std::move(names);

  t.class_of_.assign(r, -1);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < order; ++g) {
    if (t.class_of_[static_cast<std::size_t>(g)] >= 0) continue;
    std::set<int> cls;
    for (int x = 0; x < order; ++x) cls.insert(t.conjugate(x, g));
    for (int c : cls) t.class_of_[static_cast<std::size_t>(c)] = 0;
    classes.emplace_back(cls.begin(), cls.end());
  }
  const int id = t.identity_;
  std::sort(classes.begin(), classes.end(), [id](const auto& a, const auto& b) {
    const bool ai = a.front() == id || (a.size() == 1 && a[0] == id);
    const bool bi = b.front() == id || (b.size() == 1 && b[0] == id);
    if (ai != bi) return ai;
    if (a.size() != b.size()) return a.size() < b.size();
    return a.front() < b.front();
  });
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int g : classes[c]) t.class_of_[static_cast<std::size_t>(g)] = static_cast<int>(c);
  t.classes_ = std::move(classes);
  return t;
}

int GroupTable::element_order(int g) const {
  int k = 1;
  for (int x = g; x != identity_; x = mul(x, g)) ++k;
  return k;
}

int GroupTable::find(std::string_view name) const {
  for (int g = 0; g < order_; ++g)
    if (names_[static_cast<std::size_t>(g)] == name) return g;
  return -1;
}

int GroupTable::resolve(std::string_view token) const {
  if (int g = find(token); g >= 0) return g;
  int value = -1;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc() && ptr == token.data() + token.size() && value >= 0 && value < order_) {
    return value;
  }
  throw ParseError("unknown group element '" + std::string(token) + "'");
}

// ---------------------------------------------------------------------------
// custom files

GroupTable parse_group_file(std::string_view text, int order_bound) {
  std::vector<std::string> lines;
  {
    std::string s(text);
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) {
    lines.pop_back();
  }
  auto tokens = [](const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
  };
  auto to_int = [](const std::string& tok, int line_no) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + tok +
                       "'");
    }
    return v;
  };

  if (lines.empty()) throw ParseError("empty group file");
  const auto head = tokens(lines[0]);
  if (head.size() != 1) throw ParseError("line 1: expected the group order");
  const int order = to_int(head[0], 1);
  if (order <= 0) throw ParseError("line 1: order must be positive");
  if (order > order_bound) {
    throw GuardExceeded("group order " + std::to_string(order) + " exceeds the bound " +
                        std::to_string(order_bound));
  }
  const auto r = static_cast<std::size_t>(order);
  if (lines.size() < r + 1) throw ParseError("truncated multiplication table");
  if (lines.size() > r + 2) throw ParseError("trailing content after the names line");

  std::vector<int> mul;
  mul.reserve(r * r);
  for (std::size_t i = 1; i <= r; ++i) {
    const auto row = tokens(lines[i]);
    if (row.size() != r) {
      throw ParseError("line " + std::to_string(i + 1) + ": expected " + std::to_string(order) +
                       " entries");
    }
    for (const auto& tok : row) mul.push_back(to_int(tok, static_cast<int>(i + 1)));
  }
  std::vector<std::string> names;
  if (lines.size() == r + 2) {
    names = tokens(lines[r + 1]);
    if (names.size() != r) throw ParseError("names line has the wrong number of entries");
  }
  try {
    return GroupTable::from_table(order, std::move(mul), std::move(names), order_bound);
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid group table: ") + e.what());
  }
}

GroupTable load_group_file(const std::string& path, int order_bound) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group_file(buf.str(), order_bound);
}

std::string export_group_file(const GroupTable& g) {
  std::ostringstream out;
  out << g.order() << '\n';
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
  for (int a = 0; a < g.order(); ++a) out << (a ? " " : "") << g.name(a);
  out << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// structure

Subgroup generated_subgroup(const GroupTable& g, const std::vector<int>& generators) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  std::vector<int> members{g.identity()};
  in[static_cast<std::size_t>(g.identity())] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (int s : generators) {
      const int x = g.mul(members[i], s);
      if (!in[static_cast<std::size_t>(x)]) {
        in[static_cast<std::size_t>(x)] = 1;
        members.push_back(x);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

bool is_subgroup(const GroupTable& g, const Subgroup& s) {
  if (s.elements.empty() || !std::is_sorted(s.elements.begin(), s.elements.end())) return false;
  if (!s.contains(g.identity())) return false;
  for (int a : s.elements) {
    if (a < 0 || a >= g.order() || !s.contains(g.inv(a))) return false;
    for (int b : s.elements)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const GroupTable& g, const Subgroup& s) {
  if (!is_subgroup(g, s)) return false;
  for (int a : s.elements)
    for (int x = 0; x < g.order(); ++x)
      if (!s.contains(g.conjugate(x, a))) return false;
  return true;
}

Subgroup commutator_subgroup(const GroupTable& g) {
  std::set<int> comms;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) comms.insert(g.commutator(a, b));
  return generated_subgroup(g, {comms.begin(), comms.end()});
}

std::vector<Subgroup> normal_subgroups(const GroupTable& g) {
  // Every normal subgroup is generated by the classes it contains, so growing
  // from {1} one class at a time reaches all of them.
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> frontier{generated_subgroup(g, {})};
  seen.insert(frontier.front().elements);
  std::vector<Subgroup> all = frontier;
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& n : frontier) {
      for (const auto& cls : g.classes()) {
        if (n.contains(cls.front())) continue;
        std::vector<int> gens = n.elements;
        gens.insert(gens.end(), cls.begin(), cls.end());
        Subgroup grown = generated_subgroup(g, gens);
        if (seen.insert(grown.elements).second) {
          next.push_back(grown);
          all.push_back(std::move(grown));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return all;
}

Subgroup center(const GroupTable& g) {
  std::vector<int> z;
  for (int a = 0; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return Subgroup{std::move(z)};
}

std::vector<int> involutions(const GroupTable& g) {
  std::vector<int> out;
  for (int a = 0; a < g.order(); ++a)
    if (a != g.identity() && g.mul(a, a) == g.identity()) out.push_back(a);
  return out;
}

const std::vector<int>& conjugacy_class_of(const GroupTable& g, int element) {
  return g.classes()[static_cast<std::size_t>(g.class_of(element))];
}

Quotient quotient_group(const GroupTable& g, const Subgroup& n) {
  if (!is_subgroup(g, n)) throw ValidationError("quotient: N is not a subgroup");
  if (!is_normal(g, n)) throw ValidationError("quotient: N is not normal");
  const int r = g.order();
  std::vector<int> projection(static_cast<std::size_t>(r), -1);
  std::vector<int> reps;
  for (int a = 0; a < r; ++a) {
    if (projection[static_cast<std::size_t>(a)] >= 0) continue;
    const int idx = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int k : n.elements) projection[static_cast<std::size_t>(g.mul(a, k))] = idx;
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> mul(static_cast<std::size_t>(q * q));
  std::vector<std::string> names;
  for (int a = 0; a < q; ++a) {
    names.push_back(g.name(reps[static_cast<std::size_t>(a)]) + "N");
    for (int b = 0; b < q; ++b) {
      mul[static_cast<std::size_t>(a * q + b)] =
          projection[static_cast<std::size_t>(g.mul(reps[static_cast<std::size_t>(a)],
                                                    reps[static_cast<std::size_t>(b)]))];
    }
  }
  return Quotient{GroupTable::from_table(q, std::move(mul), std::move(names), r), projection};
}

}  // namespace simon
