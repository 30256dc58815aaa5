// Catalog constructors. Element orderings:
//   Z_m        a^i                       -> i
//   D_k        r^i s^j                   -> j*k + i
//   S_k        permutations of {0..k-1}  -> lexicographic one-line order
//   Q8         1,-1,i,-i,j,-j,k,-k       -> listed order
//   L wr Z_2   (x, y) s^f                -> f*|L|^2 + x*|L| + y
#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>

#include "simon/error.hpp"
#include "simon/group.hpp"

namespace simon {

namespace {

std::string power_name(const std::string& base, int i) {
  if (i == 0) return "";
  if (i == 1) return base;
  return base + "^" + std::to_string(i);
}

GroupTable cyclic(int m, int bound) {
  if (m < 1) throw ValidationError("Z_m needs m >= 1");
  if (m > bound) throw GuardExceeded("Z" + std::to_string(m) + " exceeds the order bound");
  std::vector<int> mul(static_cast<std::size_t>(m * m));
  std::vector<std::string> names;
  for (int a = 0; a < m; ++a) {
    names.push_back(a == 0 ? "e" : power_name("a", a));
    for (int b = 0; b < m; ++b) mul[static_cast<std::size_t>(a * m + b)] = (a + b) % m;
  }
  return GroupTable::from_table(m, std::move(mul), std::move(names), bound);
}

GroupTable dihedral(int k, int bound) {
  if (k < 1) throw ValidationError("D_k needs k >= 1");
  const int r = 2 * k;
  if (r > bound) throw GuardExceeded("D" + std::to_string(k) + " exceeds the order bound");
  auto index = [k](int i, int j) { return j * k + i; };
  std::vector<int> mul(static_cast<std::size_t>(r * r));
  std::vector<std::string> names(static_cast<std::size_t>(r));
  for (int j1 = 0; j1 < 2; ++j1)
    for (int i1 = 0; i1 < k; ++i1) {
      const int a = index(i1, j1);
      std::string nm = power_name("r", i1) + (j1 ? "s" : "");
      names[static_cast<std::size_t>(a)] = nm.empty() ? "e" : nm;
      for (int j2 = 0; j2 < 2; ++j2)
        for (int i2 = 0; i2 < k; ++i2) {
          // r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
          const int i = ((i1 + (j1 ? -i2 : i2)) % k + k) % k;
          mul[static_cast<std::size_t>(a * r + index(i2, j2))] = index(i, j1 ^ j2);
        }
    }
  return GroupTable::from_table(r, std::move(mul), std::move(names), bound);
}

std::string cycle_name(const std::vector<int>& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == static_cast<int>(s)) continue;
    out += "(";
    for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(p[x])) {
      seen[x] = 1;
      out += std::to_string(x + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

GroupTable symmetric(int k, int bound) {
  if (k < 1 || k > 4) throw ValidationError("S_k is supported for 1 <= k <= 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int r = static_cast<int>(perms.size());
  if (r > bound) throw GuardExceeded("S" + std::to_string(k) + " exceeds the order bound");
  auto lookup = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<int> mul(static_cast<std::size_t>(r * r));
  std::vector<std::string> names;
  std::vector<int> comp(static_cast<std::size_t>(k));
  for (int a = 0; a < r; ++a) {
    names.push_back(cycle_name(perms[static_cast<std::size_t>(a)]));
    for (int b = 0; b < r; ++b) {
      // (ab)(x) = a(b(x))
      for (int x = 0; x < k; ++x) {
        comp[static_cast<std::size_t>(x)] =
            perms[static_cast<std::size_t>(a)]
                 [static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
      }
      mul[static_cast<std::size_t>(a * r + b)] = lookup(comp);
    }
  }
  return GroupTable::from_table(r, std::move(mul), std::move(names), bound);
}

GroupTable quaternion(int bound) {
  if (8 > bound) throw GuardExceeded("Q8 exceeds the order bound");
  // units 1,i,j,k; unit products with sign
  static constexpr std::array<std::array<int, 4>, 4> unit{{{0, 1, 2, 3},
                                                           {1, 0, 3, 2},
                                                           {2, 3, 0, 1},
                                                           {3, 2, 1, 0}}};
  static constexpr std::array<std::array<int, 4>, 4> neg{{{0, 0, 0, 0},
                                                          {0, 1, 0, 1},
                                                          {0, 1, 1, 0},
                                                          {0, 0, 1, 1}}};
  std::vector<int> mul(64);
  const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      const int s = (a % 2) ^ (b % 2) ^ neg[static_cast<std::size_t>(ua)][static_cast<std::size_t>(ub)];
      mul[static_cast<std::size_t>(a * 8 + b)] =
          2 * unit[static_cast<std::size_t>(ua)][static_cast<std::size_t>(ub)] + s;
    }
  return GroupTable::from_table(8, std::move(mul), names, bound);
}

GroupTable wreath(const GroupTable& l, int bound) {
  const int q = l.order();
  const int r = 2 * q * q;
  if (r > bound) {
    throw GuardExceeded("wreath product of order " + std::to_string(r) +
                        " exceeds the order bound");
  }
  auto index = [q](int f, int x, int y) { return f * q * q + x * q + y; };
  std::vector<int> mul(static_cast<std::size_t>(r * r));
  std::vector<std::string> names(static_cast<std::size_t>(r));
  for (int f = 0; f < 2; ++f)
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        const int a = index(f, x, y);
        names[static_cast<std::size_t>(a)] = "<" + l.name(x) + "|" + l.name(y) + ">" + (f ? "s" : "");
        for (int g = 0; g < 2; ++g)
          for (int u = 0; u < q; ++u)
            for (int v = 0; v < q; ++v) {
              // (x,y)s^f (u,v)s^g = (x,y)(s^f (u,v) s^-f) s^(f+g); s swaps coordinates
              const int u2 = f ? v : u;
              const int v2 = f ? u : v;
              mul[static_cast<std::size_t>(a * r + index(g, u, v))] =
                  index(f ^ g, l.mul(x, u2), l.mul(y, v2));
            }
      }
  return GroupTable::from_table(r, std::move(mul), std::move(names), bound);
}

int parse_param(std::string_view text, std::string_view full) {
  if (text.empty()) throw ParseError("missing parameter in group spec '" + std::string(full) + "'");
  int v = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("bad parameter in group spec '" + std::string(full) + "'");
    }
    v = v * 10 + (c - '0');
    if (v > 1'000'000) throw ParseError("parameter too large in '" + std::string(full) + "'");
  }
  return v;
}

}  // namespace

GroupSpec GroupSpec::cyclic(int m) { return GroupSpec{Kind::Cyclic, m, nullptr, {}}; }
GroupSpec GroupSpec::dihedral(int k) { return GroupSpec{Kind::Dihedral, k, nullptr, {}}; }
GroupSpec GroupSpec::symmetric(int k) { return GroupSpec{Kind::Symmetric, k, nullptr, {}}; }
GroupSpec GroupSpec::quaternion() { return GroupSpec{Kind::Quaternion, 8, nullptr, {}}; }
GroupSpec GroupSpec::wreath(GroupSpec inner) {
  return GroupSpec{Kind::Wreath, 2, std::make_shared<const GroupSpec>(std::move(inner)), {}};
}
GroupSpec GroupSpec::file(std::string path) {
  return GroupSpec{Kind::CustomFile, 0, nullptr, std::move(path)};
}

GroupSpec GroupSpec::parse(std::string_view text) {
  if (text == "Q8") return quaternion();
  if (text.starts_with("Wreath(") && text.ends_with(")")) {
    return wreath(parse(text.substr(7, text.size() - 8)));
  }
  if (text.size() >= 2) {
    const auto rest = text.substr(1);
    switch (text[0]) {
      case 'Z': return cyclic(parse_param(rest, text));
      case 'D': return dihedral(parse_param(rest, text));
      case 'S': return symmetric(parse_param(rest, text));
      default: break;
    }
  }
  throw ParseError("unknown group spec '" + std::string(text) +
                   "' (expected Z<m>, D<k>, S<k>, Q8 or Wreath(<spec>))");
}

std::string GroupSpec::to_string() const {
  switch (kind) {
    case Kind::Cyclic: return "Z" + std::to_string(param);
    case Kind::Dihedral: return "D" + std::to_string(param);
    case Kind::Symmetric: return "S" + std::to_string(param);
    case Kind::Quaternion: return "Q8";
    case Kind::Wreath: return "Wreath(" + inner->to_string() + ")";
    case Kind::CustomFile: return "file:" + path;
  }
  return {};
}

GroupTable build_group(const GroupSpec& spec, int order_bound) {
  switch (spec.kind) {
    case GroupSpec::Kind::Cyclic: return cyclic(spec.param, order_bound);
    case GroupSpec::Kind::Dihedral: return dihedral(spec.param, order_bound);
    case GroupSpec::Kind::Symmetric: return symmetric(spec.param, order_bound);
    case GroupSpec::Kind::Quaternion: return quaternion(order_bound);
    case GroupSpec::Kind::Wreath: {
      const GroupTable inner = build_group(*spec.inner, order_bound);
      return wreath(inner, order_bound);
    }
    case GroupSpec::Kind::CustomFile: return load_group_file(spec.path, order_bound);
  }
  throw ValidationError("unhandled group spec");
}

std::vector<std::string> catalog_group_names() {
  std::vector<std::string> out;
  for (int m : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 24}) out.push_back("Z" + std::to_string(m));
  for (int k = 2; k <= 12; ++k) out.push_back("D" + std::to_string(k));
  for (int k = 1; k <= 4; ++k) out.push_back("S" + std::to_string(k));
  out.push_back("Q8");
  out.push_back("Wreath(Z2)");
  out.push_back("Wreath(Z3)");
  return out;
}

}  // namespace simon
