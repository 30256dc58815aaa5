#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace simon {

inline constexpr int kDefaultOrderBound = 24;

/// A subgroup given by its sorted element indices.
struct Subgroup {
  std::vector<int> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// A finite group as an explicit, validated multiplication table.
///
/// Element indices run over 0..order-1. Conjugacy classes are stored in
/// canonical order: the identity class first, then by class size, ties
/// broken by the smallest member. Each class is sorted.
class GroupTable {
 public:
  /// Validates `mul` (row-major, mul[g*order+h] = g*h) and derives inverses
  /// and classes. Throws ValidationError on any structural defect.
  static GroupTable from_table(int order, std::vector<int> mul,
                               std::vector<std::string> names = {},
                               int order_bound = kDefaultOrderBound);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int g, int h) const { return mul_[static_cast<std::size_t>(g * order_ + h)]; }
  int inv(int g) const { return inv_[static_cast<std::size_t>(g)]; }
  const std::string& name(int g) const { return names_[static_cast<std::size_t>(g)]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& table() const { return mul_; }

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int class_of(int g) const { return class_of_[static_cast<std::size_t>(g)]; }

  int conjugate(int x, int g) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
  int commutator(int g, int h) const { return mul(mul(inv(g), inv(h)), mul(g, h)); }
  int element_order(int g) const;

  /// Index of `name`, or -1.
  int find(std::string_view name) const;
  /// Resolve a user token: exact name first, then a decimal index.
  int resolve(std::string_view token) const;

 private:
  int order_ = 0;
  int identity_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
};

/// Catalog or file-backed description of a base group.
struct GroupSpec {
  enum class Kind { Cyclic, Dihedral, Symmetric, Quaternion, Wreath, CustomFile };

  Kind kind = Kind::Cyclic;
  int param = 2;
  std::shared_ptr<const GroupSpec> inner;  // Wreath only
  std::string path;                        // CustomFile only

  static GroupSpec cyclic(int m);
  static GroupSpec dihedral(int k);
  static GroupSpec symmetric(int k);
  static GroupSpec quaternion();
  static GroupSpec wreath(GroupSpec inner);
  static GroupSpec file(std::string path);

  /// Parses "Z<m>", "D<k>", "S<k>", "Q8", "Wreath(<spec>)".
  static GroupSpec parse(std::string_view text);
  std::string to_string() const;
};

GroupTable build_group(const GroupSpec& spec, int order_bound = kDefaultOrderBound);

/// Custom group file: order, then one table row per line, then optional names.
GroupTable parse_group_file(std::string_view text, int order_bound = kDefaultOrderBound);
GroupTable load_group_file(const std::string& path, int order_bound = kDefaultOrderBound);
std::string export_group_file(const GroupTable& g);

/// Every catalog group up to the default order bound, by spec string.
std::vector<std::string> catalog_group_names();

// Structural queries.
Subgroup generated_subgroup(const GroupTable& g, const std::vector<int>& generators);
bool is_subgroup(const GroupTable& g, const Subgroup& s);
bool is_normal(const GroupTable& g, const Subgroup& s);
Subgroup commutator_subgroup(const GroupTable& g);
std::vector<Subgroup> normal_subgroups(const GroupTable& g);
Subgroup center(const GroupTable& g);
std::vector<int> involutions(const GroupTable& g);
const std::vector<int>& conjugacy_class_of(const GroupTable& g, int element);

struct Quotient {
  GroupTable table;
  std::vector<int> projection;  // element -> coset index
};

/// G/N with cosets indexed by their smallest member (identity coset first).
Quotient quotient_group(const GroupTable& g, const Subgroup& n);

}  // namespace simon
