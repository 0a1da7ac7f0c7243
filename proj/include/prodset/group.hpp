#pragma once

// Effective arithmetic for Z^d, finite products of cyclic groups and free
// groups F_k, plus ball enumeration.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prodset {

enum class GroupKind { Lattice, Cyclic, Free };

/// Element payload. Interpretation depends on the descriptor:
///  - Lattice: integer coordinates.
///  - Cyclic: residues 0 <= r_i < m_i.
///  - Free: reduced word of signed generator indices (+i is x_i, -i its
///    inverse, i >= 1).
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<int64_t> payload) : data_(std::move(payload)) {}

  std::span<const int64_t> payload() const { return data_; }
  std::size_t size() const { return data_.size(); }
  int64_t operator[](std::size_t i) const { return data_[i]; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<int64_t> data_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

class GroupDescriptor {
 public:
  static GroupDescriptor lattice(int dimension);
  static GroupDescriptor cyclic(std::vector<int64_t> moduli);
  static GroupDescriptor free(int rank);

  /// Parses "kind=free,rank=2", "kind=lattice,dim=1",
  /// "kind=cyclic,moduli=12:8".
  static GroupDescriptor parse(std::string_view text);
  std::string to_string() const;

  GroupKind kind() const { return kind_; }
  /// Lattice dimension, free rank, or number of cyclic factors.
  int arity() const { return arity_; }
  const std::vector<int64_t>& moduli() const { return moduli_; }
  bool is_abelian() const { return kind_ != GroupKind::Free || arity_ == 1; }
  bool is_finite() const { return kind_ == GroupKind::Cyclic; }
  /// Group order for cyclic products.
  int64_t order() const;

  GroupElement identity() const;
  GroupElement mul(const GroupElement& g, const GroupElement& h) const;
  GroupElement inv(const GroupElement& g) const;
  bool contains(const GroupElement& g) const;

  /// Symmetric generating set, canonical order (x1, x1^-1, x2, x2^-1, ...).
  std::vector<GroupElement> generators() const;
  /// Word length (free, cyclic) or l-infinity norm (lattice).
  int64_t length(const GroupElement& g) const;

  /// Canonical total order: shortlex for words (letter order a < A < b < ...),
  /// lexicographic for vectors.
  bool less(const GroupElement& g, const GroupElement& h) const;
  auto comparator() const {
    return [this](const GroupElement& g, const GroupElement& h) { return less(g, h); };
  }

  /// Word strings use a..z for generators and capitals for inverses ("e" is
  /// the identity). Vectors use comma separated integers.
  std::string format(const GroupElement& g) const;
  GroupElement parse_element(std::string_view text) const;

  GroupElement integer(int64_t n) const;  // Z or Z_m shorthand
  GroupElement word(std::string_view letters) const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

 private:
  GroupDescriptor(GroupKind kind, int arity, std::vector<int64_t> moduli)
      : kind_(kind), arity_(arity), moduli_(std::move(moduli)) {}
  void require(const GroupElement& g) const;

  GroupKind kind_;
  int arity_;
  std::vector<int64_t> moduli_;
};

/// Freely reduces a signed-letter sequence.
std::vector<int64_t> free_reduce(std::span<const int64_t> letters);

inline constexpr std::size_t kDefaultBallCap = 10'000'000;

/// Sorted finite set of group elements used as the region of knowledge of a
/// windowed set. Balls are the common case; lattice boxes are also allowed.
class Window {
 public:
  Window(GroupDescriptor desc, std::vector<GroupElement> elements,
         std::optional<int64_t> ball_radius = std::nullopt);

  const GroupDescriptor& descriptor() const { return desc_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const GroupElement& g) const;
  /// Set when the window is exactly the ball of this radius.
  std::optional<int64_t> radius() const { return radius_; }

 private:
  GroupDescriptor desc_;
  std::vector<GroupElement> elements_;
  std::optional<int64_t> radius_;
};

using Ball = Window;

/// Predicted |Ball(r)|; saturates at SIZE_MAX.
std::size_t predicted_ball_size(const GroupDescriptor& desc, int64_t radius);

/// All elements of length <= r, each once, canonically sorted.
/// Throws ResourceCapExceeded when the predicted size exceeds `cap`.
Ball enumerate_ball(const GroupDescriptor& desc, int64_t radius,
                    std::size_t cap = kDefaultBallCap);

/// Integer box [lo, hi) in every coordinate of a lattice.
Window lattice_box(const GroupDescriptor& desc, int64_t lo, int64_t hi);

}  // namespace prodset
