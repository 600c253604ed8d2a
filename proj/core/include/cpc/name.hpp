#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>

namespace cpc {

// A name is a 64-bit handle. The top two bits give the origin; the rest is
// either an index into the surface interner or a counter.
//
//   surface  user-visible identifier, interned
//   fresh    minted by the fresh supply; printed as _f<n>
//   canon    bound name produced by canonicalization; printed as _<n>
//   slot     placeholder used when comparing labels; printed as __<n>
//
// Only surface names can come out of the parser, so fresh names can never
// clash with anything a user writes.
class Name {
 public:
  enum class Origin : std::uint8_t { Surface = 0, Fresh = 1, Canon = 2, Slot = 3 };

  Name() = default;

  static Name surface(std::string_view text);
  static Name fresh();
  static Name canon(std::uint32_t index);
  static Name slot(std::uint32_t index);

  Origin origin() const { return static_cast<Origin>(raw_ >> 62); }
  std::uint64_t payload() const { return raw_ & kPayloadMask; }
  std::uint64_t raw() const { return raw_; }
  bool is_surface() const { return origin() == Origin::Surface; }

  // Printable text. Surface names print as written.
  std::string text() const;

  friend bool operator==(Name a, Name b) { return a.raw_ == b.raw_; }
  friend std::strong_ordering operator<=>(Name a, Name b) { return a.raw_ <=> b.raw_; }

 private:
  static constexpr std::uint64_t kPayloadMask = (std::uint64_t{1} << 62) - 1;
  Name(Origin o, std::uint64_t payload)
      : raw_((static_cast<std::uint64_t>(o) << 62) | (payload & kPayloadMask)) {}

  std::uint64_t raw_ = 0;
};

using NameSet = std::set<Name>;

NameSet set_union(const NameSet& a, const NameSet& b);
NameSet set_minus(const NameSet& a, const NameSet& b);
bool intersects(const NameSet& a, const NameSet& b);

// Reserved surface names used by the encodings.
Name hash_name();  // _hash

}  // namespace cpc

template <>
struct std::hash<cpc::Name> {
  std::size_t operator()(cpc::Name n) const noexcept { return std::hash<std::uint64_t>{}(n.raw()); }
};
