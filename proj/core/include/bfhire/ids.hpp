#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <set>
#include <vector>

namespace bfhire {

/// Identifier of an expert consultant. Valid instances number ECs 1..m.
struct EcId {
  std::uint32_t value = 0;

  constexpr std::size_t index() const noexcept { return value - 1; }
  static constexpr EcId from_index(std::size_t i) noexcept {
    return EcId{static_cast<std::uint32_t>(i + 1)};
  }

  friend constexpr auto operator<=>(const EcId&, const EcId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, EcId id) { return os << id.value; }

using IdSet = std::set<EcId>;

inline std::vector<EcId> to_vector(const IdSet& ids) { return {ids.begin(), ids.end()}; }

}  // namespace bfhire
