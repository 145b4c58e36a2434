#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace philos {

template <typename Tag>
struct Id {
    std::uint32_t value = 0;
    friend auto operator<=>(Id, Id) = default;
};

struct PeerTag {};
struct ListTag {};

using PeerId = Id<PeerTag>;
using ListId = Id<ListTag>;

}  // namespace philos

template <typename Tag>
struct std::hash<philos::Id<Tag>> {
    std::size_t operator()(philos::Id<Tag> id) const noexcept { return id.value; }
};
