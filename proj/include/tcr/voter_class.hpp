#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace tcr {

enum class VoterClass : std::size_t {
    InformedEngaged = 0,
    InformedDisengaged = 1,
    UninformedEngaged = 2,
    UninformedDisengaged = 3,
};

inline constexpr std::array<VoterClass, 4> kAllClasses{
    VoterClass::InformedEngaged, VoterClass::InformedDisengaged,
    VoterClass::UninformedEngaged, VoterClass::UninformedDisengaged};

constexpr VoterClass class_of(bool is_informed, bool is_engaged) {
    if (is_informed) return is_engaged ? VoterClass::InformedEngaged : VoterClass::InformedDisengaged;
    return is_engaged ? VoterClass::UninformedEngaged : VoterClass::UninformedDisengaged;
}

constexpr bool is_informed(VoterClass c) {
    return c == VoterClass::InformedEngaged || c == VoterClass::InformedDisengaged;
}

constexpr bool is_engaged(VoterClass c) {
    return c == VoterClass::InformedEngaged || c == VoterClass::UninformedEngaged;
}

constexpr std::size_t index_of(VoterClass c) { return static_cast<std::size_t>(c); }

/// "IE", "ID", "UE", "UD" — used as column suffixes.
constexpr std::string_view short_name(VoterClass c) {
    constexpr std::array<std::string_view, 4> names{"IE", "ID", "UE", "UD"};
    return names[index_of(c)];
}

constexpr std::string_view long_name(VoterClass c) {
    constexpr std::array<std::string_view, 4> names{
        "informed-engaged", "informed-disengaged", "uninformed-engaged", "uninformed-disengaged"};
    return names[index_of(c)];
}

}  // namespace tcr
