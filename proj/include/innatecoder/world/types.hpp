#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace innatecoder::world {

enum class Action : std::uint8_t { Move, TurnLeft, TurnRight, PutMarker, PickMarker };
inline constexpr int kActionCount = 5;

enum class Percept : std::uint8_t {
    FrontIsClear,
    LeftIsClear,
    RightIsClear,
    MarkersPresent,
    NoMarkersPresent
};
inline constexpr int kPerceptCount = 5;

enum class Direction : std::uint8_t { North, East, South, West };

const char* to_string(Action a);
const char* to_string(Percept h);
const char* to_string(Direction d);
std::optional<Action> action_from_string(std::string_view s);
std::optional<Percept> percept_from_string(std::string_view s);

} // namespace innatecoder::world
