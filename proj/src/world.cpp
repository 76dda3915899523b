#include "innatecoder/world/world.hpp"

#include <cassert>

namespace innatecoder::world {

const char* to_string(Action a) {
    switch (a) {
        case Action::Move: return "move";
        case Action::TurnLeft: return "turnLeft";
        case Action::TurnRight: return "turnRight";
        case Action::PutMarker: return "putMarker";
        case Action::PickMarker: return "pickMarker";
    }
    return "?";
}

const char* to_string(Percept h) {
    switch (h) {
        case Percept::FrontIsClear: return "frontIsClear";
        case Percept::LeftIsClear: return "leftIsClear";
        case Percept::RightIsClear: return "rightIsClear";
        case Percept::MarkersPresent: return "markersPresent";
        case Percept::NoMarkersPresent: return "noMarkersPresent";
    }
    return "?";
}

const char* to_string(Direction d) {
    switch (d) {
        case Direction::North: return "north";
        case Direction::East: return "east";
        case Direction::South: return "south";
        case Direction::West: return "west";
    }
    return "?";
}

std::optional<Action> action_from_string(std::string_view s) {
    if (s == "move") return Action::Move;
    if (s == "turnLeft") return Action::TurnLeft;
    if (s == "turnRight") return Action::TurnRight;
    if (s == "putMarker") return Action::PutMarker;
    if (s == "pickMarker") return Action::PickMarker;
    return std::nullopt;
}

std::optional<Percept> percept_from_string(std::string_view s) {
    if (s == "frontIsClear") return Percept::FrontIsClear;
    if (s == "leftIsClear") return Percept::LeftIsClear;
    if (s == "rightIsClear") return Percept::RightIsClear;
    if (s == "markersPresent") return Percept::MarkersPresent;
    if (s == "noMarkersPresent") return Percept::NoMarkersPresent;
    return std::nullopt;
}

WorldState WorldState::empty(int width, int height) {
    WorldState s;
    s.width = width;
    s.height = height;
    s.walls.assign(static_cast<std::size_t>(width) * height, 0);
    s.markers.assign(static_cast<std::size_t>(width) * height, 0);
    return s;
}

void direction_delta(Direction d, int& drow, int& dcol) {
    switch (d) {
        case Direction::North: drow = -1; dcol = 0; break;
        case Direction::East: drow = 0; dcol = 1; break;
        case Direction::South: drow = 1; dcol = 0; break;
        case Direction::West: drow = 0; dcol = -1; break;
    }
}

Direction turned_left(Direction d) {
    return static_cast<Direction>((static_cast<int>(d) + 3) % 4);
}

Direction turned_right(Direction d) {
    return static_cast<Direction>((static_cast<int>(d) + 1) % 4);
}

void apply_action(WorldState& s, Action a, const ActionRules& rules) {
    assert(!s.crashed && "apply_action on a crashed state");
    switch (a) {
        case Action::Move: {
            int dr = 0, dc = 0;
            direction_delta(s.agent_dir, dr, dc);
            int nr = s.agent_row + dr;
            int nc = s.agent_col + dc;
            if (!s.clear_at(nr, nc)) {
                s.crashed = true;
            } else {
                s.agent_row = nr;
                s.agent_col = nc;
            }
            break;
        }
        case Action::TurnLeft:
            s.agent_dir = turned_left(s.agent_dir);
            break;
        case Action::TurnRight:
            s.agent_dir = turned_right(s.agent_dir);
            break;
        case Action::PutMarker: {
            int m = s.marker_at(s.agent_row, s.agent_col);
            if (m < kMarkerCap) s.set_marker(s.agent_row, s.agent_col, m + 1);
            break;
        }
        case Action::PickMarker: {
            int m = s.marker_at(s.agent_row, s.agent_col);
            if (m > 0)
                s.set_marker(s.agent_row, s.agent_col, m - 1);
            else if (rules.strict_pick)
                s.crashed = true;
            break;
        }
    }
}

bool perceive(const WorldState& s, Percept h) {
    switch (h) {
        case Percept::FrontIsClear:
        case Percept::LeftIsClear:
        case Percept::RightIsClear: {
            Direction d = s.agent_dir;
            if (h == Percept::LeftIsClear) d = turned_left(d);
            if (h == Percept::RightIsClear) d = turned_right(d);
            int dr = 0, dc = 0;
            direction_delta(d, dr, dc);
            return s.clear_at(s.agent_row + dr, s.agent_col + dc);
        }
        case Percept::MarkersPresent:
            return s.marker_at(s.agent_row, s.agent_col) > 0;
        case Percept::NoMarkersPresent:
            return s.marker_at(s.agent_row, s.agent_col) == 0;
    }
    return false;
}

std::string ascii_dump(const WorldState& s) {
    std::string out;
    out.reserve(static_cast<std::size_t>((s.width + 1) * s.height));
    for (int r = 0; r < s.height; ++r) {
        for (int c = 0; c < s.width; ++c) {
            char ch;
            if (r == s.agent_row && c == s.agent_col) {
                static constexpr char kDir[4] = {'^', '>', 'v', '<'};
                ch = kDir[static_cast<int>(s.agent_dir)];
            } else if (s.wall_at(r, c)) {
                ch = '#';
            } else if (int m = s.marker_at(r, c); m > 0) {
                ch = static_cast<char>('0' + (m > 9 ? 9 : m));
            } else {
                ch = '.';
            }
            out += ch;
        }
        out += '\n';
    }
    return out;
}

} // namespace innatecoder::world
