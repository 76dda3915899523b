#pragma once

#include <string>
#include <vector>

#include "innatecoder/world/types.hpp"

namespace innatecoder::world {

inline constexpr int kMarkerCap = 10; // per-cell marker limit

// Deterministic Karel grid. Row 0 is the top row; North decreases the row
// index. A value type: copy an episode's state freely.
struct WorldState {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> walls;   // row-major, 0/1
    std::vector<std::uint8_t> markers; // row-major counts
    int agent_row = 0;
    int agent_col = 0;
    Direction agent_dir = Direction::East;
    bool crashed = false;

    static WorldState empty(int width, int height);

    int index(int row, int col) const { return row * width + col; }
    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height && col >= 0 && col < width;
    }
    bool wall_at(int row, int col) const { return walls[static_cast<std::size_t>(index(row, col))] != 0; }
    void set_wall(int row, int col, bool w) { walls[static_cast<std::size_t>(index(row, col))] = w ? 1 : 0; }
    int marker_at(int row, int col) const { return markers[static_cast<std::size_t>(index(row, col))]; }
    void set_marker(int row, int col, int count) {
        markers[static_cast<std::size_t>(index(row, col))] = static_cast<std::uint8_t>(count);
    }
    // True when (row, col) is inside the grid and not a wall.
    bool clear_at(int row, int col) const { return in_bounds(row, col) && !wall_at(row, col); }

    bool operator==(const WorldState&) const = default;
};

struct ActionRules {
    // When set, pickMarker on an empty cell crashes instead of being a no-op.
    bool strict_pick = false;
};

// Row/col delta of one step in the given direction.
void direction_delta(Direction d, int& drow, int& dcol);
Direction turned_left(Direction d);
Direction turned_right(Direction d);

// Applies one primitive action in place. Moving into a wall or off the grid
// sets `crashed` and leaves the pose unchanged. putMarker saturates at
// kMarkerCap; pickMarker on an empty cell is a no-op unless rules.strict_pick.
// Must not be called on a crashed state.
void apply_action(WorldState& s, Action a, const ActionRules& rules = {});

bool perceive(const WorldState& s, Percept h);

// Debug rendering: '#' wall, '.' empty, digits for marker counts, the agent
// as ^ > v < by heading (uppercase if its cell holds markers).
std::string ascii_dump(const WorldState& s);

} // namespace innatecoder::world
