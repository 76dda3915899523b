#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "innatecoder/rng.hpp"
#include "innatecoder/world/world.hpp"

#include <json.hpp>

namespace innatecoder::tasks {

enum class TaskId : std::uint8_t {
    StairClimber,
    FourCorners,
    TopOff,
    Maze,
    CleanHouse,
    Harvester,
    DoorKey,
    OneStroke,
    Seeder,
    Snake
};
inline constexpr int kTaskCount = 10;

const char* to_string(TaskId id);
std::optional<TaskId> task_from_string(std::string_view s);
std::vector<TaskId> all_tasks();

struct TaskOptions {
    // Extra reward applied when an episode ends by crashing. Task-scoped
    // penalties (StairClimber's -1) are separate.
    double crash_penalty = 0.0;
    world::ActionRules rules;
};

struct Cell {
    int row = 0;
    int col = 0;
    bool operator==(const Cell&) const = default;
};

// Per-task bookkeeping.
struct StairClimberCtx {
    Cell goal;
    std::vector<std::uint8_t> contour; // row-major mask of legal agent cells
};
struct FourCornersCtx {
    int corners_marked = 0;
};
struct TopOffCtx {
    std::vector<int> marker_cols; // bottom-row columns that started marked
    int topped = 0;
};
struct MazeCtx {
    Cell goal;
};
struct CleanHouseCtx {
    int total_markers = 0;
    int picked = 0;
    std::vector<std::uint8_t> original; // row-major mask of initially-marked cells
};
struct HarvesterCtx {
    int total = 0;
    int picked = 0;
};
struct DoorKeyCtx {
    Cell door;
    Cell left_marker;
    Cell right_marker;
    bool door_open = false;
    bool left_picked = false;
    bool right_picked = false;
};
struct OneStrokeCtx {
    int visited = 1;             // the start cell counts
    bool start_credited = false; // its reward share is granted with the first transition
};
struct SeederCtx {
    int seeded = 0; // cells currently holding at least one marker
};
struct SnakeCtx {
    std::deque<Cell> body; // most recently vacated cell first
    Cell food;
    int collected = 0;
    std::uint64_t rng_state = 0; // drives food respawns
};

using TaskCtx = std::variant<StairClimberCtx, FourCornersCtx, TopOffCtx, MazeCtx, CleanHouseCtx,
                             HarvesterCtx, DoorKeyCtx, OneStrokeCtx, SeederCtx, SnakeCtx>;

struct TaskInstance {
    TaskId id = TaskId::StairClimber;
    world::WorldState world;
    TaskCtx ctx;
    double return_so_far = 0.0;
    TaskOptions options;
};

struct StepResult {
    double reward = 0.0;
    bool done = false;
};

// Draws a fresh initial state from the task's initial-state distribution.
TaskInstance init_instance(TaskId id, Rng& rng, const TaskOptions& options = {});

// Applies one primitive action and the task's transition rules: updates the
// world and ctx, accumulates return_so_far, and reports (reward, done). Must
// not be called after done/crash.
StepResult step(TaskInstance& t, world::Action a);

// Reproducible evaluation set: instance i is drawn from a stream derived from
// (master_seed, id, i). Identical across methods for a given master seed.
std::vector<TaskInstance> eval_set(TaskId id, std::uint64_t master_seed, int size,
                                   const TaskOptions& options = {});

// Inclusive episodic-return range, [-1,1] for StairClimber and [0,1] otherwise.
std::pair<double, double> return_range(TaskId id);

// Fixture serialization (one-way; seed + TaskId is the canonical reference).
nlohmann::ordered_json to_json(const TaskInstance& t);

// The CleanHouse floor plan as an ascii grid ('#' walls), fixed per build.
std::string cleanhouse_layout();

} // namespace innatecoder::tasks
