#include "innatecoder/tasks/tasks.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace innatecoder::tasks {

const char* to_string(TaskId id) {
    switch (id) {
        case TaskId::StairClimber: return "StairClimber";
        case TaskId::FourCorners: return "FourCorners";
        case TaskId::TopOff: return "TopOff";
        case TaskId::Maze: return "Maze";
        case TaskId::CleanHouse: return "CleanHouse";
        case TaskId::Harvester: return "Harvester";
        case TaskId::DoorKey: return "DoorKey";
        case TaskId::OneStroke: return "OneStroke";
        case TaskId::Seeder: return "Seeder";
        case TaskId::Snake: return "Snake";
    }
    return "?";
}

std::optional<TaskId> task_from_string(std::string_view s) {
    for (int i = 0; i < kTaskCount; ++i) {
        auto id = static_cast<TaskId>(i);
        if (s == to_string(id)) return id;
    }
    return std::nullopt;
}

std::vector<TaskId> all_tasks() {
    std::vector<TaskId> out;
    for (int i = 0; i < kTaskCount; ++i) out.push_back(static_cast<TaskId>(i));
    return out;
}

std::pair<double, double> return_range(TaskId id) {
    if (id == TaskId::StairClimber) return {-1.0, 1.0};
    return {0.0, 1.0};
}

namespace {

using world::Direction;
using world::WorldState;

std::vector<Cell> free_cells(const WorldState& w) {
    std::vector<Cell> out;
    for (int r = 0; r < w.height; ++r)
        for (int c = 0; c < w.width; ++c)
            if (!w.wall_at(r, c)) out.push_back({r, c});
    return out;
}

Cell pick_cell(const std::vector<Cell>& cells, Rng& rng) {
    return cells[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(cells.size())))];
}

Direction random_direction(Rng& rng) { return static_cast<Direction>(rng.uniform_int(4)); }

bool reachable(const WorldState& w, Cell from, Cell to) {
    if (w.wall_at(from.row, from.col) || w.wall_at(to.row, to.col)) return false;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w.width) * w.height, 0);
    std::queue<Cell> q;
    q.push(from);
    seen[static_cast<std::size_t>(w.index(from.row, from.col))] = 1;
    while (!q.empty()) {
        Cell c = q.front();
        q.pop();
        if (c == to) return true;
        static constexpr int dr[4] = {-1, 1, 0, 0};
        static constexpr int dc[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            int nr = c.row + dr[k], nc = c.col + dc[k];
            if (!w.clear_at(nr, nc)) continue;
            auto idx = static_cast<std::size_t>(w.index(nr, nc));
            if (!seen[idx]) {
                seen[idx] = 1;
                q.push({nr, nc});
            }
        }
    }
    return false;
}

// --- StairClimber -----------------------------------------------------------
// Diagonal staircase: the step surface of column c sits at row 11-c, wall
// cells fill everything below it. The legal contour is each surface cell plus
// the cell directly above it. The marker sits on the surface of the column
// right of the agent, one step up, which keeps every draw solvable by the
// same climbing behavior while both positions stay random.
TaskInstance make_stair_climber(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::StairClimber;
    t.options = opt;
    t.world = WorldState::empty(12, 12);
    auto surface_row = [](int col) { return 11 - col; };
    for (int c = 0; c < 12; ++c)
        for (int r = surface_row(c) + 1; r < 12; ++r) t.world.set_wall(r, c, true);

    StairClimberCtx ctx;
    ctx.contour.assign(144, 0);
    for (int c = 0; c < 12; ++c) {
        ctx.contour[static_cast<std::size_t>(t.world.index(surface_row(c), c))] = 1;
        if (surface_row(c) - 1 >= 0)
            ctx.contour[static_cast<std::size_t>(t.world.index(surface_row(c) - 1, c))] = 1;
    }

    int agent_col = rng.uniform_int(11); // 0..10, marker column fits
    t.world.agent_row = surface_row(agent_col);
    t.world.agent_col = agent_col;
    t.world.agent_dir = Direction::North;
    ctx.goal = {surface_row(agent_col + 1), agent_col + 1};
    t.world.set_marker(ctx.goal.row, ctx.goal.col, 1);
    t.ctx = ctx;
    return t;
}

StepResult step_stair_climber(TaskInstance& t, StairClimberCtx& ctx) {
    Cell pos{t.world.agent_row, t.world.agent_col};
    if (pos == ctx.goal) return {1.0, true};
    if (!ctx.contour[static_cast<std::size_t>(t.world.index(pos.row, pos.col))]) return {-1.0, true};
    return {};
}

// --- FourCorners -------------------------------------------------------------
TaskInstance make_four_corners(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::FourCorners;
    t.options = opt;
    t.world = WorldState::empty(12, 12);
    // start on the outermost ring
    std::vector<Cell> ring;
    for (int c = 0; c < 12; ++c) {
        ring.push_back({0, c});
        ring.push_back({11, c});
    }
    for (int r = 1; r < 11; ++r) {
        ring.push_back({r, 0});
        ring.push_back({r, 11});
    }
    Cell a = pick_cell(ring, rng);
    t.world.agent_row = a.row;
    t.world.agent_col = a.col;
    t.world.agent_dir = random_direction(rng);
    t.ctx = FourCornersCtx{};
    return t;
}

int count_marked_corners(const WorldState& w) {
    int n = 0;
    const int R = w.height - 1, C = w.width - 1;
    if (w.marker_at(0, 0) > 0) ++n;
    if (w.marker_at(0, C) > 0) ++n;
    if (w.marker_at(R, 0) > 0) ++n;
    if (w.marker_at(R, C) > 0) ++n;
    return n;
}

StepResult step_four_corners(TaskInstance& t, FourCornersCtx& ctx) {
    int now = count_marked_corners(t.world);
    StepResult r;
    r.reward = (now - ctx.corners_marked) / 4.0;
    ctx.corners_marked = now;
    r.done = now == 4;
    return r;
}

// --- TopOff ------------------------------------------------------------------
TaskInstance make_top_off(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::TopOff;
    t.options = opt;
    t.world = WorldState::empty(12, 12);
    t.world.agent_row = 11;
    t.world.agent_col = 0;
    t.world.agent_dir = Direction::East;
    TopOffCtx ctx;
    int count = 2 + rng.uniform_int(5); // 2..6 markers
    std::vector<int> cols(10);
    std::iota(cols.begin(), cols.end(), 1); // columns 1..10 of the bottom row
    for (int i = 0; i < count; ++i) {
        int j = i + rng.uniform_int(static_cast<int>(cols.size()) - i);
        std::swap(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    }
    cols.resize(static_cast<std::size_t>(count));
    std::sort(cols.begin(), cols.end());
    for (int c : cols) t.world.set_marker(11, c, 1);
    ctx.marker_cols = std::move(cols);
    t.ctx = ctx;
    return t;
}

StepResult step_top_off(TaskInstance& t, TopOffCtx& ctx) {
    int topped = 0;
    for (int c : ctx.marker_cols)
        if (t.world.marker_at(11, c) >= 2) ++topped;
    StepResult r;
    r.reward = static_cast<double>(topped - ctx.topped) / static_cast<double>(ctx.marker_cols.size());
    ctx.topped = topped;
    r.done = topped == static_cast<int>(ctx.marker_cols.size());
    return r;
}

// --- Maze --------------------------------------------------------------------
// Randomized-DFS perfect maze carved on the even-coordinate lattice of a
// 12x12 grid; corridors are one cell wide and the free cells form a tree.
TaskInstance make_maze(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::Maze;
    t.options = opt;
    t.world = WorldState::empty(12, 12);
    for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c) t.world.set_wall(r, c, true);

    constexpr int kNodes = 6; // lattice nodes at rows/cols 0,2,..,10
    std::vector<std::uint8_t> visited(kNodes * kNodes, 0);
    std::vector<std::pair<int, int>> stack;
    int sr = rng.uniform_int(kNodes), sc = rng.uniform_int(kNodes);
    visited[static_cast<std::size_t>(sr * kNodes + sc)] = 1;
    t.world.set_wall(sr * 2, sc * 2, false);
    stack.emplace_back(sr, sc);
    while (!stack.empty()) {
        auto [r, c] = stack.back();
        static constexpr int dr[4] = {-1, 1, 0, 0};
        static constexpr int dc[4] = {0, 0, -1, 1};
        int order[4] = {0, 1, 2, 3};
        for (int i = 3; i > 0; --i) std::swap(order[i], order[rng.uniform_int(i + 1)]);
        bool advanced = false;
        for (int k : order) {
            int nr = r + dr[k], nc = c + dc[k];
            if (nr < 0 || nr >= kNodes || nc < 0 || nc >= kNodes) continue;
            if (visited[static_cast<std::size_t>(nr * kNodes + nc)]) continue;
            visited[static_cast<std::size_t>(nr * kNodes + nc)] = 1;
            t.world.set_wall(nr * 2, nc * 2, false);
            t.world.set_wall(r * 2 + dr[k], c * 2 + dc[k], false); // passage between nodes
            stack.emplace_back(nr, nc);
            advanced = true;
            break;
        }
        if (!advanced) stack.pop_back();
    }

    std::vector<Cell> cells = free_cells(t.world);
    Cell agent = pick_cell(cells, rng);
    Cell goal = agent;
    while (goal == agent) goal = pick_cell(cells, rng);
    t.world.agent_row = agent.row;
    t.world.agent_col = agent.col;
    t.world.agent_dir = random_direction(rng);
    t.world.set_marker(goal.row, goal.col, 1);
    assert(reachable(t.world, agent, goal));
    t.ctx = MazeCtx{goal};
    return t;
}

StepResult step_maze(TaskInstance& t, MazeCtx& ctx) {
    if (Cell{t.world.agent_row, t.world.agent_col} == ctx.goal) return {1.0, true};
    return {};
}

// --- CleanHouse ---------------------------------------------------------------
// Fixed floor plan (a corridor tree sized so a full wall-following tour fits
// the per-episode action budget), randomized marker placement.
constexpr const char* kCleanHouseRows[14] = {
    "######################",
    "######################",
    "##.###.###.###.###.###",
    "##.###.###.###.###.###",
    "##.###.###.###.###.###",
    "##.###.###.###.###.###",
    "##.###.###.###.###.###",
    "#....................#",
    "####.###.###.###.###.#",
    "####.###.###.###.###.#",
    "####.###.###.###.###.#",
    "####.###.###.###.###.#",
    "####.###.###.###.###.#",
    "######################",
};
constexpr int kCleanHouseMarkers = 10;

std::string cleanhouse_layout_string() {
    std::string out;
    for (const char* row : kCleanHouseRows) {
        out += row;
        out += '\n';
    }
    return out;
}

TaskInstance make_clean_house(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::CleanHouse;
    t.options = opt;
    t.world = WorldState::empty(22, 14);
    for (int r = 0; r < 14; ++r)
        for (int c = 0; c < 22; ++c) t.world.set_wall(r, c, kCleanHouseRows[r][c] == '#');
    t.world.agent_row = 7;
    t.world.agent_col = 1;
    t.world.agent_dir = Direction::East;

    CleanHouseCtx ctx;
    ctx.total_markers = kCleanHouseMarkers;
    ctx.original.assign(static_cast<std::size_t>(22) * 14, 0);
    std::vector<Cell> cells = free_cells(t.world);
    std::erase(cells, Cell{7, 1});
    for (int i = 0; i < kCleanHouseMarkers; ++i) {
        int j = i + rng.uniform_int(static_cast<int>(cells.size()) - i);
        std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(j)]);
        Cell m = cells[static_cast<std::size_t>(i)];
        t.world.set_marker(m.row, m.col, 1);
        ctx.original[static_cast<std::size_t>(t.world.index(m.row, m.col))] = 1;
    }
    t.ctx = ctx;
    return t;
}

// --- DoorKey -------------------------------------------------------------------
TaskInstance make_door_key(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::DoorKey;
    t.options = opt;
    t.world = WorldState::empty(8, 8);
    constexpr int kBarCol = 4;
    for (int r = 0; r < 8; ++r) t.world.set_wall(r, kBarCol, true);
    DoorKeyCtx ctx;
    ctx.door = {rng.uniform_int(8), kBarCol};

    std::vector<Cell> left, right;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < kBarCol; ++c) left.push_back({r, c});
        for (int c = kBarCol + 1; c < 8; ++c) right.push_back({r, c});
    }
    Cell agent = pick_cell(left, rng);
    Cell lm = agent;
    while (lm == agent) lm = pick_cell(left, rng);
    Cell rm = pick_cell(right, rng);
    t.world.agent_row = agent.row;
    t.world.agent_col = agent.col;
    t.world.agent_dir = random_direction(rng);
    t.world.set_marker(lm.row, lm.col, 1);
    t.world.set_marker(rm.row, rm.col, 1);
    ctx.left_marker = lm;
    ctx.right_marker = rm;
    t.ctx = ctx;
    return t;
}

// --- OneStroke -------------------------------------------------------------------
TaskInstance make_one_stroke(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::OneStroke;
    t.options = opt;
    t.world = WorldState::empty(8, 8);
    t.world.agent_row = rng.uniform_int(8);
    t.world.agent_col = rng.uniform_int(8);
    t.world.agent_dir = random_direction(rng);
    t.ctx = OneStrokeCtx{};
    return t;
}

// --- Seeder ------------------------------------------------------------------------
TaskInstance make_seeder(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::Seeder;
    t.options = opt;
    t.world = WorldState::empty(8, 8);
    t.world.agent_row = rng.uniform_int(8);
    t.world.agent_col = rng.uniform_int(8);
    t.world.agent_dir = random_direction(rng);
    t.ctx = SeederCtx{};
    return t;
}

// --- Harvester ------------------------------------------------------------------------
TaskInstance make_harvester(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::Harvester;
    t.options = opt;
    t.world = WorldState::empty(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) t.world.set_marker(r, c, 1);
    t.world.agent_row = 7;
    t.world.agent_col = rng.uniform_int(8);
    t.world.agent_dir = Direction::East;
    HarvesterCtx ctx;
    ctx.total = 64;
    t.ctx = ctx;
    return t;
}

// --- Snake ------------------------------------------------------------------------
TaskInstance make_snake(Rng& rng, const TaskOptions& opt) {
    TaskInstance t;
    t.id = TaskId::Snake;
    t.options = opt;
    t.world = WorldState::empty(8, 8);
    t.world.agent_row = rng.uniform_int(8);
    t.world.agent_col = rng.uniform_int(8);
    t.world.agent_dir = random_direction(rng);
    SnakeCtx ctx;
    Cell food{t.world.agent_row, t.world.agent_col};
    while (food == Cell{t.world.agent_row, t.world.agent_col}) food = {rng.uniform_int(8), rng.uniform_int(8)};
    ctx.food = food;
    t.world.set_marker(food.row, food.col, 1);
    ctx.rng_state = rng.next_u64();
    t.ctx = ctx;
    return t;
}

constexpr int kSnakeTarget = 20;

void snake_respawn_food(TaskInstance& t, SnakeCtx& ctx) {
    std::vector<Cell> cells;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            if (t.world.wall_at(r, c)) continue;
            if (r == t.world.agent_row && c == t.world.agent_col) continue;
            cells.push_back({r, c});
        }
    Rng spawn(splitmix64(ctx.rng_state));
    ctx.food = pick_cell(cells, spawn);
    t.world.set_marker(ctx.food.row, ctx.food.col, 1);
}

} // namespace

std::string cleanhouse_layout() { return cleanhouse_layout_string(); }

TaskInstance init_instance(TaskId id, Rng& rng, const TaskOptions& options) {
    switch (id) {
        case TaskId::StairClimber: return make_stair_climber(rng, options);
        case TaskId::FourCorners: return make_four_corners(rng, options);
        case TaskId::TopOff: return make_top_off(rng, options);
        case TaskId::Maze: return make_maze(rng, options);
        case TaskId::CleanHouse: return make_clean_house(rng, options);
        case TaskId::Harvester: return make_harvester(rng, options);
        case TaskId::DoorKey: return make_door_key(rng, options);
        case TaskId::OneStroke: return make_one_stroke(rng, options);
        case TaskId::Seeder: return make_seeder(rng, options);
        case TaskId::Snake: return make_snake(rng, options);
    }
    throw std::invalid_argument("bad task id");
}

StepResult step(TaskInstance& t, world::Action a) {
    assert(!t.world.crashed && "step on a finished episode");
    const Cell before_pos{t.world.agent_row, t.world.agent_col};
    const int before_markers = t.world.marker_at(before_pos.row, before_pos.col);

    world::apply_action(t.world, a, t.options.rules);

    const Cell pos{t.world.agent_row, t.world.agent_col};
    const int now_markers = t.world.marker_at(pos.row, pos.col);
    const bool moved = !(pos == before_pos);
    const bool marker_removed = !moved && now_markers < before_markers;
    const bool marker_added = !moved && now_markers > before_markers;

    StepResult r;
    {
        // Task rules also run for crashing transitions: the action had no
        // world effect, so the updates below are no-ops except where a task
        // legitimately credits state that predates the crash (OneStroke's
        // start cell).
        switch (t.id) {
            case TaskId::StairClimber:
                r = step_stair_climber(t, std::get<StairClimberCtx>(t.ctx));
                break;
            case TaskId::FourCorners:
                r = step_four_corners(t, std::get<FourCornersCtx>(t.ctx));
                break;
            case TaskId::TopOff:
                r = step_top_off(t, std::get<TopOffCtx>(t.ctx));
                break;
            case TaskId::Maze:
                r = step_maze(t, std::get<MazeCtx>(t.ctx));
                break;
            case TaskId::CleanHouse: {
                // picked = initially-marked cells currently empty; re-putting
                // a marker on one un-picks it, stray markers elsewhere are inert
                auto& ctx = std::get<CleanHouseCtx>(t.ctx);
                if (ctx.original[static_cast<std::size_t>(t.world.index(pos.row, pos.col))]) {
                    int delta = 0;
                    if (marker_removed && now_markers == 0) delta = 1;
                    if (marker_added && now_markers == 1) delta = -1;
                    if (delta != 0) {
                        ctx.picked += delta;
                        r.reward = static_cast<double>(delta) / ctx.total_markers;
                    }
                }
                r.done = ctx.picked == ctx.total_markers;
                break;
            }
            case TaskId::Harvester: {
                auto& ctx = std::get<HarvesterCtx>(t.ctx);
                int delta = 0;
                if (marker_removed && now_markers == 0) delta = 1;
                if (marker_added && now_markers == 1) delta = -1;
                if (delta != 0) {
                    ctx.picked += delta;
                    r.reward = static_cast<double>(delta) / ctx.total;
                }
                r.done = ctx.picked == ctx.total;
                break;
            }
            case TaskId::DoorKey: {
                auto& ctx = std::get<DoorKeyCtx>(t.ctx);
                if (marker_removed) {
                    if (!ctx.left_picked && pos == ctx.left_marker) {
                        ctx.left_picked = true;
                        ctx.door_open = true;
                        t.world.set_wall(ctx.door.row, ctx.door.col, false);
                        r.reward = 0.5;
                    } else if (!ctx.right_picked && pos == ctx.right_marker) {
                        ctx.right_picked = true;
                        r.reward = 0.5;
                        r.done = true;
                    }
                }
                break;
            }
            case TaskId::OneStroke: {
                auto& ctx = std::get<OneStrokeCtx>(t.ctx);
                if (!ctx.start_credited) {
                    // the start cell counts as visited from the first transition
                    ctx.start_credited = true;
                    r.reward += 1.0 / 64.0;
                }
                if (moved) {
                    t.world.set_wall(before_pos.row, before_pos.col, true);
                    ++ctx.visited;
                    r.reward += 1.0 / 64.0;
                    r.done = ctx.visited == 64;
                }
                break;
            }
            case TaskId::Seeder: {
                auto& ctx = std::get<SeederCtx>(t.ctx);
                int delta = 0;
                if (marker_added && now_markers == 1) delta = 1;
                if (marker_removed && now_markers == 0) delta = -1;
                if (delta != 0) {
                    ctx.seeded += delta;
                    r.reward = delta / 64.0;
                }
                r.done = ctx.seeded == 64;
                break;
            }
            case TaskId::Snake: {
                auto& ctx = std::get<SnakeCtx>(t.ctx);
                if (moved) {
                    if (pos == ctx.food) {
                        ++ctx.collected;
                        r.reward = 1.0 / kSnakeTarget;
                        t.world.set_marker(pos.row, pos.col, 0);
                        ctx.body.push_front(before_pos);
                        t.world.set_wall(before_pos.row, before_pos.col, true);
                        if (ctx.collected >= kSnakeTarget)
                            r.done = true;
                        else
                            snake_respawn_food(t, ctx);
                    } else {
                        ctx.body.push_front(before_pos);
                        t.world.set_wall(before_pos.row, before_pos.col, true);
                        if (static_cast<int>(ctx.body.size()) > ctx.collected) {
                            Cell tail = ctx.body.back();
                            ctx.body.pop_back();
                            t.world.set_wall(tail.row, tail.col, false);
                        }
                    }
                }
                break;
            }
        }
    }
    if (t.world.crashed) {
        r.reward += t.options.crash_penalty;
        r.done = true;
    }
    t.return_so_far += r.reward;
    return r;
}

std::vector<TaskInstance> eval_set(TaskId id, std::uint64_t master_seed, int size,
                                   const TaskOptions& options) {
    if (size < 1) throw std::invalid_argument("eval_set size must be >= 1");
    std::vector<TaskInstance> out;
    out.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        Rng rng(derive_seed(master_seed, 0x7a5cull, static_cast<std::uint64_t>(id), static_cast<std::uint64_t>(i)));
        out.push_back(init_instance(id, rng, options));
    }
    return out;
}

namespace {

nlohmann::ordered_json world_to_json(const WorldState& w) {
    nlohmann::ordered_json j;
    j["width"] = w.width;
    j["height"] = w.height;
    std::vector<std::string> rows;
    for (int r = 0; r < w.height; ++r) {
        std::string row;
        for (int c = 0; c < w.width; ++c) row += w.wall_at(r, c) ? '#' : '.';
        rows.push_back(row);
    }
    j["walls"] = rows;
    std::vector<std::vector<int>> markers;
    for (int r = 0; r < w.height; ++r) {
        std::vector<int> row;
        for (int c = 0; c < w.width; ++c) row.push_back(w.marker_at(r, c));
        markers.push_back(row);
    }
    j["markers"] = markers;
    j["agent"] = {{"row", w.agent_row}, {"col", w.agent_col}, {"dir", world::to_string(w.agent_dir)}};
    j["crashed"] = w.crashed;
    return j;
}

nlohmann::ordered_json cell_to_json(Cell c) { return {{"row", c.row}, {"col", c.col}}; }

struct CtxJson {
    nlohmann::ordered_json operator()(const StairClimberCtx& c) const {
        return {{"goal", cell_to_json(c.goal)}};
    }
    nlohmann::ordered_json operator()(const FourCornersCtx& c) const {
        return {{"corners_marked", c.corners_marked}};
    }
    nlohmann::ordered_json operator()(const TopOffCtx& c) const {
        return {{"marker_cols", c.marker_cols}, {"topped", c.topped}};
    }
    nlohmann::ordered_json operator()(const MazeCtx& c) const { return {{"goal", cell_to_json(c.goal)}}; }
    nlohmann::ordered_json operator()(const CleanHouseCtx& c) const {
        return {{"total_markers", c.total_markers}, {"picked", c.picked}};
    }
    nlohmann::ordered_json operator()(const HarvesterCtx& c) const {
        return {{"total", c.total}, {"picked", c.picked}};
    }
    nlohmann::ordered_json operator()(const DoorKeyCtx& c) const {
        return {{"door", cell_to_json(c.door)},       {"left_marker", cell_to_json(c.left_marker)},
                {"right_marker", cell_to_json(c.right_marker)}, {"door_open", c.door_open},
                {"left_picked", c.left_picked},       {"right_picked", c.right_picked}};
    }
    nlohmann::ordered_json operator()(const OneStrokeCtx& c) const { return {{"visited", c.visited}}; }
    nlohmann::ordered_json operator()(const SeederCtx& c) const { return {{"seeded", c.seeded}}; }
    nlohmann::ordered_json operator()(const SnakeCtx& c) const {
        nlohmann::ordered_json body = nlohmann::ordered_json::array();
        for (Cell b : c.body) body.push_back(cell_to_json(b));
        return {{"body", body}, {"food", cell_to_json(c.food)}, {"collected", c.collected}};
    }
};

} // namespace

nlohmann::ordered_json to_json(const TaskInstance& t) {
    nlohmann::ordered_json j;
    j["task"] = to_string(t.id);
    j["world"] = world_to_json(t.world);
    j["return_so_far"] = t.return_so_far;
    j["ctx"] = std::visit(CtxJson{}, t.ctx);
    return j;
}

} // namespace innatecoder::tasks
