#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rootlts/env.hpp"

namespace rootlts::domains {

class SokobanParseError : public std::runtime_error {
 public:
  SokobanParseError(int line, int col, const std::string& what)
      : std::runtime_error("sokoban parse error at line " +
                           std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

using Cell = std::uint16_t;

// Static board data parsed from XSB text (# wall, @ player, $ box, . goal,
// * box-on-goal, + player-on-goal, space floor).
struct SokobanLevel {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> wall;       // per cell
  std::vector<std::uint8_t> goal_mask;  // per cell
  std::vector<Cell> goals;
  Cell player_start = 0;
  std::vector<Cell> boxes_start;  // sorted

  static SokobanLevel parse(const std::string& text);

  int floor_cells() const;  // number of non-wall cells
  Cell index(int r, int c) const { return static_cast<Cell>(r * width + c); }
};

// Dynamic part of a Sokoban state.
struct SokobanBoard {
  Cell player = 0;
  std::vector<Cell> boxes;  // sorted

  friend bool operator==(const SokobanBoard&, const SokobanBoard&) = default;
};

enum class Move : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };
inline constexpr int kNumMoves = 4;
char move_char(Move m);

// Applies one move; nullopt when blocked. pushed is set when a box moved.
std::optional<SokobanBoard> apply_move(const SokobanLevel& level,
                                       const SokobanBoard& board, Move m,
                                       bool* pushed = nullptr,
                                       Cell* box_dest = nullptr);

bool all_boxes_on_goals(const SokobanLevel& level, const SokobanBoard& board);

// Estimate of the number of clues of type z on a level with N non-wall
// cells and 4 boxes: C(4,z) * C(N-5, 4-z) * z * 3.
std::uint64_t clue_count_estimate(std::uint64_t non_wall_cells, int z);

// Search states are (board, previous board) pairs: the policy is uniform
// over moves that lead to boards that differ from both. Clue type z is
// emitted when a push lands a box on a goal and exactly z <= 3 boxes are
// then on goals.
class SokobanEnv final : public Environment {
 public:
  explicit SokobanEnv(SokobanLevel level);

  StateId root() const override;
  void expand(StateId state, std::vector<ChildEdge>& out) const override;
  bool is_goal(StateId state) const override;
  bool proper_policy() const override { return true; }
  std::int32_t max_clue_type() const override { return 3; }

  const SokobanLevel& level() const { return level_; }
  SokobanBoard board_of(StateId state) const;

  struct LabeledChild {
    Move move;
    SokobanBoard board;
    Signal signal;
  };
  // Legal children of (cur, prev) with their action labels.
  std::vector<LabeledChild> legal_moves(const SokobanBoard& cur,
                                        const SokobanBoard* prev) const;

 private:
  struct BoardHash {
    std::size_t operator()(const SokobanBoard& b) const;
  };

  std::uint32_t intern(const SokobanBoard& b) const;

  SokobanLevel level_;
  mutable std::mutex mu_;
  mutable std::vector<SokobanBoard> boards_;
  mutable std::unordered_map<SokobanBoard, std::uint32_t, BoardHash> ids_;
};

// The 4-box level shipped with the toolkit (89 non-wall cells).
extern const char kStandinLevel[];
// A scripted 25-action solution for kStandinLevel.
extern const char kStandinSolution[];

}  // namespace rootlts::domains
