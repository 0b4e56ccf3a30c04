#include "rootlts/domains/sokoban.hpp"

#include <algorithm>

namespace rootlts::domains {

// 13x11 grid, 89 floor cells, 4 boxes. The goal block sits mid-board with
// boxes two pushes away; see kStandinSolution for one 25-action plan.
const char kStandinLevel[] =
    "#############\n"
    "#           #\n"
    "#  #        #\n"
    "#     #$    #\n"
    "# #   #     #\n"
    "# @ $ ..    #\n"
    "# #  #..    #\n"
    "#    #      #\n"
    "# ### $$    #\n"
    "#           #\n"
    "#############\n";

const char kStandinSolution[] = "RRRUUURRDDRDDDDDLLUUDDRUU";

char move_char(Move m) {
  switch (m) {
    case Move::kUp:
      return 'U';
    case Move::kDown:
      return 'D';
    case Move::kLeft:
      return 'L';
    case Move::kRight:
      return 'R';
  }
  return '?';
}

SokobanLevel SokobanLevel::parse(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  while (!lines.empty() && lines.back().find_first_not_of(' ') == std::string::npos) {
    lines.pop_back();
  }
  if (lines.empty()) throw SokobanParseError(1, 1, "empty level");

  SokobanLevel lv;
  lv.height = static_cast<int>(lines.size());
  std::size_t w = 0;
  for (const std::string& l : lines) w = std::max(w, l.size());
  lv.width = static_cast<int>(w);
  if (lv.width * lv.height > 60000) {
    throw SokobanParseError(1, 1, "level too large");
  }

  lv.wall.assign(static_cast<std::size_t>(lv.width) * lv.height, 0);
  lv.goal_mask.assign(lv.wall.size(), 0);
  bool player_seen = false;
  for (int r = 0; r < lv.height; ++r) {
    const std::string& line = lines[static_cast<std::size_t>(r)];
    for (int c = 0; c < lv.width; ++c) {
      char ch = c < static_cast<int>(line.size()) ? line[static_cast<std::size_t>(c)] : ' ';
      Cell cell = lv.index(r, c);
      switch (ch) {
        case '#':
          lv.wall[cell] = 1;
          break;
        case ' ':
          break;
        case '.':
          lv.goal_mask[cell] = 1;
          break;
        case '$':
          lv.boxes_start.push_back(cell);
          break;
        case '*':
          lv.goal_mask[cell] = 1;
          lv.boxes_start.push_back(cell);
          break;
        case '@':
        case '+':
          if (player_seen) {
            throw SokobanParseError(r + 1, c + 1, "second player");
          }
          player_seen = true;
          lv.player_start = cell;
          if (ch == '+') lv.goal_mask[cell] = 1;
          break;
        default:
          throw SokobanParseError(r + 1, c + 1,
                                  std::string("unknown character '") + ch + "'");
      }
    }
  }
  if (!player_seen) throw SokobanParseError(1, 1, "no player");

  // Flood the exterior from the grid border and turn unreachable background
  // into wall; objects outside the walls are errors.
  std::vector<std::uint8_t> exterior(lv.wall.size(), 0);
  std::vector<Cell> stack;
  auto push_if_open = [&](int r, int c) {
    if (r < 0 || c < 0 || r >= lv.height || c >= lv.width) return;
    Cell cell = lv.index(r, c);
    if (lv.wall[cell] || exterior[cell]) return;
    exterior[cell] = 1;
    stack.push_back(cell);
  };
  for (int r = 0; r < lv.height; ++r) {
    push_if_open(r, 0);
    push_if_open(r, lv.width - 1);
  }
  for (int c = 0; c < lv.width; ++c) {
    push_if_open(0, c);
    push_if_open(lv.height - 1, c);
  }
  while (!stack.empty()) {
    Cell cell = stack.back();
    stack.pop_back();
    int r = cell / lv.width, c = cell % lv.width;
    push_if_open(r - 1, c);
    push_if_open(r + 1, c);
    push_if_open(r, c - 1);
    push_if_open(r, c + 1);
  }
  for (int r = 0; r < lv.height; ++r) {
    for (int c = 0; c < lv.width; ++c) {
      Cell cell = lv.index(r, c);
      if (!exterior[cell]) continue;
      if (lv.goal_mask[cell] || cell == lv.player_start ||
          std::find(lv.boxes_start.begin(), lv.boxes_start.end(), cell) !=
              lv.boxes_start.end()) {
        throw SokobanParseError(r + 1, c + 1, "object outside the walls");
      }
      lv.wall[cell] = 1;
    }
  }

  for (std::size_t cell = 0; cell < lv.goal_mask.size(); ++cell) {
    if (lv.goal_mask[cell]) lv.goals.push_back(static_cast<Cell>(cell));
  }
  std::sort(lv.boxes_start.begin(), lv.boxes_start.end());
  if (lv.boxes_start.empty() || lv.boxes_start.size() != lv.goals.size()) {
    throw SokobanParseError(1, 1, "box/goal count mismatch");
  }
  return lv;
}

int SokobanLevel::floor_cells() const {
  int n = 0;
  for (std::uint8_t w : wall) n += w == 0;
  return n;
}

namespace {

int move_delta(const SokobanLevel& lv, Move m) {
  switch (m) {
    case Move::kUp:
      return -lv.width;
    case Move::kDown:
      return lv.width;
    case Move::kLeft:
      return -1;
    case Move::kRight:
      return 1;
  }
  return 0;
}

bool has_box(const std::vector<Cell>& boxes, Cell c) {
  return std::binary_search(boxes.begin(), boxes.end(), c);
}

}  // namespace

std::optional<SokobanBoard> apply_move(const SokobanLevel& level,
                                       const SokobanBoard& board, Move m,
                                       bool* pushed, Cell* box_dest) {
  // The outer wall ring keeps target cells in range.
  int delta = move_delta(level, m);
  int target = static_cast<int>(board.player) + delta;
  if (level.wall[static_cast<std::size_t>(target)]) return {};
  SokobanBoard next = board;
  if (pushed) *pushed = false;
  if (has_box(board.boxes, static_cast<Cell>(target))) {
    int beyond = target + delta;
    if (level.wall[static_cast<std::size_t>(beyond)] ||
        has_box(board.boxes, static_cast<Cell>(beyond))) {
      return {};
    }
    auto it = std::find(next.boxes.begin(), next.boxes.end(),
                        static_cast<Cell>(target));
    *it = static_cast<Cell>(beyond);
    std::sort(next.boxes.begin(), next.boxes.end());
    if (pushed) *pushed = true;
    if (box_dest) *box_dest = static_cast<Cell>(beyond);
  }
  next.player = static_cast<Cell>(target);
  return next;
}

bool all_boxes_on_goals(const SokobanLevel& level, const SokobanBoard& board) {
  for (Cell b : board.boxes) {
    if (!level.goal_mask[b]) return false;
  }
  return true;
}

std::uint64_t clue_count_estimate(std::uint64_t non_wall_cells, int z) {
  if (non_wall_cells < 6 || z < 1 || z > 3) {
    throw std::invalid_argument("clue_count_estimate: need N >= 6, z in 1..3");
  }
  auto binom = [](std::uint64_t n, std::uint64_t k) {
    if (k > n) return std::uint64_t{0};
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  auto zz = static_cast<std::uint64_t>(z);
  return binom(4, zz) * binom(non_wall_cells - 5, 4 - zz) * zz * 3;
}

std::size_t SokobanEnv::BoardHash::operator()(const SokobanBoard& b) const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](Cell c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  mix(b.player);
  for (Cell c : b.boxes) mix(c);
  return static_cast<std::size_t>(h);
}

SokobanEnv::SokobanEnv(SokobanLevel level) : level_(std::move(level)) {
  SokobanBoard start{level_.player_start, level_.boxes_start};
  intern(start);  // id 0
}

std::uint32_t SokobanEnv::intern(const SokobanBoard& b) const {
  auto [it, fresh] = ids_.try_emplace(b, static_cast<std::uint32_t>(boards_.size()));
  if (fresh) boards_.push_back(b);
  return it->second;
}

StateId SokobanEnv::root() const { return 0; }

SokobanBoard SokobanEnv::board_of(StateId state) const {
  std::lock_guard<std::mutex> lock(mu_);
  return boards_[state >> 32];
}

std::vector<SokobanEnv::LabeledChild> SokobanEnv::legal_moves(
    const SokobanBoard& cur, const SokobanBoard* prev) const {
  std::vector<LabeledChild> out;
  for (int mi = 0; mi < kNumMoves; ++mi) {
    Move m = static_cast<Move>(mi);
    bool pushed = false;
    Cell box_dest = 0;
    auto next = apply_move(level_, cur, m, &pushed, &box_dest);
    if (!next) continue;
    if (prev && *next == *prev) continue;
    LabeledChild child{m, std::move(*next), {}};
    if (pushed && level_.goal_mask[box_dest]) {
      int z = 0;
      for (Cell b : child.board.boxes) z += level_.goal_mask[b];
      // z == box count means the level is solved; that is the goal state,
      // not a clue.
      if (z <= 3) child.signal.clue_type = z;
    }
    out.push_back(std::move(child));
  }
  return out;
}

void SokobanEnv::expand(StateId state, std::vector<ChildEdge>& out) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::uint32_t cur_id = static_cast<std::uint32_t>(state >> 32);
  std::uint32_t prev_plus1 = static_cast<std::uint32_t>(state);
  SokobanBoard cur = boards_[cur_id];
  SokobanBoard prev;
  const SokobanBoard* prev_ptr = nullptr;
  if (prev_plus1 != 0) {
    prev = boards_[prev_plus1 - 1];
    prev_ptr = &prev;
  }
  auto children = legal_moves(cur, prev_ptr);
  double p = children.empty() ? 1.0 : 1.0 / static_cast<double>(children.size());
  for (auto& ch : children) {
    std::uint32_t id = intern(ch.board);
    StateId s = (static_cast<StateId>(id) << 32) |
                static_cast<StateId>(cur_id + 1);
    out.push_back({s, p, ch.signal});
  }
}

bool SokobanEnv::is_goal(StateId state) const {
  std::lock_guard<std::mutex> lock(mu_);
  return all_boxes_on_goals(level_, boards_[state >> 32]);
}

}  // namespace rootlts::domains
