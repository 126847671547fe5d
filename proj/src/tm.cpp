#include "pagelab/tm.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace pagelab {

namespace {

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("machine: line " + std::to_string(line_no) + ": " + what);
}

char parse_symbol(const std::string& token, std::size_t line_no) {
  if (token.size() != 1) parse_error(line_no, "symbol '" + token + "' must be one character");
  return token[0];
}

std::int64_t floor_div(std::int64_t cell, std::int64_t b) {
  std::int64_t q = cell / b;
  if (cell % b != 0 && ((cell < 0) != (b < 0))) --q;
  return q;
}

// Address-indexed block store; absent addresses read as all-blank.
class BlockStore {
 public:
  BlockStore(std::size_t block_b, char blank) : block_b_(block_b), blank_(blank) {}

  std::vector<char> fetch(std::int64_t address) const {
    auto it = blocks_.find(address);
    if (it != blocks_.end()) return it->second;
    return std::vector<char>(block_b_, blank_);
  }

  void store(std::int64_t address, std::vector<char> block) {
    blocks_[address] = std::move(block);
  }

  char cell(std::int64_t cell_index) const {
    auto it = blocks_.find(floor_div(cell_index, static_cast<std::int64_t>(block_b_)));
    if (it == blocks_.end()) return blank_;
    std::int64_t off = cell_index - floor_div(cell_index, static_cast<std::int64_t>(block_b_)) *
                                        static_cast<std::int64_t>(block_b_);
    return it->second[static_cast<std::size_t>(off)];
  }

 private:
  std::size_t block_b_;
  char blank_;
  std::unordered_map<std::int64_t, std::vector<char>> blocks_;
};

}  // namespace

TmSpec parse_tm(std::istream& in) {
  TmSpec tm;
  bool have_start = false, have_halt = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;

    if (first == "start:") {
      if (!(ls >> tm.start_state)) parse_error(line_no, "start: needs a state");
      have_start = true;
    } else if (first == "halt:") {
      std::string state;
      while (ls >> state) tm.halt_states.insert(state);
      if (tm.halt_states.empty()) parse_error(line_no, "halt: needs at least one state");
      have_halt = true;
    } else if (first == "blank:") {
      std::string token;
      if (!(ls >> token)) parse_error(line_no, "blank: needs a symbol");
      tm.blank = parse_symbol(token, line_no);
    } else {
      // state symbol -> state' symbol' L|R
      std::string sym, arrow, next_state, write, move;
      if (!(ls >> sym >> arrow >> next_state >> write >> move) || arrow != "->")
        parse_error(line_no, "expected 'state symbol -> state symbol L|R'");
      std::string extra;
      if (ls >> extra) parse_error(line_no, "trailing token '" + extra + "'");
      if (move != "L" && move != "R") parse_error(line_no, "move must be L or R");
      auto key = std::pair(first, parse_symbol(sym, line_no));
      if (tm.transitions.count(key))
        parse_error(line_no, "duplicate transition for (" + first + ", " + sym + ")");
      tm.transitions[key] =
          TmTransition{next_state, parse_symbol(write, line_no), move == "L" ? -1 : 1};
    }
  }
  if (!have_start) throw std::runtime_error("machine: missing 'start:' line");
  if (!have_halt) throw std::runtime_error("machine: missing 'halt:' line");
  return tm;
}

TmSpec parse_tm_string(const std::string& text) {
  std::istringstream in(text);
  return parse_tm(in);
}

TmSpec parse_tm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("machine: cannot open '" + path + "'");
  return parse_tm(in);
}

std::string TmRunResult::tape_trimmed(char blank) const {
  std::size_t begin = tape_window.find_first_not_of(blank);
  if (begin == std::string::npos) return "";
  std::size_t end = tape_window.find_last_not_of(blank);
  return tape_window.substr(begin, end - begin + 1);
}

TmRunResult simulate_tm(const TmSpec& tm, std::string_view input, std::size_t block_b,
                        std::size_t max_steps) {
  if (block_b < 1) throw std::invalid_argument("simulate_tm: block_b must be >= 1");

  const auto b = static_cast<std::int64_t>(block_b);
  BlockStore store(block_b, tm.blank);

  // Lay the input down from cell 0, block by block.
  for (std::size_t i = 0; i < input.size(); i += block_b) {
    std::vector<char> block(block_b, tm.blank);
    for (std::size_t j = 0; j < block_b && i + j < input.size(); ++j) block[j] = input[i + j];
    store.store(static_cast<std::int64_t>(i / block_b), std::move(block));
  }

  TmRunResult result;
  std::string state = tm.start_state;
  std::int64_t head = 0;
  std::int64_t min_visited = 0, max_visited = 0;

  std::vector<char> buffer;
  std::int64_t buffer_addr = 0;
  bool have_buffer = false, dirty = false;

  while (!tm.halt_states.count(state) && result.steps < max_steps) {
    std::int64_t addr = floor_div(head, b);
    if (!have_buffer || buffer_addr != addr) {
      if (have_buffer && dirty) store.store(buffer_addr, buffer);
      buffer = store.fetch(addr);
      buffer_addr = addr;
      have_buffer = true;
      dirty = false;
    }
    result.retrieval_queries += 1;  // per-step fetch of the head's block

    char sym = buffer[static_cast<std::size_t>(head - addr * b)];
    auto it = tm.transitions.find(std::pair(state, sym));
    if (it == tm.transitions.end())
      throw std::runtime_error("machine: no transition for state '" + state + "' on symbol '" +
                               std::string(1, sym) + "'");

    buffer[static_cast<std::size_t>(head - addr * b)] = it->second.write;
    dirty = true;
    state = it->second.next_state;
    head += it->second.move;
    result.steps += 1;
    result.attention_ops += static_cast<std::uint64_t>(block_b) * block_b;
    min_visited = std::min(min_visited, head);
    max_visited = std::max(max_visited, head);

    if (floor_div(head, b) != buffer_addr) {
      store.store(buffer_addr, buffer);
      dirty = false;
      result.retrieval_queries += 1;  // write-back when crossing a boundary
    }
  }
  if (have_buffer && dirty) store.store(buffer_addr, buffer);

  result.halted = tm.halt_states.count(state) > 0;
  result.final_state = state;
  result.window_start = min_visited;
  result.tape_window.reserve(static_cast<std::size_t>(max_visited - min_visited + 1));
  for (std::int64_t cell = min_visited; cell <= max_visited; ++cell)
    result.tape_window.push_back(store.cell(cell));
  return result;
}

}  // namespace pagelab
