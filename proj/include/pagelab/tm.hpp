#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace pagelab {

// Single-tape deterministic Turing machine. Symbols are single characters,
// states are free-form tokens.
struct TmTransition {
  std::string next_state;
  char write = '_';
  int move = 1;  // -1 = L, +1 = R
};

struct TmSpec {
  std::string start_state;
  std::set<std::string> halt_states;
  char blank = '_';
  std::map<std::pair<std::string, char>, TmTransition> transitions;
};

// Line format: "state symbol -> state' symbol' L|R" plus header lines
// "start: <state>", "halt: <state> [<state> ...]", "blank: <symbol>".
// '#' starts a comment.
TmSpec parse_tm(std::istream& in);
TmSpec parse_tm_string(const std::string& text);
TmSpec parse_tm_file(const std::string& path);

struct TmRunResult {
  bool halted = false;
  std::size_t steps = 0;
  std::string final_state;
  std::string tape_window;        // symbols over [window_start, window_start+len)
  std::int64_t window_start = 0;  // leftmost visited cell
  std::uint64_t attention_ops = 0;     // steps * B^2
  std::uint64_t retrieval_queries = 0; // 1 fetch per step + 1 per boundary write-back

  // Window with leading/trailing blanks stripped.
  std::string tape_trimmed(char blank = '_') const;
};

// Runs the machine over a block-structured store: the tape is split into
// fixed blocks of block_b cells keyed by block address (floor(cell/B),
// negative cells included); absent blocks read as all-blank. Each step
// fetches the head's block (one retrieval query), applies the transition in
// a working buffer, and writes the buffer back (one more query) only when
// the head leaves the block.
TmRunResult simulate_tm(const TmSpec& tm, std::string_view input, std::size_t block_b,
                        std::size_t max_steps);

}  // namespace pagelab
