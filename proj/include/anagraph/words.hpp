#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace anagraph::words {

/// Sequence over symbols 0..alphabet_size-1, written as a digit string "0123...".
struct Word {
  std::vector<int> symbols;
  int alphabet_size = 0;

  std::size_t size() const { return symbols.size(); }
  std::string to_string() const;
  /// Throws std::invalid_argument for characters outside the alphabet.
  static Word parse(std::string_view text, int alphabet_size);

  friend bool operator==(const Word&, const Word&) = default;
};

/// Blocks [start, start+half) and [start+half, start+2*half) are permutations of each other.
struct SquareLocation {
  std::size_t start = 0;
  std::size_t half = 0;
  friend bool operator==(const SquareLocation&, const SquareLocation&) = default;
};

/// Lexicographically smallest (start, half) abelian square, or nullopt if the word is anagram-free.
std::optional<SquareLocation> find_abelian_square(const Word& word);

/// Grows a word one symbol at a time while keeping it anagram-free. A push only
/// needs the windows ending at the new symbol; each is tested through the linear
/// prefix hash and confirmed on the prefix count table.
class FreeWordBuilder {
 public:
  explicit FreeWordBuilder(int alphabet_size);

  /// Would appending `symbol` keep the word anagram-free?
  bool can_push(int symbol) const;
  void push(int symbol);
  void pop();

  std::size_t size() const { return symbols_.size(); }
  Word word() const { return Word{symbols_, alphabet_size_}; }

 private:
  int alphabet_size_;
  std::vector<int> symbols_;
  std::vector<int> prefix_counts_;  // (size+1) rows of alphabet_size counts
  std::vector<std::uint64_t> prefix_hash_;
  std::vector<std::uint64_t> weights_;
};

struct GenerateResult {
  bool success = false;
  Word word;  // the generated word, or the longest one reached on failure
  std::uint64_t steps = 0;
};

/// Seeded backtracking: symbols are tried in a per-node random order. Fails
/// once `budget` candidate extensions were tested or the search space is exhausted.
GenerateResult generate_anagram_free_word(int alphabet_size, std::size_t target, std::uint64_t budget,
                                          std::uint64_t seed);

struct MaxLengthResult {
  std::size_t length = 0;
  Word witness;
  bool reached_cap = false;  // length >= cap, true maximum not established
  std::uint64_t nodes = 0;
};

/// Exhaustive DFS over the prefix tree (symbols introduced in order of first use).
MaxLengthResult max_anagram_free_length(int alphabet_size, std::size_t cap);

}  // namespace anagraph::words
