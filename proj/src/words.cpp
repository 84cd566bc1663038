#include "anagraph/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "anagraph/core.hpp"
#include "anagraph/rng.hpp"

namespace anagraph::words {

std::string Word::to_string() const {
  std::string out;
  out.reserve(symbols.size());
  for (int s : symbols) {
    out.push_back(s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + s - 10));
  }
  return out;
}

Word Word::parse(std::string_view text, int alphabet_size) {
  Word w{{}, alphabet_size};
  for (char ch : text) {
    int s = -1;
    if (ch >= '0' && ch <= '9') s = ch - '0';
    if (ch >= 'a' && ch <= 'z') s = ch - 'a' + 10;
    if (s < 0 || s >= alphabet_size) throw std::invalid_argument(std::string("symbol '") + ch + "' outside alphabet");
    w.symbols.push_back(s);
  }
  return w;
}

std::optional<SquareLocation> find_abelian_square(const Word& word) {
  const std::size_t n = word.size();
  const int k = std::max(word.alphabet_size, 1 + (n ? *std::max_element(word.symbols.begin(), word.symbols.end()) : 0));
  const auto weights = color_weights(k, 0x5eed);
  std::vector<std::uint64_t> hash(n + 1, 0);
  std::vector<int> counts((n + 1) * k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    hash[i + 1] = hash[i] + weights[word.symbols[i]];
    std::copy_n(counts.begin() + i * k, k, counts.begin() + (i + 1) * k);
    ++counts[(i + 1) * k + word.symbols[i]];
  }
  auto row = [&](std::size_t i, int a) { return counts[i * k + a]; };
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t h = 1; s + 2 * h <= n; ++h) {
      if (2 * hash[s + h] != hash[s] + hash[s + 2 * h]) continue;
      bool equal = true;
      for (int a = 0; a < k && equal; ++a) {
        equal = 2 * row(s + h, a) == row(s, a) + row(s + 2 * h, a);
      }
      if (equal) return SquareLocation{s, h};
    }
  }
  return std::nullopt;
}

FreeWordBuilder::FreeWordBuilder(int alphabet_size)
    : alphabet_size_(alphabet_size),
      prefix_counts_(alphabet_size, 0),
      prefix_hash_(1, 0),
      weights_(color_weights(alphabet_size, 0x5eed)) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be positive");
}

bool FreeWordBuilder::can_push(int symbol) const {
  const std::size_t len = symbols_.size() + 1;
  const int k = alphabet_size_;
  const std::uint64_t end_hash = prefix_hash_.back() + weights_[symbol];
  const int* last = prefix_counts_.data() + (len - 1) * k;
  for (std::size_t h = 1; 2 * h <= len; ++h) {
    const std::size_t s = len - 2 * h;
    const std::size_t mid = len - h;
    if (2 * prefix_hash_[mid] != prefix_hash_[s] + end_hash) continue;
    const int* ps = prefix_counts_.data() + s * k;
    const int* pm = prefix_counts_.data() + mid * k;
    bool equal = true;
    for (int a = 0; a < k && equal; ++a) {
      int end = last[a] + (a == symbol);
      equal = 2 * pm[a] == ps[a] + end;
    }
    if (equal) return false;
  }
  return true;
}

void FreeWordBuilder::push(int symbol) {
  const int k = alphabet_size_;
  const std::size_t base = symbols_.size() * k;
  for (int a = 0; a < k; ++a) prefix_counts_.push_back(prefix_counts_[base + a]);
  ++prefix_counts_[base + k + symbol];
  prefix_hash_.push_back(prefix_hash_.back() + weights_[symbol]);
  symbols_.push_back(symbol);
}

void FreeWordBuilder::pop() {
  symbols_.pop_back();
  prefix_hash_.pop_back();
  prefix_counts_.resize(prefix_counts_.size() - alphabet_size_);
}

GenerateResult generate_anagram_free_word(int alphabet_size, std::size_t target, std::uint64_t budget,
                                          std::uint64_t seed) {
  if (alphabet_size < 1 || target < 1) throw std::invalid_argument("need alphabet_size >= 1 and target >= 1");
  Rng rng(seed, "words.generate");
  FreeWordBuilder builder(alphabet_size);
  GenerateResult result;

  struct Frame {
    std::vector<int> order;
    std::size_t next = 0;
  };
  auto fresh_frame = [&] {
    Frame f{std::vector<int>(alphabet_size), 0};
    std::iota(f.order.begin(), f.order.end(), 0);
    rng.shuffle(std::span<int>(f.order));
    return f;
  };

  std::vector<Frame> stack;
  stack.push_back(fresh_frame());
  while (!stack.empty()) {
    if (builder.size() >= target) {
      result.success = true;
      result.word = builder.word();
      return result;
    }
    Frame& top = stack.back();
    if (top.next == top.order.size()) {
      stack.pop_back();
      if (builder.size() > 0) builder.pop();
      continue;
    }
    if (result.steps >= budget) break;
    int symbol = top.order[top.next++];
    ++result.steps;
    if (!builder.can_push(symbol)) continue;
    builder.push(symbol);
    if (builder.size() > result.word.size()) result.word = builder.word();
    stack.push_back(fresh_frame());
  }
  if (result.word.alphabet_size == 0) result.word.alphabet_size = alphabet_size;
  return result;
}

namespace {

void extremal_dfs(FreeWordBuilder& builder, int max_used, std::size_t cap, MaxLengthResult& best, int k) {
  ++best.nodes;
  if (builder.size() > best.length) {
    best.length = builder.size();
    best.witness = builder.word();
  }
  if (builder.size() >= cap) {
    best.reached_cap = true;
    return;
  }
  const int limit = std::min(k - 1, max_used + 1);
  for (int s = 0; s <= limit && !best.reached_cap; ++s) {
    if (!builder.can_push(s)) continue;
    builder.push(s);
    extremal_dfs(builder, std::max(max_used, s), cap, best, k);
    builder.pop();
  }
}

}  // namespace

MaxLengthResult max_anagram_free_length(int alphabet_size, std::size_t cap) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be positive");
  FreeWordBuilder builder(alphabet_size);
  MaxLengthResult best;
  best.witness.alphabet_size = alphabet_size;
  extremal_dfs(builder, -1, cap, best, alphabet_size);
  return best;
}

}  // namespace anagraph::words
