#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cantorsum {

inline constexpr uint64_t kDefaultWordCap = uint64_t{1} << 26;

/// m^n with a cap; throws Errc::cap_exceeded beyond it.
uint64_t checked_pow(uint32_t m, uint32_t n, uint64_t cap);

/// Finite word over the alphabet {0, ..., m-1}.
struct Word {
  std::vector<uint32_t> symbols;
  uint32_t m = 2;

  Word() = default;
  Word(std::vector<uint32_t> syms, uint32_t alphabet);

  size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  uint32_t operator[](size_t i) const { return symbols[i]; }
  bool operator==(const Word& o) const { return m == o.m && symbols == o.symbols; }

  /// Lexicographic rank among all words of the same length.
  uint64_t rank() const;
  static Word from_rank(uint64_t rank, uint32_t length, uint32_t alphabet);
  std::string to_string() const;
};

/// Eventually periodic symbol sequence: an explicit prefix followed by a
/// nonempty tail word repeated forever. Immutable after construction.
struct SymbolPath {
  Word prefix;
  Word tail;

  SymbolPath(Word prefix_word, Word tail_word);
  /// Purely periodic path.
  explicit SymbolPath(Word tail_word);

  uint32_t alphabet() const { return tail.m; }
  uint32_t at(size_t i) const;
  /// Path with the first k symbols dropped.
  SymbolPath shift(size_t k) const;
  Word first(size_t n) const;
};

/// Length of the longest common prefix of the two expanded sequences.
/// Throws Errc::identical_sequences when they agree as infinite words.
size_t wedge(const SymbolPath& a, const SymbolPath& b);

/// All m^n words of length n in lexicographic order.
std::vector<Word> cylinder_enumerate(uint32_t m, uint32_t n, uint64_t cap = kDefaultWordCap);

}  // namespace cantorsum
