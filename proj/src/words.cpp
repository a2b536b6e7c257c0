#include "cantorsum/words.hpp"

#include <algorithm>
#include <numeric>

#include "cantorsum/errors.hpp"

namespace cantorsum {

uint64_t checked_pow(uint32_t m, uint32_t n, uint64_t cap) {
  uint64_t v = 1;
  for (uint32_t i = 0; i < n; ++i) {
    if (v > cap / m) {
      raise(Errc::cap_exceeded,
            "word count " + std::to_string(m) + "^" + std::to_string(n) +
                " exceeds cap " + std::to_string(cap));
    }
    v *= m;
  }
  if (v > cap) {
    raise(Errc::cap_exceeded, "word count exceeds cap " + std::to_string(cap));
  }
  return v;
}

Word::Word(std::vector<uint32_t> syms, uint32_t alphabet) : symbols(std::move(syms)), m(alphabet) {
  if (m < 2) raise(Errc::config, "alphabet size must be >= 2");
  for (uint32_t s : symbols) {
    if (s >= m) {
      raise(Errc::config, "symbol " + std::to_string(s) + " out of range for alphabet of size " +
                              std::to_string(m));
    }
  }
}

uint64_t Word::rank() const {
  uint64_t r = 0;
  for (uint32_t s : symbols) r = r * m + s;
  return r;
}

Word Word::from_rank(uint64_t rank, uint32_t length, uint32_t alphabet) {
  std::vector<uint32_t> syms(length);
  for (uint32_t i = 0; i < length; ++i) {
    syms[length - 1 - i] = static_cast<uint32_t>(rank % alphabet);
    rank /= alphabet;
  }
  return Word(std::move(syms), alphabet);
}

std::string Word::to_string() const {
  std::string out;
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(symbols[i]);
  }
  return out;
}

SymbolPath::SymbolPath(Word prefix_word, Word tail_word)
    : prefix(std::move(prefix_word)), tail(std::move(tail_word)) {
  if (tail.empty()) raise(Errc::config, "symbol path tail must be nonempty");
  if (!prefix.empty() && prefix.m != tail.m) {
    raise(Errc::config, "prefix and tail alphabets differ");
  }
  prefix.m = tail.m;
}

SymbolPath::SymbolPath(Word tail_word) : SymbolPath(Word({}, tail_word.m), std::move(tail_word)) {}

uint32_t SymbolPath::at(size_t i) const {
  if (i < prefix.size()) return prefix.symbols[i];
  return tail.symbols[(i - prefix.size()) % tail.size()];
}

SymbolPath SymbolPath::shift(size_t k) const {
  if (k <= prefix.size()) {
    std::vector<uint32_t> rest(prefix.symbols.begin() + static_cast<std::ptrdiff_t>(k),
                               prefix.symbols.end());
    return SymbolPath(Word(std::move(rest), tail.m), tail);
  }
  size_t rot = (k - prefix.size()) % tail.size();
  std::vector<uint32_t> rotated(tail.symbols.begin() + static_cast<std::ptrdiff_t>(rot),
                                tail.symbols.end());
  rotated.insert(rotated.end(), tail.symbols.begin(),
                 tail.symbols.begin() + static_cast<std::ptrdiff_t>(rot));
  return SymbolPath(Word({}, tail.m), Word(std::move(rotated), tail.m));
}

Word SymbolPath::first(size_t n) const {
  std::vector<uint32_t> syms(n);
  for (size_t i = 0; i < n; ++i) syms[i] = at(i);
  return Word(std::move(syms), tail.m);
}

size_t wedge(const SymbolPath& a, const SymbolPath& b) {
  if (a.alphabet() != b.alphabet()) raise(Errc::config, "wedge over differing alphabets");
  // Two eventually periodic sequences coincide iff they coincide through one
  // full common period past both prefixes.
  size_t pre = std::max(a.prefix.size(), b.prefix.size());
  size_t period = std::lcm(a.tail.size(), b.tail.size());
  size_t limit = pre + period;
  for (size_t i = 0; i < limit; ++i) {
    if (a.at(i) != b.at(i)) return i;
  }
  raise(Errc::identical_sequences, "paths expand to the same infinite sequence");
}

std::vector<Word> cylinder_enumerate(uint32_t m, uint32_t n, uint64_t cap) {
  if (m < 2) raise(Errc::config, "alphabet size must be >= 2");
  uint64_t count = checked_pow(m, n, cap);
  std::vector<Word> words;
  words.reserve(count);
  std::vector<uint32_t> current(n, 0);
  for (uint64_t k = 0; k < count; ++k) {
    words.emplace_back(current, m);
    // odometer increment, most significant symbol first
    for (size_t i = n; i-- > 0;) {
      if (++current[i] < m) break;
      current[i] = 0;
    }
  }
  return words;
}

}  // namespace cantorsum
