#ifndef CARNOT_WORD_HPP
#define CARNOT_WORD_HPP

#include <string>
#include <vector>

namespace carnot {

/// Multi-index I = (i_1,...,i_K) over a frame alphabet. The weighted degree
/// d(I) counts each letter by the weight of its field; horizontal words have
/// all letters of weight 1, so degree equals length.
struct Word {
  std::vector<int> letters;
  int degree = 0;
  bool horizontal = true;

  int length() const { return static_cast<int>(letters.size()); }
  bool operator==(const Word& o) const { return letters == o.letters; }
};

/// All words with d(I) <= k over an alphabet with the given letter weights,
/// listed by length then lexicographically; the empty word comes first.
/// horizontal_only keeps words over weight-1 letters only.
std::vector<Word> enumerate_words(const std::vector<int>& letter_weights, int k,
                                  bool horizontal_only = false);

std::string word_str(const Word& w, const std::vector<std::string>& letter_names);

}  // namespace carnot

#endif
