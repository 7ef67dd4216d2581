#include "carnot/word.hpp"

namespace carnot {

std::vector<Word> enumerate_words(const std::vector<int>& letter_weights, int k,
                                  bool horizontal_only) {
  std::vector<int> alphabet;
  for (size_t i = 0; i < letter_weights.size(); ++i)
    if (!horizontal_only || letter_weights[i] == 1)
      alphabet.push_back(static_cast<int>(i));

  std::vector<Word> out;
  Word empty;
  out.push_back(empty);

  std::vector<Word> frontier = {empty};
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (int letter : alphabet) {
        int wt = letter_weights[static_cast<size_t>(letter)];
        if (w.degree + wt > k) continue;
        Word e = w;
        e.letters.push_back(letter);
        e.degree += wt;
        e.horizontal = e.horizontal && wt == 1;
        next.push_back(std::move(e));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::string word_str(const Word& w, const std::vector<std::string>& letter_names) {
  if (w.letters.empty()) return "()";
  std::string out;
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += " ";
    out += letter_names[static_cast<size_t>(w.letters[i])];
  }
  return out;
}

}  // namespace carnot
