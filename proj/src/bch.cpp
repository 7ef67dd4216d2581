#include "carnot/bch.hpp"

#include <atomic>
#include <map>
#include <mutex>

namespace carnot {

namespace {

Rational factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Enumerates Dynkin tuples ((r_1,s_1),...,(r_n,s_n)), r_i+s_i >= 1, of total
// degree <= order, accumulating the coefficient of each word X^{r_1}Y^{s_1}...
// Words whose right-nested bracket vanishes identically (repeated innermost
// letter) are skipped up front.
std::vector<BchTerm> build_terms(int order) {
  std::map<std::vector<uint8_t>, Rational> acc;

  struct Block { int r, s; };
  std::vector<Block> blocks;

  auto flush = [&]() {
    int degree = 0;
    Rational fact_prod(1);
    std::vector<uint8_t> word;
    for (const auto& b : blocks) {
      degree += b.r + b.s;
      fact_prod *= factorial(b.r) * factorial(b.s);
      word.insert(word.end(), static_cast<size_t>(b.r), 0);
      word.insert(word.end(), static_cast<size_t>(b.s), 1);
    }
    // zero bracket: [..., w, w] with equal trailing letters
    size_t len = word.size();
    if (len >= 2 && word[len - 1] == word[len - 2]) return;
    const auto& tail = blocks.back();
    if (len >= 2 && !(tail.s == 1 || (tail.s == 0 && tail.r == 1))) return;
    int n = static_cast<int>(blocks.size());
    Rational coeff = Rational((n % 2) ? 1 : -1, n) / (Rational(degree) * fact_prod);
    acc[word] += coeff;
  };

  // depth-first over block sequences
  std::function<void(int)> rec = [&](int remaining) {
    if (!blocks.empty()) flush();
    if (remaining == 0) return;
    for (int d = 1; d <= remaining; ++d)
      for (int r = 0; r <= d; ++r) {
        blocks.push_back({r, d - r});
        rec(remaining - d);
        blocks.pop_back();
      }
  };
  rec(order);

  std::vector<BchTerm> out;
  for (auto& [word, coeff] : acc)
    if (coeff != 0) out.push_back({word, coeff});
  return out;
}

}  // namespace

namespace {
std::atomic<int> g_bch_order_cap{kDefaultBchOrderCap};
}

int bch_order_cap() { return g_bch_order_cap.load(); }

void set_bch_order_cap(int cap) {
  if (cap < 1) throw Error(ErrorCode::BadInput, "BCH order cap must be positive");
  g_bch_order_cap.store(cap);
}

const std::vector<BchTerm>& bch_terms(int order) {
  if (order < 1 || order > bch_order_cap())
    throw Error(ErrorCode::BadInput,
                "BCH truncation order " + std::to_string(order) +
                    " outside supported range 1.." + std::to_string(bch_order_cap()));
  static std::mutex mu;
  static std::map<int, std::vector<BchTerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_terms(order)).first;
  return it->second;
}

RatVec bch(const StratifiedAlgebra& g, const RatVec& u, const RatVec& v) {
  std::vector<Rational> uu(u.data(), u.data() + u.size());
  std::vector<Rational> vv(v.data(), v.data() + v.size());
  auto zz = bch(g, uu, vv);
  RatVec z(u.size());
  for (int i = 0; i < z.size(); ++i) z[i] = zz[static_cast<size_t>(i)];
  return z;
}

}  // namespace carnot
