#include "cocyclelab/sft.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "cocyclelab/util.hpp"

namespace cocyclelab {

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << (w.size() > 10 ? "," : "");
    os << w[i];
  }
  return os.str();
}

TransitionMatrix validate_sft(const std::vector<std::vector<int>>& entries) {
  const int l = static_cast<int>(entries.size());
  if (l < 1) fail(ErrorCode::NonAdmissibleAlphabet, "empty alphabet");
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != l)
      fail(ErrorCode::NonAdmissibleAlphabet, "transition matrix is not square");
    for (int v : row)
      if (v != 0 && v != 1)
        fail(ErrorCode::NonAdmissibleAlphabet, "transition entries must be 0/1");
  }
  for (int i = 0; i < l; ++i) {
    bool row_ok = false, col_ok = false;
    for (int j = 0; j < l; ++j) {
      row_ok |= entries[i][j] != 0;
      col_ok |= entries[j][i] != 0;
    }
    if (!row_ok || !col_ok)
      fail(ErrorCode::NonAdmissibleAlphabet,
           "symbol " + std::to_string(i) + " has an all-zero row or column");
  }

  TransitionMatrix m;
  m.size_ = l;
  m.q_ = entries;
  m.min_path_.assign(l, std::vector<int>(l, -1));
  // BFS over >= 1-step paths from each source.
  for (int s = 0; s < l; ++s) {
    std::deque<std::pair<int, int>> queue;  // (node, depth)
    std::vector<char> seen(l, 0);
    for (int j = 0; j < l; ++j)
      if (entries[s][j]) {
        m.min_path_[s][j] = 1;
        seen[j] = 1;
        queue.emplace_back(j, 1);
      }
    while (!queue.empty()) {
      auto [v, d] = queue.front();
      queue.pop_front();
      for (int j = 0; j < l; ++j)
        if (entries[v][j] && !seen[j]) {
          seen[j] = 1;
          m.min_path_[s][j] = d + 1;
          queue.emplace_back(j, d + 1);
        }
    }
  }
  m.irreducible_ = true;
  for (int i = 0; i < l && m.irreducible_; ++i)
    for (int j = 0; j < l; ++j)
      if (m.min_path_[i][j] < 0) {
        m.irreducible_ = false;
        break;
      }
  return m;
}

int TransitionMatrix::max_min_path() const {
  if (!irreducible_) fail(ErrorCode::NotIrreducible, "max_min_path needs irreducibility");
  int best = 0;
  for (const auto& row : min_path_)
    for (int v : row) best = std::max(best, v);
  return best;
}

TransitionMatrix TransitionMatrix::full_shift(int alphabet) {
  return validate_sft(std::vector<std::vector<int>>(alphabet, std::vector<int>(alphabet, 1)));
}

namespace {

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = (w[i] == w[i - d]);
    if (ok) return Word(w.begin(), w.begin() + static_cast<long>(d));
  }
  return w;
}

}  // namespace

SymbolSequence::SymbolSequence(Word left_period, Word core, long long core_start,
                               Word right_period)
    : left_(std::move(left_period)),
      core_(std::move(core)),
      right_(std::move(right_period)),
      core_start_(core_start) {
  if (left_.empty() || right_.empty())
    fail(ErrorCode::Internal, "sequence tails must be nonempty words");
  for (Symbol s : left_)
    if (s < 0) fail(ErrorCode::Internal, "negative symbol");
  for (Symbol s : right_)
    if (s < 0) fail(ErrorCode::Internal, "negative symbol");
  for (Symbol s : core_)
    if (s < 0) fail(ErrorCode::Internal, "negative symbol");
  normalize();
}

SymbolSequence SymbolSequence::periodic(const Word& w) {
  return SymbolSequence(w, {}, 0, w);
}

SymbolSequence SymbolSequence::constant(Symbol a) { return periodic({a}); }

// Canonical form.  Both tails are made primitive; then the maximal left- and
// right-periodic regimes of the represented sequence are computed, which pins
// the core (or the boundary position, for an empty core) uniquely:
//   s_L = sup { s : x is |L|-periodic on (-inf, s) }
//   s_R = inf { s : x is |R|-periodic on [s, inf) }
// Core = [s_L, s_R) when s_L < s_R; empty core anchored at s_L otherwise.
// Globally periodic sequences normalize to equal tails anchored at 0.
void SymbolSequence::normalize() {
  left_ = primitive_root(left_);
  right_ = primitive_root(right_);
  const long long p = static_cast<long long>(left_.size());
  const long long r = static_cast<long long>(right_.size());

  // First violation of p-periodicity: minimal m with x_m != x_{m+p}.
  // Pairs fully inside the left tail never violate; pairs fully inside the
  // right tail repeat with period r, so one window past the core suffices.
  std::optional<long long> first_viol;
  for (long long m = core_start_ - p; m <= core_end() + r; ++m) {
    if (at(m) != at(m + p)) {
      first_viol = m;
      break;
    }
  }
  if (!first_viol) {
    // Globally periodic; p is the primitive global period.
    Word w(static_cast<std::size_t>(p));
    for (long long j = 0; j < p; ++j) w[static_cast<std::size_t>(j)] = at(j);
    left_ = right_ = w;
    core_.clear();
    core_start_ = 0;
    return;
  }

  // Last violation of r-periodicity: maximal m with x_m != x_{m+r}.
  std::optional<long long> last_viol;
  for (long long m = core_end(); m >= core_start_ - r - p; --m) {
    if (at(m) != at(m + r)) {
      last_viol = m;
      break;
    }
  }
  if (!last_viol) {
    Word w(static_cast<std::size_t>(r));
    for (long long j = 0; j < r; ++j) w[static_cast<std::size_t>(j)] = at(j);
    left_ = right_ = w;
    core_.clear();
    core_start_ = 0;
    return;
  }

  const long long s_l = *first_viol + p;
  const long long s_r = *last_viol + 1;
  const long long new_start = s_l;
  const long long new_end = std::max(s_l - 1, s_r - 1);

  Word new_core(static_cast<std::size_t>(new_end - new_start + 1));
  for (long long n = new_start; n <= new_end; ++n)
    new_core[static_cast<std::size_t>(n - new_start)] = at(n);
  Word new_left(static_cast<std::size_t>(p));
  for (long long j = 0; j < p; ++j)
    new_left[static_cast<std::size_t>(j)] = at(new_start - p + j);
  Word new_right(static_cast<std::size_t>(r));
  for (long long j = 0; j < r; ++j)
    new_right[static_cast<std::size_t>(j)] = at(new_end + 1 + j);

  left_ = std::move(new_left);
  core_ = std::move(new_core);
  right_ = std::move(new_right);
  core_start_ = new_start;
}

std::string SymbolSequence::to_string() const {
  std::ostringstream os;
  os << "(" << word_to_string(left_) << ")* ";
  if (core_.empty()) {
    os << "@" << core_start_;
  } else {
    os << "[" << word_to_string(core_) << "]@" << core_start_;
  }
  os << " (" << word_to_string(right_) << ")*";
  return os.str();
}

double distance(const SymbolSequence& x, const SymbolSequence& y) {
  if (x == y) return 0.0;
  const long long core_reach =
      std::max(std::max(std::llabs(x.core_start()), std::llabs(x.core_end())),
               std::max(std::llabs(y.core_start()), std::llabs(y.core_end())));
  const long long bound = core_reach +
                          lcm_ll(static_cast<long long>(x.left_period().size()),
                                 static_cast<long long>(y.left_period().size())) +
                          lcm_ll(static_cast<long long>(x.right_period().size()),
                                 static_cast<long long>(y.right_period().size())) +
                          2;
  for (long long n = 0; n <= bound; ++n) {
    if (x.at(n) != y.at(n) || x.at(-n) != y.at(-n))
      return std::pow(2.0, -static_cast<double>(n));
  }
  fail(ErrorCode::Internal, "distinct canonical forms with no difference found");
}

SymbolSequence shift(const SymbolSequence& x, long long n) {
  return SymbolSequence(x.left_period(), x.core(), x.core_start() - n, x.right_period());
}

SymbolSequence bracket(const SymbolSequence& past, const SymbolSequence& future) {
  if (past.at(0) != future.at(0))
    fail(ErrorCode::BracketUndefined, "bracket requires matching zeroth coordinates");
  const long long lo = std::min<long long>(past.core_start(), 0);
  const long long hi = std::max<long long>(future.core_end(), 0);
  Word core(static_cast<std::size_t>(hi - lo + 1));
  for (long long n = lo; n <= hi; ++n)
    core[static_cast<std::size_t>(n - lo)] = (n <= 0) ? past.at(n) : future.at(n);
  const long long lp = static_cast<long long>(past.left_period().size());
  Word left(static_cast<std::size_t>(lp));
  for (long long j = 0; j < lp; ++j)
    left[static_cast<std::size_t>(j)] = past.at(lo - lp + j);
  const long long rp = static_cast<long long>(future.right_period().size());
  Word right(static_cast<std::size_t>(rp));
  for (long long j = 0; j < rp; ++j)
    right[static_cast<std::size_t>(j)] = future.at(hi + 1 + j);
  return SymbolSequence(left, core, lo, right);
}

bool is_admissible_word(const TransitionMatrix& q, const Word& w, bool cyclic) {
  for (Symbol s : w)
    if (s < 0 || s >= q.size()) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!q.edge(w[i], w[i + 1])) return false;
  if (cyclic && !w.empty() && !q.edge(w.back(), w.front())) return false;
  return true;
}

bool is_admissible(const TransitionMatrix& q, const SymbolSequence& x) {
  const long long lo =
      x.core_start() - static_cast<long long>(x.left_period().size()) - 1;
  const long long hi = x.core_end() + static_cast<long long>(x.right_period().size()) + 1;
  for (long long n = lo; n <= hi; ++n) {
    Symbol a = x.at(n), b = x.at(n + 1);
    if (a < 0 || a >= q.size() || b < 0 || b >= q.size() || !q.edge(a, b)) return false;
  }
  return true;
}

namespace {

// x and y agree on all n in the given ray; beyond the scanned window both
// are periodic, so a bounded scan decides.
bool agree_on_ray(const SymbolSequence& x, const SymbolSequence& y, long long from,
                  bool rightward) {
  if (rightward) {
    const long long top = std::max(x.core_end(), y.core_end()) +
                          lcm_ll(static_cast<long long>(x.right_period().size()),
                                 static_cast<long long>(y.right_period().size()));
    for (long long n = from; n <= std::max(from, top); ++n)
      if (x.at(n) != y.at(n)) return false;
    return true;
  }
  const long long bottom = std::min(x.core_start(), y.core_start()) -
                           lcm_ll(static_cast<long long>(x.left_period().size()),
                                  static_cast<long long>(y.left_period().size()));
  for (long long n = from; n >= std::min(from, bottom); --n)
    if (x.at(n) != y.at(n)) return false;
  return true;
}

}  // namespace

bool agree_right_of(const SymbolSequence& x, const SymbolSequence& y, long long from) {
  return agree_on_ray(x, y, from, true);
}

bool agree_left_of(const SymbolSequence& x, const SymbolSequence& y, long long upto) {
  return agree_on_ray(x, y, upto, false);
}

Word connecting_word(const TransitionMatrix& q, Symbol a, Symbol b) {
  if (a < 0 || a >= q.size() || b < 0 || b >= q.size())
    fail(ErrorCode::NonAdmissibleAlphabet, "symbol out of range");
  if (q.min_path(a, b) < 0)
    fail(ErrorCode::NotIrreducible,
         "no admissible path " + std::to_string(a) + " -> " + std::to_string(b));
  // BFS with parent tracking; path length q.min_path(a, b).
  std::vector<int> parent(q.size(), -2);
  std::deque<Symbol> queue;
  for (Symbol j = 0; j < q.size(); ++j)
    if (q.edge(a, j) && parent[j] == -2) {
      parent[j] = -1;  // reached directly from a
      queue.push_back(j);
    }
  if (parent[b] == -1 && q.edge(a, b)) return {};
  while (!queue.empty()) {
    Symbol v = queue.front();
    queue.pop_front();
    if (v == b) break;
    for (Symbol j = 0; j < q.size(); ++j)
      if (q.edge(v, j) && parent[j] == -2) {
        parent[j] = v;
        queue.push_back(j);
      }
  }
  Word rev;
  Symbol cur = b;
  while (parent[cur] != -1) {
    rev.push_back(parent[cur]);
    cur = parent[cur];
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

PeriodicOrbit::PeriodicOrbit(Word w) : word_(primitive_root(w)) {
  if (word_.empty()) fail(ErrorCode::Internal, "empty periodic word");
  Word best = word_;
  Word rot = word_;
  for (std::size_t i = 1; i < word_.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  word_ = best;
}

std::vector<PeriodicOrbit> enumerate_periodic(const TransitionMatrix& q, int max_period,
                                              std::size_t orbit_cap) {
  if (max_period < 1) fail(ErrorCode::Internal, "max_period must be >= 1");
  std::vector<PeriodicOrbit> out;
  Word w;
  // DFS over admissible words of the target length, keeping only canonical
  // (primitive, lexicographically minimal) representatives.
  for (int per = 1; per <= max_period; ++per) {
    w.assign(static_cast<std::size_t>(per), 0);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == per) {
        if (!q.edge(w[static_cast<std::size_t>(per - 1)], w[0])) return;
        PeriodicOrbit orbit(w);
        if (orbit.period() != per || orbit.word() != w) return;
        if (out.size() >= orbit_cap)
          fail(ErrorCode::BudgetExceeded,
               "periodic orbit count exceeds cap " + std::to_string(orbit_cap));
        out.push_back(std::move(orbit));
        return;
      }
      for (Symbol s = 0; s < q.size(); ++s) {
        if (pos > 0 && !q.edge(w[static_cast<std::size_t>(pos - 1)], s)) continue;
        w[static_cast<std::size_t>(pos)] = s;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cocyclelab
