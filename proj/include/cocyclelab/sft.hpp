#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

using Symbol = int;
using Word = std::vector<Symbol>;

std::string word_to_string(const Word& w);

// 0/1 transition matrix over symbols 0..size-1, with the cached connectivity
// data min_path[i][j] = smallest m >= 1 with (Q^m)_{ij} > 0 (or -1 when j is
// unreachable from i).  Irreducible iff every entry is reachable.
class TransitionMatrix {
 public:
  int size() const { return size_; }
  bool edge(Symbol a, Symbol b) const { return q_[a][b] != 0; }
  // -1 when absent
  int min_path(Symbol a, Symbol b) const { return min_path_[a][b]; }
  int max_min_path() const;  // max over all pairs; requires irreducible
  bool irreducible() const { return irreducible_; }
  const std::vector<std::vector<int>>& entries() const { return q_; }

  bool operator==(const TransitionMatrix& o) const { return q_ == o.q_; }

  static TransitionMatrix full_shift(int alphabet);

  friend TransitionMatrix validate_sft(const std::vector<std::vector<int>>& entries);

 private:
  int size_ = 0;
  std::vector<std::vector<int>> q_;
  std::vector<std::vector<int>> min_path_;
  bool irreducible_ = false;
};

// Checks squareness and the no-stranded-symbol invariant (every row and
// every column has a 1), builds the connectivity cache, and records the
// irreducibility verdict.
TransitionMatrix validate_sft(const std::vector<std::vector<int>>& entries);

// An eventually periodic bi-infinite sequence
//
//   ... L L L | core | R R R ...
//
// with the left tail anchored so that positions [core_start-|L|, core_start)
// hold exactly L, and the right tail anchored at core_end+1.  Construction
// normalizes to a canonical form (primitive tails, minimal core, fixed
// boundary convention), so structural equality decides equality of the
// represented sequences.  Instances are immutable.
class SymbolSequence {
 public:
  SymbolSequence(Word left_period, Word core, long long core_start, Word right_period);

  // x_n = w[n mod |w|]
  static SymbolSequence periodic(const Word& w);
  static SymbolSequence constant(Symbol a);

  Symbol at(long long n) const {
    if (n < core_start_) {
      long long j = (n - core_start_) % static_cast<long long>(left_.size());
      if (j < 0) j += static_cast<long long>(left_.size());
      return left_[static_cast<std::size_t>(j)];
    }
    if (n > core_end()) {
      long long j = (n - core_end() - 1) % static_cast<long long>(right_.size());
      return right_[static_cast<std::size_t>(j)];
    }
    return core_[static_cast<std::size_t>(n - core_start_)];
  }

  const Word& left_period() const { return left_; }
  const Word& core() const { return core_; }
  const Word& right_period() const { return right_; }
  long long core_start() const { return core_start_; }
  long long core_end() const { return core_start_ + static_cast<long long>(core_.size()) - 1; }

  // Canonical form has empty core and equal tails exactly for globally
  // periodic sequences.
  bool globally_periodic() const { return core_.empty() && left_ == right_; }

  bool operator==(const SymbolSequence& o) const {
    return core_start_ == o.core_start_ && left_ == o.left_ && core_ == o.core_ &&
           right_ == o.right_;
  }
  bool operator!=(const SymbolSequence& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Word left_, core_, right_;
  long long core_start_ = 0;
  void normalize();
};

// d(x,y) = 2^{-N} with N = min{|n| >= 0 : x_n != y_n}; 0 iff equal.
double distance(const SymbolSequence& x, const SymbolSequence& y);

// Represents T^n x (left shift applied n times; negative n shifts right).
SymbolSequence shift(const SymbolSequence& x, long long n);

// The splice y with y_n = past_n for n <= 0 and y_n = future_n for n >= 0;
// requires past_0 == future_0.
SymbolSequence bracket(const SymbolSequence& past, const SymbolSequence& future);

// True iff every adjacent pair of x is allowed by q and all letters are in
// range.
bool is_admissible(const TransitionMatrix& q, const SymbolSequence& x);
bool is_admissible_word(const TransitionMatrix& q, const Word& w, bool cyclic);

// x_n == y_n for all n >= from / n <= upto (decidable on this class).
bool agree_right_of(const SymbolSequence& x, const SymbolSequence& y, long long from);
bool agree_left_of(const SymbolSequence& x, const SymbolSequence& y, long long upto);

// Shortest word c_1..c_{n1-1} with a -> c_1 -> ... -> c_{n1-1} -> b all
// admissible; empty when q has the direct edge.  Throws NotIrreducible when
// no path exists.
Word connecting_word(const TransitionMatrix& q, Symbol a, Symbol b);

// A periodic orbit, canonically represented by the lexicographically
// minimal rotation of its primitive word.
class PeriodicOrbit {
 public:
  explicit PeriodicOrbit(Word w);  // primitivizes and rotates to canonical
  const Word& word() const { return word_; }
  int period() const { return static_cast<int>(word_.size()); }
  SymbolSequence base_point() const { return SymbolSequence::periodic(word_); }
  bool operator==(const PeriodicOrbit& o) const { return word_ == o.word_; }
  bool operator<(const PeriodicOrbit& o) const {
    if (word_.size() != o.word_.size()) return word_.size() < o.word_.size();
    return word_ < o.word_;
  }

 private:
  Word word_;
};

// All distinct periodic orbits of least period <= max_period, each once, in
// (period, word) lexicographic order.  Throws BudgetExceeded past orbit_cap.
std::vector<PeriodicOrbit> enumerate_periodic(const TransitionMatrix& q, int max_period,
                                              std::size_t orbit_cap = 1u << 20);

}  // namespace cocyclelab
