#include "cocyclelab/cocycle.hpp"

#include <cmath>

#include "builtin_hook.hpp"

namespace cocyclelab {

const char* const kBuiltinDiagRotationName = "diag-rotation-s4";

std::vector<Word> admissible_words(const TransitionMatrix& q, int length) {
  std::vector<Word> out;
  Word w;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == length) {
      out.push_back(w);
      return;
    }
    for (Symbol s = 0; s < q.size(); ++s) {
      if (pos > 0 && !q.edge(w.back(), s)) continue;
      w.push_back(s);
      self(self, pos + 1);
      w.pop_back();
    }
  };
  if (length <= 0) return {Word{}};
  rec(rec, 0);
  return out;
}

CocycleSpec CocycleSpec::locally_constant(TransitionMatrix base, int window_lo,
                                          int window_hi, std::map<Word, Mat2> table,
                                          double alpha) {
  if (window_lo > 0 || window_hi < 0)
    fail(ErrorCode::InvalidSpec, "window must contain coordinate 0");
  if (!(alpha > 0) || alpha > 1) fail(ErrorCode::InvalidSpec, "alpha must be in (0, 1]");
  const int width = window_hi - window_lo + 1;
  auto expected = admissible_words(base, width);
  if (expected.size() != table.size())
    fail(ErrorCode::InvalidSpec, "table must cover exactly the admissible window words (expected " +
                                     std::to_string(expected.size()) + ", got " +
                                     std::to_string(table.size()) + ")");
  for (const auto& w : expected) {
    auto it = table.find(w);
    if (it == table.end())
      fail(ErrorCode::InvalidSpec, "table is missing word " + word_to_string(w));
    if (!is_sl2(it->second))
      fail(ErrorCode::NotSL2, "table entry for word " + word_to_string(w) +
                                  " has determinant " + format_g17(it->second.det));
  }
  LocallyConstantTable t{window_lo, window_hi, std::move(table)};
  return CocycleSpec(std::move(base), alpha, std::move(t));
}

CocycleSpec CocycleSpec::one_step(TransitionMatrix base, std::vector<Mat2> per_symbol,
                                  double alpha) {
  if (static_cast<int>(per_symbol.size()) != base.size())
    fail(ErrorCode::InvalidSpec, "one matrix per symbol required");
  std::map<Word, Mat2> table;
  for (Symbol s = 0; s < base.size(); ++s) table[{s}] = per_symbol[static_cast<std::size_t>(s)];
  return locally_constant(std::move(base), 0, 0, std::move(table), alpha);
}

CocycleSpec CocycleSpec::builtin(TransitionMatrix base, const std::string& name,
                                 std::optional<int> k0_override) {
  std::string canonical = name;
  if (canonical == "diag-rotation-§4") canonical = kBuiltinDiagRotationName;
  if (canonical != kBuiltinDiagRotationName)
    fail(ErrorCode::InvalidSpec, "unknown builtin cocycle '" + name + "'");
  if (base.size() != 2)
    fail(ErrorCode::InvalidSpec, "the diag-rotation builtin lives over the binary full shift");
  BuiltinRef ref;
  ref.name = canonical;
  ref.k0 = k0_override.value_or(0);  // 0 means: use the computed cutoff
  // The builtin is exactly 1/8-Hoelder; its declared exponent is fixed.
  return CocycleSpec(std::move(base), 0.125, std::move(ref));
}

Mat2 evaluate_at(const CocycleSpec& spec, const SymbolSequence& x, long long pos) {
  if (spec.is_builtin()) return detail::builtin_evaluate_at(spec.builtin_ref(), x, pos);
  const auto& t = spec.table();
  Word w(static_cast<std::size_t>(t.window_hi - t.window_lo + 1));
  for (int j = 0; j < static_cast<int>(w.size()); ++j)
    w[static_cast<std::size_t>(j)] = x.at(pos + t.window_lo + j);
  auto it = t.entries.find(w);
  if (it == t.entries.end())
    fail(ErrorCode::WordNotInTable,
         "word " + word_to_string(w) + " not in cocycle table (inconsistent base?)");
  return it->second;
}

double ProductResult::log_norm() const { return log_scale + std::log(operator_norm(matrix)); }

Mat2 ProductResult::recombined() const {
  if (std::fabs(log_scale) > 690)
    fail(ErrorCode::Internal, "recombined product exceeds double range; use log_norm");
  return matrix.scaled(std::exp(log_scale));
}

ProductResult product(const CocycleSpec& spec, const SymbolSequence& x, long long n) {
  ProductResult r;
  r.steps = n;
  Mat2 acc = Mat2::identity();
  double log_scale = 0;
  if (n >= 0) {
    for (long long k = 0; k < n; ++k) {
      acc = evaluate_at(spec, x, k) * acc;
      const double s = operator_norm(acc);
      acc = acc.scaled(1.0 / s);
      log_scale += std::log(s);
    }
  } else {
    // A^{-n}(x) = A(T^{-n}x)^{-1} ... A(T^{-1}x)^{-1}: new factors prepend.
    for (long long k = 1; k <= -n; ++k) {
      acc = evaluate_at(spec, x, -k).inverse() * acc;
      const double s = operator_norm(acc);
      acc = acc.scaled(1.0 / s);
      log_scale += std::log(s);
    }
  }
  r.matrix = acc;
  r.log_scale = log_scale;
  return r;
}

BunchingReport bunching_check(const CocycleSpec& spec) {
  BunchingReport rep;
  rep.alpha = spec.alpha();
  double sup_norm = 0;
  if (spec.is_builtin()) {
    // |A(x)| = |diag(2,1/2) R_theta| = 2 for every x.
    sup_norm = 2.0;
  } else {
    for (const auto& [w, m] : spec.table().entries)
      sup_norm = std::max(sup_norm, operator_norm(m));
  }
  rep.margin = sup_norm * sup_norm * std::pow(2.0, -spec.alpha());
  rep.bunched = rep.margin < 1.0;
  return rep;
}

HolderReport holder_estimate(const CocycleSpec& spec) {
  HolderReport rep;
  rep.alpha = spec.alpha();
  if (spec.is_builtin()) {
    // theta varies like d(x,q)^{1/8} near the homoclinic point with constant 1
    // and jumps by at most pi/2 - 2^{-(k0+1)/8} across the rotation cutoff at
    // distance 2^{-k0-1}; |D| = 2 multiplies either bound.
    const int k0 = detail::builtin_effective_k0(spec.builtin_ref());
    const double at_cutoff =
        (kPi / 2 - std::pow(2.0, -(k0 + 1) / 8.0)) * std::pow(2.0, (k0 + 1) / 8.0);
    rep.constant = 2.0 * std::max(1.0, at_cutoff);
    return rep;
  }
  const auto& t = spec.table();
  double best = 0;
  for (auto it = t.entries.begin(); it != t.entries.end(); ++it) {
    for (auto jt = std::next(it); jt != t.entries.end(); ++jt) {
      // Minimal |coordinate| where the two window words differ.
      int min_abs = -1;
      for (int j = 0; j < static_cast<int>(it->first.size()); ++j) {
        if (it->first[static_cast<std::size_t>(j)] != jt->first[static_cast<std::size_t>(j)]) {
          const int coord = std::abs(t.window_lo + j);
          if (min_abs < 0 || coord < min_abs) min_abs = coord;
        }
      }
      if (min_abs < 0) continue;
      const double diff = operator_norm(it->second - jt->second);
      best = std::max(best, diff * std::pow(2.0, spec.alpha() * min_abs));
    }
  }
  rep.constant = best;
  return rep;
}

}  // namespace cocyclelab
