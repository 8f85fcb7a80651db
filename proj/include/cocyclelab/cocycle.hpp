#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "cocyclelab/mat2.hpp"
#include "cocyclelab/sft.hpp"

namespace cocyclelab {

// A(x) reads the coordinate window [window_lo, window_hi] (containing 0);
// the table covers exactly the admissible words of that length.
struct LocallyConstantTable {
  int window_lo = 0;
  int window_hi = 0;
  std::map<Word, Mat2> entries;
};

// Named built-in cocycle; evaluation is provided by the gallery module.
struct BuiltinRef {
  std::string name;
  int k0 = 0;  // rotation cutoff used by the diag-rotation built-in
};

class CocycleSpec {
 public:
  static CocycleSpec locally_constant(TransitionMatrix base, int window_lo, int window_hi,
                                      std::map<Word, Mat2> table, double alpha);
  // One-step table as a convenience: symbol s -> matrix.
  static CocycleSpec one_step(TransitionMatrix base, std::vector<Mat2> per_symbol,
                              double alpha);
  static CocycleSpec builtin(TransitionMatrix base, const std::string& name,
                             std::optional<int> k0_override = std::nullopt);

  const TransitionMatrix& base() const { return base_; }
  double alpha() const { return alpha_; }
  bool is_locally_constant() const {
    return std::holds_alternative<LocallyConstantTable>(kind_);
  }
  bool is_builtin() const { return std::holds_alternative<BuiltinRef>(kind_); }
  const LocallyConstantTable& table() const { return std::get<LocallyConstantTable>(kind_); }
  const BuiltinRef& builtin_ref() const { return std::get<BuiltinRef>(kind_); }
  bool is_one_step() const {
    return is_locally_constant() && table().window_lo == 0 && table().window_hi == 0;
  }

 private:
  CocycleSpec(TransitionMatrix base, double alpha,
              std::variant<LocallyConstantTable, BuiltinRef> kind)
      : base_(std::move(base)), alpha_(alpha), kind_(std::move(kind)) {}
  TransitionMatrix base_;
  double alpha_;
  std::variant<LocallyConstantTable, BuiltinRef> kind_;
};

// A(T^pos x); the locally-constant case reads x on [pos+window_lo, pos+window_hi].
Mat2 evaluate_at(const CocycleSpec& spec, const SymbolSequence& x, long long pos);
inline Mat2 evaluate(const CocycleSpec& spec, const SymbolSequence& x) {
  return evaluate_at(spec, x, 0);
}

// A renormalized n-step product: the true product equals e^{log_scale} * matrix,
// with |matrix| kept at operator norm 1.
struct ProductResult {
  Mat2 matrix;
  double log_scale = 0;
  long long steps = 0;  // signed: negative steps mean the inverse-product A^{-|n|}
  double log_norm() const;  // log |A^n(x)|
  Mat2 recombined() const;  // throws on scales beyond double range
};

// A^n(x) for n >= 0, A^{-|n|}(x) for n < 0.
ProductResult product(const CocycleSpec& spec, const SymbolSequence& x, long long n);

struct BunchingReport {
  double margin = 0;  // sup_x |A(x)|^2 * 2^{-alpha}
  bool bunched = false;
  double alpha = 0;
};
BunchingReport bunching_check(const CocycleSpec& spec);

struct HolderReport {
  double alpha = 0;
  double constant = 0;  // Hoelder constant estimate for the declared alpha
};
HolderReport holder_estimate(const CocycleSpec& spec);

// Admissible words of the given length (DFS in lexicographic order).
std::vector<Word> admissible_words(const TransitionMatrix& q, int length);

extern const char* const kBuiltinDiagRotationName;

}  // namespace cocyclelab
