#pragma once

#include <cstdint>

#include "cocyclelab/cocycle.hpp"

namespace cocyclelab {

enum class UHStatus { Certified, Falsified, Inconclusive };

// Per-context invariant cone family with uniform expansion data; contexts
// are the symbols of the (possibly one-step-recoded) base.
struct ConeCertificate {
  std::vector<ProjectiveArc> forward;   // unstable cones, indexed by symbol
  std::vector<ProjectiveArc> backward;  // stable cones
  double c = 0;                         // norm growth constants of |A^n(x)| >= c e^{tau n}
  double tau = 0;
  double margin = 0;        // inclusion margin the checks were run at
  double gamma = 0;         // uniform per-step growth rate over word_length
  int word_length = 0;      // exhaustively checked block length
  bool recoded = false;     // true when a wider window was recoded to one-step
  std::vector<Word> context_words;  // recoded contexts, original-window words
};

struct GrowthWitness {
  SymbolSequence point;
  long long steps = 0;
  double log_norm = 0;  // log |A^n(x)| at the witness horizon
  GrowthWitness() : point(SymbolSequence::constant(0)) {}
};

struct UHVerdict {
  UHStatus status = UHStatus::Inconclusive;
  std::optional<ConeCertificate> certificate;
  std::optional<GrowthWitness> witness;
  long long search_horizon = 0;
  double tau_probe = 0;
};

struct ProbeOptions {
  int max_period = 6;  // periodic points up to this period are always probed
  std::vector<SymbolSequence> extra_points;
  long long n_max = 64;
  double tau_probe = 0.05;
};

// Prop-style falsifier: scans |A^n(x)| over the sample set and reports a
// witness whenever |A^n(x)| <= e^{tau_probe n}/2 ("c <= 1/2 fails").  The
// probe can falsify but never certify: absent a witness it is inconclusive.
UHVerdict norm_growth_probe(const CocycleSpec& spec, const ProbeOptions& opts);

struct CertifyOptions {
  int refine_steps = 96;
  double margin = 1e-6;           // strict-inclusion margin
  int max_word_length = 12;       // exhaustive growth-check block cap
  double growth_threshold = 1e-6; // require gamma >= 1 + threshold
};

// Invariant-cone certifier for locally constant cocycles (wider windows are
// recoded to one-step first).  Sound but incomplete: Inconclusive is a
// legitimate terminal state.  Throws NotOneStep for built-ins.
UHVerdict cone_certify(const CocycleSpec& spec, const CertifyOptions& opts = {});

// Replays every inclusion and growth check stored in a certificate.
bool revalidate(const CocycleSpec& spec, const ConeCertificate& cert);

// Higher-block recoding: a locally constant spec over window [w_lo, w_hi]
// becomes one-step over the alphabet of admissible window words.
CocycleSpec recode_one_step(const CocycleSpec& spec, std::vector<Word>* context_words = nullptr);

struct DirectionPair {
  double stable_dir = 0;    // approximate E^s direction (mod pi)
  double unstable_dir = 0;  // approximate E^u direction (mod pi)
  double forward_gap = 0;   // sigma1/sigma2 of A^n(x)
  double backward_gap = 0;  // sigma1/sigma2 of A^{-n}(x)
};

// E^s from the most-contracted right-singular direction of A^n(x); E^u from
// the most-contracted right-singular direction of A^{-n}(x).  Throws
// DegenerateSingularGap below a 1 + 1e-6 singular-value ratio.
DirectionPair extract_directions(const CocycleSpec& spec, const SymbolSequence& x,
                                 long long n);

}  // namespace cocyclelab
