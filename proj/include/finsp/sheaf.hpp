#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finsp/snf.hpp"
#include "finsp/space.hpp"

namespace finsp {

// A graded line inside k(x): zero, a monomial span {x^d : d in an integer
// interval}, or a pole-confined subring R_T. These are the stalk shapes of
// quasi-coherent data in the rational universe, and they are closed under the
// operations the engine performs (sections, base change along inclusions).
struct Entry {
  enum class Kind { zero, mono, ring };
  Kind kind = Kind::zero;
  bool lo_unbounded = false, hi_unbounded = false;
  long lo = 0, hi = 0;  // mono; ignored ends when unbounded
  PoleSet ring_poles;   // ring

  static Entry zero_entry() { return Entry{}; }
  static Entry ring(PoleSet t) {
    Entry e;
    e.kind = Kind::ring;
    e.ring_poles = std::move(t);
    return e;
  }
  static Entry mono_interval(std::optional<long> lo, std::optional<long> hi) {
    Entry e;
    e.kind = Kind::mono;
    e.lo_unbounded = !lo.has_value();
    e.hi_unbounded = !hi.has_value();
    e.lo = lo.value_or(0);
    e.hi = hi.value_or(0);
    if (!e.lo_unbounded && !e.hi_unbounded && e.lo > e.hi) e = Entry{};
    return e;
  }
  friend bool operator==(const Entry& a, const Entry& b);
};

// Pattern content of an entry: its monomial degree interval, its polar towers
// at finite places other than (x), and whether it carries the towers of every
// undeclared place (the UNLISTED class, present exactly in k(x) stalks).
struct GradedProfile {
  bool empty = true;
  bool lo_unb = false, hi_unb = false;
  long lo = 0, hi = 0;
  std::set<int> towers;
  bool unlisted = false;

  bool contains_degree(long d) const {
    if (empty) return false;
    if (!lo_unb && d < lo) return false;
    if (!hi_unb && d > hi) return false;
    return true;
  }
  bool contains_tower(int place) const { return !empty && towers.count(place) > 0; }
  friend bool operator==(const GradedProfile& a, const GradedProfile& b);
  bool subset_of(const GradedProfile& o) const;
};

GradedProfile profile_of(const Entry& e, const PlaceList& pl);

// e as a module over R_T: does multiplication by R_T stay inside e?
bool entry_absorbs(const Entry& e, const PoleSet& T, const PlaceList& pl);

// e1 included in e2?
bool entry_included(const Entry& e1, const Entry& e2, const PlaceList& pl);

// Intersection of entries (sections over a component).
Entry entry_meet(const Entry& a, const Entry& b, const PlaceList& pl);

// e * R_T when the product stays a graded entry; throws unrepresentable_error
// when a shifted monomial span meets a finite place other than (x).
Entry entry_localize(const Entry& e, const PoleSet& T, const PlaceList& pl);

// Is the base change of e_p to the ring R_{Tq} equal to e_q? Exact: a
// non-graded product (shifted span times a tower) is never equal to a graded
// entry, so the comparison closes without materializing it.
bool entry_base_change_iso(const Entry& e_p, const PoleSet& Tq, const Entry& e_q,
                           const PlaceList& pl);
// Same comparison, surjectivity only (image == e_q).
bool entry_base_change_onto(const Entry& e_p, const PoleSet& Tq, const Entry& e_q,
                            const PlaceList& pl);
// Finite generation of e over R_T.
bool entry_finitely_generated(const Entry& e, const PoleSet& T, const PlaceList& pl);

std::string entry_to_string(const Entry& e, const PlaceList& pl);

// Sheaf of graded-line pieces on a rational-universe space. Each point
// carries an ordered list of pieces; each Hasse edge records, for every piece
// at the larger point, the piece at the smaller point it restricts from (-1
// for the zero map). Plain sheaves (structure sheaf, fractional-monomial
// twists) have one piece column; pushforwards may branch.
struct RationalSheaf {
  std::vector<std::vector<Entry>> pieces;
  std::map<std::pair<int, int>, std::vector<int>> edge_src;
  bool klinear = false;  // no O-module structure required (pattern images)

  std::size_t npieces(int p) const { return pieces[p].size(); }
};

struct AbelianSheaf {
  std::vector<FpModule> stalks;
  std::map<std::pair<int, int>, IntMat> edge_restriction;
};

struct SheafDescriptor {
  enum class Kind { structure, rational, abelian, pattern };
  Kind kind = Kind::structure;
  RationalSheaf rat;          // structure / rational
  AbelianSheaf ab;            // abelian
  std::vector<bool> pattern;  // pattern: up-set indicator

  static SheafDescriptor structure(const Space& X);
  static SheafDescriptor rational_sheaf(const Space& X, RationalSheaf s);
  static SheafDescriptor abelian(const Space& X, AbelianSheaf s);
  static SheafDescriptor pattern_sheaf(const Space& X, std::vector<bool> in_V);
  // one fractional-monomial line from per-point entries
  static SheafDescriptor frac_mono(const Space& X, const std::vector<Entry>& line);
};

// A pattern sheaf as a one-piece k-line sheaf, the form the chain-level
// engine consumes. Only the poset of X is used.
RationalSheaf pattern_pieces(const Space& X, const std::vector<bool>& in_V);

// Composed piece map along any p <= q; validated path-independent.
struct ResolvedPieces {
  // (p,q) -> for each piece at q, its source piece at p (or -1)
  std::map<std::pair<int, int>, std::vector<int>> rel;
  const std::vector<int>& at(int p, int q) const { return rel.at({p, q}); }
};
ResolvedPieces resolve_pieces(const Space& X, const RationalSheaf& s);

struct ResolvedRestrictions {
  std::map<std::pair<int, int>, IntMat> rel;  // p <= q -> composed matrix
  const IntMat& at(int p, int q) const { return rel.at({p, q}); }
};
ResolvedRestrictions resolve_restrictions(const Space& X, const AbelianSheaf& s);

// Structural validity of a descriptor on X (module absorption, inclusions
// along edges, consistent compositions). Throws input_error on violation.
void validate_sheaf(const Space& X, const SheafDescriptor& F);

enum class QcMode { quasi_coherent, finite_type };
struct QcVerdict {
  bool ok = true;
  std::string counterexample;  // first failing edge, empty when ok
};
QcVerdict is_quasi_coherent(const Space& X, const SheafDescriptor& F,
                            QcMode mode = QcMode::quasi_coherent, bool paranoid = false);

SheafDescriptor pullback(const Morphism& f, const SheafDescriptor& F);
SheafDescriptor pushforward(const Morphism& f, const SheafDescriptor& F);

// ~M for a global module datum over A = O(X)(X).
SheafDescriptor tilde(const Space& X, const Entry& M);
SheafDescriptor tilde(const Space& X, const FpModule& M);

bool sheaf_equal(const Space& X, const SheafDescriptor& A, const SheafDescriptor& B);

}  // namespace finsp
