#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "finsp/matrix.hpp"

namespace finsp {

// Smith normal form with unimodular certificates: U * M * V = D, D diagonal
// with d_1 | d_2 | ... | d_r, d_i > 0.
struct SmithResult {
  IntMat U, V, D;
  std::vector<Int> invariants;  // nonzero diagonal entries
  std::size_t rank = 0;
};

SmithResult smith_normal_form(const IntMat& M);

std::size_t integer_rank(const IntMat& M);

// Fraction-free determinant (Bareiss); square matrices only.
Int determinant(const IntMat& M);

// Basis of the kernel lattice {x : Mx = 0}, as columns.
IntMat integer_kernel(const IntMat& M);

// One integral solution of Mx = b, if any.
std::optional<std::vector<Int>> integer_solve(const IntMat& M, const std::vector<Int>& b);

// Is b in the column span (over Z) of M?
bool in_column_span(const IntMat& M, const std::vector<Int>& b);

// Finitely presented Z-module Z^gens / colspan(rels).
struct FpModule {
  std::size_t gens = 0;
  IntMat rels;  // gens x r; r may be 0

  static FpModule free_module(std::size_t n) { return FpModule{n, IntMat(n, 0)}; }
};

// Isomorphism class of a f.g. abelian group.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, each dividing the next

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const AbelianInvariants& a, const AbelianInvariants& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

AbelianInvariants module_invariants(const FpModule& m);

// Generators of the full preimage lattice {v : Av in colspan(R)}.
IntMat preimage_lattice(const IntMat& A, const IntMat& R);

// A morphism M -> N of f.p. modules given by a matrix on generators
// (N.gens x M.gens). All checks are exact.
bool fp_well_defined(const IntMat& A, const FpModule& M, const FpModule& N);
bool fp_surjective(const IntMat& A, const FpModule& M, const FpModule& N);
bool fp_injective(const IntMat& A, const FpModule& M, const FpModule& N);
bool fp_iso(const IntMat& A, const FpModule& M, const FpModule& N);

}  // namespace finsp
