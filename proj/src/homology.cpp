#include "finsp/homology.hpp"

#include <stdexcept>

namespace finsp {

void validate_z_complex(const ZComplex& c) {
  if (c.terms.empty()) return;
  if (c.d.size() + 1 != c.terms.size()) throw std::logic_error("z-complex: differential count");
  for (std::size_t i = 0; i < c.d.size(); ++i) {
    if (c.d[i].cols() != c.terms[i].gens || c.d[i].rows() != c.terms[i + 1].gens)
      throw std::logic_error("z-complex: differential shape");
    if (c.terms[i].rels.cols() > 0) {
      IntMat dr = mul(c.d[i], c.terms[i].rels);
      for (std::size_t j = 0; j < dr.cols(); ++j)
        if (!in_column_span(c.terms[i + 1].rels, column(dr, j)))
          throw input_error("z-complex: differential does not respect presentations");
    }
  }
  for (std::size_t i = 0; i + 1 < c.d.size(); ++i) {
    IntMat dd = mul(c.d[i + 1], c.d[i]);
    for (std::size_t j = 0; j < dd.cols(); ++j)
      if (!in_column_span(c.terms[i + 2].rels, column(dd, j)))
        throw input_error("z-complex: d o d != 0");
  }
}

ZCohomologyAt z_cohomology_at(const ZComplex& c, std::size_t i) {
  const std::size_t g = c.terms[i].gens;
  IntMat cycles;
  if (i < c.d.size()) {
    cycles = preimage_lattice(c.d[i], c.terms[i + 1].rels);
  } else {
    cycles = IntMat::identity(g, Int(1));
  }
  IntMat boundaries =
      i > 0 ? hstack(c.d[i - 1], c.terms[i].rels) : c.terms[i].rels;
  // boundaries lie inside the cycle lattice for a valid complex
  for (std::size_t j = 0; j < boundaries.cols(); ++j)
    if (!in_column_span(cycles, column(boundaries, j)))
      throw std::logic_error("z-complex: boundary not a cycle");
  IntMat rels = preimage_lattice(cycles, boundaries);
  return ZCohomologyAt{cycles, FpModule{cycles.cols(), rels}};
}

std::vector<AbelianInvariants> z_complex_homology(const ZComplex& c) {
  validate_z_complex(c);
  std::vector<AbelianInvariants> out;
  out.reserve(c.terms.size());
  for (std::size_t i = 0; i < c.terms.size(); ++i)
    out.push_back(module_invariants(z_cohomology_at(c, i).H));
  return out;
}

bool z_cohomology_map_iso(const ZComplex& A, const ZComplex& B, const std::vector<IntMat>& phi,
                          std::size_t i) {
  ZCohomologyAt a = z_cohomology_at(A, i);
  ZCohomologyAt b = z_cohomology_at(B, i);
  IntMat mapped = mul(phi[i], a.cycle_gens);
  IntMat X(b.cycle_gens.cols(), mapped.cols());
  for (std::size_t j = 0; j < mapped.cols(); ++j) {
    auto sol = integer_solve(b.cycle_gens, column(mapped, j));
    if (!sol) throw std::logic_error("chain map does not send cycles to cycles");
    for (std::size_t k = 0; k < X.rows(); ++k) X(k, j) = (*sol)[k];
  }
  return fp_iso(X, a.H, b.H);
}

ZComplex free_z_complex(const std::vector<std::size_t>& dims, const std::vector<IntMat>& d) {
  ZComplex c;
  for (std::size_t n : dims) c.terms.push_back(FpModule::free_module(n));
  c.d = d;
  return c;
}

std::vector<AbelianInvariants> complex_homology_z(const std::vector<IntMat>& d) {
  if (d.empty()) throw std::logic_error("complex_homology_z: need at least one differential");
  std::vector<std::size_t> dims;
  dims.push_back(d[0].cols());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i > 0 && d[i].cols() != d[i - 1].rows())
      throw input_error("complex: differential shapes do not chain");
    dims.push_back(d[i].rows());
  }
  return z_complex_homology(free_z_complex(dims, d));
}

}  // namespace finsp
