#pragma once

#include <set>
#include <string>
#include <vector>

#include "prepro/graph.hpp"

namespace prepro {

enum class DynKind { FiniteADET, Affine, Other };
enum class Family { A, D, E, T };

inline char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::D: return 'D';
    case Family::E: return 'E';
    case Family::T: return 'T';
  }
  return '?';
}

struct DynkinClass {
  DynKind kind = DynKind::Other;
  Family family = Family::A;  // FiniteADET and Affine only
  int rank = 0;               // FiniteADET: #vertices; Affine: #vertices - 1
  int coxeter_h = 0;          // FiniteADET only
  std::vector<int> involution_p;  // FiniteADET only: permutation of vertex indices

  std::string label() const;
};

// FiniteADET iff 2*Id - A is positive definite; decided exactly over the
// rationals by Sylvester's leading-principal-minor criterion, never by
// floating eigenvalues. Affine families are matched by shape (this includes
// the one-vertex-one-loop graph in double mode, the Jordan quiver, as
// affine A of rank 0).
DynkinClass classify(const Graph& g, Mode mode);

// {} for A; {2} for D; {2,3} for E6, E7; {2,3,5} for E8; affine inherits from
// the non-extended diagram. T or Other -> DomainError.
std::set<int> bad_primes(const DynkinClass& c);

// The involution of Hilbert-series branch (b): the unique nontrivial diagram
// involution for A_n, D_{2n+1}, E6; the identity for D_{2n}, T_n, E7, E8.
std::vector<int> involution_p(const Graph& g, Mode mode);

// Vertices of an affine ADE graph whose deletion leaves a connected finite
// ADE graph. Decided by the deletion test itself.
std::vector<int> extending_vertices(const Graph& g, Mode mode);

struct FrobeniusPerron {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;  // positive, max entry 1
  int iterations = 0;
};

// Power iteration on A + Id (primitive for connected carriers) with Rayleigh
// quotient; residual tolerance 1e-12, at most 1e5 iterations. The only
// floating-point computation in the project.
FrobeniusPerron frobenius_perron(const Mat<Rat>& adjacency);

bool is_positive_definite_2i_minus(const Mat<Rat>& adjacency);

}  // namespace prepro
