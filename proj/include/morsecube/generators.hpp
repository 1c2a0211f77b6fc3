// Built-in polytopes: combinatorial hypercubes, the two quaternionic
// right-angled polytopes (ideal 24-cell, compact 120-cell), and the cusped
// 4-polytope with ten facets whose facets are right-angled bipyramids.
#pragma once

#include "morsecube/polytope.hpp"
#include "morsecube/quaternion.hpp"

namespace morsecube {

enum class QuaternionPolytope { cell24, cell120 };

// Combinatorial n-cube, 2 <= n <= 4, coloured by opposite-facet pairs
// (facets 2i, 2i+1 bound coordinate i and share colour i).
LoadedPolytope generate_hypercube(int n);

// Facets indexed by the elements of T*24 (resp. I*120) in the order returned
// by binary_tetrahedral()/binary_icosahedral(); adjacency from the maximal
// sub-unit dot product; colouring by the lateral classes of Q8 in T*24
// (resp. the left lateral classes of T*24 in I*120); face lattice from the
// halfspace kernel.
LoadedPolytope generate_quaternion_polytope(QuaternionPolytope kind);

// The ten-facet right-angled polytope with five finite and five ideal
// vertices. Facets are the 2-element subsets of {0..4} in lexicographic
// order; two facets are adjacent iff the subsets intersect; the colour of
// {a,b} is (a+b) mod 5. Finite vertex a lies in the four facets containing
// a; ideal vertex a lies in the six facets avoiding a.
LoadedPolytope generate_p4();

}  // namespace morsecube
