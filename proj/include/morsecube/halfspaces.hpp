// Geometric kernel: face lattice of a compact Euclidean polytope given by
// halfspaces <x, normal_i> <= offset_i. Vertices on the unit sphere are
// flagged ideal (Klein-model image of an ideal hyperbolic vertex).
#pragma once

#include <Eigen/Dense>

#include "morsecube/polytope.hpp"

namespace morsecube {

struct HalfspaceOptions {
    double tolerance = 1e-9;  // vertex dedup and ideal detection
    // Comparisons landing within guard_factor * tolerance of a decision
    // boundary are a hard error instead of a silent guess.
    double guard_factor = 10.0;
};

// normals: one unit(ish) row per facet; offsets: same length.
// Vertices are found by solving n-by-n systems over facet subsets,
// deduplicated by coordinates; faces of dim >= 1 are reconstructed by
// intersecting the containing-facet sets of vertex pairs.
Polytope face_lattice_from_halfspaces(const Eigen::MatrixXd& normals,
                                      const Eigen::VectorXd& offsets,
                                      const HalfspaceOptions& opt = {});

}  // namespace morsecube
