// Combinatorial model of a right-angled polytope: explicit face lattice with
// finite/ideal vertex flags, facet adjacency, and a facet colouring.
//
// Conventions: facets are indexed 0..facet_count-1. Every face carries the
// sorted list of facets containing it; the polytope itself is the unique face
// with an empty list. Colours are 0-based in memory and 1-based in files.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morsecube/rational.hpp"

namespace morsecube {

struct Face {
    int dim = 0;
    bool ideal = false;            // meaningful only for dim 0
    std::vector<int> facets;       // sorted containing-facet indices
};

struct Polytope {
    int dim = 0;
    int facet_count = 0;
    std::vector<Face> faces;                     // canonical order: by (dim, facets)
    std::vector<std::vector<char>> adjacent;     // symmetric facet relation

    // Derived indexes, filled by finalize().
    std::vector<std::vector<int>> faces_by_dim;          // face ids per dimension
    std::map<std::vector<int>, int> face_by_set;         // faces with |facets| == codim
    std::vector<int> finite_vertex_ids;
    std::vector<int> ideal_vertex_ids;
    std::vector<std::vector<int>> vertices_of_face;      // ids of dim-0 faces on each face

    int codim(int face_id) const { return dim - faces[face_id].dim; }
    bool is_decomposition_face(int face_id) const {
        const Face& f = faces[face_id];
        return !(f.dim == 0 && f.ideal);
    }
    // Face with the given containing-facet set (only decomposition faces are
    // keyed this way). Returns -1 if absent.
    int face_with_set(const std::vector<int>& sorted_set) const;

    // Sorts faces canonically, rebuilds indexes and adjacency bookkeeping.
    // Must be called after faces are populated.
    void finalize();
};

struct Colouring {
    int colours = 0;
    std::vector<int> colour;                     // facet -> 0-based colour

    std::vector<std::vector<int>> classes() const;
    std::vector<std::uint64_t> class_masks(int facet_count) const;
};

// Throws std::runtime_error naming the offending face when an invariant
// fails: containing-set sizes, pairwise adjacency inside faces, gradedness
// (subset closure for decomposition faces), adjacency vs codim-2 faces, and
// the cube condition at ideal vertices.
void validate(const Polytope& p);

// Adjacent facets must take distinct colours and all colours must be used.
void validate_colouring(const Polytope& p, const Colouring& col);

// Sum over finite faces (including the polytope itself) of (-1)^dim / 2^codim.
Rational orbifold_euler(const Polytope& p);

// Facet adjacency recomputed from the codimension-2 faces.
std::vector<std::vector<char>> adjacency_from_faces(const Polytope& p);

struct LoadedPolytope {
    Polytope polytope;
    Colouring colouring;
};

// Text format:  dim n / facets k / colours c1..ck / face d : i1 i2 ... [ideal]
// Comments start with '#'. Facet faces and the polytope face may be omitted.
LoadedPolytope parse_polytope(std::istream& in);
LoadedPolytope parse_polytope_file(const std::string& path);
std::string write_polytope(const Polytope& p, const Colouring& col);

}  // namespace morsecube
