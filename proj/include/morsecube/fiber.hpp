// Singular-fiber triangulations: for each vertex of the dual cube complex at
// the chosen critical level, cone the polytope 2-faces separating facets of
// opposite status. Produces a closed pseudo-manifold gluing table exportable
// to 3-manifold software, plus its combinatorial invariants.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "morsecube/cubecomplex.hpp"
#include "morsecube/linalg.hpp"
#include "morsecube/polytope.hpp"

namespace morsecube {

struct SeparatingSurface {
    std::uint32_t vertex = 0;          // owner v in Z_2^c
    std::vector<int> triangles;        // polytope 2-face ids, sorted
    // polytope edge (dim-1 face id) -> the two incident separating triangles
    std::map<int, std::array<int, 2>> edge_triangles;
    int vertex_count = 0;
    int edge_count = 0;

    int triangle_count() const { return static_cast<int>(triangles.size()); }
    int euler() const { return vertex_count - edge_count + triangle_count(); }
};

SeparatingSurface separating_surface(const Polytope& p, const Colouring& col, const RealState& s,
                                     std::uint32_t v);

enum class CornerKind : std::uint8_t { apex = 0, ideal = 1, finite = 2 };

struct FiberTriangulation {
    struct Gluing {
        int neighbor = -1;
        std::array<std::uint8_t, 4> perm{0, 1, 2, 3};  // my corner -> their corner
    };
    // Provenance of built fibers; empty for imported gluing tables.
    struct TetInfo {
        std::uint32_t owner = 0;
        int triangle_face = -1;
        std::array<int, 3> base_vertices{-1, -1, -1};  // polytope vertex ids, sorted
    };

    int tet_count = 0;
    std::vector<std::array<Gluing, 4>> glue;            // glue[t][f], f = face opposite corner f
    std::vector<std::array<CornerKind, 4>> corner_kind;
    std::vector<TetInfo> info;                          // empty for imported tables

    // Derived by build_vertex_classes().
    std::vector<std::array<int, 4>> corner_class;
    int class_count = 0;
    std::vector<CornerKind> class_kind;
};

// Every face must be glued, the gluing must be an involution, and vertex
// classes must have a uniform corner kind. Fills the derived members.
void finalize_triangulation(FiberTriangulation& t);

// level is taken mod 1; +-1 states are interpreted via the primitive
// integral class they define (values scaled by 1/2).
FiberTriangulation build_fiber(const Polytope& p, const Colouring& col, const RealState& s,
                               const Rational& level);

struct FiberReport {
    int tets = 0;
    int components = 0;
    bool orientable = false;
    std::map<int, int> valence_histogram;  // edge valence -> count
    int vertex_classes = 0;
    int apex_classes = 0;
    int ideal_classes = 0;
    std::vector<int> link_euler;           // per class, in class order
    bool all_links_tori = false;
    int h1_rank = 0;
    std::vector<std::int64_t> h1_torsion;  // invariant factors > 1
    std::string h1;                        // e.g. "Z^28"

    bool same_profile(const FiberReport& o) const;
};

FiberReport fiber_report(const FiberTriangulation& t);

void export_triangulation(const FiberTriangulation& t, const std::string& path);
std::string write_triangulation(const FiberTriangulation& t);
FiberTriangulation parse_triangulation(std::istream& in);
FiberTriangulation import_triangulation(const std::string& path);

// Combinatorial isomorphism of gluing tables (corner kinds included).
bool isomorphic(const FiberTriangulation& a, const FiberTriangulation& b);

}  // namespace morsecube
