// Dual cube complex of the manifold obtained from a coloured right-angled
// polytope: cell census, integer boundary maps, Betti numbers, cusps, and the
// cocycle induced by a facet state (periods, levels, cusp restrictions).
//
// A k-cube is dual to a codimension-k decomposition face F and carries an
// orbit representative rep in Z_2^c with zero bits at the colours of F's
// containing facets. Vertices of the complex are identified with Z_2^c.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "morsecube/linalg.hpp"
#include "morsecube/polytope.hpp"
#include "morsecube/rational.hpp"

namespace morsecube {

// A facet state: one rational value per facet.
struct RealState {
    std::vector<Rational> value;

    bool nowhere_vanishing() const {
        for (const auto& v : value)
            if (v.is_zero()) return false;
        return true;
    }
    bool plus_minus_one() const {
        for (const auto& v : value)
            if (v != Rational(1) && v != Rational(-1)) return false;
        return true;
    }
};

// Bitmask form for +-1 states: bit f set  <=>  s(facet f) = +1.
RealState state_from_mask(std::uint64_t mask, int facet_count);
std::uint64_t mask_from_state(const RealState& s);  // requires +-1 state

// State file: lines "facet_index value" with rational values, or a single
// line "bits 0b...".
RealState parse_state(std::istream& in, int facet_count);
RealState parse_state_file(const std::string& path, int facet_count);
std::string write_state(const RealState& s);

struct CubeCell {
    int face = -1;           // polytope face id
    std::uint32_t rep = 0;   // orbit representative
};

struct CubeComplex {
    Polytope poly;
    Colouring col;
    int n = 0;  // polytope dimension
    int c = 0;  // colour count

    std::vector<std::vector<CubeCell>> cells;       // cells[k]
    // boundary[k][i] = signed entries of d_k applied to cell i (k >= 1)
    std::vector<std::vector<std::vector<std::pair<int, int>>>> boundary;

    // Edge bookkeeping: edge (facet F, rep w) joins w and w + e_colour(F),
    // oriented from the 0 side to the 1 side.
    int edge_facet(int edge_cell) const;
    std::uint32_t edge_tail(int edge_cell) const;

    SparseIntMat boundary_matrix(int k) const;       // d_k: cells[k] -> cells[k-1]
    std::int64_t alternating_cell_sum() const;
    int cell_index(int k, int face, std::uint32_t rep) const;

    // Cached spanning tree of the 1-skeleton (root 0) and fundamental-cycle
    // descriptions used for period evaluation.
    struct Skeleton {
        std::vector<int> tree_edge;            // per vertex: edge cell reaching it (-1 at root)
        std::vector<int> tree_sign;            // +1 if vertex is the head of that edge
        std::vector<int> nontree_edges;        // edge cell ids
    };
    Skeleton skeleton;
};

CubeComplex build_cube_complex(const Polytope& p, const Colouring& col,
                               std::int64_t cell_budget = 100000000);

// Ranks of rational homology, modular with exact fallback.
std::vector<int> betti_numbers(const CubeComplex& cx, int threads = 1);

struct CuspCensus {
    int cusps = 0;
    // Per ideal vertex (in polytope face order): number of cusp components.
    std::vector<int> per_ideal_vertex;
    // Component id for every (ideal vertex index, v in Z_2^c).
    std::vector<std::vector<int>> component;
    std::vector<int> ideal_vertex_face;  // face ids, aligned with the above
};

CuspCensus cusp_census(const Polytope& p, const Colouring& col);

struct PeriodReport {
    std::vector<Rational> periods;           // one per fundamental cycle
    bool integral = false;
    std::vector<Rational> levels;            // vertex -> value mod 1 (integral classes only)
};

PeriodReport periods_and_levels(const CubeComplex& cx, const RealState& s);

// Restriction of the class to one cusp: trivial iff every 1-cycle supported
// on the cusp's sub-complex has vanishing period.
bool cusp_restriction_trivial(const CubeComplex& cx, const RealState& s, int cusp_id);

}  // namespace morsecube
