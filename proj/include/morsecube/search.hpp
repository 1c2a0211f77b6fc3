// Symmetry-reduced enumeration of +-1 states: combinatorial automorphisms of
// the coloured polytope, canonical bitmask forms under the group combined
// with per-colour sign flips, the filtered state census, and the coset
// construction of 120-cell states from a 24-cell state.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morsecube/morse.hpp"
#include "morsecube/polytope.hpp"
#include "morsecube/quaternion.hpp"

namespace morsecube {

struct SymmetryGroup {
    // facet_perms[g][f] = image of facet f; colour_perms[g][c] = image colour.
    std::vector<std::vector<int>> facet_perms;
    std::vector<std::vector<int>> colour_perms;

    std::size_t order() const { return facet_perms.size(); }
};

// All facet permutations preserving adjacency, the face lattice, and the
// colour partition up to colour permutation. Backtracking with BFS facet
// order and degree/colour-class pruning.
SymmetryGroup automorphisms(const Polytope& p, const Colouring& col);

// Lexicographically minimal image of the state bitmask under the group
// action combined with per-colour sign flips.
std::uint64_t canonical_mask(std::uint64_t mask, const SymmetryGroup& g, const Colouring& col,
                             int facet_count);

// Number of distinct images under group x sign flips.
std::uint64_t orbit_size(std::uint64_t mask, const SymmetryGroup& g, const Colouring& col,
                         int facet_count);

enum class StateFilter { perfect, fibration, all_circles };

StateFilter parse_filter(const std::string& name);
std::string filter_name(StateFilter f);

struct StateClass {
    std::uint64_t canonical = 0;
    std::uint64_t orbit = 0;
    MorseStatus status = MorseStatus::inconclusive;
    int critical_points = -1;
    std::string outcomes;  // per-vertex ascending/descending letters, e.g. "cc|cc|..."
};

struct EnumerateOptions {
    int restarts = 32;
    std::uint64_t seed = 0;
    int threads = 1;
    // Cap on states surviving the ideal-criterion prefilter; -1 = unlimited.
    std::int64_t budget = -1;
};

struct CensusResult {
    std::vector<StateClass> classes;
    bool complete = true;
    std::uint64_t masks_scanned = 0;
    std::uint64_t prefilter_survivors = 0;
    std::uint64_t filter_survivors = 0;
    std::uint64_t group_order = 0;  // acting group: |Sym| * 2^colours
};

CensusResult enumerate_states(const Polytope& p, const Colouring& col, StateFilter filter,
                              const EnumerateOptions& opt = {});

// The 24-cell state invariant under left multiplication by i on each lateral
// class of Q8, +1 on one orbit and -1 on the other; facet indexing matches
// generate_quaternion_polytope(cell24).
RealState very_symmetric_state_24();

// State on the 120-cell assigning base(t) to facet q_m * t. The multipliers
// must form a left transversal of T*24 in I*120.
RealState coset_state_120(const std::vector<Quat>& multipliers, const RealState& base_on_t24);

struct CosetSearchResult {
    bool found = false;
    std::vector<int> multiplier_indices;  // into binary_icosahedral()
    std::uint64_t candidates_tried = 0;
    int critical_points = -1;
};

// Scans transversal choices (one multiplier per left coset, distinct
// restrictions only) for a state whose verdict is perfect; reports the first
// hit in lexicographic choice order together with its critical point count.
CosetSearchResult search_coset_states(const Polytope& p120, const Colouring& col120,
                                      const RealState& base_on_t24, int restarts = 32,
                                      std::uint64_t seed = 0, int threads = 1);

}  // namespace morsecube
