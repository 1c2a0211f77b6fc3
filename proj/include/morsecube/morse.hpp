// Ascending/descending link analysis: vertex links of the dual cube complex,
// I/O statuses induced by a facet state, greedy elementary collapsing with
// replayable certificates, the ideal-vertex criterion, and the combined
// verification verdict.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morsecube/cubecomplex.hpp"
#include "morsecube/polytope.hpp"

namespace morsecube {

// Simplicial complex on facet labels; simplices are sorted vertex sets,
// closed under taking subsets.
struct LinkComplex {
    int label_count = 0;                       // facet indices are the labels
    std::vector<std::vector<int>> simplices;   // sorted sets, deduplicated

    int count_of_dim(int d) const;
    std::int64_t euler() const;
    std::vector<int> present_labels() const;
};

// Link of any interior vertex of the dual cube complex: simplices are the
// containing-facet sets of the decomposition faces (one hole per ideal
// vertex of the polytope).
LinkComplex dual_link(const Polytope& p);

// status[f] = true means O (edge points away from v), false means I.
std::vector<char> statuses(const Colouring& col, const RealState& s, std::uint32_t v);

// Full subcomplexes on the O-labels and I-labels at v.
std::pair<LinkComplex, LinkComplex> directed_links(const LinkComplex& link, const Colouring& col,
                                                   const RealState& s, std::uint32_t v);

LinkComplex full_subcomplex(const LinkComplex& link, const std::vector<char>& keep);

enum class CollapseOutcome { point, circle, connected_1_complex, inconclusive };

std::string outcome_name(CollapseOutcome o);

struct CollapsePair {
    std::vector<int> free_face;
    std::vector<int> coface;
};

struct ResidualSummary {
    bool empty = false;
    int top_dim = -1;
    std::vector<int> count_by_dim;
    bool connected = false;
    std::vector<int> degree_profile;  // sorted degrees of residual vertices
};

struct CollapseCertificate {
    CollapseOutcome outcome = CollapseOutcome::inconclusive;
    std::vector<CollapsePair> pairs;
    ResidualSummary residual;
    int restarts_used = 0;
    std::uint64_t seed = 0;
};

CollapseCertificate collapse(const LinkComplex& cxl, int restarts, std::uint64_t seed);

// Replays the recorded pairs from the input complex, checking each removed
// face is free at its turn and the residual matches.
bool replay_certificate(const LinkComplex& cxl, const CollapseCertificate& cert);

// Connectivity of the 1-skeleton restricted to the simplices present.
bool is_connected(const LinkComplex& cxl);

// Exact rank of H_1 of the complex (homotopy invariant; rational ranks).
int h1_rank(const LinkComplex& cxl);

// Reusable analyzer for many directed-link queries against one base link:
// precomputes the face/coface structure once, then answers emptiness,
// connectivity, Euler characteristic, and collapse outcomes for full
// subcomplexes given as label subsets. Not thread-safe; use one per thread.
class DirectedLinkEngine {
public:
    explicit DirectedLinkEngine(const LinkComplex& link);
    ~DirectedLinkEngine();
    DirectedLinkEngine(DirectedLinkEngine&&) noexcept;

    bool subcomplex_empty(const std::vector<char>& subset) const;
    bool subcomplex_connected(const std::vector<char>& subset) const;
    std::int64_t subcomplex_euler(const std::vector<char>& subset) const;
    CollapseOutcome collapse_outcome(const std::vector<char>& subset, int restarts,
                                     std::uint64_t seed);
    int label_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct IdealCriterionReport {
    bool pass = true;
    // Per ideal vertex (polytope face order): a same-colour pair of its
    // facets with opposite state signs, when one exists.
    std::vector<std::optional<std::pair<int, int>>> witness;
    int failing_vertex_face = -1;  // face id of the first vertex without a witness
};

IdealCriterionReport ideal_criterion(const Polytope& p, const Colouring& col, const RealState& s);

enum class MorseStatus { perfect, fibration, refuted, inconclusive };

std::string status_name(MorseStatus s);

struct VertexLinkResult {
    std::uint32_t vertex = 0;
    CollapseCertificate ascending;
    CollapseCertificate descending;
    bool asc_connected = false;
    bool desc_connected = false;
    bool asc_empty = false;
    bool desc_empty = false;
};

struct MorseVerdict {
    MorseStatus status = MorseStatus::inconclusive;
    bool has_ideal_vertices = false;
    IdealCriterionReport ideal;
    std::vector<VertexLinkResult> per_vertex;
    int critical_points = -1;  // sum of rank H1 of descending links, when meaningful
};

MorseVerdict verify(const Polytope& p, const Colouring& col, const RealState& s,
                    int restarts = 32, std::uint64_t seed = 0);

// Balanced representative: subtracts each colour class's mean.
RealState normalize_class(const RealState& s, const Colouring& col);

// [s] = [s'] iff s - s' is constant on every colour class.
bool classes_equal(const RealState& s, const RealState& t, const Colouring& col);

}  // namespace morsecube
