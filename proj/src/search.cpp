#include "morsecube/search.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace morsecube {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Lattice signature preserved by automorphisms: (dim, ideal, facet set).
std::set<std::tuple<int, bool, std::vector<int>>> lattice_signature(const Polytope& p) {
    std::set<std::tuple<int, bool, std::vector<int>>> sig;
    for (const Face& f : p.faces) sig.insert({f.dim, f.ideal, f.facets});
    return sig;
}

struct AutSearch {
    const Polytope& p;
    const Colouring& col;
    std::vector<int> order;           // BFS facet order
    std::vector<int> degree;
    std::vector<std::vector<int>> class_of_colour;
    std::set<std::tuple<int, bool, std::vector<int>>> sig;

    std::vector<int> img;             // facet -> image (-1 unset)
    std::vector<char> used;
    std::vector<int> cmap;            // colour -> image colour (-1 unset)
    std::vector<int> cmap_inv;
    SymmetryGroup out;

    AutSearch(const Polytope& pp, const Colouring& cc) : p(pp), col(cc) {
        degree.assign(p.facet_count, 0);
        for (int a = 0; a < p.facet_count; ++a)
            for (int b = 0; b < p.facet_count; ++b)
                if (p.adjacent[a][b]) ++degree[a];
        // BFS order so each facet after the first touches an earlier one.
        std::vector<char> seen(p.facet_count, 0);
        order.push_back(0);
        seen[0] = 1;
        for (size_t qi = 0; qi < order.size(); ++qi)
            for (int b = 0; b < p.facet_count; ++b)
                if (!seen[b] && p.adjacent[order[qi]][b]) {
                    seen[b] = 1;
                    order.push_back(b);
                }
        for (int f = 0; f < p.facet_count; ++f)
            if (!seen[f]) order.push_back(f);  // disconnected adjacency, rare

        class_of_colour.resize(col.colours);
        for (int f = 0; f < p.facet_count; ++f) class_of_colour[col.colour[f]].push_back(f);
        sig = lattice_signature(p);
    }

    bool colour_ok(int f, int g) {
        int cf = col.colour[f], cg = col.colour[g];
        if (cmap[cf] >= 0) return cmap[cf] == cg;
        if (cmap_inv[cg] >= 0) return false;
        return class_of_colour[cf].size() == class_of_colour[cg].size();
    }

    void extend(size_t pos) {
        if (pos == order.size()) {
            // adjacency and colours are consistent; check the face lattice
            std::vector<int> perm = img;
            for (const Face& face : p.faces) {
                std::vector<int> s;
                for (int f : face.facets) s.push_back(perm[f]);
                std::sort(s.begin(), s.end());
                if (!sig.count({face.dim, face.ideal, s})) return;
            }
            std::vector<int> cperm(col.colours);
            for (int c = 0; c < col.colours; ++c) cperm[c] = cmap[c];
            out.facet_perms.push_back(perm);
            out.colour_perms.push_back(cperm);
            return;
        }
        int f = order[pos];
        for (int g = 0; g < p.facet_count; ++g) {
            if (used[g] || degree[g] != degree[f]) continue;
            if (!colour_ok(f, g)) continue;
            bool ok = true;
            for (size_t q = 0; q < pos && ok; ++q) {
                int h = order[q];
                if (p.adjacent[f][h] != p.adjacent[g][img[h]]) ok = false;
            }
            if (!ok) continue;
            int cf = col.colour[f], cg = col.colour[g];
            bool fresh_colour = cmap[cf] < 0;
            img[f] = g;
            used[g] = 1;
            if (fresh_colour) {
                cmap[cf] = cg;
                cmap_inv[cg] = cf;
            }
            extend(pos + 1);
            img[f] = -1;
            used[g] = 0;
            if (fresh_colour) {
                cmap[cf] = -1;
                cmap_inv[cg] = -1;
            }
        }
    }

    SymmetryGroup run() {
        img.assign(p.facet_count, -1);
        used.assign(p.facet_count, 0);
        cmap.assign(col.colours, -1);
        cmap_inv.assign(col.colours, -1);
        extend(0);
        return std::move(out);
    }
};

}  // namespace

SymmetryGroup automorphisms(const Polytope& p, const Colouring& col) {
    AutSearch search(p, col);
    SymmetryGroup g = search.run();
    if (g.order() == 0) throw std::logic_error("automorphism search lost the identity");
    return g;
}

namespace {

std::uint64_t apply_perm(std::uint64_t mask, const std::vector<int>& perm) {
    std::uint64_t out = 0;
    for (size_t f = 0; f < perm.size(); ++f)
        if ((mask >> f) & 1) out |= std::uint64_t(1) << perm[f];
    return out;
}

std::uint64_t best_flip(std::uint64_t mask, const std::vector<std::uint64_t>& class_masks) {
    // colour classes partition the bits, so minimize independently
    std::uint64_t out = 0;
    for (std::uint64_t cm : class_masks) {
        std::uint64_t part = mask & cm;
        out |= std::min(part, part ^ cm);
    }
    return out;
}

}  // namespace

std::uint64_t canonical_mask(std::uint64_t mask, const SymmetryGroup& g, const Colouring& col,
                             int facet_count) {
    auto cms = col.class_masks(facet_count);
    std::uint64_t best = ~std::uint64_t(0);
    for (const auto& perm : g.facet_perms)
        best = std::min(best, best_flip(apply_perm(mask, perm), cms));
    return best;
}

std::uint64_t orbit_size(std::uint64_t mask, const SymmetryGroup& g, const Colouring& col,
                         int facet_count) {
    auto cms = col.class_masks(facet_count);
    std::unordered_set<std::uint64_t> images;
    std::vector<std::uint64_t> flips;
    for (std::uint64_t f = 0; f < (std::uint64_t(1) << cms.size()); ++f) {
        std::uint64_t fm = 0;
        for (size_t c = 0; c < cms.size(); ++c)
            if ((f >> c) & 1) fm ^= cms[c];
        flips.push_back(fm);
    }
    for (const auto& perm : g.facet_perms) {
        std::uint64_t pm = apply_perm(mask, perm);
        for (std::uint64_t fm : flips) images.insert(pm ^ fm);
    }
    return images.size();
}

StateFilter parse_filter(const std::string& name) {
    if (name == "perfect") return StateFilter::perfect;
    if (name == "fibration") return StateFilter::fibration;
    if (name == "all-circles") return StateFilter::all_circles;
    throw std::runtime_error("unknown filter '" + name + "'");
}

std::string filter_name(StateFilter f) {
    switch (f) {
        case StateFilter::perfect: return "perfect";
        case StateFilter::fibration: return "fibration";
        case StateFilter::all_circles: return "all-circles";
    }
    return "?";
}

namespace {

char outcome_letter(CollapseOutcome o) {
    switch (o) {
        case CollapseOutcome::point: return 'p';
        case CollapseOutcome::circle: return 'c';
        case CollapseOutcome::connected_1_complex: return 'l';
        case CollapseOutcome::inconclusive: return '?';
    }
    return '?';
}

// Per-thread filter evaluation for one +-1 state, given as its sign vector.
struct StateChecker {
    const Polytope& p;
    const Colouring& col;
    LinkComplex link;
    DirectedLinkEngine engine;
    int c;
    // same-colour pairs per ideal vertex for the prefilter
    std::vector<std::vector<std::pair<int, int>>> ideal_pairs;
    std::vector<char> sub;

    StateChecker(const Polytope& pp, const Colouring& cc)
        : p(pp), col(cc), link(dual_link(pp)), engine(link) {
        c = col.colours;
        for (int vi : p.ideal_vertex_ids) {
            std::vector<std::pair<int, int>> pairs;
            const auto& fs = p.faces[vi].facets;
            for (size_t a = 0; a < fs.size(); ++a)
                for (size_t b = a + 1; b < fs.size(); ++b)
                    if (col.colour[fs[a]] == col.colour[fs[b]]) pairs.emplace_back(fs[a], fs[b]);
            ideal_pairs.push_back(std::move(pairs));
        }
        sub.resize(p.facet_count);
    }

    bool prefilter(std::uint64_t mask) const {
        for (const auto& pairs : ideal_pairs) {
            bool ok = false;
            for (auto [a, b] : pairs)
                if (((mask >> a) ^ (mask >> b)) & 1) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    }

    // positive[f] = 1 iff s(f) > 0. Checks complement vertex pairs together:
    // the ascending link at v equals the descending link at ~v.
    bool passes_seeded(const std::vector<char>& positive, StateFilter filter, int restarts,
                       std::uint64_t seed) {
        bool all_points = true;
        const std::uint32_t half = 1u << (c - 1);
        for (std::uint32_t v = 0; v < half; ++v) {
            for (int side = 0; side < 2; ++side) {
                // side 0: O-set at v; side 1: I-set at v
                bool any = false;
                for (int f = 0; f < p.facet_count; ++f) {
                    bool flipped = (v >> col.colour[f]) & 1;
                    char in_o = (positive[f] != flipped) ? 1 : 0;
                    sub[f] = side ? (in_o ? 0 : 1) : in_o;
                    any = any || sub[f];
                }
                if (!any) return false;  // empty directed link
                if (!engine.subcomplex_connected(sub)) return false;
                std::int64_t chi = engine.subcomplex_euler(sub);
                if (filter == StateFilter::all_circles && chi != 0) return false;
                if (filter == StateFilter::fibration && chi != 1) return false;
                CollapseOutcome out = engine.collapse_outcome(
                    sub, restarts, splitmix64(seed ^ (4 * v + 2 * side)));
                switch (filter) {
                    case StateFilter::all_circles:
                        if (out != CollapseOutcome::circle) return false;
                        break;
                    case StateFilter::fibration:
                        if (out != CollapseOutcome::point) return false;
                        break;
                    case StateFilter::perfect:
                        if (out == CollapseOutcome::inconclusive) return false;
                        if (out != CollapseOutcome::point) all_points = false;
                        break;
                }
            }
        }
        if (filter == StateFilter::perfect && all_points) return false;
        return true;
    }

    bool mask_passes(std::uint64_t mask, StateFilter filter, int restarts, std::uint64_t seed) {
        std::vector<char> positive(p.facet_count);
        for (int f = 0; f < p.facet_count; ++f) positive[f] = (mask >> f) & 1;
        return passes_seeded(positive, filter, restarts, seed);
    }
};

}  // namespace

CensusResult enumerate_states(const Polytope& p, const Colouring& col, StateFilter filter,
                              const EnumerateOptions& opt) {
    if (p.facet_count > 64)
        throw std::runtime_error("state enumeration requires at most 64 facets");
    CensusResult result;
    const std::uint64_t total = std::uint64_t(1) << p.facet_count;
    const int nthreads = std::max(1, opt.threads);

    std::atomic<std::uint64_t> prefilter_count{0};
    std::atomic<bool> over_budget{false};
    std::vector<std::vector<std::uint64_t>> survivors(nthreads);
    std::vector<std::uint64_t> scanned(nthreads, 0);

    auto worker = [&](int t) {
        StateChecker checker(p, col);
        const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min(total, lo + chunk);
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            if (over_budget.load(std::memory_order_relaxed)) return;
            ++scanned[t];
            if (!checker.prefilter(mask)) continue;
            std::uint64_t n = prefilter_count.fetch_add(1) + 1;
            if (opt.budget >= 0 && static_cast<std::int64_t>(n) > opt.budget) {
                over_budget.store(true);
                return;
            }
            if (checker.mask_passes(mask, filter, opt.restarts,
                                    splitmix64(opt.seed ^ splitmix64(mask))))
                survivors[t].push_back(mask);
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    result.complete = !over_budget.load();
    result.prefilter_survivors = prefilter_count.load();
    for (int t = 0; t < nthreads; ++t) result.masks_scanned += scanned[t];

    std::vector<std::uint64_t> all;
    for (auto& v : survivors) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    result.filter_survivors = all.size();

    // Orbit harvesting: ascending scan, the first unseen survivor is the
    // canonical representative of its class (the verdict is constant on
    // orbits, so the minimal image passed the filter too).
    SymmetryGroup group = automorphisms(p, col);
    result.group_order = group.order() << col.colours;
    auto cms = col.class_masks(p.facet_count);
    std::vector<std::uint64_t> flips;
    for (std::uint64_t f = 0; f < (std::uint64_t(1) << col.colours); ++f) {
        std::uint64_t fm = 0;
        for (int cc = 0; cc < col.colours; ++cc)
            if ((f >> cc) & 1) fm ^= cms[cc];
        flips.push_back(fm);
    }
    std::unordered_set<std::uint64_t> survivor_set(all.begin(), all.end());
    std::unordered_set<std::uint64_t> visited;
    for (std::uint64_t mask : all) {
        if (visited.count(mask)) continue;
        std::unordered_set<std::uint64_t> images;
        for (const auto& perm : group.facet_perms) {
            std::uint64_t pm = apply_perm(mask, perm);
            for (std::uint64_t fm : flips) images.insert(pm ^ fm);
        }
        std::uint64_t canon = *std::min_element(images.begin(), images.end());
        if (canon != mask)
            throw std::logic_error("state verdict not constant on symmetry orbit");
        for (std::uint64_t im : images)
            if (survivor_set.count(im)) visited.insert(im);

        StateClass cls;
        cls.canonical = mask;
        cls.orbit = images.size();
        MorseVerdict verdict = verify(p, col, state_from_mask(mask, p.facet_count), opt.restarts,
                                      splitmix64(opt.seed ^ splitmix64(mask)));
        cls.status = verdict.status;
        cls.critical_points = verdict.critical_points;
        std::string outcomes;
        for (const auto& vr : verdict.per_vertex) {
            if (!outcomes.empty()) outcomes += "|";
            outcomes += outcome_letter(vr.ascending.outcome);
            outcomes += outcome_letter(vr.descending.outcome);
        }
        cls.outcomes = outcomes;
        result.classes.push_back(std::move(cls));
    }
    return result;
}

RealState very_symmetric_state_24() {
    std::vector<Quat> t24 = binary_tetrahedral();
    std::vector<Quat> q8(t24.begin(), t24.begin() + 8);
    auto cosets = left_cosets(t24, q8);
    const Quat i = t24[2];

    RealState s;
    s.value.assign(24, Rational(0));
    for (const auto& coset : cosets) {
        // orbit of the smallest member under left multiplication by i
        std::vector<char> plus(24, 0);
        int cur = coset[0];
        for (int step = 0; step < 4; ++step) {
            plus[cur] = 1;
            cur = find_quat(t24, i * t24[cur]);
        }
        for (int f : coset) s.value[f] = plus[f] ? Rational(1) : Rational(-1);
    }
    return s;
}

RealState coset_state_120(const std::vector<Quat>& multipliers, const RealState& base_on_t24) {
    if (multipliers.size() != 5)
        throw std::runtime_error("expected five coset multipliers");
    if (base_on_t24.value.size() != 24)
        throw std::runtime_error("base state must live on the 24 facets of the 24-cell");
    std::vector<Quat> group = binary_icosahedral();
    std::vector<Quat> t24 = binary_tetrahedral();
    RealState s;
    s.value.assign(120, Rational(0));
    std::vector<char> covered(120, 0);
    for (const Quat& q : multipliers) {
        for (int t = 0; t < 24; ++t) {
            int f = find_quat(group, q * t24[t]);
            if (f < 0) throw std::runtime_error("multiplier is not in the icosahedral group");
            if (covered[f]) throw std::runtime_error("multipliers are not a coset transversal");
            covered[f] = 1;
            s.value[f] = base_on_t24.value[t];
        }
    }
    for (int f = 0; f < 120; ++f)
        if (!covered[f]) throw std::runtime_error("multipliers are not a coset transversal");
    return s;
}

CosetSearchResult search_coset_states(const Polytope& p120, const Colouring& col120,
                                      const RealState& base_on_t24, int restarts,
                                      std::uint64_t seed, int threads) {
    std::vector<Quat> group = binary_icosahedral();
    std::vector<Quat> t24 = binary_tetrahedral();
    auto cosets = left_cosets(group, t24);
    if (cosets.size() != 5) throw std::logic_error("expected five left cosets");

    // Distinct restrictions per coset: multipliers whose induced assignment
    // on the coset differs; keep the smallest multiplier index for each.
    std::vector<std::vector<int>> choices(5);
    std::vector<std::vector<std::vector<Rational>>> restriction(5);
    for (int ci = 0; ci < 5; ++ci) {
        std::set<std::vector<int>> seen;
        for (int q : cosets[ci]) {
            std::vector<Rational> r(cosets[ci].size());
            std::vector<int> signs(cosets[ci].size());
            Quat qinv = group[q].conj();
            for (size_t k = 0; k < cosets[ci].size(); ++k) {
                int t = find_quat(t24, qinv * group[cosets[ci][k]]);
                if (t < 0) throw std::logic_error("coset member leaves T*24 under the inverse");
                r[k] = base_on_t24.value[t];
                signs[k] = r[k].sign();
            }
            if (seen.insert(signs).second) {
                choices[ci].push_back(q);
                restriction[ci].push_back(std::move(r));
            }
        }
    }

    std::uint64_t space = 1;
    for (int ci = 0; ci < 5; ++ci) space *= choices[ci].size();

    const int nthreads = std::max(1, threads);
    std::atomic<std::uint64_t> best_hit{~std::uint64_t(0)};

    auto state_for = [&](std::uint64_t idx) {
        RealState s;
        s.value.assign(120, Rational(0));
        std::uint64_t rest = idx;
        for (int ci = 0; ci < 5; ++ci) {
            std::uint64_t pick = rest % choices[ci].size();
            rest /= choices[ci].size();
            for (size_t k = 0; k < cosets[ci].size(); ++k)
                s.value[cosets[ci][k]] = restriction[ci][pick][k];
        }
        return s;
    };

    auto sign_vector = [](const RealState& s) {
        std::vector<char> positive(s.value.size());
        for (size_t f = 0; f < s.value.size(); ++f) positive[f] = s.value[f].sign() > 0;
        return positive;
    };
    auto state_hash = [&](const std::vector<char>& positive) {
        std::uint64_t h = 0x9d3f;
        for (char b : positive) h = splitmix64(h ^ static_cast<std::uint64_t>(b));
        return h;
    };

    auto worker = [&](int t) {
        StateChecker checker(p120, col120);
        const std::uint64_t chunk = (space + nthreads - 1) / nthreads;
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min(space, lo + chunk);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            if (idx >= best_hit.load(std::memory_order_relaxed)) break;
            RealState s = state_for(idx);
            std::vector<char> positive = sign_vector(s);
            if (!checker.passes_seeded(positive, StateFilter::perfect, restarts,
                                       splitmix64(seed ^ state_hash(positive))))
                continue;
            std::uint64_t cur = best_hit.load();
            while (idx < cur && !best_hit.compare_exchange_weak(cur, idx)) {
            }
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    CosetSearchResult result;
    result.candidates_tried = space;
    std::uint64_t hit = best_hit.load();
    if (hit == ~std::uint64_t(0)) return result;
    result.found = true;
    std::uint64_t rest = hit;
    for (int ci = 0; ci < 5; ++ci) {
        result.multiplier_indices.push_back(choices[ci][rest % choices[ci].size()]);
        rest /= choices[ci].size();
    }
    RealState s = state_for(hit);
    MorseVerdict verdict =
        verify(p120, col120, s, restarts, splitmix64(seed ^ state_hash(sign_vector(s))));
    result.critical_points = verdict.critical_points;
    return result;
}

}  // namespace morsecube
