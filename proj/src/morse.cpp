#include "morsecube/morse.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace morsecube {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

int LinkComplex::count_of_dim(int d) const {
    int n = 0;
    for (const auto& s : simplices)
        if (static_cast<int>(s.size()) == d + 1) ++n;
    return n;
}

std::int64_t LinkComplex::euler() const {
    std::int64_t e = 0;
    for (const auto& s : simplices) e += (s.size() % 2 == 1) ? 1 : -1;
    return e;
}

std::vector<int> LinkComplex::present_labels() const {
    std::vector<char> seen(label_count, 0);
    for (const auto& s : simplices)
        for (int v : s) seen[v] = 1;
    std::vector<int> out;
    for (int v = 0; v < label_count; ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

LinkComplex dual_link(const Polytope& p) {
    LinkComplex link;
    link.label_count = p.facet_count;
    for (const Face& f : p.faces) {
        if (f.dim == p.dim) continue;
        if (f.dim == 0 && f.ideal) continue;
        if (static_cast<int>(f.facets.size()) != p.dim - f.dim) continue;
        link.simplices.push_back(f.facets);
    }
    std::sort(link.simplices.begin(), link.simplices.end());
    link.simplices.erase(std::unique(link.simplices.begin(), link.simplices.end()),
                         link.simplices.end());
    return link;
}

std::vector<char> statuses(const Colouring& col, const RealState& s, std::uint32_t v) {
    std::vector<char> st(s.value.size());
    for (size_t f = 0; f < s.value.size(); ++f) {
        if (s.value[f].is_zero())
            throw std::runtime_error("state vanishes on facet " + std::to_string(f));
        bool positive = s.value[f].sign() > 0;
        bool flipped = (v >> col.colour[f]) & 1;
        st[f] = (positive != flipped) ? 1 : 0;  // 1 = O, 0 = I
    }
    return st;
}

LinkComplex full_subcomplex(const LinkComplex& link, const std::vector<char>& keep) {
    LinkComplex sub;
    sub.label_count = link.label_count;
    for (const auto& s : link.simplices) {
        bool in = true;
        for (int v : s)
            if (!keep[v]) {
                in = false;
                break;
            }
        if (in) sub.simplices.push_back(s);
    }
    return sub;
}

std::pair<LinkComplex, LinkComplex> directed_links(const LinkComplex& link, const Colouring& col,
                                                   const RealState& s, std::uint32_t v) {
    auto st = statuses(col, s, v);
    std::vector<char> keep_o(st.begin(), st.end());
    std::vector<char> keep_i(st.size());
    for (size_t f = 0; f < st.size(); ++f) keep_i[f] = st[f] ? 0 : 1;
    return {full_subcomplex(link, keep_o), full_subcomplex(link, keep_i)};
}

std::string outcome_name(CollapseOutcome o) {
    switch (o) {
        case CollapseOutcome::point: return "point";
        case CollapseOutcome::circle: return "circle";
        case CollapseOutcome::connected_1_complex: return "connected-1-complex";
        case CollapseOutcome::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string status_name(MorseStatus s) {
    switch (s) {
        case MorseStatus::perfect: return "perfect";
        case MorseStatus::fibration: return "fibration";
        case MorseStatus::refuted: return "refuted";
        case MorseStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

// Shared index of a complex: faces and cofaces of every simplex. After a
// removal the complex stays subset-closed, because a simplex with a single
// dim+1 coface has no deeper containments and that coface is principal.
struct ComplexIndex {
    const LinkComplex* link = nullptr;
    std::map<std::vector<int>, int> id;
    std::vector<int> dims;
    std::vector<std::vector<int>> faces;    // codim-1 subsets
    std::vector<std::vector<int>> cofaces;  // dim+1 supersets
    int max_dim = -1;

    explicit ComplexIndex(const LinkComplex& l) : link(&l) {
        const auto& simp = l.simplices;
        dims.resize(simp.size());
        faces.resize(simp.size());
        cofaces.resize(simp.size());
        for (size_t i = 0; i < simp.size(); ++i) {
            id[simp[i]] = static_cast<int>(i);
            dims[i] = static_cast<int>(simp[i].size()) - 1;
            max_dim = std::max(max_dim, dims[i]);
        }
        for (size_t i = 0; i < simp.size(); ++i) {
            if (simp[i].size() < 2) continue;
            std::vector<int> sub(simp[i].size() - 1);
            for (size_t drop = 0; drop < simp[i].size(); ++drop) {
                size_t k = 0;
                for (size_t j = 0; j < simp[i].size(); ++j)
                    if (j != drop) sub[k++] = simp[i][j];
                auto it = id.find(sub);
                if (it == id.end())
                    throw std::logic_error("complex is not closed under subsets");
                faces[i].push_back(it->second);
                cofaces[it->second].push_back(static_cast<int>(i));
            }
        }
    }
};

struct CollapseRun {
    std::vector<char> alive;
    std::vector<CollapsePair> pairs;
};

// One greedy pass: free faces (exactly one alive coface) removed together
// with that coface, preferring cofaces of maximal dimension, ties broken by
// a seeded random priority.
void run_collapse(const ComplexIndex& ix, std::uint64_t seed, bool record, CollapseRun& run) {
    const size_t n = ix.dims.size();
    std::vector<int> cof_alive(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (!run.alive[i]) continue;
        int cnt = 0;
        for (int c : ix.cofaces[i])
            if (run.alive[c]) ++cnt;
        cof_alive[i] = cnt;
    }
    std::vector<std::uint64_t> prio(n);
    for (size_t i = 0; i < n; ++i) prio[i] = splitmix64(seed ^ (0x51ed2701u + i));

    using Entry = std::pair<std::uint64_t, int>;
    std::vector<std::priority_queue<Entry>> buckets(ix.max_dim + 1);
    auto push_if_free = [&](int i) {
        if (run.alive[i] && cof_alive[i] == 1) buckets[ix.dims[i]].push({prio[i], i});
    };
    for (size_t i = 0; i < n; ++i) push_if_free(static_cast<int>(i));

    while (true) {
        int chosen = -1;
        for (int d = ix.max_dim; d >= 0 && chosen < 0; --d) {
            auto& q = buckets[d];
            while (!q.empty()) {
                int i = q.top().second;
                if (run.alive[i] && cof_alive[i] == 1) {
                    chosen = i;
                    break;
                }
                q.pop();
            }
        }
        if (chosen < 0) break;
        buckets[ix.dims[chosen]].pop();
        int coface = -1;
        for (int c : ix.cofaces[chosen])
            if (run.alive[c]) {
                coface = c;
                break;
            }
        run.alive[chosen] = 0;
        run.alive[coface] = 0;
        if (record)
            run.pairs.push_back(
                CollapsePair{ix.link->simplices[chosen], ix.link->simplices[coface]});
        for (int f : ix.faces[coface]) {
            if (!run.alive[f]) continue;
            --cof_alive[f];
            push_if_free(f);
        }
        for (int f : ix.faces[chosen]) {
            if (!run.alive[f]) continue;
            --cof_alive[f];
            push_if_free(f);
        }
    }
}

ResidualSummary summarize_residual(const ComplexIndex& ix, const std::vector<char>& alive) {
    ResidualSummary sum;
    sum.count_by_dim.assign(ix.max_dim + 1, 0);
    int total = 0;
    for (size_t i = 0; i < ix.dims.size(); ++i) {
        if (!alive[i]) continue;
        ++sum.count_by_dim[ix.dims[i]];
        sum.top_dim = std::max(sum.top_dim, ix.dims[i]);
        ++total;
    }
    if (total == 0) {
        sum.empty = true;
        return sum;
    }
    // Connectivity and degrees on the residual 1-skeleton; every residual
    // simplex has all its vertices alive (closure invariant).
    std::map<int, int> vert_id;
    std::vector<int> verts;
    for (size_t i = 0; i < ix.dims.size(); ++i) {
        if (alive[i] && ix.dims[i] == 0) {
            vert_id[ix.link->simplices[i][0]] = static_cast<int>(verts.size());
            verts.push_back(ix.link->simplices[i][0]);
        }
    }
    std::vector<std::vector<int>> nbr(verts.size());
    std::vector<int> degree(verts.size(), 0);
    for (size_t i = 0; i < ix.dims.size(); ++i) {
        if (!alive[i] || ix.dims[i] != 1) continue;
        int a = vert_id.at(ix.link->simplices[i][0]);
        int b = vert_id.at(ix.link->simplices[i][1]);
        nbr[a].push_back(b);
        nbr[b].push_back(a);
        ++degree[a];
        ++degree[b];
    }
    // simplices of dim >= 2 connect through their vertices/edges
    std::vector<char> seen(verts.size(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    size_t reached = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int w : nbr[queue[qi]])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
    sum.connected = (reached == verts.size());
    sum.degree_profile = degree;
    std::sort(sum.degree_profile.begin(), sum.degree_profile.end());
    return sum;
}

CollapseOutcome classify_residual(const ResidualSummary& sum) {
    if (sum.empty) return CollapseOutcome::inconclusive;
    if (sum.top_dim == 0)
        return sum.count_by_dim[0] == 1 ? CollapseOutcome::point : CollapseOutcome::inconclusive;
    if (sum.top_dim >= 2) return CollapseOutcome::inconclusive;
    if (!sum.connected) return CollapseOutcome::inconclusive;
    bool all_two = true;
    for (int d : sum.degree_profile)
        if (d != 2) all_two = false;
    return all_two ? CollapseOutcome::circle : CollapseOutcome::connected_1_complex;
}

}  // namespace

CollapseCertificate collapse(const LinkComplex& cxl, int restarts, std::uint64_t seed) {
    CollapseCertificate cert;
    cert.seed = seed;
    if (cxl.simplices.empty()) {
        cert.outcome = CollapseOutcome::inconclusive;
        cert.residual.empty = true;
        return cert;
    }
    ComplexIndex ix(cxl);
    for (int r = 0; r <= restarts; ++r) {
        CollapseRun run;
        run.alive.assign(ix.dims.size(), 1);
        run_collapse(ix, splitmix64(seed ^ (0xc011a95eULL + r)), true, run);
        ResidualSummary sum = summarize_residual(ix, run.alive);
        CollapseOutcome out = classify_residual(sum);
        cert.pairs = std::move(run.pairs);
        cert.residual = sum;
        cert.outcome = out;
        cert.restarts_used = r;
        if (out != CollapseOutcome::inconclusive) return cert;
        // A disconnected residual certifies a disconnected input; more
        // restarts cannot change that.
        if (!sum.empty && sum.top_dim <= 1 && !sum.connected) return cert;
    }
    return cert;
}

bool replay_certificate(const LinkComplex& cxl, const CollapseCertificate& cert) {
    if (cxl.simplices.empty()) return cert.pairs.empty() && cert.residual.empty;
    ComplexIndex ix(cxl);
    std::vector<char> alive(ix.dims.size(), 1);
    std::vector<int> cof_alive(ix.dims.size(), 0);
    for (size_t i = 0; i < ix.dims.size(); ++i)
        cof_alive[i] = static_cast<int>(ix.cofaces[i].size());
    for (const CollapsePair& pr : cert.pairs) {
        auto it = ix.id.find(pr.free_face);
        auto jt = ix.id.find(pr.coface);
        if (it == ix.id.end() || jt == ix.id.end()) return false;
        int s = it->second, t = jt->second;
        if (!alive[s] || !alive[t]) return false;
        if (cof_alive[s] != 1) return false;
        bool related = false;
        for (int c : ix.cofaces[s])
            if (c == t && alive[c]) related = true;
        if (!related) return false;
        alive[s] = alive[t] = 0;
        for (int f : ix.faces[t])
            if (alive[f]) --cof_alive[f];
        for (int f : ix.faces[s])
            if (alive[f]) --cof_alive[f];
    }
    ResidualSummary sum = summarize_residual(ix, alive);
    if (classify_residual(sum) != cert.outcome) return false;
    if (sum.empty != cert.residual.empty || sum.top_dim != cert.residual.top_dim) return false;
    return sum.count_by_dim == cert.residual.count_by_dim &&
           sum.degree_profile == cert.residual.degree_profile;
}

bool is_connected(const LinkComplex& cxl) {
    auto labels = cxl.present_labels();
    if (labels.empty()) return false;
    std::map<int, int> idx;
    for (size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> nbr(labels.size());
    for (const auto& s : cxl.simplices) {
        if (s.size() != 2) continue;
        nbr[idx[s[0]]].push_back(idx[s[1]]);
        nbr[idx[s[1]]].push_back(idx[s[0]]);
    }
    std::vector<char> seen(labels.size(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    size_t reached = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int w : nbr[queue[qi]])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
    return reached == labels.size();
}

int h1_rank(const LinkComplex& cxl) {
    std::map<std::vector<int>, int> vid, eid;
    int nv = 0, ne = 0, nt = 0;
    for (const auto& s : cxl.simplices) {
        if (s.size() == 1) vid[s] = nv++;
        if (s.size() == 2) eid[s] = ne++;
        if (s.size() == 3) ++nt;
    }
    if (ne == 0) return 0;
    SparseIntMat d1, d2;
    d1.rows = nv;
    d1.cols = ne;
    d2.rows = ne;
    d2.cols = nt;
    int t = 0;
    for (const auto& s : cxl.simplices) {
        if (s.size() == 2) {
            int e = eid[s];
            d1.add(vid[{s[0]}], e, -1);
            d1.add(vid[{s[1]}], e, 1);
        } else if (s.size() == 3) {
            d2.add(eid[{s[1], s[2]}], t, 1);
            d2.add(eid[{s[0], s[2]}], t, -1);
            d2.add(eid[{s[0], s[1]}], t, 1);
            ++t;
        }
    }
    int r1 = rank_exact(d1);
    int r2 = nt ? rank_exact(d2) : 0;
    return (ne - r1) - r2;
}

struct DirectedLinkEngine::Impl {
    LinkComplex link;
    ComplexIndex ix;
    int labels;
    // scratch
    std::vector<char> alive;
    std::vector<int> cof_alive;
    std::vector<std::vector<int>> buckets;
    std::vector<int> order;

    explicit Impl(const LinkComplex& l) : link(l), ix(link), labels(l.label_count) {
        alive.resize(ix.dims.size());
        cof_alive.resize(ix.dims.size());
        buckets.resize(ix.max_dim + 1);
        order.resize(ix.dims.size());
    }

    // scratch for residual classification
    std::vector<int> deg, head, nxt, to, vqueue;
    std::vector<char> vseen;

    bool simplex_in(const std::vector<int>& s, const std::vector<char>& sub) const {
        for (int v : s)
            if (!sub[v]) return false;
        return true;
    }

    // Allocation-free residual classification on the scratch buffers.
    CollapseOutcome classify_fast() {
        int total = 0, top = -1, nverts = 0;
        for (size_t i = 0; i < ix.dims.size(); ++i) {
            if (!alive[i]) continue;
            ++total;
            top = std::max(top, ix.dims[i]);
            if (ix.dims[i] == 0) ++nverts;
        }
        if (total == 0) return CollapseOutcome::inconclusive;
        if (top == 0) return total == 1 ? CollapseOutcome::point : CollapseOutcome::inconclusive;
        if (top >= 2) return CollapseOutcome::inconclusive;

        deg.assign(labels, 0);
        head.assign(labels, -1);
        nxt.clear();
        to.clear();
        int start = -1;
        for (size_t i = 0; i < ix.dims.size(); ++i) {
            if (!alive[i] || ix.dims[i] != 1) continue;
            int a = link.simplices[i][0], b = link.simplices[i][1];
            ++deg[a];
            ++deg[b];
            to.push_back(b);
            nxt.push_back(head[a]);
            head[a] = static_cast<int>(to.size()) - 1;
            to.push_back(a);
            nxt.push_back(head[b]);
            head[b] = static_cast<int>(to.size()) - 1;
            start = a;
        }
        // isolated residual vertices make the graph disconnected (nverts > 1)
        vseen.assign(labels, 0);
        vqueue.clear();
        vqueue.push_back(start);
        vseen[start] = 1;
        int reached = 1;
        for (size_t qi = 0; qi < vqueue.size(); ++qi)
            for (int e = head[vqueue[qi]]; e >= 0; e = nxt[e])
                if (!vseen[to[e]]) {
                    vseen[to[e]] = 1;
                    ++reached;
                    vqueue.push_back(to[e]);
                }
        if (reached != nverts) return CollapseOutcome::inconclusive;
        bool all_two = true;
        for (size_t i = 0; i < ix.dims.size(); ++i)
            if (alive[i] && ix.dims[i] == 0 && deg[link.simplices[i][0]] != 2) all_two = false;
        return all_two ? CollapseOutcome::circle : CollapseOutcome::connected_1_complex;
    }

    void init_alive(const std::vector<char>& sub) {
        for (size_t i = 0; i < ix.dims.size(); ++i)
            alive[i] = simplex_in(link.simplices[i], sub) ? 1 : 0;
        std::fill(cof_alive.begin(), cof_alive.end(), 0);
        for (size_t i = 0; i < ix.dims.size(); ++i) {
            if (!alive[i]) continue;
            for (int f : ix.faces[i]) ++cof_alive[f];
        }
    }

    CollapseOutcome one_pass(std::uint64_t seed) {
        // seeded Fisher-Yates over simplex ids
        const size_t n = ix.dims.size();
        for (size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
        std::uint64_t rng = seed;
        for (size_t i = n; i > 1; --i) {
            rng = splitmix64(rng);
            size_t j = rng % i;
            std::swap(order[i - 1], order[j]);
        }
        for (auto& b : buckets) b.clear();
        for (int i : order)
            if (alive[i] && cof_alive[i] == 1) buckets[ix.dims[i]].push_back(i);

        // Cascaded candidates never have higher dimension than the current
        // level, so one top-down sweep suffices.
        for (int d = ix.max_dim; d >= 0; --d) {
            auto& bucket = buckets[d];
            while (!bucket.empty()) {
                int s = bucket.back();
                bucket.pop_back();
                if (!alive[s] || cof_alive[s] != 1) continue;
                int t = -1;
                for (int c : ix.cofaces[s])
                    if (alive[c]) {
                        t = c;
                        break;
                    }
                alive[s] = 0;
                alive[t] = 0;
                for (int f : ix.faces[t]) {
                    if (!alive[f]) continue;
                    if (--cof_alive[f] == 1) buckets[ix.dims[f]].push_back(f);
                }
                for (int f : ix.faces[s]) {
                    if (!alive[f]) continue;
                    if (--cof_alive[f] == 1) buckets[ix.dims[f]].push_back(f);
                }
            }
        }
        return classify_fast();
    }
};

DirectedLinkEngine::DirectedLinkEngine(const LinkComplex& link)
    : impl_(std::make_unique<Impl>(link)) {}
DirectedLinkEngine::~DirectedLinkEngine() = default;
DirectedLinkEngine::DirectedLinkEngine(DirectedLinkEngine&&) noexcept = default;

int DirectedLinkEngine::label_count() const { return impl_->labels; }

bool DirectedLinkEngine::subcomplex_empty(const std::vector<char>& sub) const {
    for (const auto& s : impl_->link.simplices)
        if (s.size() == 1 && sub[s[0]]) return false;
    return true;
}

bool DirectedLinkEngine::subcomplex_connected(const std::vector<char>& sub) const {
    // 1-skeleton of the full subcomplex
    const auto& simp = impl_->link.simplices;
    int start = -1;
    std::vector<char> present(impl_->labels, 0);
    for (const auto& s : simp)
        if (s.size() == 1 && sub[s[0]]) {
            present[s[0]] = 1;
            if (start < 0) start = s[0];
        }
    if (start < 0) return false;
    std::vector<std::vector<int>> nbr(impl_->labels);
    for (const auto& s : simp)
        if (s.size() == 2 && sub[s[0]] && sub[s[1]]) {
            nbr[s[0]].push_back(s[1]);
            nbr[s[1]].push_back(s[0]);
        }
    std::vector<char> seen(impl_->labels, 0);
    std::vector<int> queue{start};
    seen[start] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int w : nbr[queue[qi]])
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    for (int l = 0; l < impl_->labels; ++l)
        if (present[l] && !seen[l]) return false;
    return true;
}

std::int64_t DirectedLinkEngine::subcomplex_euler(const std::vector<char>& sub) const {
    std::int64_t e = 0;
    for (const auto& s : impl_->link.simplices) {
        bool in = true;
        for (int v : s)
            if (!sub[v]) {
                in = false;
                break;
            }
        if (in) e += (s.size() % 2 == 1) ? 1 : -1;
    }
    return e;
}

CollapseOutcome DirectedLinkEngine::collapse_outcome(const std::vector<char>& sub, int restarts,
                                                     std::uint64_t seed) {
    CollapseOutcome out = CollapseOutcome::inconclusive;
    for (int r = 0; r <= restarts; ++r) {
        impl_->init_alive(sub);
        out = impl_->one_pass(splitmix64(seed ^ (0xc011a95eULL + r)));
        if (out != CollapseOutcome::inconclusive) return out;
    }
    return out;
}

IdealCriterionReport ideal_criterion(const Polytope& p, const Colouring& col,
                                     const RealState& s) {
    if (!s.nowhere_vanishing()) throw std::runtime_error("state vanishes on some facet");
    IdealCriterionReport rep;
    for (int vi : p.ideal_vertex_ids) {
        const auto& fs = p.faces[vi].facets;
        std::optional<std::pair<int, int>> found;
        for (size_t a = 0; a < fs.size() && !found; ++a)
            for (size_t b = a + 1; b < fs.size() && !found; ++b)
                if (col.colour[fs[a]] == col.colour[fs[b]] &&
                    s.value[fs[a]].sign() != s.value[fs[b]].sign())
                    found = std::make_pair(fs[a], fs[b]);
        rep.witness.push_back(found);
        if (!found && rep.pass) {
            rep.pass = false;
            rep.failing_vertex_face = vi;
        }
    }
    return rep;
}

MorseVerdict verify(const Polytope& p, const Colouring& col, const RealState& s, int restarts,
                    std::uint64_t seed) {
    if (!s.nowhere_vanishing()) throw std::runtime_error("state vanishes on some facet");
    MorseVerdict verdict;
    verdict.has_ideal_vertices = !p.ideal_vertex_ids.empty();
    if (verdict.has_ideal_vertices) {
        verdict.ideal = ideal_criterion(p, col, s);
        if (!verdict.ideal.pass) {
            verdict.status = MorseStatus::inconclusive;
            return verdict;
        }
    }

    LinkComplex link = dual_link(p);
    const std::uint32_t nv = 1u << col.colours;
    bool any_refuted = false, any_inconclusive = false, all_points = true;
    for (std::uint32_t v = 0; v < nv; ++v) {
        auto [asc, desc] = directed_links(link, col, s, v);
        VertexLinkResult res;
        res.vertex = v;
        res.asc_empty = asc.simplices.empty();
        res.desc_empty = desc.simplices.empty();
        res.asc_connected = !res.asc_empty && is_connected(asc);
        res.desc_connected = !res.desc_empty && is_connected(desc);
        if (res.asc_empty || res.desc_empty || !res.asc_connected || !res.desc_connected) {
            any_refuted = true;
        }
        res.ascending = collapse(asc, restarts, splitmix64(seed ^ (2 * v)));
        res.descending = collapse(desc, restarts, splitmix64(seed ^ (2 * v + 1)));
        for (CollapseOutcome out : {res.ascending.outcome, res.descending.outcome}) {
            if (out == CollapseOutcome::inconclusive) any_inconclusive = true;
            if (out != CollapseOutcome::point) all_points = false;
        }
        verdict.per_vertex.push_back(std::move(res));
    }

    if (any_refuted)
        verdict.status = MorseStatus::refuted;
    else if (any_inconclusive)
        verdict.status = MorseStatus::inconclusive;
    else if (all_points)
        verdict.status = MorseStatus::fibration;
    else
        verdict.status = MorseStatus::perfect;

    if (verdict.status == MorseStatus::perfect || verdict.status == MorseStatus::fibration) {
        int total = 0;
        for (std::uint32_t v = 0; v < nv; ++v) {
            auto [asc, desc] = directed_links(link, col, s, v);
            (void)asc;
            total += h1_rank(desc);
        }
        verdict.critical_points = total;
    }
    return verdict;
}

RealState normalize_class(const RealState& s, const Colouring& col) {
    RealState out = s;
    auto classes = col.classes();
    for (const auto& cls : classes) {
        Rational mean(0);
        for (int f : cls) mean += s.value[f];
        mean /= Rational(static_cast<std::int64_t>(cls.size()));
        for (int f : cls) out.value[f] -= mean;
    }
    return out;
}

bool classes_equal(const RealState& s, const RealState& t, const Colouring& col) {
    auto classes = col.classes();
    for (const auto& cls : classes) {
        Rational delta = t.value[cls[0]] - s.value[cls[0]];
        for (int f : cls)
            if (t.value[f] - s.value[f] != delta) return false;
    }
    return true;
}

}  // namespace morsecube
