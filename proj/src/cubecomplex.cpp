#include "morsecube/cubecomplex.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace morsecube {

RealState state_from_mask(std::uint64_t mask, int facet_count) {
    RealState s;
    s.value.resize(facet_count);
    for (int f = 0; f < facet_count; ++f)
        s.value[f] = (mask >> f) & 1 ? Rational(1) : Rational(-1);
    return s;
}

std::uint64_t mask_from_state(const RealState& s) {
    if (!s.plus_minus_one()) throw std::runtime_error("state is not a +-1 state");
    std::uint64_t mask = 0;
    for (size_t f = 0; f < s.value.size(); ++f)
        if (s.value[f] == Rational(1)) mask |= std::uint64_t(1) << f;
    return mask;
}

RealState parse_state(std::istream& in, int facet_count) {
    RealState s;
    s.value.assign(facet_count, Rational(0));
    std::vector<char> seen(facet_count, 0);
    std::string line;
    int lineno = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "bits") {
            std::string bits;
            if (!(ls >> bits) || bits.size() < 3 || bits[0] != '0' || bits[1] != 'b')
                throw std::runtime_error("line " + std::to_string(lineno) + ": expected 0b literal");
            std::uint64_t mask = 0;
            for (size_t i = 2; i < bits.size(); ++i) {
                if (bits[i] != '0' && bits[i] != '1')
                    throw std::runtime_error("line " + std::to_string(lineno) + ": bad bit");
                mask = (mask << 1) | (bits[i] == '1' ? 1 : 0);
            }
            return state_from_mask(mask, facet_count);
        }
        int f;
        std::string val;
        try {
            f = std::stoi(first);
        } catch (const std::logic_error&) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": bad facet index");
        }
        if (!(ls >> val))
            throw std::runtime_error("line " + std::to_string(lineno) + ": missing value");
        if (f < 0 || f >= facet_count)
            throw std::runtime_error("line " + std::to_string(lineno) + ": facet out of range");
        s.value[f] = Rational::parse(val);
        seen[f] = 1;
        any = true;
    }
    if (!any) throw std::runtime_error("empty state file");
    for (int f = 0; f < facet_count; ++f)
        if (!seen[f])
            throw std::runtime_error("state missing facet " + std::to_string(f));
    return s;
}

RealState parse_state_file(const std::string& path, int facet_count) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file '" + path + "'");
    try {
        return parse_state(in, facet_count);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string write_state(const RealState& s) {
    std::ostringstream out;
    for (size_t f = 0; f < s.value.size(); ++f)
        out << f << " " << s.value[f].str() << "\n";
    return out.str();
}

namespace {

// Bit ranks of rep over the free colours of a cell family.
struct CellFamily {
    int face = -1;
    std::vector<int> free_colours;  // ascending
    int first_cell = 0;             // index of rep == 0 cell in cells[k]
};

}  // namespace

int CubeComplex::cell_index(int k, int face, std::uint32_t rep) const {
    // cells[k] are grouped by face, reps enumerated in increasing numeric
    // order of the packed free-colour bits.
    const auto& level = cells[k];
    int lo = 0, hi = static_cast<int>(level.size());
    // binary search for first cell of this face
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (level[mid].face < face)
            lo = mid + 1;
        else
            hi = mid;
    }
    // pack rep bits over free colours
    int offset = 0;
    int bit = 0;
    const auto& s = poly.faces[face].facets;
    std::uint32_t used = 0;
    for (int f : s) used |= 1u << col.colour[f];
    for (int cc = 0; cc < c; ++cc) {
        if (used & (1u << cc)) continue;
        if (rep & (1u << cc)) offset |= 1 << bit;
        ++bit;
    }
    return lo + offset;
}

int CubeComplex::edge_facet(int edge_cell) const {
    return poly.faces[cells[1][edge_cell].face].facets[0];
}

std::uint32_t CubeComplex::edge_tail(int edge_cell) const {
    return cells[1][edge_cell].rep;
}

SparseIntMat CubeComplex::boundary_matrix(int k) const {
    SparseIntMat m;
    m.rows = static_cast<int>(cells[k - 1].size());
    m.cols = static_cast<int>(cells[k].size());
    for (int i = 0; i < m.cols; ++i)
        for (auto [j, sgn] : boundary[k][i]) m.add(j, i, sgn);
    return m;
}

std::int64_t CubeComplex::alternating_cell_sum() const {
    std::int64_t sum = 0;
    for (int k = 0; k <= n; ++k) {
        std::int64_t cnt = static_cast<std::int64_t>(cells[k].size());
        sum += (k % 2 == 0) ? cnt : -cnt;
    }
    return sum;
}

CubeComplex build_cube_complex(const Polytope& p, const Colouring& col,
                               std::int64_t cell_budget) {
    validate(p);
    validate_colouring(p, col);
    CubeComplex cx;
    cx.poly = p;
    cx.col = col;
    cx.n = p.dim;
    cx.c = col.colours;
    if (cx.c > 30) throw std::runtime_error("more than 30 colours unsupported");

    // Census first, to enforce the cell budget before allocating.
    std::int64_t total = 0;
    for (int k = 0; k <= cx.n; ++k) {
        for (int fi : cx.poly.faces_by_dim[cx.n - k]) {
            if (!cx.poly.is_decomposition_face(fi)) continue;
            total += std::int64_t(1) << (cx.c - k);
            if (total > cell_budget)
                throw std::runtime_error("cell budget exceeded: more than " +
                                         std::to_string(cell_budget) + " cells");
        }
    }

    cx.cells.assign(cx.n + 1, {});
    cx.boundary.assign(cx.n + 1, {});
    for (int k = 0; k <= cx.n; ++k) {
        for (int fi : cx.poly.faces_by_dim[cx.n - k]) {
            if (!cx.poly.is_decomposition_face(fi)) continue;
            const auto& s = cx.poly.faces[fi].facets;
            std::uint32_t used = 0;
            for (int f : s) {
                if (used & (1u << col.colour[f]))
                    throw std::runtime_error("face with repeated colours cannot be dualized");
                used |= 1u << col.colour[f];
            }
            std::vector<int> free;
            for (int cc = 0; cc < cx.c; ++cc)
                if (!(used & (1u << cc))) free.push_back(cc);
            // reps in increasing packed order
            for (std::uint32_t m = 0; m < (1u << free.size()); ++m) {
                std::uint32_t rep = 0;
                for (size_t b = 0; b < free.size(); ++b)
                    if (m & (1u << b)) rep |= 1u << free[b];
                cx.cells[k].push_back(CubeCell{fi, rep});
            }
        }
    }

    // Boundary maps. The k-cube at (F, rep) spans the colours of F's facets
    // in ascending order; freezing the j-th spanned colour (1-based) at
    // epsilon gives the face dual to S(F) minus that facet, with sign
    // (-1)^(j+epsilon).
    for (int k = 1; k <= cx.n; ++k) {
        cx.boundary[k].resize(cx.cells[k].size());
        for (size_t i = 0; i < cx.cells[k].size(); ++i) {
            const CubeCell& cell = cx.cells[k][i];
            const auto& s = cx.poly.faces[cell.face].facets;
            std::vector<std::pair<int, int>> by_colour;  // (colour, facet)
            for (int f : s) by_colour.emplace_back(col.colour[f], f);
            std::sort(by_colour.begin(), by_colour.end());
            for (int j = 1; j <= k; ++j) {
                auto [cc, facet] = by_colour[j - 1];
                std::vector<int> sub;
                for (int f : s)
                    if (f != facet) sub.push_back(f);
                int gface = cx.poly.face_with_set(sub);
                if (gface < 0)
                    throw std::runtime_error("missing boundary face below face id " +
                                             std::to_string(cell.face));
                for (int eps = 0; eps <= 1; ++eps) {
                    std::uint32_t rep = cell.rep | (static_cast<std::uint32_t>(eps) << cc);
                    int target = cx.cell_index(k - 1, gface, rep);
                    int sign = ((j + eps) % 2 == 0) ? 1 : -1;
                    cx.boundary[k][i].emplace_back(target, sign);
                }
            }
        }
    }

    // d o d = 0, checked cell by cell.
    for (int k = 2; k <= cx.n; ++k) {
        for (size_t i = 0; i < cx.cells[k].size(); ++i) {
            std::map<int, int> acc;
            for (auto [j, s1] : cx.boundary[k][i])
                for (auto [l, s2] : cx.boundary[k - 1][j]) acc[l] += s1 * s2;
            for (auto [l, v] : acc)
                if (v != 0) throw std::logic_error("boundary of boundary is nonzero");
        }
    }

    // Alternating sum must match 2^c times the orbifold Euler characteristic.
    Rational expect = orbifold_euler(p) * Rational(std::int64_t(1) << cx.c);
    if (!expect.is_integer() || expect != Rational(cx.alternating_cell_sum()))
        throw std::logic_error("cell census disagrees with the orbifold Euler characteristic");

    // Spanning tree of the 1-skeleton for period evaluation.
    const std::uint32_t nv = 1u << cx.c;
    cx.skeleton.tree_edge.assign(nv, -1);
    cx.skeleton.tree_sign.assign(nv, 0);
    std::vector<char> seen(nv, 0);
    std::vector<std::vector<std::pair<int, std::uint32_t>>> star(nv);  // vertex -> (edge, other)
    for (size_t e = 0; e < cx.cells[1].size(); ++e) {
        std::uint32_t tail = cx.cells[1][e].rep;
        std::uint32_t head = tail | (1u << col.colour[cx.edge_facet(static_cast<int>(e))]);
        star[tail].emplace_back(static_cast<int>(e), head);
        star[head].emplace_back(static_cast<int>(e), tail);
    }
    std::vector<std::uint32_t> queue{0};
    seen[0] = 1;
    std::vector<char> in_tree(cx.cells[1].size(), 0);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        std::uint32_t v = queue[qi];
        for (auto [e, w] : star[v]) {
            if (seen[w]) continue;
            seen[w] = 1;
            in_tree[e] = 1;
            cx.skeleton.tree_edge[w] = e;
            cx.skeleton.tree_sign[w] = (cx.cells[1][e].rep == v) ? 1 : -1;
            queue.push_back(w);
        }
    }
    for (std::uint32_t v = 0; v < nv; ++v)
        if (!seen[v]) throw std::logic_error("cube complex 1-skeleton is disconnected");
    for (size_t e = 0; e < cx.cells[1].size(); ++e)
        if (!in_tree[e]) cx.skeleton.nontree_edges.push_back(static_cast<int>(e));

    return cx;
}

std::vector<int> betti_numbers(const CubeComplex& cx, int threads) {
    std::vector<int> ranks(cx.n + 2, 0);
    for (int k = 1; k <= cx.n; ++k) {
        if (cx.cells[k].empty() || cx.cells[k - 1].empty()) continue;
        ranks[k] = rank_exact(cx.boundary_matrix(k), threads);
    }
    std::vector<int> betti(cx.n + 1, 0);
    for (int k = 0; k <= cx.n; ++k)
        betti[k] = static_cast<int>(cx.cells[k].size()) - ranks[k] - ranks[k + 1];
    return betti;
}

CuspCensus cusp_census(const Polytope& p, const Colouring& col) {
    CuspCensus census;
    const std::uint32_t nv = 1u << col.colours;
    for (int vi : p.ideal_vertex_ids) {
        std::vector<int> parent(nv);
        for (std::uint32_t v = 0; v < nv; ++v) parent[v] = static_cast<int>(v);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int f : p.faces[vi].facets) {
            std::uint32_t bit = 1u << col.colour[f];
            for (std::uint32_t v = 0; v < nv; ++v) {
                int a = find(static_cast<int>(v));
                int b = find(static_cast<int>(v ^ bit));
                if (a != b) parent[a] = b;
            }
        }
        std::map<int, int> roots;
        std::vector<int> comp(nv);
        for (std::uint32_t v = 0; v < nv; ++v) {
            int r = find(static_cast<int>(v));
            auto [it, fresh] = roots.emplace(r, static_cast<int>(roots.size()));
            comp[v] = it->second;
            (void)fresh;
        }
        census.per_ideal_vertex.push_back(static_cast<int>(roots.size()));
        census.component.push_back(std::move(comp));
        census.ideal_vertex_face.push_back(vi);
        census.cusps += census.per_ideal_vertex.back();
    }
    return census;
}

PeriodReport periods_and_levels(const CubeComplex& cx, const RealState& s) {
    if (static_cast<int>(s.value.size()) != cx.poly.facet_count)
        throw std::runtime_error("state does not cover all facets");
    const std::uint32_t nv = 1u << cx.c;

    // Tree potentials from vertex 0.
    std::vector<Rational> level(nv, Rational(0));
    // process vertices in BFS order: repeated sweeps are fine at this size
    std::vector<char> done(nv, 0);
    done[0] = 1;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::uint32_t v = 1; v < nv; ++v) {
            if (done[v]) continue;
            int e = cx.skeleton.tree_edge[v];
            if (e < 0) continue;
            std::uint32_t tail = cx.cells[1][e].rep;
            std::uint32_t head = tail | (1u << cx.col.colour[cx.edge_facet(e)]);
            std::uint32_t other = (v == head) ? tail : head;
            if (!done[other]) continue;
            Rational val = s.value[cx.edge_facet(e)];
            level[v] = (v == head) ? level[other] + val : level[other] - val;
            done[v] = 1;
            progress = true;
        }
    }

    PeriodReport report;
    report.integral = true;
    for (int e : cx.skeleton.nontree_edges) {
        std::uint32_t tail = cx.cells[1][e].rep;
        std::uint32_t head = tail | (1u << cx.col.colour[cx.edge_facet(e)]);
        Rational period = s.value[cx.edge_facet(e)] + level[tail] - level[head];
        if (!period.is_integer()) report.integral = false;
        report.periods.push_back(period);
    }
    if (report.integral) {
        report.levels.resize(nv);
        for (std::uint32_t v = 0; v < nv; ++v) report.levels[v] = level[v].mod1();
    }
    return report;
}

bool cusp_restriction_trivial(const CubeComplex& cx, const RealState& s, int cusp_id) {
    CuspCensus census = cusp_census(cx.poly, cx.col);
    if (cusp_id < 0 || cusp_id >= census.cusps) throw std::runtime_error("invalid cusp id");
    // locate (ideal vertex, component)
    int iv = 0, comp = cusp_id;
    while (comp >= census.per_ideal_vertex[iv]) {
        comp -= census.per_ideal_vertex[iv];
        ++iv;
    }
    int vface = census.ideal_vertex_face[iv];
    const std::uint32_t nv = 1u << cx.c;

    // Sub-1-skeleton: for each facet containing the ideal vertex, edges
    // v -> v + e_colour for vertices in the chosen component.
    std::vector<std::optional<Rational>> pot(nv);
    std::vector<std::uint32_t> stack;
    std::uint32_t root = 0;
    bool found = false;
    for (std::uint32_t v = 0; v < nv && !found; ++v)
        if (census.component[iv][v] == comp) {
            root = v;
            found = true;
        }
    if (!found) throw std::logic_error("cusp component is empty");
    pot[root] = Rational(0);
    stack.push_back(root);
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        for (int f : cx.poly.faces[vface].facets) {
            std::uint32_t bit = 1u << cx.col.colour[f];
            std::uint32_t w = v ^ bit;
            // edge value respects the canonical orientation (0 side -> 1 side)
            Rational delta = (v & bit) ? -s.value[f] : s.value[f];
            Rational pw = *pot[v] + delta;
            if (!pot[w]) {
                pot[w] = pw;
                stack.push_back(w);
            } else if (*pot[w] != pw) {
                return false;  // nonzero period on a cusp cycle
            }
        }
    }
    return true;
}

}  // namespace morsecube
