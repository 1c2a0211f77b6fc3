#include "morsecube/fiber.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "morsecube/morse.hpp"

namespace morsecube {

namespace {

int find_corner(const std::array<int, 3>& base, int vertex_face) {
    for (int k = 0; k < 3; ++k)
        if (base[k] == vertex_face) return k + 1;  // corner 0 is the apex
    throw std::logic_error("vertex is not a corner of the triangle");
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

int perm_sign(const std::array<std::uint8_t, 4>& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

SeparatingSurface separating_surface(const Polytope& p, const Colouring& col, const RealState& s,
                                     std::uint32_t v) {
    if (p.dim != 4) throw std::runtime_error("separating surfaces need a 4-dimensional polytope");
    if (!s.nowhere_vanishing()) throw std::runtime_error("state vanishes on some facet");

    auto status = statuses(col, s, v);
    SeparatingSurface surf;
    surf.vertex = v;

    for (int fi : p.faces_by_dim[2]) {
        const auto& fs = p.faces[fi].facets;
        if (fs.size() != 2) continue;  // ideal-vertex-style faces cannot occur in dim 2
        if (static_cast<int>(p.vertices_of_face[fi].size()) != 3)
            throw std::runtime_error("unsupported polytope: non-triangular 2-face");
        if (status[fs[0]] != status[fs[1]]) surf.triangles.push_back(fi);
    }
    std::sort(surf.triangles.begin(), surf.triangles.end());

    // Edges: each polytope edge lies in three facets, giving three 2-faces;
    // a non-constant status yields exactly two separating ones.
    std::vector<char> separating(p.faces.size(), 0);
    for (int t : surf.triangles) separating[t] = 1;
    std::vector<char> vertex_used(p.faces.size(), 0);
    for (int ei : p.faces_by_dim[1]) {
        const auto& es = p.faces[ei].facets;  // three facets
        std::vector<int> inc;
        for (size_t a = 0; a < es.size(); ++a)
            for (size_t b = a + 1; b < es.size(); ++b) {
                int t = p.face_with_set({std::min(es[a], es[b]), std::max(es[a], es[b])});
                if (t >= 0 && separating[t]) inc.push_back(t);
            }
        if (inc.empty()) continue;
        if (inc.size() != 2)
            throw std::runtime_error("edge with " + std::to_string(inc.size()) +
                                     " incident separating triangles");
        surf.edge_triangles[ei] = {inc[0], inc[1]};
    }
    surf.edge_count = static_cast<int>(surf.edge_triangles.size());
    for (int t : surf.triangles)
        for (int vf : p.vertices_of_face[t]) vertex_used[vf] = 1;
    for (size_t i = 0; i < vertex_used.size(); ++i) surf.vertex_count += vertex_used[i];
    return surf;
}

void finalize_triangulation(FiberTriangulation& t) {
    t.tet_count = static_cast<int>(t.glue.size());
    if (static_cast<int>(t.corner_kind.size()) != t.tet_count)
        throw std::runtime_error("corner kinds missing");
    for (int i = 0; i < t.tet_count; ++i) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.glue[i][f];
            if (g.neighbor < 0 || g.neighbor >= t.tet_count)
                throw std::runtime_error("face " + std::to_string(f) + " of tetrahedron " +
                                         std::to_string(i) + " is unglued");
            // involution: partner's record must point back with the inverse
            const auto& back = t.glue[g.neighbor][g.perm[f]];
            if (back.neighbor != i)
                throw std::runtime_error("gluing is not an involution");
            for (int x = 0; x < 4; ++x)
                if (back.perm[g.perm[x]] != x)
                    throw std::runtime_error("gluing permutations are not mutually inverse");
            if ((g.neighbor == i && g.perm[f] == static_cast<std::uint8_t>(f)))
                throw std::runtime_error("face glued to itself");
        }
    }

    // Vertex classes: corners identified across glued faces.
    UnionFind uf(4 * t.tet_count);
    for (int i = 0; i < t.tet_count; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.glue[i][f];
            for (int x = 0; x < 4; ++x)
                if (x != f) uf.unite(4 * i + x, 4 * g.neighbor + g.perm[x]);
        }
    t.corner_class.assign(t.tet_count, {});
    std::map<int, int> roots;
    for (int i = 0; i < t.tet_count; ++i)
        for (int x = 0; x < 4; ++x) {
            int r = uf.find(4 * i + x);
            auto [it, fresh] = roots.emplace(r, static_cast<int>(roots.size()));
            (void)fresh;
            t.corner_class[i][x] = it->second;
        }
    t.class_count = static_cast<int>(roots.size());
    t.class_kind.assign(t.class_count, CornerKind::finite);
    std::vector<char> seen(t.class_count, 0);
    for (int i = 0; i < t.tet_count; ++i)
        for (int x = 0; x < 4; ++x) {
            int cls = t.corner_class[i][x];
            if (!seen[cls]) {
                seen[cls] = 1;
                t.class_kind[cls] = t.corner_kind[i][x];
            } else if (t.class_kind[cls] != t.corner_kind[i][x]) {
                throw std::runtime_error("vertex class mixes corner kinds");
            }
        }
}

FiberTriangulation build_fiber(const Polytope& p, const Colouring& col, const RealState& s,
                               const Rational& level) {
    CubeComplex cx = build_cube_complex(p, col);
    RealState s_eff = s;
    if (s.plus_minus_one())
        for (auto& v : s_eff.value) v = v * Rational(1, 2);
    PeriodReport periods = periods_and_levels(cx, s_eff);
    if (!periods.integral)
        throw std::runtime_error("state class is not integral; no circle-valued map");

    Rational target = level.mod1();
    std::vector<std::uint32_t> owners;
    for (std::uint32_t v = 0; v < (1u << cx.c); ++v)
        if (periods.levels[v] == target) owners.push_back(v);
    if (owners.empty()) throw std::runtime_error("no vertex of the cube complex at this level");

    FiberTriangulation tri;
    std::map<std::pair<std::uint32_t, int>, int> tet_id;
    std::map<std::uint32_t, SeparatingSurface> surfaces;
    for (std::uint32_t v : owners) {
        SeparatingSurface surf = separating_surface(p, col, s, v);
        if (surf.triangles.empty())
            throw std::runtime_error("empty separating surface at a level vertex");
        for (int t : surf.triangles) {
            FiberTriangulation::TetInfo info;
            info.owner = v;
            info.triangle_face = t;
            const auto& verts = p.vertices_of_face[t];
            info.base_vertices = {verts[0], verts[1], verts[2]};
            tet_id[{v, t}] = static_cast<int>(tri.info.size());
            tri.info.push_back(info);
        }
        surfaces.emplace(v, std::move(surf));
    }

    const int n = static_cast<int>(tri.info.size());
    tri.glue.assign(n, {});
    tri.corner_kind.assign(n, {});
    for (int i = 0; i < n; ++i) {
        tri.corner_kind[i][0] = CornerKind::apex;
        for (int k = 0; k < 3; ++k) {
            int vf = tri.info[i].base_vertices[k];
            tri.corner_kind[i][k + 1] =
                p.faces[vf].ideal ? CornerKind::ideal : CornerKind::finite;
        }
    }

    for (int i = 0; i < n; ++i) {
        const auto& info = tri.info[i];
        const auto& tfacets = p.faces[info.triangle_face].facets;  // two containing facets

        // Base face (opposite the apex): partner tetrahedron over the owner
        // shifted by both facet colours; the triangle and its corner order
        // agree, so the permutation is the identity.
        std::uint32_t shift = (1u << col.colour[tfacets[0]]) ^ (1u << col.colour[tfacets[1]]);
        auto base_it = tet_id.find({info.owner ^ shift, info.triangle_face});
        if (base_it == tet_id.end())
            throw std::runtime_error("base partner tetrahedron missing");
        tri.glue[i][0].neighbor = base_it->second;
        tri.glue[i][0].perm = {0, 1, 2, 3};

        // Lateral faces: apex plus an edge of the triangle, glued to the
        // other separating triangle at that polytope edge.
        const SeparatingSurface& surf = surfaces.at(info.owner);
        for (const auto& [edge_face, pair] : surf.edge_triangles) {
            if (pair[0] != info.triangle_face && pair[1] != info.triangle_face) continue;
            int other = pair[0] == info.triangle_face ? pair[1] : pair[0];
            int j = tet_id.at({info.owner, other});
            // the edge's two vertices, shared by both triangles
            const auto& edge_verts = p.vertices_of_face[edge_face];
            int omit_mine = -1, omit_theirs = -1;
            for (int k = 0; k < 3; ++k) {
                int vf = tri.info[i].base_vertices[k];
                if (std::find(edge_verts.begin(), edge_verts.end(), vf) == edge_verts.end())
                    omit_mine = k + 1;
                int wf = tri.info[j].base_vertices[k];
                if (std::find(edge_verts.begin(), edge_verts.end(), wf) == edge_verts.end())
                    omit_theirs = k + 1;
            }
            std::array<std::uint8_t, 4> perm{};
            perm[0] = 0;
            perm[omit_mine] = static_cast<std::uint8_t>(omit_theirs);
            for (int k = 0; k < 3; ++k) {
                int vf = tri.info[i].base_vertices[k];
                if (k + 1 == omit_mine) continue;
                perm[k + 1] = static_cast<std::uint8_t>(find_corner(tri.info[j].base_vertices, vf));
            }
            tri.glue[i][omit_mine].neighbor = j;
            tri.glue[i][omit_mine].perm = perm;
        }
    }

    finalize_triangulation(tri);
    return tri;
}

namespace {

// Edge-end classes refine vertex links: (tet, corner at the vertex, other
// corner of the edge). Used for link Euler characteristics.
struct EdgeEnds {
    UnionFind uf;
    explicit EdgeEnds(const FiberTriangulation& t) : uf(16 * t.tet_count) {
        for (int i = 0; i < t.tet_count; ++i)
            for (int f = 0; f < 4; ++f) {
                const auto& g = t.glue[i][f];
                for (int a = 0; a < 4; ++a) {
                    if (a == f) continue;
                    for (int b = 0; b < 4; ++b) {
                        if (b == f || b == a) continue;
                        uf.unite(16 * i + 4 * a + b,
                                 16 * g.neighbor + 4 * g.perm[a] + g.perm[b]);
                    }
                }
            }
    }
};

}  // namespace

FiberReport fiber_report(const FiberTriangulation& t) {
    FiberReport rep;
    rep.tets = t.tet_count;

    // Connected components of the dual graph.
    UnionFind comp(t.tet_count);
    for (int i = 0; i < t.tet_count; ++i)
        for (int f = 0; f < 4; ++f) comp.unite(i, t.glue[i][f].neighbor);
    std::vector<char> root_seen(t.tet_count, 0);
    for (int i = 0; i < t.tet_count; ++i) root_seen[comp.find(i)] = 1;
    for (int i = 0; i < t.tet_count; ++i) rep.components += root_seen[i];

    // Orientability: tetra orientations o with o(t) * o(t') = -sign(perm).
    std::vector<int> orient(t.tet_count, 0);
    rep.orientable = true;
    for (int start = 0; start < t.tet_count && rep.orientable; ++start) {
        if (orient[start] != 0) continue;
        orient[start] = 1;
        std::vector<int> queue{start};
        for (size_t qi = 0; qi < queue.size() && rep.orientable; ++qi) {
            int i = queue[static_cast<int>(qi)];
            for (int f = 0; f < 4; ++f) {
                const auto& g = t.glue[i][f];
                int want = -orient[i] * perm_sign(g.perm);
                if (orient[g.neighbor] == 0) {
                    orient[g.neighbor] = want;
                    queue.push_back(g.neighbor);
                } else if (orient[g.neighbor] != want) {
                    rep.orientable = false;
                    break;
                }
            }
        }
    }

    // Edge classes and valences. An edge inside a tet is an unordered corner
    // pair; each tet contributes each of its 6 edges once.
    auto pair_id = [](int a, int b) {
        if (a > b) std::swap(a, b);
        static const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return idx[a][b];
    };
    UnionFind edges(6 * t.tet_count);
    for (int i = 0; i < t.tet_count; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.glue[i][f];
            for (int a = 0; a < 4; ++a) {
                if (a == f) continue;
                for (int b = a + 1; b < 4; ++b) {
                    if (b == f) continue;
                    edges.unite(6 * i + pair_id(a, b),
                                6 * g.neighbor + pair_id(g.perm[a], g.perm[b]));
                }
            }
        }
    std::map<int, int> edge_size;
    for (int i = 0; i < 6 * t.tet_count; ++i) ++edge_size[edges.find(i)];
    for (auto [root, size] : edge_size) ++rep.valence_histogram[size];

    // Vertex classes with link Euler characteristics.
    rep.vertex_classes = t.class_count;
    for (int cls = 0; cls < t.class_count; ++cls) {
        if (t.class_kind[cls] == CornerKind::apex) ++rep.apex_classes;
        if (t.class_kind[cls] == CornerKind::ideal) ++rep.ideal_classes;
    }
    EdgeEnds ends(t);
    // per class: faces = corners, edges = 3*corners/2, vertices = end classes
    std::vector<int> corners_in(t.class_count, 0);
    std::vector<std::map<int, char>> end_roots(t.class_count);
    UnionFind& euf = ends.uf;
    for (int i = 0; i < t.tet_count; ++i)
        for (int a = 0; a < 4; ++a) {
            int cls = t.corner_class[i][a];
            ++corners_in[cls];
            for (int b = 0; b < 4; ++b) {
                if (b == a) continue;
                end_roots[cls][euf.find(16 * i + 4 * a + b)] = 1;
            }
        }
    rep.all_links_tori = true;
    for (int cls = 0; cls < t.class_count; ++cls) {
        int lf = corners_in[cls];
        int le = 3 * lf;
        if (le % 2 != 0) throw std::logic_error("odd link edge incidences");
        le /= 2;
        int lv = static_cast<int>(end_roots[cls].size());
        int chi = lv - le + lf;
        rep.link_euler.push_back(chi);
        if (chi != 0) rep.all_links_tori = false;
    }

    // H1 of the space minus all vertex classes, via the dual 2-spine: one
    // generator per glued face pair, one relator per edge class.
    struct FacePair {
        int t0, f0, t1, f1;
    };
    std::vector<FacePair> pairs;
    std::vector<std::vector<int>> pair_of(t.tet_count, std::vector<int>(4, -1));
    for (int i = 0; i < t.tet_count; ++i)
        for (int f = 0; f < 4; ++f) {
            if (pair_of[i][f] >= 0) continue;
            const auto& g = t.glue[i][f];
            pair_of[i][f] = static_cast<int>(pairs.size());
            pair_of[g.neighbor][g.perm[f]] = static_cast<int>(pairs.size());
            pairs.push_back({i, f, g.neighbor, g.perm[f]});
        }

    // spanning forest of the dual graph over the face-pair generators
    std::vector<char> tree(pairs.size(), 0);
    std::vector<char> visited(t.tet_count, 0);
    for (int start = 0; start < t.tet_count; ++start) {
        if (visited[start]) continue;
        visited[start] = 1;
        std::vector<int> queue{start};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int i = queue[qi];
            for (int f = 0; f < 4; ++f) {
                int nb = t.glue[i][f].neighbor;
                if (!visited[nb]) {
                    visited[nb] = 1;
                    tree[pair_of[i][f]] = 1;
                    queue.push_back(nb);
                }
            }
        }
    }
    std::vector<int> loop_index(pairs.size(), -1);
    int loops = 0;
    for (size_t k = 0; k < pairs.size(); ++k)
        if (!tree[k]) loop_index[k] = loops++;

    // Walk around each edge class, accumulating signed loop generators.
    SparseIntMat relators;
    relators.cols = loops;
    std::vector<char> visited_inc(6 * t.tet_count, 0);
    int relator_count = 0;
    for (int i0 = 0; i0 < t.tet_count; ++i0) {
        for (int a0 = 0; a0 < 4; ++a0)
            for (int b0 = a0 + 1; b0 < 4; ++b0) {
                if (visited_inc[6 * i0 + pair_id(a0, b0)]) continue;
                std::map<int, std::int64_t> word;
                int i = i0, a = a0, b = b0;
                // exit through one of the two faces containing the edge
                int f = 0;
                while (f == a || f == b) ++f;
                int start_f = f;
                do {
                    visited_inc[6 * i + pair_id(a, b)] = 1;
                    int k = pair_of[i][f];
                    if (!tree[k]) {
                        // +1 when crossing from the pair's recorded first side
                        int sign = (pairs[k].t0 == i && pairs[k].f0 == f) ? 1 : -1;
                        // self-gluings crossed from coincident sides count once
                        word[loop_index[k]] += sign;
                    }
                    const auto& g = t.glue[i][f];
                    int ni = g.neighbor;
                    int na = g.perm[a], nb = g.perm[b], arrived = g.perm[f];
                    int nf = 0;
                    while (nf == na || nf == nb || nf == arrived) ++nf;
                    i = ni;
                    a = std::min(na, nb);
                    b = std::max(na, nb);
                    f = nf;
                } while (!(i == i0 && ((a == a0 && b == b0)) && f == start_f));
                for (auto [gen, coeff] : word)
                    relators.add(relator_count, gen, coeff);
                ++relator_count;
            }
    }
    relators.rows = relator_count;

    auto factors = smith_invariant_factors(relators);
    int rank = 0;
    for (const auto& d : factors) {
        if (d == 0) continue;
        ++rank;
        if (d > 1) rep.h1_torsion.push_back(static_cast<std::int64_t>(d));
    }
    rep.h1_rank = loops - rank;
    std::ostringstream h1;
    if (rep.h1_rank == 0 && rep.h1_torsion.empty()) {
        h1 << "0";
    } else {
        if (rep.h1_rank == 1) h1 << "Z";
        if (rep.h1_rank > 1) h1 << "Z^" << rep.h1_rank;
        for (auto d : rep.h1_torsion) {
            if (h1.tellp() > 0) h1 << " + ";
            h1 << "Z/" << d;
        }
    }
    rep.h1 = h1.str();
    return rep;
}

bool FiberReport::same_profile(const FiberReport& o) const {
    return tets == o.tets && components == o.components && orientable == o.orientable &&
           valence_histogram == o.valence_histogram && vertex_classes == o.vertex_classes &&
           apex_classes == o.apex_classes && ideal_classes == o.ideal_classes &&
           all_links_tori == o.all_links_tori && h1_rank == o.h1_rank &&
           h1_torsion == o.h1_torsion;
}

std::string write_triangulation(const FiberTriangulation& t) {
    std::ostringstream out;
    out << "tets " << t.tet_count << "\n";
    for (int i = 0; i < t.tet_count; ++i) {
        out << i << " :";
        for (int f = 0; f < 4; ++f) out << " " << t.glue[i][f].neighbor;
        out << " :";
        for (int f = 0; f < 4; ++f) {
            out << " ";
            for (int x = 0; x < 4; ++x) out << static_cast<int>(t.glue[i][f].perm[x]);
        }
        out << "\n";
    }
    out << "vertices:\n";
    for (int cls = 0; cls < t.class_count; ++cls) {
        out << cls << " :";
        switch (t.class_kind[cls]) {
            case CornerKind::apex: out << " apex"; break;
            case CornerKind::ideal: out << " ideal"; break;
            case CornerKind::finite: out << " finite"; break;
        }
        out << " :";
        for (int i = 0; i < t.tet_count; ++i)
            for (int x = 0; x < 4; ++x)
                if (t.corner_class[i][x] == cls) out << " " << i << "." << x;
        out << "\n";
    }
    return out.str();
}

void export_triangulation(const FiberTriangulation& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write triangulation file '" + path + "'");
    out << write_triangulation(t);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

FiberTriangulation parse_triangulation(std::istream& in) {
    FiberTriangulation t;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": " + msg);
    };
    int ntets = -1;
    bool in_vertices = false;
    std::vector<std::pair<int, CornerKind>> class_flags;  // (class id, kind)
    std::vector<std::vector<std::pair<int, int>>> class_corners;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "tets") {
            if (!(ls >> ntets) || ntets < 0) fail("bad tetrahedron count");
            t.glue.assign(ntets, {});
            t.corner_kind.assign(ntets, {CornerKind::ideal, CornerKind::ideal, CornerKind::ideal,
                                         CornerKind::ideal});
            continue;
        }
        if (word == "vertices:") {
            in_vertices = true;
            continue;
        }
        if (!in_vertices) {
            if (ntets < 0) fail("tetrahedron record before 'tets'");
            int i = std::stoi(word);
            if (i < 0 || i >= ntets) fail("tetrahedron index out of range");
            std::string colon;
            if (!(ls >> colon) || colon != ":") fail("expected ':'");
            for (int f = 0; f < 4; ++f)
                if (!(ls >> t.glue[i][f].neighbor)) fail("expected four neighbors");
            if (!(ls >> colon) || colon != ":") fail("expected second ':'");
            for (int f = 0; f < 4; ++f) {
                std::string perm;
                if (!(ls >> perm) || perm.size() != 4) fail("expected 4-digit permutation");
                std::array<char, 4> seen{0, 0, 0, 0};
                for (int x = 0; x < 4; ++x) {
                    if (perm[x] < '0' || perm[x] > '3') fail("bad permutation digit");
                    t.glue[i][f].perm[x] = static_cast<std::uint8_t>(perm[x] - '0');
                    seen[perm[x] - '0'] = 1;
                }
                if (!(seen[0] && seen[1] && seen[2] && seen[3])) fail("not a permutation");
            }
        } else {
            int cls = std::stoi(word);
            std::string colon, kind;
            if (!(ls >> colon) || colon != ":") fail("expected ':'");
            if (!(ls >> kind)) fail("expected vertex kind");
            CornerKind k;
            if (kind == "apex")
                k = CornerKind::apex;
            else if (kind == "ideal")
                k = CornerKind::ideal;
            else if (kind == "finite")
                k = CornerKind::finite;
            else
                fail("unknown vertex kind '" + kind + "'");
            class_flags.emplace_back(cls, k);
            std::vector<std::pair<int, int>> corners;
            if ((ls >> colon) && colon == ":") {
                std::string token;
                while (ls >> token) {
                    auto dot = token.find('.');
                    if (dot == std::string::npos) fail("expected tet.corner token");
                    corners.emplace_back(std::stoi(token.substr(0, dot)),
                                         std::stoi(token.substr(dot + 1)));
                }
            }
            class_corners.push_back(std::move(corners));
        }
    }
    if (ntets < 0) throw std::runtime_error("missing 'tets' line");
    // assign corner kinds from the class listing
    for (size_t k = 0; k < class_flags.size(); ++k)
        for (auto [i, x] : class_corners[k]) {
            if (i < 0 || i >= ntets || x < 0 || x > 3)
                throw std::runtime_error("corner reference out of range in vertex section");
            t.corner_kind[i][x] = class_flags[k].second;
        }
    finalize_triangulation(t);
    return t;
}

FiberTriangulation import_triangulation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open triangulation file '" + path + "'");
    try {
        return parse_triangulation(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

namespace {

// Deterministic BFS relabeling from a chosen start tet and corner bijection.
std::string encoding_from(const FiberTriangulation& t, int start,
                          const std::array<std::uint8_t, 4>& sigma) {
    std::vector<int> new_index(t.tet_count, -1);
    std::vector<std::array<std::uint8_t, 4>> relabel(t.tet_count);  // old corner -> new corner
    std::vector<int> order;
    new_index[start] = 0;
    relabel[start] = sigma;
    order.push_back(start);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int i = order[qi];
        // visit faces in new-label order
        std::array<int, 4> old_face{};
        for (int x = 0; x < 4; ++x) old_face[relabel[i][x]] = x;
        for (int nf = 0; nf < 4; ++nf) {
            int f = old_face[nf];
            const auto& g = t.glue[i][f];
            if (new_index[g.neighbor] < 0) {
                new_index[g.neighbor] = static_cast<int>(order.size());
                // new labels of the neighbor: corner p[x] gets label of x
                for (int x = 0; x < 4; ++x) relabel[g.neighbor][g.perm[x]] = relabel[i][x];
                order.push_back(g.neighbor);
            }
        }
    }
    std::ostringstream enc;
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int i = order[qi];
        std::array<int, 4> old_face{};
        for (int x = 0; x < 4; ++x) old_face[relabel[i][x]] = x;
        for (int nf = 0; nf < 4; ++nf) {
            int f = old_face[nf];
            const auto& g = t.glue[i][f];
            enc << new_index[g.neighbor] << ":";
            std::array<int, 4> np{};
            for (int x = 0; x < 4; ++x) np[relabel[i][x]] = relabel[g.neighbor][g.perm[x]];
            for (int x = 0; x < 4; ++x) enc << np[x];
            enc << " ";
        }
        for (int nx = 0; nx < 4; ++nx) {
            int x = old_face[nx];
            enc << static_cast<int>(t.corner_kind[i][x]);
        }
        enc << "|";
    }
    return enc.str();
}

std::string canonical_encoding(const FiberTriangulation& t) {
    if (t.tet_count == 0) return "";
    std::string best;
    std::array<std::uint8_t, 4> sigma{0, 1, 2, 3};
    std::sort(sigma.begin(), sigma.end());
    do {
        std::string enc = encoding_from(t, 0, sigma);
        if (best.empty() || enc < best) best = enc;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    // other start tets can only matter across components or symmetry; try all
    for (int start = 1; start < t.tet_count; ++start) {
        std::array<std::uint8_t, 4> s2{0, 1, 2, 3};
        do {
            std::string enc = encoding_from(t, start, s2);
            if (enc < best) best = enc;
        } while (std::next_permutation(s2.begin(), s2.end()));
    }
    return best;
}

}  // namespace

bool isomorphic(const FiberTriangulation& a, const FiberTriangulation& b) {
    if (a.tet_count != b.tet_count) return false;
    return canonical_encoding(a) == canonical_encoding(b);
}

}  // namespace morsecube
