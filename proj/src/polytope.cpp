#include "morsecube/polytope.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace morsecube {

namespace {

std::string set_str(const std::vector<int>& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

}  // namespace

int Polytope::face_with_set(const std::vector<int>& sorted_set) const {
    auto it = face_by_set.find(sorted_set);
    return it == face_by_set.end() ? -1 : it->second;
}

void Polytope::finalize() {
    for (auto& f : faces) std::sort(f.facets.begin(), f.facets.end());
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.facets != b.facets) return a.facets < b.facets;
        return a.ideal < b.ideal;
    });

    faces_by_dim.assign(dim + 1, {});
    face_by_set.clear();
    finite_vertex_ids.clear();
    ideal_vertex_ids.clear();
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
        const Face& f = faces[i];
        if (f.dim < 0 || f.dim > dim) throw std::runtime_error("face with dimension out of range");
        faces_by_dim[f.dim].push_back(i);
        if (f.dim == 0) (f.ideal ? ideal_vertex_ids : finite_vertex_ids).push_back(i);
        if (is_decomposition_face(i) && static_cast<int>(f.facets.size()) == dim - f.dim)
            face_by_set[f.facets] = i;
    }

    // Vertex-in-face incidence: v lies on F iff facets(F) is a subset of
    // facets(v). Works for ideal vertices too.
    vertices_of_face.assign(faces.size(), {});
    std::vector<int> vertex_ids = finite_vertex_ids;
    vertex_ids.insert(vertex_ids.end(), ideal_vertex_ids.begin(), ideal_vertex_ids.end());
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
        const auto& fs = faces[fi].facets;
        if (faces[fi].dim == 0) {
            vertices_of_face[fi] = {fi};
            continue;
        }
        for (int vi : vertex_ids) {
            const auto& vs = faces[vi].facets;
            if (std::includes(vs.begin(), vs.end(), fs.begin(), fs.end()))
                vertices_of_face[fi].push_back(vi);
        }
        std::sort(vertices_of_face[fi].begin(), vertices_of_face[fi].end());
    }
}

std::vector<std::vector<int>> Colouring::classes() const {
    std::vector<std::vector<int>> cls(colours);
    for (int f = 0; f < static_cast<int>(colour.size()); ++f) {
        if (colour[f] < 0 || colour[f] >= colours)
            throw std::runtime_error("facet " + std::to_string(f) + " has colour out of range");
        cls[colour[f]].push_back(f);
    }
    return cls;
}

std::vector<std::uint64_t> Colouring::class_masks(int facet_count) const {
    std::vector<std::uint64_t> masks(colours, 0);
    for (int f = 0; f < facet_count; ++f) masks[colour[f]] |= std::uint64_t(1) << f;
    return masks;
}

std::vector<std::vector<char>> adjacency_from_faces(const Polytope& p) {
    std::vector<std::vector<char>> adj(p.facet_count, std::vector<char>(p.facet_count, 0));
    for (const Face& f : p.faces) {
        if (f.dim != p.dim - 2 || f.facets.size() != 2) continue;
        adj[f.facets[0]][f.facets[1]] = 1;
        adj[f.facets[1]][f.facets[0]] = 1;
    }
    return adj;
}

void validate(const Polytope& p) {
    if (p.dim < 2 || p.dim > 4) throw std::runtime_error("polytope dimension must be 2..4");
    if (p.facet_count <= 0) throw std::runtime_error("polytope has no facets");
    if (static_cast<int>(p.adjacent.size()) != p.facet_count)
        throw std::runtime_error("adjacency table size mismatch");

    int whole = 0;
    std::set<std::pair<int, std::vector<int>>> seen;
    for (size_t i = 0; i < p.faces.size(); ++i) {
        const Face& f = p.faces[i];
        for (int v : f.facets)
            if (v < 0 || v >= p.facet_count)
                throw std::runtime_error("face " + set_str(f.facets) + " names an unknown facet");
        if (!std::is_sorted(f.facets.begin(), f.facets.end()) ||
            std::adjacent_find(f.facets.begin(), f.facets.end()) != f.facets.end())
            throw std::runtime_error("face " + set_str(f.facets) + " has repeated facets");
        if (f.facets.empty()) {
            if (f.dim != p.dim)
                throw std::runtime_error("face with empty facet set must be the polytope itself");
            ++whole;
            continue;
        }
        if (f.dim == p.dim) throw std::runtime_error("full-dimensional face with nonempty facet set");

        // Containing-set size: codim for decomposition faces, 2(n-1) for
        // ideal vertices.
        int expect = (f.dim == 0 && f.ideal) ? 2 * (p.dim - 1) : p.dim - f.dim;
        if (static_cast<int>(f.facets.size()) != expect)
            throw std::runtime_error("face " + set_str(f.facets) + " of dim " +
                                     std::to_string(f.dim) + " has " +
                                     std::to_string(f.facets.size()) + " containing facets, expected " +
                                     std::to_string(expect));
        if (!(f.dim == 0 && f.ideal)) {
            for (size_t a = 0; a < f.facets.size(); ++a)
                for (size_t b = a + 1; b < f.facets.size(); ++b)
                    if (!p.adjacent[f.facets[a]][f.facets[b]])
                        throw std::runtime_error("face " + set_str(f.facets) +
                                                 " spans non-adjacent facets " +
                                                 std::to_string(f.facets[a]) + "," +
                                                 std::to_string(f.facets[b]));
        }
        auto key = std::make_pair(f.dim, f.facets);
        if (!seen.insert(key).second)
            throw std::runtime_error("duplicate face " + set_str(f.facets));
    }
    if (whole != 1) throw std::runtime_error("expected exactly one full-dimensional face");

    // Gradedness via subset closure: every subset of a decomposition face's
    // containing set must itself be the set of a face.
    for (size_t i = 0; i < p.faces.size(); ++i) {
        const Face& f = p.faces[i];
        if (!(f.dim == 0 && f.ideal) && !f.facets.empty()) {
            const auto& s = f.facets;
            for (size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> sub;
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != drop) sub.push_back(s[j]);
                if (sub.empty()) continue;
                if (p.face_with_set(sub) < 0)
                    throw std::runtime_error("graded poset violated: face " + set_str(sub) +
                                             " missing below " + set_str(s));
            }
        }
    }

    // Adjacency must match the codimension-2 faces exactly.
    auto adj2 = adjacency_from_faces(p);
    for (int a = 0; a < p.facet_count; ++a) {
        if (p.adjacent[a][a]) throw std::runtime_error("facet adjacent to itself");
        for (int b = 0; b < p.facet_count; ++b) {
            if (p.adjacent[a][b] != p.adjacent[b][a])
                throw std::runtime_error("adjacency not symmetric");
            if (p.adjacent[a][b] != adj2[a][b])
                throw std::runtime_error("adjacency of facets " + std::to_string(a) + "," +
                                         std::to_string(b) + " disagrees with codim-2 faces");
        }
    }

    // Ideal vertex links must be combinatorial cubes: the containing facets
    // pair up into opposite (non-adjacent) pairs, all other pairs adjacent.
    for (int vi : p.ideal_vertex_ids) {
        const auto& s = p.faces[vi].facets;
        for (int f : s) {
            int opposite = 0;
            for (int g : s)
                if (g != f && !p.adjacent[f][g]) ++opposite;
            if (opposite != 1)
                throw std::runtime_error("ideal vertex " + set_str(s) +
                                         ": facet " + std::to_string(f) +
                                         " has " + std::to_string(opposite) +
                                         " opposite partners, expected 1");
        }
    }

    // Every finite vertex lies in exactly dim facets, pairwise adjacent
    // (covered above by the size and adjacency checks).
}

void validate_colouring(const Polytope& p, const Colouring& col) {
    if (static_cast<int>(col.colour.size()) != p.facet_count)
        throw std::runtime_error("colouring does not cover all facets");
    std::vector<char> used(col.colours, 0);
    for (int f = 0; f < p.facet_count; ++f) {
        if (col.colour[f] < 0 || col.colour[f] >= col.colours)
            throw std::runtime_error("facet " + std::to_string(f) + " has colour out of range");
        used[col.colour[f]] = 1;
    }
    for (int c = 0; c < col.colours; ++c)
        if (!used[c]) throw std::runtime_error("colour " + std::to_string(c + 1) + " is unused");
    for (int a = 0; a < p.facet_count; ++a)
        for (int b = a + 1; b < p.facet_count; ++b)
            if (p.adjacent[a][b] && col.colour[a] == col.colour[b])
                throw std::runtime_error("adjacent facets " + std::to_string(a) + "," +
                                         std::to_string(b) + " share colour " +
                                         std::to_string(col.colour[a] + 1));
}

Rational orbifold_euler(const Polytope& p) {
    Rational total(0);
    for (const Face& f : p.faces) {
        if (f.dim == 0 && f.ideal) continue;
        Rational term(1, std::int64_t(1) << (p.dim - f.dim));
        if (f.dim % 2 == 1) term = -term;
        total += term;
    }
    return total;
}

LoadedPolytope parse_polytope(std::istream& in) {
    Polytope p;
    Colouring col;
    bool have_dim = false, have_facets = false, have_colours = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "dim") {
            if (!(ls >> p.dim)) fail("expected dimension");
            have_dim = true;
        } else if (word == "facets") {
            if (!(ls >> p.facet_count)) fail("expected facet count");
            have_facets = true;
        } else if (word == "colours") {
            if (!have_facets) fail("colours before facets");
            col.colour.resize(p.facet_count);
            for (int i = 0; i < p.facet_count; ++i) {
                int c;
                if (!(ls >> c)) fail("expected " + std::to_string(p.facet_count) + " colours");
                if (c < 1) fail("colours are 1-based");
                col.colour[i] = c - 1;
                col.colours = std::max(col.colours, c);
            }
            have_colours = true;
        } else if (word == "face") {
            if (!have_dim || !have_facets) fail("face before dim/facets header");
            Face f;
            if (!(ls >> f.dim)) fail("expected face dimension");
            std::string colon;
            if (!(ls >> colon) || colon != ":") fail("expected ':' after face dimension");
            std::string tok;
            while (ls >> tok) {
                if (tok == "ideal") {
                    f.ideal = true;
                } else {
                    try {
                        f.facets.push_back(std::stoi(tok));
                    } catch (const std::logic_error&) {
                        fail("bad facet index '" + tok + "'");
                    }
                }
            }
            if (f.ideal && f.dim != 0) fail("only vertices can be ideal");
            p.faces.push_back(std::move(f));
        } else {
            fail("unknown directive '" + word + "'");
        }
    }
    if (!have_dim) throw std::runtime_error("missing 'dim' line");
    if (!have_facets) throw std::runtime_error("missing 'facets' line");
    if (!have_colours) throw std::runtime_error("missing 'colours' line");

    // Reconstruct the facet faces and the polytope face when omitted.
    std::set<std::vector<int>> present;
    bool have_whole = false;
    for (const Face& f : p.faces) {
        if (f.facets.empty()) have_whole = true;
        if (static_cast<int>(f.facets.size()) == 1) present.insert(f.facets);
    }
    for (int i = 0; i < p.facet_count; ++i) {
        std::vector<int> s{i};
        if (!present.count(s)) p.faces.push_back(Face{p.dim - 1, false, s});
    }
    if (!have_whole) p.faces.push_back(Face{p.dim, false, {}});

    // Adjacency from the declared codim-2 faces.
    p.adjacent.assign(p.facet_count, std::vector<char>(p.facet_count, 0));
    for (const Face& f : p.faces) {
        if (f.dim == p.dim - 2 && f.facets.size() == 2) {
            p.adjacent[f.facets[0]][f.facets[1]] = 1;
            p.adjacent[f.facets[1]][f.facets[0]] = 1;
        }
    }

    p.finalize();
    validate(p);
    validate_colouring(p, col);
    return {std::move(p), std::move(col)};
}

LoadedPolytope parse_polytope_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polytope file '" + path + "'");
    try {
        return parse_polytope(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string write_polytope(const Polytope& p, const Colouring& col) {
    std::ostringstream out;
    out << "dim " << p.dim << "\n";
    out << "facets " << p.facet_count << "\n";
    out << "colours";
    for (int f = 0; f < p.facet_count; ++f) out << " " << col.colour[f] + 1;
    out << "\n";
    for (const Face& f : p.faces) {
        if (f.facets.empty() || f.facets.size() == 1) continue;  // reconstructed on load
        out << "face " << f.dim << " :";
        for (int v : f.facets) out << " " << v;
        if (f.ideal) out << " ideal";
        out << "\n";
    }
    return out.str();
}

}  // namespace morsecube
