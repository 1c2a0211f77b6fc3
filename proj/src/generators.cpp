#include "morsecube/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "morsecube/halfspaces.hpp"

namespace morsecube {

LoadedPolytope generate_hypercube(int n) {
    if (n < 2 || n > 4) throw std::runtime_error("hypercube dimension must be 2..4");
    Polytope p;
    p.dim = n;
    p.facet_count = 2 * n;  // facet 2i: x_i = +1, facet 2i+1: x_i = -1

    // Faces correspond to partial sign assignments: state[i] in {free,+,-}.
    std::vector<int> state(n, 0);
    auto emit = [&](auto&& self, int i) -> void {
        if (i == n) {
            Face f;
            int frozen = 0;
            for (int c = 0; c < n; ++c) {
                if (state[c] == 1) f.facets.push_back(2 * c), ++frozen;
                if (state[c] == 2) f.facets.push_back(2 * c + 1), ++frozen;
            }
            f.dim = n - frozen;
            p.faces.push_back(std::move(f));
            return;
        }
        for (int s = 0; s < 3; ++s) {
            state[i] = s;
            self(self, i + 1);
        }
        state[i] = 0;
    };
    emit(emit, 0);

    p.adjacent.assign(p.facet_count, std::vector<char>(p.facet_count, 0));
    for (int a = 0; a < p.facet_count; ++a)
        for (int b = 0; b < p.facet_count; ++b)
            if (a / 2 != b / 2) p.adjacent[a][b] = 1;

    p.finalize();
    validate(p);

    Colouring col;
    col.colours = n;
    col.colour.resize(p.facet_count);
    for (int f = 0; f < p.facet_count; ++f) col.colour[f] = f / 2;
    validate_colouring(p, col);
    return {std::move(p), std::move(col)};
}

LoadedPolytope generate_quaternion_polytope(QuaternionPolytope kind) {
    const bool is24 = kind == QuaternionPolytope::cell24;
    std::vector<Quat> group = is24 ? binary_tetrahedral() : binary_icosahedral();
    const int nf = static_cast<int>(group.size());

    // Adjacency: the largest dot product below 1 among distinct elements.
    double maxdot = -2.0;
    for (int a = 0; a < nf; ++a)
        for (int b = a + 1; b < nf; ++b) maxdot = std::max(maxdot, group[a].dot(group[b]));
    std::vector<std::vector<char>> adj(nf, std::vector<char>(nf, 0));
    for (int a = 0; a < nf; ++a)
        for (int b = a + 1; b < nf; ++b)
            if (group[a].dot(group[b]) > maxdot - 1e-6) adj[a][b] = adj[b][a] = 1;

    // Klein-model halfspaces. The ideal 24-cell has its vertices on the unit
    // sphere at offset 1/sqrt(2); the compact 120-cell only needs a
    // combinatorially correct Euclidean realization, so any offset keeping
    // the vertices off the sphere works.
    Eigen::MatrixXd normals(nf, 4);
    for (int f = 0; f < nf; ++f)
        normals.row(f) << group[f].w, group[f].x, group[f].y, group[f].z;
    Eigen::VectorXd offsets = Eigen::VectorXd::Constant(nf, is24 ? 1.0 / std::sqrt(2.0) : 0.75);

    Polytope p = face_lattice_from_halfspaces(normals, offsets);
    for (int a = 0; a < nf; ++a)
        for (int b = 0; b < nf; ++b)
            if (p.adjacent[a][b] != adj[a][b])
                throw std::logic_error("quaternion adjacency disagrees with the face lattice");

    Colouring col;
    std::vector<std::vector<int>> cosets;
    if (is24) {
        std::vector<Quat> q8(binary_tetrahedral().begin(), binary_tetrahedral().begin() + 8);
        cosets = left_cosets(group, q8);
    } else {
        cosets = left_cosets(group, binary_tetrahedral());
    }
    col.colours = static_cast<int>(cosets.size());
    col.colour.assign(nf, -1);
    for (int c = 0; c < col.colours; ++c)
        for (int f : cosets[c]) col.colour[f] = c;
    validate_colouring(p, col);
    return {std::move(p), std::move(col)};
}

LoadedPolytope generate_p4() {
    // Facets = 2-subsets of {0..4}, lexicographic.
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
    auto pair_index = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        for (int i = 0; i < 10; ++i)
            if (pairs[i] == std::make_pair(a, b)) return i;
        throw std::logic_error("bad pair");
    };

    Polytope p;
    p.dim = 4;
    p.facet_count = 10;
    p.adjacent.assign(10, std::vector<char>(10, 0));
    auto meets = [&](int i, int j) {
        auto [a, b] = pairs[i];
        auto [c, d] = pairs[j];
        return a == c || a == d || b == c || b == d;
    };
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            if (i != j && meets(i, j)) p.adjacent[i][j] = 1;

    p.faces.push_back(Face{4, false, {}});
    for (int i = 0; i < 10; ++i) p.faces.push_back(Face{3, false, {i}});
    // Codim 2: intersecting pairs of facets.
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j)
            if (meets(i, j)) p.faces.push_back(Face{2, false, {i, j}});
    // Codim 3 (edges): triples at a common element (finite-to-ideal edges)
    // and triangles {ab, bc, ca} (ideal-to-ideal edges).
    for (int a = 0; a < 5; ++a) {
        std::vector<int> star;
        for (int x = 0; x < 5; ++x)
            if (x != a) star.push_back(pair_index(a, x));
        std::sort(star.begin(), star.end());
        for (int drop = 0; drop < 4; ++drop) {
            std::vector<int> s;
            for (int j = 0; j < 4; ++j)
                if (j != drop) s.push_back(star[j]);
            p.faces.push_back(Face{1, false, s});
        }
        p.faces.push_back(Face{0, false, star});  // finite vertex a
    }
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c) {
                std::vector<int> s{pair_index(a, b), pair_index(b, c), pair_index(a, c)};
                std::sort(s.begin(), s.end());
                p.faces.push_back(Face{1, false, s});
            }
    // Ideal vertex a: the six facets avoiding a.
    for (int a = 0; a < 5; ++a) {
        std::vector<int> s;
        for (int i = 0; i < 10; ++i)
            if (pairs[i].first != a && pairs[i].second != a) s.push_back(i);
        p.faces.push_back(Face{0, true, s});
    }

    p.finalize();
    validate(p);

    Colouring col;
    col.colours = 5;
    col.colour.resize(10);
    for (int i = 0; i < 10; ++i) col.colour[i] = (pairs[i].first + pairs[i].second) % 5;
    validate_colouring(p, col);
    return {std::move(p), std::move(col)};
}

}  // namespace morsecube
