#include "morsecube/halfspaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace morsecube {

namespace {

struct Candidate {
    Eigen::Vector4d x;  // padded with zeros beyond n
};

// Gaussian elimination with partial pivoting on a stack matrix. Pivots below
// the threshold mean a (numerically) singular facet subset.
bool solve_small(int n, double a[4][5]) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-8) return false;
        if (piv != col)
            for (int c = 0; c <= n; ++c) std::swap(a[piv][c], a[col][c]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    for (int i = 0; i < n; ++i) a[i][n] /= a[i][i];
    return true;
}

// Enumerates all n-subsets of the facets, solving each n-by-n system.
void collect_candidates(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets,
                        double feas_tol, std::vector<Candidate>& out) {
    const int nf = static_cast<int>(normals.rows());
    const int n = static_cast<int>(normals.cols());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;

    double a[4][5];
    while (true) {
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < n; ++c) a[i][c] = normals(idx[i], c);
            a[i][n] = offsets(idx[i]);
        }
        if (solve_small(n, a)) {
            Eigen::Vector4d x = Eigen::Vector4d::Zero();
            for (int i = 0; i < n; ++i) x(i) = a[i][n];
            bool feasible = true;
            for (int f = 0; f < nf && feasible; ++f) {
                double dot = 0;
                for (int c = 0; c < n; ++c) dot += normals(f, c) * x(c);
                if (dot > offsets(f) + feas_tol) feasible = false;
            }
            if (feasible) out.push_back(Candidate{x});
        }
        // next combination
        int i = n - 1;
        while (i >= 0 && idx[i] == nf - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Polytope face_lattice_from_halfspaces(const Eigen::MatrixXd& normals,
                                      const Eigen::VectorXd& offsets,
                                      const HalfspaceOptions& opt) {
    const int nf = static_cast<int>(normals.rows());
    const int n = static_cast<int>(normals.cols());
    if (n < 2 || n > 4) throw std::runtime_error("halfspace kernel supports dimensions 2..4");
    if (offsets.size() != nf) throw std::runtime_error("normals/offsets size mismatch");

    const double tol = opt.tolerance;
    const double guard = opt.guard_factor * tol;
    // Feasibility and incidence tests use a scale-aware slack well above the
    // dedup tolerance; incidences of genuine polytope data are separated by
    // far more than this.
    const double feas_tol = 1e-7;

    std::vector<Candidate> cands;
    collect_candidates(normals, offsets, feas_tol, cands);
    if (cands.empty()) throw std::runtime_error("halfspaces bound no vertices");

    // Deduplicate by coordinates. Sorting by x0 keeps the comparison window
    // local; points closer than tol merge, gaps inside the guard band abort.
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.x(0) < b.x(0); });
    std::vector<Eigen::Vector4d> verts;
    for (const Candidate& c : cands) {
        bool merged = false;
        for (auto it = verts.rbegin(); it != verts.rend(); ++it) {
            if (c.x(0) - (*it)(0) > guard) break;
            double d = ((*it) - c.x).norm();
            if (d <= tol) {
                merged = true;
                break;
            }
            if (d <= guard)
                throw std::runtime_error("vertex dedup ambiguous: points at distance " +
                                         std::to_string(d));
        }
        if (!merged) verts.push_back(c.x);
    }

    // Containing facets and ideal flags per vertex.
    Polytope p;
    p.dim = n;
    p.facet_count = nf;
    std::vector<std::vector<int>> vfacets(verts.size());
    std::vector<char> videal(verts.size(), 0);
    for (size_t v = 0; v < verts.size(); ++v) {
        Eigen::VectorXd x = verts[v].head(n);
        for (int f = 0; f < nf; ++f)
            if (std::abs(normals.row(f).dot(x) - offsets(f)) <= feas_tol)
                vfacets[v].push_back(f);
        double r = x.norm();
        if (std::abs(r - 1.0) <= tol)
            videal[v] = 1;
        else if (std::abs(r - 1.0) <= guard)
            throw std::runtime_error("ideal detection ambiguous: vertex at radius " +
                                     std::to_string(r));
        int expect = videal[v] ? 2 * (n - 1) : n;
        if (static_cast<int>(vfacets[v].size()) != expect)
            throw std::runtime_error("vertex neither simple nor ideal-cubical: lies in " +
                                     std::to_string(vfacets[v].size()) + " facets");
    }

    // Faces of dim >= 1 from pairwise intersections of vertex facet sets.
    std::set<std::vector<int>> face_sets;
    for (size_t a = 0; a < verts.size(); ++a) {
        for (size_t b = a + 1; b < verts.size(); ++b) {
            std::vector<int> s;
            std::set_intersection(vfacets[a].begin(), vfacets[a].end(), vfacets[b].begin(),
                                  vfacets[b].end(), std::back_inserter(s));
            if (!s.empty() && static_cast<int>(s.size()) <= n - 1) face_sets.insert(std::move(s));
        }
    }

    p.faces.push_back(Face{n, false, {}});
    for (int f = 0; f < nf; ++f) p.faces.push_back(Face{n - 1, false, {f}});
    for (const auto& s : face_sets)
        if (s.size() >= 2) p.faces.push_back(Face{n - static_cast<int>(s.size()), false, s});
    for (size_t v = 0; v < verts.size(); ++v)
        p.faces.push_back(Face{0, videal[v] != 0, vfacets[v]});

    p.adjacent.assign(nf, std::vector<char>(nf, 0));
    for (const auto& s : face_sets) {
        if (s.size() == 2) {
            p.adjacent[s[0]][s[1]] = 1;
            p.adjacent[s[1]][s[0]] = 1;
        }
    }

    p.finalize();
    validate(p);
    return p;
}

}  // namespace morsecube
