#include "morsecube/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace morsecube {

std::vector<Quat> binary_tetrahedral() {
    std::vector<Quat> g;
    for (int axis = 0; axis < 4; ++axis) {
        for (int s = 0; s < 2; ++s) {
            Quat q;
            double v = s ? -1.0 : 1.0;
            (axis == 0 ? q.w : axis == 1 ? q.x : axis == 2 ? q.y : q.z) = v;
            g.push_back(q);
        }
    }
    for (int m = 0; m < 16; ++m) {
        Quat q{(m & 1) ? -0.5 : 0.5, (m & 2) ? -0.5 : 0.5, (m & 4) ? -0.5 : 0.5,
               (m & 8) ? -0.5 : 0.5};
        g.push_back(q);
    }
    return g;
}

std::vector<Quat> binary_icosahedral() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Quat> g = binary_tetrahedral();
    g.push_back(Quat{phi / 2.0, 0.5, 1.0 / (2.0 * phi), 0.0});
    // Closure under multiplication.
    for (size_t i = 0; i < g.size(); ++i) {
        for (size_t j = 0; j < g.size(); ++j) {
            Quat q = g[i] * g[j];
            if (find_quat(g, q) < 0) g.push_back(q);
            if (g.size() > 130) throw std::logic_error("icosahedral closure exceeded 120 elements");
        }
    }
    if (g.size() != 120) throw std::logic_error("icosahedral closure has wrong order");
    return g;
}

int find_quat(const std::vector<Quat>& group, const Quat& q, double tol) {
    for (int i = 0; i < static_cast<int>(group.size()); ++i) {
        const Quat& g = group[i];
        if (std::abs(g.w - q.w) < tol && std::abs(g.x - q.x) < tol &&
            std::abs(g.y - q.y) < tol && std::abs(g.z - q.z) < tol)
            return i;
    }
    return -1;
}

std::vector<std::vector<int>> left_cosets(const std::vector<Quat>& group,
                                          const std::vector<Quat>& subgroup) {
    std::vector<int> coset_of(group.size(), -1);
    std::vector<std::vector<int>> cosets;
    for (int i = 0; i < static_cast<int>(group.size()); ++i) {
        if (coset_of[i] >= 0) continue;
        std::vector<int> coset;
        for (const Quat& h : subgroup) {
            int j = find_quat(group, group[i] * h);
            if (j < 0) throw std::logic_error("subgroup element leads outside the group");
            if (coset_of[j] >= 0 && coset_of[j] != static_cast<int>(cosets.size()))
                throw std::logic_error("left cosets are not disjoint");
            coset_of[j] = static_cast<int>(cosets.size());
            coset.push_back(j);
        }
        std::sort(coset.begin(), coset.end());
        coset.erase(std::unique(coset.begin(), coset.end()), coset.end());
        cosets.push_back(std::move(coset));
    }
    return cosets;
}

}  // namespace morsecube
