// Unit quaternion groups used by the 24-cell and 120-cell generators: the
// binary tetrahedral group T*24 and the binary icosahedral group I*120, with
// coset decompositions. Elements are kept as doubles; group elements are well
// separated so tolerance matching at 1e-6 is exact in practice.
#pragma once

#include <array>
#include <vector>

namespace morsecube {

struct Quat {
    double w = 0, x = 0, y = 0, z = 0;

    friend Quat operator*(const Quat& a, const Quat& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    Quat conj() const { return {w, -x, -y, -z}; }
    double dot(const Quat& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
};

// The 24 elements of T*24: +-1, +-i, +-j, +-k and (+-1 +- i +- j +- k)/2.
std::vector<Quat> binary_tetrahedral();

// The 120 elements of I*120, generated by closure from T*24 and one extra
// icosahedral element.
std::vector<Quat> binary_icosahedral();

// Index of q in the list, matched within tolerance; -1 if absent.
int find_quat(const std::vector<Quat>& group, const Quat& q, double tol = 1e-6);

// Partition of `group` into left cosets of `subgroup` (both given as element
// lists, subgroup elements must appear in group). Returns one sorted list of
// group-indices per coset, cosets ordered by smallest member index.
std::vector<std::vector<int>> left_cosets(const std::vector<Quat>& group,
                                          const std::vector<Quat>& subgroup);

}  // namespace morsecube
