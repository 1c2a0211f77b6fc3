// Integer matrix kernels shared by the homology computations: sparse integer
// matrices, modular rank (dense elimination over word-size primes, threaded),
// exact rank fallback, and Smith normal form over arbitrary-precision integers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace morsecube {

using BigInt = boost::multiprecision::cpp_int;

struct SparseIntMat {
    int rows = 0;
    int cols = 0;
    struct Entry {
        int row;
        int col;
        std::int64_t value;
    };
    std::vector<Entry> entries;

    void add(int r, int c, std::int64_t v) {
        if (v != 0) entries.push_back({r, c, v});
    }
};

// Rank of the matrix over Z/p, p an odd prime < 2^31.
int rank_mod_p(const SparseIntMat& m, std::uint32_t p, int threads = 1);

// Rank over Q: modular ranks at three fixed primes near 2^30; on disagreement
// falls back to exact fraction-free elimination.
int rank_exact(const SparseIntMat& m, int threads = 1);

// Exact rank by Bareiss elimination over arbitrary-precision integers.
int rank_bareiss(const SparseIntMat& m);

// Invariant factors d1 | d2 | ... of the integer matrix (nonzero ones only,
// all positive). The cokernel of Z^cols -> Z^rows ... use with the usual
// conventions at the call site.
std::vector<BigInt> smith_invariant_factors(const SparseIntMat& m);

}  // namespace morsecube
