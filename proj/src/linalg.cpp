#include "morsecube/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

namespace morsecube {

namespace {

// Barrett-style reduction for p < 2^31: q = floor(x * inv / 2^64), r = x - q*p.
struct ModP {
    std::uint64_t p;
    std::uint64_t inv;  // floor(2^64 / p)

    explicit ModP(std::uint32_t prime) : p(prime) {
        inv = static_cast<std::uint64_t>(~__uint128_t(0) / p);
    }
    std::uint64_t reduce(std::uint64_t x) const {
        std::uint64_t q = static_cast<std::uint64_t>((static_cast<__uint128_t>(x) * inv) >> 64);
        std::uint64_t r = x - q * p;
        if (r >= p) r -= p;
        return r;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }
    std::uint64_t pow(std::uint64_t b, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t invert(std::uint64_t a) const { return pow(a, p - 2); }
};

using RowMajorU32 =
    Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void parallel_chunks(int begin, int end, int threads, const std::function<void(int, int)>& body) {
    int total = end - begin;
    if (threads <= 1 || total < 256) {
        body(begin, end);
        return;
    }
    int nchunk = std::min(threads, total);
    std::vector<std::thread> pool;
    pool.reserve(nchunk);
    int step = (total + nchunk - 1) / nchunk;
    for (int t = 0; t < nchunk; ++t) {
        int lo = begin + t * step;
        int hi = std::min(end, lo + step);
        if (lo >= hi) break;
        pool.emplace_back(body, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

int rank_mod_p(const SparseIntMat& m, std::uint32_t prime, int threads) {
    if (m.rows == 0 || m.cols == 0) return 0;
    ModP mod(prime);
    RowMajorU32 a = RowMajorU32::Zero(m.rows, m.cols);
    for (const auto& e : m.entries) {
        std::int64_t v = e.value % static_cast<std::int64_t>(prime);
        if (v < 0) v += prime;
        std::uint64_t cur = a(e.row, e.col);
        a(e.row, e.col) = static_cast<std::uint32_t>(mod.reduce(cur + static_cast<std::uint64_t>(v)));
    }

    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r) {
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) a.row(pivot).swap(a.row(rank));

        const std::uint64_t pinv = mod.invert(a(rank, col));
        std::uint32_t* prow = a.row(rank).data();
        for (int c = col; c < m.cols; ++c) prow[c] = static_cast<std::uint32_t>(mod.mul(prow[c], pinv));

        parallel_chunks(rank + 1, m.rows, threads, [&](int lo, int hi) {
            for (int r = lo; r < hi; ++r) {
                std::uint64_t f = a(r, col);
                if (f == 0) continue;
                f = mod.p - f;
                std::uint32_t* row = a.row(r).data();
                for (int c = col; c < m.cols; ++c) {
                    row[c] = static_cast<std::uint32_t>(
                        mod.reduce(row[c] + f * prow[c]));
                }
            }
        });
        ++rank;
    }
    return rank;
}

int rank_bareiss(const SparseIntMat& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    std::vector<std::vector<BigInt>> a(m.rows, std::vector<BigInt>(m.cols, 0));
    for (const auto& e : m.entries) a[e.row][e.col] += e.value;

    int rank = 0;
    BigInt prev = 1;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) std::swap(a[pivot], a[rank]);
        for (int r = rank + 1; r < m.rows; ++r) {
            for (int c = col + 1; c < m.cols; ++c) {
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

int rank_exact(const SparseIntMat& m, int threads) {
    static const std::uint32_t primes[3] = {1000000007u, 998244353u, 1000000009u};
    int r0 = rank_mod_p(m, primes[0], threads);
    int r1 = rank_mod_p(m, primes[1], threads);
    int r2 = rank_mod_p(m, primes[2], threads);
    if (r0 == r1 && r1 == r2) return r0;
    return rank_bareiss(m);
}

std::vector<BigInt> smith_invariant_factors(const SparseIntMat& m) {
    std::vector<std::vector<BigInt>> a(m.rows, std::vector<BigInt>(m.cols, 0));
    for (const auto& e : m.entries) a[e.row][e.col] += e.value;

    const int n = std::min(m.rows, m.cols);
    std::vector<BigInt> factors;
    int top = 0;
    while (top < n) {
        // Locate the nonzero entry of smallest absolute value in the
        // remaining block.
        int pr = -1, pc = -1;
        BigInt best = 0;
        for (int r = top; r < m.rows; ++r) {
            for (int c = top; c < m.cols; ++c) {
                if (a[r][c] == 0) continue;
                BigInt v = abs(a[r][c]);
                if (pr < 0 || v < best) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (pr < 0) break;
        std::swap(a[pr], a[top]);
        for (int r = top; r < m.rows; ++r) std::swap(a[r][pc], a[r][top]);

        // Reduce row/column until the pivot divides everything it faces.
        bool again = true;
        while (again) {
            again = false;
            for (int r = top + 1; r < m.rows; ++r) {
                if (a[r][top] == 0) continue;
                BigInt q = a[r][top] / a[top][top];
                for (int c = top; c < m.cols; ++c) a[r][c] -= q * a[top][c];
                if (a[r][top] != 0) {
                    std::swap(a[r], a[top]);
                    again = true;
                }
            }
            for (int c = top + 1; c < m.cols; ++c) {
                if (a[top][c] == 0) continue;
                BigInt q = a[top][c] / a[top][top];
                for (int r = top; r < m.rows; ++r) a[r][c] -= q * a[r][top];
                if (a[top][c] != 0) {
                    for (int r = top; r < m.rows; ++r) std::swap(a[r][c], a[r][top]);
                    again = true;
                }
            }
            if (!again) {
                // Pivot must divide the rest of the block for the invariant
                // factor chain; if not, fold an offending row in and repeat.
                for (int r = top + 1; r < m.rows && !again; ++r) {
                    for (int c = top + 1; c < m.cols && !again; ++c) {
                        if (a[r][c] % a[top][top] != 0) {
                            for (int cc = top; cc < m.cols; ++cc) a[top][cc] += a[r][cc];
                            again = true;
                        }
                    }
                }
            }
        }
        BigInt d = abs(a[top][top]);
        factors.push_back(d);
        ++top;
    }
    return factors;
}

}  // namespace morsecube
