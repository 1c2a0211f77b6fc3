#include "morsecube/holonomy.hpp"

#include <functional>
#include <stdexcept>

namespace morsecube {

std::string QuadRat::str() const {
    if (b.is_zero()) return a.str();
    if (a.is_zero()) return b.str() + "*sqrt2";
    return a.str() + (b.sign() > 0 ? "+" : "") + b.str() + "*sqrt2";
}

Mat5 identity5() {
    Mat5 m{};
    for (int i = 0; i < 5; ++i) m[i][i] = QuadRat(Rational(1));
    return m;
}

Mat5 mul5(const Mat5& x, const Mat5& y) {
    Mat5 out{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            QuadRat acc;
            for (int k = 0; k < 5; ++k) acc = acc + x[i][k] * y[k][j];
            out[i][j] = acc;
        }
    return out;
}

Mat5 transpose5(const Mat5& x) {
    Mat5 out{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) out[i][j] = x[j][i];
    return out;
}

QuadRat det5(const Mat5& x) {
    // cofactor expansion over the exact field
    std::array<int, 5> cols{0, 1, 2, 3, 4};
    std::function<QuadRat(int, std::array<bool, 5>&)> go = [&](int row,
                                                               std::array<bool, 5>& used) {
        if (row == 5) return QuadRat(Rational(1));
        QuadRat acc;
        int sign = 1;
        for (int c = 0; c < 5; ++c) {
            if (used[c]) continue;
            if (!x[row][c].is_zero()) {
                used[c] = true;
                QuadRat sub = go(row + 1, used);
                used[c] = false;
                QuadRat term = x[row][c] * sub;
                acc = (sign > 0) ? acc + term : acc - term;
            }
            sign = -sign;
        }
        return acc;
    };
    (void)cols;
    std::array<bool, 5> used{};
    return go(0, used);
}

namespace {

QuadRat half(std::int64_t n) { return QuadRat(Rational(n, 2)); }
QuadRat whole(std::int64_t n) { return QuadRat(Rational(n)); }
QuadRat sqrt2(std::int64_t n) { return QuadRat(Rational(0), Rational(n)); }

bool equal5(const Mat5& x, const Mat5& y) {
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (x[i][j] != y[i][j]) return false;
    return true;
}

}  // namespace

Mat5 holonomy_a() {
    Mat5 m{};
    const std::int64_t rows[4][4] = {
        {1, -1, 1, 1}, {1, 1, -1, 1}, {1, -1, -1, -1}, {1, 1, 1, -1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = half(rows[i][j]);
    m[4][4] = whole(1);
    return m;
}

Mat5 holonomy_b() {
    Mat5 m{};
    m[0] = {half(-7), half(3), half(3), half(3), sqrt2(3)};
    m[1] = {half(-3), half(1), half(1), half(-1), sqrt2(1)};
    m[2] = {half(3), half(1), half(-1), half(-1), sqrt2(-1)};
    m[3] = {half(3), half(-1), half(1), half(-1), sqrt2(-1)};
    m[4] = {sqrt2(-3), sqrt2(1), sqrt2(1), sqrt2(1), whole(5)};
    return m;
}

Mat5 lorentz_form() {
    Mat5 j{};
    for (int i = 0; i < 4; ++i) j[i][i] = whole(1);
    j[4][4] = whole(-1);
    return j;
}

HolonomyReport verify_holonomy() {
    const Mat5 a = holonomy_a();
    const Mat5 b = holonomy_b();
    const Mat5 j = lorentz_form();
    const Mat5 id = identity5();

    HolonomyReport rep;
    rep.form_preserved_a = equal5(mul5(transpose5(a), mul5(j, a)), j);
    rep.form_preserved_b = equal5(mul5(transpose5(b), mul5(j, b)), j);
    rep.det_a = det5(a).str();
    rep.det_b = det5(b).str();

    auto order = [&](const Mat5& m) {
        Mat5 power = m;
        for (int k = 1; k <= 24; ++k) {
            if (equal5(power, id)) return k;
            power = mul5(power, m);
        }
        return 0;
    };
    rep.order_a = order(a);
    rep.order_b = order(b);

    // For J-orthogonal matrices the inverse is J m^T J.
    if (!rep.form_preserved_a || !rep.form_preserved_b) return rep;
    auto inverse = [&](const Mat5& m) { return mul5(j, mul5(transpose5(m), j)); };
    const Mat5 ai = inverse(a);
    const Mat5 bi = inverse(b);

    // relator a^-2 b^-2 a b^-2 a^-2 b
    Mat5 w = mul5(ai, ai);
    w = mul5(w, mul5(bi, bi));
    w = mul5(w, a);
    w = mul5(w, mul5(bi, bi));
    w = mul5(w, mul5(ai, ai));
    w = mul5(w, b);
    rep.relator_identity = equal5(w, id);
    return rep;
}

}  // namespace morsecube
