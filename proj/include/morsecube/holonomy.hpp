// Exact verification of the explicit two-generator holonomy into O(4,1):
// element orders, the single relator, and preservation of the Lorentzian
// form, all over the ring of numbers a + b*sqrt(2) with rational a, b.
#pragma once

#include <array>
#include <string>

#include "morsecube/rational.hpp"

namespace morsecube {

struct QuadRat {
    Rational a;  // rational part
    Rational b;  // coefficient of sqrt(2)

    QuadRat() = default;
    QuadRat(Rational ra, Rational rb = Rational(0)) : a(ra), b(rb) {}

    friend QuadRat operator+(const QuadRat& x, const QuadRat& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend QuadRat operator-(const QuadRat& x, const QuadRat& y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend QuadRat operator*(const QuadRat& x, const QuadRat& y) {
        return {x.a * y.a + Rational(2) * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend bool operator==(const QuadRat& x, const QuadRat& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuadRat& x, const QuadRat& y) { return !(x == y); }
    QuadRat operator-() const { return {-a, -b}; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    std::string str() const;
};

using Mat5 = std::array<std::array<QuadRat, 5>, 5>;

Mat5 identity5();
Mat5 mul5(const Mat5& x, const Mat5& y);
Mat5 transpose5(const Mat5& x);
QuadRat det5(const Mat5& x);

Mat5 holonomy_a();
Mat5 holonomy_b();
Mat5 lorentz_form();  // diag(1,1,1,1,-1)

struct HolonomyReport {
    int order_a = 0;          // smallest positive power equal to the identity
    int order_b = 0;
    bool relator_identity = false;
    bool form_preserved_a = false;
    bool form_preserved_b = false;
    std::string det_a;
    std::string det_b;

    bool all_pass() const {
        return order_a == 12 && order_b == 12 && relator_identity && form_preserved_a &&
               form_preserved_b;
    }
};

HolonomyReport verify_holonomy();

}  // namespace morsecube
