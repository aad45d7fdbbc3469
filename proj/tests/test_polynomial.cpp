#include "dirac_ladder/polynomial.hpp"

#include <doctest.h>

using dirac_ladder::Polynomial;

TEST_CASE("evaluation and magnitude") {
    const Polynomial p({1.0, -2.0, 3.0});
    CHECK(p(2.0) == doctest::Approx(9.0));
    CHECK(p.magnitude(2.0) == doctest::Approx(17.0));
    CHECK(p.degree() == 2);
    CHECK(p.leading() == 3.0);
    CHECK(p.max_abs() == 3.0);
    CHECK(p[7] == 0.0);
    CHECK(Polynomial().is_zero());
    CHECK(Polynomial().degree() == -1);
    CHECK(Polynomial()(3.0) == 0.0);
}

TEST_CASE("calculus and arithmetic") {
    const Polynomial p({1.0, -2.0, 3.0});
    const Polynomial d = p.derivative();
    CHECK(d.size() == 2);
    CHECK(d[0] == -2.0);
    CHECK(d[1] == 6.0);
    CHECK(Polynomial::constant(4.0).derivative().is_zero());
    const Polynomial r = p.times_rho();
    CHECK(r[0] == 0.0);
    CHECK(r[3] == 3.0);
    const Polynomial s = p + Polynomial({0.0, 0.0, 0.0, 1.0});
    CHECK(s.degree() == 3);
    CHECK((s - p)[3] == 1.0);
    CHECK((2.0 * p)[2] == 6.0);
    CHECK(p.abs()[1] == 2.0);
}

TEST_CASE("trim and truncate") {
    Polynomial p({1.0, 2.0, 1e-17, 0.0});
    p.trim();
    CHECK(p.size() == 2);
    Polynomial q({1.0, 2.0, 3.0});
    q.truncate(1);
    CHECK(q.size() == 1);
    Polynomial z({0.0, 0.0});
    z.trim();
    CHECK(z.is_zero());
}
