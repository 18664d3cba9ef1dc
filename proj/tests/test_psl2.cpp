#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "sl2cover/invariants.hpp"
#include "sl2cover/psl2.hpp"
#include "sl2cover/rng.hpp"

using namespace sl2cover;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

ProjMat random_projmat(SplitMix64& rng) {
    for (;;) {
        const double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
        const double det = a * d - b * c;
        if (std::abs(det) < 0.05) continue;
        if (det > 0.0) return {a, b, c, d};
        return {b, a, d, c};  // swap columns to flip the determinant sign
    }
}
}  // namespace

TEST_CASE("ProjMat arithmetic and normalization") {
    CHECK(ProjMat().trace_bar() == 2.0);
    CHECK(trace_bar(diagonal(2.0)) == Approx(2.5));
    CHECK(mat_dist(mul(unipotent(1.0), unipotent(-1.0)), ProjMat()) <= 1e-15);
    // +M and -M normalize to the same representative
    const ProjMat p(0.0, -1.0, 1.0, 0.0), q(0.0, 1.0, -1.0, 0.0);
    CHECK(mat_dist(p, q) == 0.0);
    // determinant is rescaled to 1
    const ProjMat r(2.0, 0.0, 0.0, 2.0);
    CHECK(r.a() == Approx(1.0));
    CHECK_THROWS_AS(ProjMat(1.0, 0.0, 0.0, -1.0), InvalidMatrix);
    CHECK(mat_dist(mul(diagonal(3.0), inv(diagonal(3.0))), ProjMat()) <= 1e-15);
}

TEST_CASE("Iwasawa decomposition") {
    SECTION("identity and pure factors") {
        const auto t = iwasawa(ProjMat());
        CHECK(t.theta == Approx(0.0).margin(1e-12));
        CHECK(t.lambda == Approx(1.0));
        CHECK(t.x == Approx(0.0).margin(1e-12));
        const auto k = iwasawa(rotation(kPi / 3.0));
        CHECK(k.theta == Approx(kPi / 3.0));
        CHECK(k.lambda == Approx(1.0));
        CHECK(k.x == Approx(0.0).margin(1e-12));
    }
    SECTION("upper half-plane recipe: u_x a_sqrt(y) sends i to x+iy") {
        const double x = 0.7, y = 2.3;
        const ProjMat m = mul(unipotent(x), diagonal(std::sqrt(y)));
        // act on i via the Moebius formula
        const std::complex<double> i(0.0, 1.0);
        const std::complex<double> img =
            (m.a() * i + m.b()) / (m.c() * i + m.d());
        CHECK(img.real() == Approx(x));
        CHECK(img.imag() == Approx(y));
    }
    SECTION("AN and NA swap: u_x a_l = a_l u_{x/l^2}") {
        const double x = 1.3, l = 1.7;
        CHECK(mat_dist(mul(unipotent(x), diagonal(l)),
                       mul(diagonal(l), unipotent(x / (l * l)))) <= 1e-12);
    }
    SECTION("random roundtrip") {
        SplitMix64 rng(51);
        for (int i = 0; i < 2000; ++i) {
            const ProjMat m = random_projmat(rng);
            const auto t = iwasawa(m);
            CHECK(t.theta >= 0.0);
            CHECK(t.theta < kPi);
            CHECK(t.lambda > 0.0);
            CHECK(mat_dist(iwasawa_recompose(t), m) <= 1e-10);
        }
    }
}

TEST_CASE("conjugacy classes in PSL2") {
    SECTION("diagonal is hyperbolic with lambda the large eigenvalue") {
        const auto r = class_of(diagonal(2.0));
        CHECK(r.kind == Psl2ClassRep::Kind::Hyperbolic);
        CHECK(r.lambda == Approx(2.0));
        CHECK(mat_dist(mul(r.conjugator, mul(r.representative(), inv(r.conjugator))),
                       diagonal(2.0)) <= 1e-9);
    }
    SECTION("shears split by the sign invariant") {
        const auto plus = class_of(unipotent(5.0));
        CHECK(plus.kind == Psl2ClassRep::Kind::ParabolicPlus);
        CHECK(mat_dist(mul(plus.conjugator, mul(unipotent(1.0), inv(plus.conjugator))),
                       unipotent(5.0)) <= 1e-9);
        CHECK(class_of(unipotent(-0.25)).kind == Psl2ClassRep::Kind::ParabolicMinus);
        // lower-triangular shear: conjugate of u_{-1} (note the flip)
        const auto low = class_of(ProjMat(1.0, 0.0, 1.0, 1.0));
        CHECK((low.kind == Psl2ClassRep::Kind::ParabolicPlus ||
               low.kind == Psl2ClassRep::Kind::ParabolicMinus));
        const ProjMat rep = low.representative();
        CHECK(mat_dist(mul(low.conjugator, mul(rep, inv(low.conjugator))),
                       ProjMat(1.0, 0.0, 1.0, 1.0)) <= 1e-9);
    }
    SECTION("rotations are elliptic with their own angle") {
        for (double th : {kPi / 4.0, kPi / 2.0, 2.6}) {
            const auto r = class_of(rotation(th));
            CHECK(r.kind == Psl2ClassRep::Kind::Elliptic);
            CHECK(r.theta == Approx(th).margin(1e-9));
        }
    }
    SECTION("identity") {
        CHECK(class_of(ProjMat()).kind == Psl2ClassRep::Kind::Identity);
    }
    SECTION("trichotomy and conjugator identity on random matrices") {
        SplitMix64 rng(52);
        for (int i = 0; i < 500; ++i) {
            const ProjMat m = random_projmat(rng);
            const auto r = class_of(m);
            const double tr = m.trace_bar();
            if (std::abs(tr - 2.0) > 1e-6) {
                if (tr > 2.0) CHECK(r.kind == Psl2ClassRep::Kind::Hyperbolic);
                else CHECK((r.kind == Psl2ClassRep::Kind::Elliptic ||
                            r.kind == Psl2ClassRep::Kind::Identity));
            }
            CHECK(mat_dist(mul(r.conjugator, mul(r.representative(), inv(r.conjugator))), m)
                  <= 1e-8);
            if (r.kind == Psl2ClassRep::Kind::Hyperbolic) CHECK(r.lambda > 1.0);
            if (r.kind == Psl2ClassRep::Kind::Elliptic) {
                CHECK(r.theta > 0.0);
                CHECK(r.theta < kPi);
            }
        }
    }
}

TEST_CASE("circle action convention") {
    // rotations act as x -> x + theta/pi; this fixes the orientation that the
    // parabolic direction types depend on
    CHECK(convention_check());
    for (double th : {0.3, 1.2}) {
        CHECK(dist_sup(circle_map(rotation(th)).lift, translation(th / kPi), 512) <= 1e-12);
    }
    SECTION("identity acts trivially") {
        CHECK(dist_sup(circle_map(ProjMat()).lift, identity_lift(), 512) <= 1e-12);
    }
    SECTION("diagonal fixes the coordinate axes") {
        const Lift a = circle_map(diagonal(2.0)).lift;
        CHECK(a(0.0) == Approx(0.0).margin(1e-12));
        CHECK(a(0.5) == Approx(0.5).margin(1e-12));
    }
    SECTION("canonical lift starts in the unit interval") {
        SplitMix64 rng(53);
        for (int i = 0; i < 200; ++i) {
            const Lift a = circle_map(random_projmat(rng)).lift;
            CHECK(a(0.0) >= 0.0);
            CHECK(a(0.0) < 1.0);
            CHECK(a(1.25) - a(0.25) == Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("matrix lifts are valid lifts") {
    SplitMix64 rng(54);
    for (int i = 0; i < 50; ++i) {
        const auto d = validate(circle_map(random_projmat(rng)).lift, 2048);
        CHECK(d.pass);
    }
}

TEST_CASE("canonical lift via generic unwrapping matches the closed form") {
    SplitMix64 rng(55);
    for (int i = 0; i < 10; ++i) {
        const ProjMat m = random_projmat(rng);
        const Lift closed = canonical_lift_matrix(m);
        const Lift generic = canonical_lift_generic(
            [&closed](double x) {
                double v = closed(x);
                return v - std::floor(v);
            },
            4096);
        CHECK(dist_sup(closed, generic, 1024) <= 1e-5);
    }
    SECTION("plain rotation by 0.75 lifts to the translation by +0.75") {
        const Lift r = canonical_lift_generic(
            [](double x) { double v = x + 0.75; return v - std::floor(v); }, 256);
        CHECK(dist_sup(r, translation(0.75), 256) <= 1e-12);
    }
    SECTION("rejects a non-homeomorphism") {
        CHECK_THROWS_AS(canonical_lift_generic(
                            [](double x) { return 0.5 + 0.4 * std::sin(2 * kPi * x); }, 128),
                        InvalidLift);
    }
}

TEST_CASE("zhang lifts") {
    SECTION("matrices with a real eigenspace keep their fixed point") {
        const Lift zu = zhang_lift(unipotent(1.0));
        CHECK(dist_sup(zu, canonical_lift_matrix(unipotent(1.0)), 512) <= 1e-12);
        CHECK(std::abs(zu(0.0)) <= 1e-12);
        const Lift za = zhang_lift(diagonal(3.0));
        CHECK(std::abs(za(0.0)) <= 1e-12);
    }
    SECTION("the shear parameter of a quarter rotation") {
        // with the c > 0 representative [0 -1; 1 0]: x = -1 - (-1)(-1)/1 = -2
        CHECK(zhang_shear_parameter(rotation(kPi / 2.0)) == Approx(-2.0));
    }
    SECTION("general case composes two fixed-point lifts") {
        const Lift z = zhang_lift(rotation(kPi / 2.0));
        CHECK(dist_sup(z, translation(0.5), 512) <= 1e-9);
        // a lift of the right circle map
        CHECK(validate(z).pass);
    }
    SECTION("zhang and canonical lifts differ by an integer translation") {
        SplitMix64 rng(56);
        for (int i = 0; i < 20; ++i) {
            const ProjMat m = random_projmat(rng);
            const Lift z = zhang_lift(m);
            const Lift c = canonical_lift_matrix(m);
            const double diff = z(0.37) - c(0.37);
            CHECK(std::abs(diff - std::round(diff)) <= 1e-9);
            // and fixed-branch lifts really do have fixed points
            if (m.trace_bar() >= 2.0 + 1e-6) CHECK(fixed_point(z).has_value());
        }
    }
}

TEST_CASE("faithfulness and trivial center") {
    SplitMix64 rng(57);
    for (int i = 0; i < 50; ++i) {
        const ProjMat m = random_projmat(rng);
        if (m.is_identity(1e-9)) continue;
        CHECK(dist_sup(circle_map(m).lift, identity_lift(), 512) > 0.0);
    }
    // conjugation by shears and diagonals moves every non-identity element
    const ProjMat probes[] = {unipotent(1.0), unipotent(-1.0), diagonal(2.0), rotation(0.7)};
    for (int i = 0; i < 50; ++i) {
        const ProjMat m = random_projmat(rng);
        if (m.is_identity(1e-9)) continue;
        bool moved = false;
        for (const auto& p : probes)
            if (mat_dist(mul(p, m), mul(m, p)) > 1e-9) moved = true;
        CHECK(moved);
    }
}
