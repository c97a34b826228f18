#include <doctest.h>

#include <algorithm>

#include "mmgeo/space.hpp"
#include "mmgeo/space_gen.hpp"
#include "oracles.hpp"

using namespace mmgeo;

namespace {

// id of lattice point (x, y) in a w-by-h grid without holes (axis 0 fastest)
PointId gid(std::int64_t x, std::int64_t y, std::int64_t w) {
    return static_cast<PointId>(x + w * y);
}

Space grid2(std::int64_t w, std::int64_t h) {
    GridSpec spec;
    spec.dims = {w, h};
    return taxicab_grid(spec);
}

}  // namespace

TEST_CASE("distance: taxicab grid matches L1 by hand") {
    Space g = grid2(3, 3);
    CHECK(g.distance(gid(0, 0, 3), gid(2, 1, 3)) == Rat(3));
    CHECK(g.distance(gid(1, 1, 3), gid(1, 1, 3)) == Rat(0));
    CHECK(g.distance(gid(2, 1, 3), gid(0, 0, 3)) == Rat(3));
}

TEST_CASE("distance: cantor tree leaves differing at branch 2 sit at 1/9") {
    Space t = cantor_tree({3, 2, 3});
    // leaf ids carry the branch digits most-significant-first:
    // 0 = 000, 2 = 010 differ first at index 2.
    CHECK(t.distance(0, 2) == Rat(1, 9));
    CHECK(t.distance(5, 5) == Rat(0));
    // sibling leaves differ only at index N: d = m^-N
    CHECK(t.distance(0, 1) == Rat(1, 27));
}

TEST_CASE("distance: out-of-range point ids throw") {
    Space g = grid2(2, 2);
    CHECK_THROWS_AS(g.distance(0, 4), std::out_of_range);
    CHECK_THROWS_AS(g.distance(-1, 0), std::out_of_range);
    CHECK_THROWS_AS(g.ball_card({7, Rat(1), BallKind::Open}), std::out_of_range);
}

TEST_CASE("ball_members: closed unit ball at grid interior has 5 points") {
    Space g = grid2(5, 5);
    auto members = g.ball_members({gid(2, 2, 5), Rat(1), BallKind::Closed});
    CHECK(members.size() == 5);
    // exact membership set
    std::vector<PointId> expect = {gid(2, 1, 5), gid(1, 2, 5), gid(2, 2, 5),
                                   gid(3, 2, 5), gid(2, 3, 5)};
    std::sort(expect.begin(), expect.end());
    CHECK(members == expect);
}

TEST_CASE("ball_members: tiny open radius keeps only the center") {
    Space g = grid2(4, 4);
    auto members = g.ball_members({gid(1, 1, 4), Rat(1, 2), BallKind::Open});
    CHECK(members == std::vector<PointId>{gid(1, 1, 4)});
}

TEST_CASE("ball_members: radius at diameter captures everything") {
    Space g = grid2(3, 3);
    CHECK(g.ball_members({0, Rat(4), BallKind::Closed}).size() == 9);
    Space t = cantor_tree({3, 2, 3});
    CHECK(t.ball_members({0, Rat(1, 3), BallKind::Closed}).size() == 8);
}

TEST_CASE("ball_card: closed r=2 at interior center counts 13") {
    Space g = grid2(5, 5);
    CHECK(g.ball_card({gid(2, 2, 5), Rat(2), BallKind::Closed}) == 13);
    CHECK(g.ball_card({gid(2, 2, 5), Rat(2), BallKind::Closed}) ==
          oracle::l1_ball_closed_z2(2));
}

TEST_CASE("ball_card: tree open 1/3 counts the depth-1 block") {
    Space t = cantor_tree({3, 2, 3});
    CHECK(t.ball_card({0, Rat(1, 3), BallKind::Open}) == 4);
    CHECK(t.ball_card({6, Rat(1, 3), BallKind::Open}) == 4);
}

TEST_CASE("ball_card: open radius zero is empty") {
    Space g = grid2(3, 3);
    CHECK(g.ball_card({0, Rat(0), BallKind::Open}) == 0);
    CHECK(g.ball_card({0, Rat(0), BallKind::Closed}) == 1);
}

TEST_CASE("ball_card agrees with the naive oracle everywhere on small spaces") {
    for (const Space& s : {grid2(4, 5), cantor_tree({3, 2, 3})}) {
        std::vector<Rat> radii = {Rat(0),     Rat(1, 27), Rat(1, 9), Rat(1, 3),
                                  Rat(1, 2),  Rat(1),     Rat(3, 2), Rat(2),
                                  Rat(3),     Rat(7)};
        for (PointId x = 0; x < s.n_points(); ++x)
            for (const Rat& r : radii)
                for (BallKind kind : {BallKind::Open, BallKind::Closed}) {
                    CAPTURE(x);
                    CAPTURE(r.to_string());
                    CHECK(s.ball_card({x, r, kind}) == oracle::ball_card(s, x, r, kind));
                }
    }
}

TEST_CASE("ball monotonicity and open/closed sandwich") {
    Space g = grid2(4, 4);
    for (PointId x = 0; x < g.n_points(); ++x) {
        auto row = g.distances_from(x);
        std::vector<PointId> prev;
        for (std::int64_t r = 0; r <= 6; ++r) {
            auto open = g.ball_members({x, Rat(r), BallKind::Open});
            auto closed = g.ball_members({x, Rat(r), BallKind::Closed});
            // open subset of closed at the same radius
            CHECK(std::includes(closed.begin(), closed.end(), open.begin(), open.end()));
            // strict exactly when r is a realized distance from x (0 included:
            // the closed ball keeps the center, the open one is empty)
            bool realized = std::count(row.begin(), row.end(), Rat(r)) > 0;
            CHECK((open.size() < closed.size()) == realized);
            // monotone in r for the same kind
            CHECK(std::includes(closed.begin(), closed.end(), prev.begin(), prev.end()));
            prev = closed;
        }
    }
}

TEST_CASE("verify_metric: generators pass, ultrametric mode on the tree") {
    for (const Space& s : {grid2(6, 6), cantor_tree({4, 2, 3})}) {
        MetricReport r = verify_metric(s, 10000, 7);
        CHECK(r.ok());
    }
    MetricReport ultra = verify_metric(cantor_tree({4, 2, 3}), 10000, 7, true);
    CHECK(ultra.ok());
    CHECK(ultra.ultrametric_mode);
}

TEST_CASE("verify_metric: corrupted matrix yields a triangle violation") {
    // path 0-1-2 with d(0,2) halved: 0.5 > would-be triangle? build explicit
    // matrix with d(0,1)=1, d(1,2)=1, d(0,2)=3 (inflated: triangle violated).
    std::vector<Rat> tri = {Rat(1), Rat(3), Rat(1)};  // rows: d(1,0); d(2,0), d(2,1)
    Space bad = Space::make_explicit(3, tri);
    MetricReport r = verify_metric(bad, 10000, 11);
    CHECK_FALSE(r.ok());
    bool has_triangle = false;
    for (const auto& v : r.violations) has_triangle |= v.kind == "triangle";
    CHECK(has_triangle);
}

TEST_CASE("verify_metric: grid is not an ultrametric and the check says so") {
    MetricReport r = verify_metric(grid2(5, 5), 20000, 3, true);
    CHECK_FALSE(r.ok());
}

TEST_CASE("rescale: gamma=1 identity, gamma=2 halves radii") {
    Space g = grid2(5, 5);
    Space same = g.rescaled(Rat(1));
    Space half = g.rescaled(Rat(2));
    PointId c = gid(2, 2, 5);
    CHECK(same.ball_members({c, Rat(1), BallKind::Closed}) ==
          g.ball_members({c, Rat(1), BallKind::Closed}));
    // B_gamma(x, r) = B(x, gamma r), bit for bit
    CHECK(half.ball_members({c, Rat(1), BallKind::Closed}) ==
          g.ball_members({c, Rat(2), BallKind::Closed}));
    CHECK(half.ball_card({c, Rat(1), BallKind::Closed}) == 13);
    CHECK(half.distance(gid(0, 0, 5), gid(2, 1, 5)) == Rat(3, 2));
    CHECK_THROWS_AS(g.rescaled(Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(g.rescaled(Rat(-1)), std::invalid_argument);
}

TEST_CASE("rescale composes multiplicatively") {
    Space g = grid2(4, 4);
    Space a = g.rescaled(Rat(2)).rescaled(Rat(3));
    Space b = g.rescaled(Rat(6));
    for (PointId x = 0; x < g.n_points(); ++x)
        for (const Rat& r : {Rat(1, 2), Rat(1), Rat(5, 3)})
            CHECK(a.ball_members({x, r, BallKind::Open}) ==
                  b.ball_members({x, r, BallKind::Open}));
}

TEST_CASE("rescale preserves ball identity exactly at threshold radii") {
    Space t = cantor_tree({4, 2, 3});
    Space sc = t.rescaled(Rat(1, 3));
    for (PointId x : {PointId{0}, PointId{9}}) {
        for (int j = 0; j <= 4; ++j) {
            Rat r(1, Rat::ipow(3, j));
            CHECK(sc.ball_members({x, r * Rat(3), BallKind::Open}) ==
                  t.ball_members({x, r, BallKind::Open}));
        }
    }
}
