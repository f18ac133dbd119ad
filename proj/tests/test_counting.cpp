#include "doctest.h"

#include "cuspcount/counting.hpp"

using namespace cuspcount;

TEST_CASE("regular class counts, desk values") {
    CHECK(regular_class_count(make_ground(Int(2), Int(3)), 2, 2) == 1);
    CHECK(regular_class_count(make_ground(Int(2), Int(3)), 6, 6) == 1);
    CHECK(regular_class_count(make_ground(Int(2), Int(3)), 4, 2) == 1);
    CHECK_THROWS_AS(regular_class_count(make_ground(Int(2), Int(3)), 4, 3), InvalidArgument);
}

TEST_CASE("enumerate_liftable, desk values") {
    const GroundData g23 = make_ground(Int(2), Int(3));

    // (m, d, w) = (2, 2, 2): exactly the trivial parameter of GL_1(D)
    auto list = enumerate_liftable(g23, 2, 2, 2);
    REQUIRE(list.size() == 1);
    CHECK(list[0].ctx.form.m == 1);
    CHECK(list[0].y.is_identity());
    CHECK(list[0].inv.k == 1);
    CHECK(list[0].inv.s == 2);

    // (m, d, w) = (4, 1, 2): exactly the trivial parameter of GL_2(F)
    list = enumerate_liftable(g23, 4, 1, 2);
    REQUIRE(list.size() == 1);
    CHECK(list[0].ctx.form.m == 2);
    CHECK(list[0].y.is_identity());
    CHECK(list[0].inv.k == 2);
    CHECK(list[0].inv.s == 1);

    // (m, d, w) = (6, 1, 6): exactly the trivial parameter of GL_6(F)
    list = enumerate_liftable(g23, 6, 1, 6);
    REQUIRE(list.size() == 1);
    CHECK(list[0].ctx.form.m == 6);
    CHECK(list[0].inv.k == 6);
    CHECK(list[0].inv.s == 1);
}

TEST_CASE("cuspidal_from_regular, desk values") {
    const GroundData g23 = make_ground(Int(2), Int(3));

    // (m, d, w) = (2, 2, 2), identity: lands on GL_1(D) with s = 2
    {
        const AmbientField amb = AmbientField::make(Int(2), 2);
        const ModCuspidal sigma =
            cuspidal_from_regular(g23, 2, 2, 2, Element::make(amb, Int(0)));
        CHECK(sigma.ctx.form.m == 1);
        CHECK(sigma.inv.k == 1);
        CHECK(sigma.inv.s == 2);
    }
    // (m, d, w) = (4, 1, 2), identity: lands on GL_2(F) with k = 2
    {
        const AmbientField amb = AmbientField::make(Int(2), 2);
        const ModCuspidal sigma =
            cuspidal_from_regular(g23, 4, 1, 2, Element::make(amb, Int(0)));
        CHECK(sigma.ctx.form.m == 2);
        CHECK(sigma.inv.k == 2);
        CHECK(sigma.inv.s == 1);
    }
    // (m, d, w) = (6, 1, 6), identity: k = 6 = e_y * ell
    {
        const AmbientField amb = AmbientField::make(Int(2), 1);
        const ModCuspidal sigma =
            cuspidal_from_regular(g23, 6, 1, 6, Element::make(amb, Int(0)));
        CHECK(sigma.ctx.form.m == 6);
        CHECK(sigma.inv.k == 6);
        CHECK(sigma.inv.s == 1);
    }
    // membership is enforced: an element of order divisible by ell
    {
        const AmbientField amb = AmbientField::make(Int(2), 2);
        CHECK_THROWS_AS(cuspidal_from_regular(g23, 2, 2, 2, Element::make(amb, Int(1))),
                        InvalidArgument);
    }
}

TEST_CASE("correspondence checks") {
    CHECK(check_correspondence(make_ground(Int(2), Int(3)), 2, 2, 2).ok());
    CHECK(check_correspondence(make_ground(Int(2), Int(3)), 4, 1, 2).ok());
    CHECK(check_correspondence(make_ground(Int(2), Int(5)), 2, 2, 4).ok());

    const auto rep = check_correspondence(make_ground(Int(2), Int(3)), 2, 2, 2);
    CHECK(rep.class_count == 1);
    CHECK(rep.liftable_count == 1);
}

TEST_CASE("level-zero counts") {
    CHECK(count_level_zero(make_ground(Int(2), Int(3)), 2, 2, 2) == 1);
    CHECK(count_level_zero(make_ground(Int(2), Int(3)), 4, 1, 2) == 1);
    CHECK(count_level_zero(make_ground(Int(2), Int(3)), 6, 1, 6) == 1);
}

TEST_CASE("endoclass counts") {
    const GroundData g23 = make_ground(Int(2), Int(3));

    // zero endoclass reduces to the level-zero count
    CHECK(count_for_endoclass(g23, 4, 1, EndoclassRecord::zero(), 2) ==
          count_level_zero(g23, 4, 1, 2));

    // (g, f, level) = (2, 1, 1/2) on GL_4(F), w = 2
    CHECK(count_for_endoclass(g23, 4, 1, EndoclassRecord{2, 1, Rat(1, 2)}, 2) == 1);

    // degree does not divide n/w: empty contribution
    CHECK(count_for_endoclass(g23, 4, 1, EndoclassRecord{4, 2, Rat(1)}, 2) == 0);

    CHECK_THROWS_AS(count_for_endoclass(g23, 2, 1, EndoclassRecord{3, 1, Rat(1)}, 1),
                    InvalidArgument); // 3 does not divide 2
}

TEST_CASE("count tables agree across division pairs") {
    CountQuery query;
    query.ground = make_ground(Int(2), Int(3));
    query.n = 4;
    query.w = 2;
    query.pairs = {{4, 1}, {2, 2}, {1, 4}};
    query.endoclasses = {EndoclassRecord::zero()};

    const CountTable table = count_table(query);
    CHECK(table.all_equal);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].m == 1); // sorted by m
    for (const CountRow& row : table.rows)
        CHECK(row.total == 1);

    // empty endoclass list: all totals zero
    CountQuery empty = query;
    empty.endoclasses.clear();
    for (const CountRow& row : count_table(empty).rows)
        CHECK(row.total == 0);

    // n = 2 with both division pairs
    CountQuery small;
    small.ground = query.ground;
    small.n = 2;
    small.w = 2;
    small.endoclasses = {EndoclassRecord::zero()};
    const CountTable t2 = count_table(small);
    CHECK(t2.all_equal);
    REQUIRE(t2.rows.size() == 2);
    for (const CountRow& row : t2.rows)
        CHECK(row.total == 1);

    // w must divide n
    CountQuery bad = query;
    bad.w = 3;
    CHECK_THROWS_AS(count_table(bad), InvalidArgument);
}

TEST_CASE("level filter") {
    CountQuery query;
    query.ground = make_ground(Int(2), Int(3));
    query.n = 4;
    query.w = 2;
    query.endoclasses = {EndoclassRecord::zero(), EndoclassRecord{2, 1, Rat(1, 2)}};

    // no bound: both contribute
    CountTable table = count_table(query);
    CHECK(table.rows[0].total == 2);

    // bound below 1/2: only the zero endoclass survives
    query.level_bound = Rat(1, 4);
    table = count_table(query);
    CHECK(table.rows[0].total == 1);
    CHECK(table.rows[0].per_endoclass[1] == 0);
}
