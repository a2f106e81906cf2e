#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superell/galois_ring.hpp"

using namespace superell;

namespace {

constexpr u64 kCap = u64(1) << 22;

SuperellipticCurve curve_x3mx() {
    auto F3 = FiniteField::build(3, 1);
    return SuperellipticCurve::make(F3, 2, FqPoly::from_ints(F3, {0, -1, 0, 1}));
}

SuperellipticCurve curve_ordinary() {
    auto F3 = FiniteField::build(3, 1);
    return SuperellipticCurve::make(F3, 2, FqPoly::from_ints(F3, {1, 0, 1, 1}));
}

SuperellipticCurve curve_v4() {
    auto F5 = FiniteField::build(5, 1);
    return SuperellipticCurve::make(F5, 2, FqPoly::from_ints(F5, {1, 0, 1, 0, 2, 0, 1}));
}

SuperellipticCurve curve_c4() {
    auto F9 = FiniteField::build(3, 2);
    return SuperellipticCurve::make(F9, 4, FqPoly::from_ints(F9, {1, 0, 1, 1}));
}

DiagAut aut(const SuperellipticCurve& c, i64 cc, i64 ee) {
    return DiagAut{c.base_field()->from_int(cc), c.base_field()->from_int(ee)};
}

Character trivial_of(const AutGroupPtr& M, u32 conductor) {
    return Character{M, conductor, std::vector<u32>(M->size(), 0)};
}

struct KaniSetup {
    SuperellipticCurve Y;
    AutGroupPtr H, one, A, B, C;
    CycloFieldPtr K;
    std::vector<RelationTerm> terms;
};

KaniSetup kani_setup() {
    KaniSetup s{curve_v4(), nullptr, nullptr, nullptr, nullptr, nullptr, CycloField::make(2), {}};
    s.H = AutSubgroup::closure(s.Y, {aut(s.Y, 4, 1), aut(s.Y, 1, 4)});
    s.one = AutSubgroup::closure(s.Y, {});
    s.A = AutSubgroup::closure(s.Y, {aut(s.Y, 4, 1)});
    s.B = AutSubgroup::closure(s.Y, {aut(s.Y, 1, 4)});
    s.C = AutSubgroup::closure(s.Y, {aut(s.Y, 4, 4)});
    s.terms = {{trivial_of(s.one, 2), 1},
               {trivial_of(s.H, 2), 2},
               {trivial_of(s.A, 2), -1},
               {trivial_of(s.B, 2), -1},
               {trivial_of(s.C, 2), -1}};
    return s;
}

} // namespace

TEST_CASE("group ring arithmetic") {
    auto s = kani_setup();
    auto u = GroupRingElem::unit(s.H, s.K);
    auto z = GroupRingElem::zero(s.H, s.K);
    CHECK(z.is_zero());
    CHECK_FALSE(u.is_zero());
    CHECK(u * u == u);
    CHECK(u + z == u);
    CHECK(u - u == z);

    auto e = idempotent(s.H, trivial_of(s.H, 2), s.K);
    CHECK(e * u == e);
    CHECK(u * e == e);
    auto f = idempotent(s.H, all_characters(s.H, 2)[2], s.K);
    CHECK(e * f == f * e); // the group is abelian
    CHECK(e.scaled(CycloNum::from_integer(s.K, 2)) == e + e);
}

TEST_CASE("idempotents are orthogonal projectors for every group of order up to 8") {
    struct Case {
        AutGroupPtr H;
        u32 conductor;
    };
    std::vector<Case> cases;

    auto x3 = curve_x3mx();
    cases.push_back({AutSubgroup::closure(x3, {}), 2});
    cases.push_back({AutSubgroup::closure(x3, {aut(x3, 1, -1)}), 2});

    auto v4 = curve_v4();
    cases.push_back({AutSubgroup::closure(v4, {aut(v4, 4, 1), aut(v4, 1, 4)}), 2});

    auto c4 = curve_c4();
    auto F9 = c4.base_field();
    cases.push_back({AutSubgroup::closure(c4, {DiagAut{F9->one(), F9->root_of_unity(4)}}), 4});

    auto F7 = FiniteField::build(7, 1);
    auto cubic = SuperellipticCurve::make(F7, 3, FqPoly::from_ints(F7, {1, 1, 0, 0, 1}));
    cases.push_back(
        {AutSubgroup::closure(cubic, {DiagAut{F7->one(), F7->root_of_unity(3)}}), 3});
    auto sextic = SuperellipticCurve::make(F7, 6, FqPoly::from_ints(F7, {3, 1, 0, 0, 0, 1}));
    cases.push_back(
        {AutSubgroup::closure(sextic, {DiagAut{F7->one(), F7->root_of_unity(6)}}), 6});

    auto oct = SuperellipticCurve::make(F9, 8, FqPoly::from_ints(F9, {1, 0, 1, 1}));
    cases.push_back({AutSubgroup::closure(oct, {DiagAut{F9->one(), F9->root_of_unity(8)}}), 8});

    for (const auto& [H, conductor] : cases) {
        CAPTURE(H->size());
        auto K = CycloField::make(conductor);
        auto chars = all_characters(H, conductor);
        std::vector<GroupRingElem> es;
        for (const auto& chi : chars) es.push_back(idempotent(H, chi, K));
        auto sum = GroupRingElem::zero(H, K);
        for (size_t i = 0; i < es.size(); ++i) {
            for (size_t j = 0; j < es.size(); ++j) {
                auto prod = es[i] * es[j];
                if (i == j)
                    CHECK(prod == es[i]);
                else
                    CHECK(prod.is_zero());
            }
            sum = sum + es[i];
        }
        CHECK(sum == GroupRingElem::unit(H, K)); // completeness
    }
}

TEST_CASE("subgroup idempotents viewed in a bigger group still decompose the unit") {
    auto s = kani_setup();
    for (const auto& M : {s.one, s.A, s.B, s.C, s.H}) {
        auto sum = GroupRingElem::zero(s.H, s.K);
        for (const auto& chi : all_characters(M, 2)) sum = sum + idempotent(s.H, chi, s.K);
        CHECK(sum == GroupRingElem::unit(s.H, s.K));
    }
}

TEST_CASE("relation verification on the double-cover completeness identity") {
    auto c = curve_x3mx();
    auto H = AutSubgroup::closure(c, {aut(c, 1, -1)});
    auto one = AutSubgroup::closure(c, {});
    auto K = CycloField::make(2);
    auto chars = all_characters(H, 2);

    std::vector<RelationTerm> rel = {
        {trivial_of(one, 2), 1}, {chars[0], -1}, {chars[1], -1}};
    CHECK(verify_relation(H, rel, K));
    CHECK(relation_element(H, rel, K).is_zero());

    // scaling a vanishing relation keeps it vanishing
    std::vector<RelationTerm> doubled = {
        {trivial_of(one, 2), 2}, {chars[0], -2}, {chars[1], -2}};
    CHECK(verify_relation(H, doubled, K));
    std::vector<RelationTerm> negated = {
        {trivial_of(one, 2), -1}, {chars[0], 1}, {chars[1], 1}};
    CHECK(verify_relation(H, negated, K));

    std::vector<RelationTerm> single = {{trivial_of(H, 2), 1}};
    CHECK_FALSE(verify_relation(H, single, K));

    std::vector<RelationTerm> null_terms = {{trivial_of(H, 2), 0}};
    CHECK_THROWS_AS(verify_relation(H, null_terms, K), ConfigError);
}

TEST_CASE("the Kani relation vanishes in the group ring") {
    auto s = kani_setup();
    CHECK(verify_relation(s.H, s.terms, s.K));
}

TEST_CASE("relation discovery recovers known kernels") {
    auto s = kani_setup();

    std::vector<Character> kani = {trivial_of(s.one, 2), trivial_of(s.A, 2), trivial_of(s.B, 2),
                                   trivial_of(s.C, 2), trivial_of(s.H, 2)};
    auto rels = find_relations(s.H, kani, s.K);
    REQUIRE(rels.size() == 1);
    CHECK(rels[0] == std::vector<i64>{1, -1, -1, -1, 2});

    // duplicate candidates differ by the tautological relation
    std::vector<Character> twins = {trivial_of(s.A, 2), trivial_of(s.A, 2)};
    auto r2 = find_relations(s.H, twins, s.K);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == std::vector<i64>{1, -1});

    // independent idempotents admit no relation
    std::vector<Character> indep = {trivial_of(s.one, 2), trivial_of(s.A, 2)};
    CHECK(find_relations(s.H, indep, s.K).empty());

    // every discovered kernel vector is itself a verified relation
    for (const auto& v : rels) {
        std::vector<RelationTerm> terms;
        for (size_t i = 0; i < v.size(); ++i) terms.push_back({kani[i], v[i]});
        CHECK(verify_relation(s.H, terms, s.K));
    }
}

TEST_CASE("relation discovery on a cyclic group's full character set") {
    auto c4 = curve_c4();
    auto F9 = c4.base_field();
    auto H = AutSubgroup::closure(c4, {DiagAut{F9->one(), F9->root_of_unity(4)}});
    auto one = AutSubgroup::closure(c4, {});
    auto K = CycloField::make(4);

    std::vector<Character> cands = {trivial_of(one, 4)};
    for (const auto& chi : all_characters(H, 4)) cands.push_back(chi);
    auto rels = find_relations(H, cands, K);
    REQUIRE(rels.size() == 1);
    CHECK(rels[0] == std::vector<i64>{1, -1, -1, -1, -1});
}

TEST_CASE("product identity through the idempotent relation") {
    auto s = kani_setup();
    auto T = LambdaTable::compute(s.Y, s.H, 2 * s.Y.genus() + 2, kCap);
    auto rep = theorem_check(T, s.terms, s.K);
    CHECK(rep.identity_ok);
    CHECK(rep.lhs == rep.rhs);
    CHECK(rep.degrees == std::vector<u32>{4, 0, 2, 0, 2});
    // lhs = P_Y * P_X^2 picks up only the degree-4 numerator
    CHECK(rep.lhs.degree() == 4);
    CHECK(rep.polys[0].coeff(1) == CycloNum::from_integer(s.K, 4));

    // completeness identity on the elliptic double cover
    auto c = curve_x3mx();
    auto H2 = AutSubgroup::closure(c, {aut(c, 1, -1)});
    auto one = AutSubgroup::closure(c, {});
    auto chars = all_characters(H2, 2);
    std::vector<RelationTerm> rel = {
        {trivial_of(one, 2), 1}, {chars[0], -1}, {chars[1], -1}};
    auto T2 = LambdaTable::compute(c, H2, 2 * c.genus() + 2, kCap);
    auto rep2 = theorem_check(T2, rel, s.K);
    CHECK(rep2.identity_ok);
    CHECK(rep2.degrees == std::vector<u32>{2, 0, 2});

    // a non-relation is rejected before any polynomial work
    std::vector<RelationTerm> bogus = {{trivial_of(H2, 2), 1}};
    CHECK_THROWS_AS(theorem_check(T2, bogus, s.K), MathError);
}

TEST_CASE("kernel-dimension identity along both routes") {
    auto run_completeness = [](const SuperellipticCurve& c) {
        auto H = AutSubgroup::closure(c, {aut(c, 1, -1)});
        auto one = AutSubgroup::closure(c, {});
        auto K = CycloField::make(2);
        auto chars = all_characters(H, 2);
        std::vector<RelationTerm> rel = {
            {Character{one, 2, {0}}, 1}, {chars[0], -1}, {chars[1], -1}};
        auto T = LambdaTable::compute(c, H, 2 * c.genus() + 2, kCap);
        return corollary_check(T, rel, K);
    };

    auto sup = run_completeness(curve_x3mx());
    CHECK(sup.gammas == std::vector<u32>{0, 0, 0});
    CHECK(sup.gamma_sum == 0);
    CHECK(sup.degree_sum == 0);
    CHECK(sup.gamma_route_zero);
    CHECK(sup.degree_route_zero);

    auto ord = run_completeness(curve_ordinary());
    CHECK(ord.gammas == std::vector<u32>{1, 0, 1});
    CHECK(ord.mod_p_degrees == std::vector<u32>{1, 0, 1});
    CHECK(ord.gamma_route_zero);
    CHECK(ord.degree_route_zero);

    auto s = kani_setup();
    auto T = LambdaTable::compute(s.Y, s.H, 2 * s.Y.genus() + 2, kCap);
    auto rep = corollary_check(T, s.terms, s.K);
    CHECK(rep.gammas == std::vector<u32>{1, 0, 1, 0, 0});
    CHECK(rep.mod_p_degrees == std::vector<u32>{1, 0, 1, 0, 0});
    CHECK(rep.gamma_sum == 0);
    CHECK(rep.degree_sum == 0);
    CHECK(rep.gamma_route_zero);
    CHECK(rep.degree_route_zero);
}

TEST_CASE("embedding condition per Frobenius orbit") {
    auto v4 = curve_v4();
    auto H = AutSubgroup::closure(v4, {aut(v4, 4, 1), aut(v4, 1, 4)});
    auto rep = embedding_check(v4, H, 2, {0, 0, 1, 0});
    REQUIRE(rep.orbits.size() == 4); // p = 5 fixes every character
    CHECK(rep.all_ok);
    CHECK(rep.orbits[2].gamma == 1);
    CHECK(rep.orbits[2].multiplicity == 1);
    CHECK(rep.orbits[2].dim == 1);

    // asking for more copies than the kernel affords fails the check
    auto bad = embedding_check(v4, H, 2, {0, 0, 2, 0});
    CHECK_FALSE(bad.all_ok);
    CHECK_FALSE(bad.orbits[2].ok);

    auto c4 = curve_c4();
    auto F9 = c4.base_field();
    auto C4 = AutSubgroup::closure(c4, {DiagAut{F9->one(), F9->root_of_unity(4)}});
    auto rc = embedding_check(c4, C4, 4, {0, 0, 1, 0});
    REQUIRE(rc.orbits.size() == 3); // chi and chi^3 fused into one orbit
    CHECK(rc.all_ok);
    u32 fused = 0;
    for (const auto& o : rc.orbits)
        if (o.length == 2) ++fused;
    CHECK(fused == 1);

    // multiplicities must be constant on each orbit
    CHECK_THROWS_AS(embedding_check(c4, C4, 4, {0, 1, 1, 0}), ConfigError);
    // one entry per character
    CHECK_THROWS_AS(embedding_check(c4, C4, 4, {0, 0, 1}), ConfigError);
}

TEST_CASE("sub-cover genus and group order bound") {
    auto gb = genus_bound(6, 3, 2);
    CHECK(gb.sub_genus == mpq_class(3));
    CHECK(gb.bound == 11);
    CHECK(gb.divisible);
    CHECK(gb.hypothesis_ok);

    // m = n_p collapses the sub-cover genus to g
    auto eq = genus_bound(4, 4, 5);
    CHECK(eq.sub_genus == mpq_class(5));
    CHECK(eq.bound == 4 + 4 * 4 + 5);

    auto unit = genus_bound(1, 1, 3);
    CHECK(unit.sub_genus == mpq_class(3));
    CHECK(unit.bound == 1 + 2 + 3);

    auto frac = genus_bound(5, 3, 2);
    CHECK(frac.sub_genus == mpq_class(8, 3));
    CHECK_FALSE(frac.divisible);

    auto low = genus_bound(2, 2, 1);
    CHECK_FALSE(low.hypothesis_ok);
    CHECK(low.sub_genus == mpq_class(1));
    CHECK(low.bound == 2 + 0 + 1);
}
