#include "superell/job.hpp"

#include "superell/errors.hpp"

#include <algorithm>

namespace superell {

namespace {

const Json* find_key(const Json& j, const std::string& key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

u64 require_u64(const Json& j, const std::string& key, const char* where) {
    const Json* v = find_key(j, key);
    if (!v || !v->is_number_unsigned())
        throw ConfigError(std::string(where) + ": '" + key + "' must be a nonnegative integer");
    return v->get<u64>();
}

FieldElement parse_elem(const Json& v, const FieldPtr& F, const std::string& what) {
    if (v.is_number_integer()) return F->from_int(v.get<i64>());
    if (!v.is_array()) throw ConfigError(what + ": element must be an integer or a digit array");
    std::vector<u32> digits;
    for (const auto& d : v) {
        if (!d.is_number_integer()) throw ConfigError(what + ": digits must be integers");
        const i64 x = d.get<i64>();
        if (x < 0 || x >= static_cast<i64>(F->characteristic()))
            throw ConfigError(what + ": digit out of range [0, p)");
        digits.push_back(static_cast<u32>(x));
    }
    if (digits.size() > F->degree()) throw ConfigError(what + ": more digits than the field degree");
    digits.resize(F->degree(), 0);
    return F->from_digits(std::move(digits));
}

FqPoly parse_poly(const Json& v, const FieldPtr& F, const std::string& what) {
    if (!v.is_array()) throw ConfigError(what + ": polynomial must be a coefficient array");
    std::vector<FieldElement> co;
    for (size_t i = 0; i < v.size(); ++i)
        co.push_back(parse_elem(v[i], F, what + "[" + std::to_string(i) + "]"));
    return FqPoly::from_coeffs(F, std::move(co));
}

DiagAut parse_aut(const Json& e, const FieldPtr& F, const std::string& what) {
    if (!e.is_object()) throw ConfigError(what + ": entries must be objects with 'c' and 'eps'");
    const Json* c = find_key(e, "c");
    const Json* eps = find_key(e, "eps");
    if (!c || !eps) throw ConfigError(what + ": need 'c' and 'eps'");
    return DiagAut{parse_elem(*c, F, what + ".c"), parse_elem(*eps, F, what + ".eps")};
}

} // namespace

JobContext load_job(const Json& config, const JobOverrides& overrides) {
    if (!config.is_object()) throw ConfigError("config: top level must be an object");
    for (auto it = config.begin(); it != config.end(); ++it) {
        static const char* known[] = {"field",   "curve",    "group",    "precision",
                                      "cap",     "workers",  "relation", "embedding"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return it.key() == k; }) == std::end(known))
            throw ConfigError("config: unknown key '" + it.key() + "'");
    }

    const Json* fj = find_key(config, "field");
    if (!fj || !fj->is_object()) throw ConfigError("config: 'field' object required");
    const u64 p = require_u64(*fj, "p", "field");
    const u64 n = require_u64(*fj, "n", "field");
    if (n == 0 || n > 61) throw ConfigError("field: 'n' must be in [1, 61]");
    FieldPtr Fq;
    try {
        Fq = FiniteField::build(p, static_cast<u32>(n));
    } catch (const MathError& e) {
        throw ConfigError(std::string("field: ") + e.what());
    }

    const Json* cj = find_key(config, "curve");
    if (!cj || !cj->is_object()) throw ConfigError("config: 'curve' object required");
    const u64 m = require_u64(*cj, "m", "curve");
    const Json* gj = find_key(*cj, "g");
    const Json* fbj = find_key(*cj, "family_b_f");
    if ((gj == nullptr) == (fbj == nullptr))
        throw ConfigError("curve: exactly one of 'g' or 'family_b_f' required");
    FqPoly g = FqPoly::zero(Fq);
    if (gj) {
        g = parse_poly(*gj, Fq, "curve.g");
    } else {
        if (m != 2) throw ConfigError("curve: family_b_f requires m = 2");
        const FqPoly f = parse_poly(*fbj, Fq, "curve.family_b_f");
        if (f.is_zero()) throw ConfigError("curve: family_b_f must be nonzero");
        std::vector<FieldElement> co(2 * f.co.size() - 1, Fq->zero());
        for (size_t i = 0; i < f.co.size(); ++i) co[2 * i] = f.co[i];
        g = FqPoly::from_coeffs(Fq, std::move(co));
    }
    SuperellipticCurve curve = [&] {
        try {
            return SuperellipticCurve::make(Fq, static_cast<u32>(m), g);
        } catch (const MathError& e) {
            throw ConfigError(std::string("curve: ") + e.what());
        }
    }();

    const Json* grj = find_key(config, "group");
    if (!grj || !grj->is_object()) throw ConfigError("config: 'group' object required");
    const Json* gens = find_key(*grj, "generators");
    if (!gens || !gens->is_array()) throw ConfigError("group: 'generators' array required");
    std::vector<DiagAut> gen_list;
    for (size_t i = 0; i < gens->size(); ++i)
        gen_list.push_back(parse_aut((*gens)[i], Fq, "group.generators[" + std::to_string(i) + "]"));
    AutGroupPtr H;
    try {
        H = AutSubgroup::closure(curve, gen_list);
    } catch (const MathError& e) {
        throw ConfigError(std::string("group: ") + e.what());
    }

    const u32 conductor = H->exponent();
    const CycloFieldPtr K = CycloField::make(conductor);
    const FieldElement omega = Fq->root_of_unity(conductor);

    const u32 min_precision = 2 * curve.genus() + 3;
    u32 precision = min_precision;
    if (const Json* pj = find_key(config, "precision")) {
        if (!pj->is_number_unsigned()) throw ConfigError("config: 'precision' must be a nonnegative integer");
        precision = pj->get<u32>();
    }
    if (overrides.precision) precision = *overrides.precision;
    if (precision < min_precision)
        throw ConfigError("precision below the certification threshold 2*genus+3 = " +
                          std::to_string(min_precision));

    u64 cap = u64(1) << 24;
    if (const Json* capj = find_key(config, "cap")) {
        if (!capj->is_number_unsigned()) throw ConfigError("config: 'cap' must be a nonnegative integer");
        cap = capj->get<u64>();
    }
    if (overrides.cap) cap = *overrides.cap;

    u32 workers = 1;
    if (const Json* wj = find_key(config, "workers")) {
        if (!wj->is_number_unsigned() || wj->get<u64>() == 0)
            throw ConfigError("config: 'workers' must be a positive integer");
        workers = wj->get<u32>();
    }
    if (overrides.workers) workers = *overrides.workers;
    if (workers == 0) throw ConfigError("workers must be positive");

    std::vector<RelationTerm> relation;
    if (const Json* rj = find_key(config, "relation")) {
        const Json* terms = find_key(*rj, "terms");
        if (!terms || !terms->is_array()) throw ConfigError("relation: 'terms' array required");
        for (size_t ti = 0; ti < terms->size(); ++ti) {
            const Json& t = (*terms)[ti];
            const std::string where = "relation.terms[" + std::to_string(ti) + "]";
            const Json* sub = find_key(t, "subgroup");
            const Json* chij = find_key(t, "chi");
            const Json* sj = find_key(t, "s");
            if (!sub || !sub->is_array()) throw ConfigError(where + ": 'subgroup' generator array required");
            if (!chij || !chij->is_array()) throw ConfigError(where + ": 'chi' exponent array required");
            if (!sj || !sj->is_number_integer()) throw ConfigError(where + ": integer 's' required");
            std::vector<DiagAut> mg;
            for (size_t i = 0; i < sub->size(); ++i)
                mg.push_back(parse_aut((*sub)[i], Fq, where + ".subgroup[" + std::to_string(i) + "]"));
            AutGroupPtr M;
            try {
                M = AutSubgroup::closure(curve, mg);
            } catch (const MathError& e) {
                throw ConfigError(where + ": " + e.what());
            }
            if (!H->contains(*M)) throw ConfigError(where + ": subgroup is not inside the group");
            std::vector<u32> exps;
            for (const Json& e : *chij) {
                if (!e.is_number_unsigned()) throw ConfigError(where + ": chi exponents must be nonnegative");
                const u64 v = e.get<u64>();
                if (v >= conductor) throw ConfigError(where + ": chi exponent out of range [0, conductor)");
                exps.push_back(static_cast<u32>(v));
            }
            if (exps.size() != M->size())
                throw ConfigError(where + ": chi needs one exponent per subgroup element");
            Character chi{M, conductor, std::move(exps)};
            const auto chars = all_characters(M, conductor);
            if (std::find(chars.begin(), chars.end(), chi) == chars.end())
                throw ConfigError(where + ": chi is not multiplicative on the subgroup");
            relation.push_back(RelationTerm{std::move(chi), sj->get<i64>()});
        }
    }

    std::vector<u32> multiplicities;
    if (const Json* ej = find_key(config, "embedding")) {
        const Json* mj = find_key(*ej, "multiplicities");
        if (!mj || !mj->is_array()) throw ConfigError("embedding: 'multiplicities' array required");
        for (const Json& v : *mj) {
            if (!v.is_number_unsigned()) throw ConfigError("embedding: multiplicities must be nonnegative");
            multiplicities.push_back(v.get<u32>());
        }
    }

    return JobContext{Fq,  curve,     H,   conductor, K,        omega,
                      precision, cap, workers, std::move(relation), std::move(multiplicities)};
}

Json elem_json(const FieldElement& e) {
    Json a = Json::array();
    for (u32 d : e.digits) a.push_back(d);
    return a;
}

Json fqpoly_json(const FqPoly& f) {
    Json a = Json::array();
    for (const auto& c : f.co) a.push_back(elem_json(c));
    return a;
}

Json cyclo_json(const CycloNum& c) {
    Json a = Json::array();
    for (const auto& q : c.co) {
        Json pair;
        pair["num"] = q.get_num().get_str();
        pair["den"] = q.get_den().get_str();
        a.push_back(pair);
    }
    return a;
}

Json cyclopoly_json(const CycloPoly& P) {
    Json a = Json::array();
    for (const auto& c : P.co) a.push_back(cyclo_json(c));
    return a;
}

Json fqmatrix_json(const FqMatrix& M) {
    Json rows = Json::array();
    for (u32 i = 0; i < M.n; ++i) {
        Json row = Json::array();
        for (u32 j = 0; j < M.n; ++j) row.push_back(elem_json(M.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json context_inputs(const JobContext& ctx) {
    Json j;
    Json field;
    field["p"] = ctx.Fq->characteristic();
    field["n"] = ctx.Fq->degree();
    Json mod = Json::array();
    for (u32 c : ctx.Fq->modulus()) mod.push_back(c);
    field["modulus"] = mod;
    j["field"] = field;

    Json curve;
    curve["m"] = ctx.curve.m();
    curve["g"] = fqpoly_json(ctx.curve.g());
    curve["s"] = ctx.curve.s();
    curve["delta"] = ctx.curve.delta();
    curve["genus"] = ctx.curve.genus();
    j["curve"] = curve;

    Json group;
    group["order"] = ctx.H->size();
    Json elems = Json::array();
    for (const auto& t : ctx.H->elements()) {
        Json e;
        e["c"] = elem_json(t.c);
        e["eps"] = elem_json(t.eps);
        elems.push_back(e);
    }
    group["elements"] = elems;
    j["group"] = group;

    j["conductor"] = ctx.conductor;
    j["omega"] = elem_json(ctx.omega);
    j["precision"] = ctx.precision;
    j["cap"] = ctx.cap;
    return j;
}

namespace {

LambdaTable table_for(const JobContext& ctx, const AutGroupPtr& grp) {
    return LambdaTable::compute(ctx.curve, grp, ctx.precision - 1, ctx.cap, ctx.workers);
}

Json lambda_json(const LambdaTable& T) {
    Json rows = Json::array();
    for (u32 nu = 1; nu <= T.max_nu(); ++nu) {
        Json row = Json::array();
        for (u32 i = 0; i < T.group()->size(); ++i) row.push_back(T.value(i, nu));
        rows.push_back(row);
    }
    return rows;
}

Json exps_json(const Character& chi) {
    Json a = Json::array();
    for (u32 e : chi.exps) a.push_back(e);
    return a;
}

Json term_json(const RelationTerm& t) {
    Json j;
    Json subs = Json::array();
    for (const auto& e : t.chi.M->elements()) {
        Json ej;
        ej["c"] = elem_json(e.c);
        ej["eps"] = elem_json(e.eps);
        subs.push_back(ej);
    }
    j["subgroup"] = subs;
    j["chi"] = exps_json(t.chi);
    j["s"] = t.s;
    return j;
}

} // namespace

CommandResult run_command(const std::string& cmd, const JobContext& ctx,
                          const CommandOptions& opt) {
    Json rep;
    rep["command"] = cmd;
    rep["inputs"] = context_inputs(ctx);
    Json res;
    int code = 0;

    if (cmd == "validate") {
        res["valid"] = true;
    } else if (cmd == "count") {
        if (opt.nu == 0) throw ConfigError("count: --nu must be positive");
        Json counts = Json::array();
        for (u32 nu = 1; nu <= opt.nu; ++nu) {
            Json row;
            row["nu"] = nu;
            row["points"] = count_points(ctx.curve, nu, ctx.cap, ctx.workers);
            counts.push_back(row);
        }
        res["counts"] = counts;
    } else if (cmd == "zeta") {
        const AutGroupPtr triv = AutSubgroup::closure(ctx.curve, {});
        const LambdaTable T = table_for(ctx, triv);
        res["lambda"] = lambda_json(T);
        const SubgroupView V = subgroup_view(triv, triv);
        const Character chi0{triv, ctx.conductor, {0}};
        Json anu = Json::array();
        for (u32 nu = 1; nu < ctx.precision; ++nu)
            anu.push_back(cyclo_json(a_nu(T, V, chi0, nu, ctx.K)));
        res["a"] = anu;
        const CycloPoly P = zeta_numerator(T, ctx.K);
        res["P"] = cyclopoly_json(P);
        res["degree"] = std::max(P.degree(), 0);
    } else if (cmd == "lfun") {
        const LambdaTable T = table_for(ctx, ctx.H);
        const SubgroupView VH = subgroup_view(ctx.H, ctx.H);
        res["lambda"] = lambda_json(T);
        Json chars_json = Json::array();
        for (const Character& chi : all_characters(ctx.H, ctx.conductor)) {
            Json cj;
            cj["chi"] = exps_json(chi);
            Json anu = Json::array();
            for (u32 nu = 1; nu < ctx.precision; ++nu)
                anu.push_back(cyclo_json(a_nu(T, VH, chi, nu, ctx.K)));
            cj["a"] = anu;
            const PolyData pd = p_polynomial(T, VH, chi, ctx.K);
            cj["P"] = cyclopoly_json(pd.P);
            cj["degree"] = std::max(pd.P.degree(), 0);
            cj["pole_order"] = pd.pole_order;
            cj["conj_symmetric"] = pd.conj_symmetric;
            chars_json.push_back(cj);
        }
        res["characters"] = chars_json;
        const ArtinReport ar = artin_check(T, ctx.K);
        Json artin;
        artin["factorization_ok"] = ar.factorization_ok;
        artin["degree_sum"] = ar.degree_sum;
        artin["degree_sum_ok"] = ar.degree_sum_ok;
        artin["all_conj_symmetric"] = ar.all_conj_symmetric;
        res["artin"] = artin;
        code = (ar.factorization_ok && ar.degree_sum_ok) ? 0 : 1;
    } else if (cmd == "cartier" || cmd == "gamma") {
        const auto basis = diff_basis(ctx.curve);
        const FqMatrix C = cartier_matrix(ctx.curve);
        const FqMatrix Cn = cartier_power(ctx.curve, C);
        const auto blocks = isotypic_blocks(ctx.curve, ctx.H, ctx.conductor);
        assert_block_closure(Cn, blocks);
        Json basis_json = Json::array();
        for (const auto& [a, b] : basis) basis_json.push_back(Json::array({a, b}));
        res["basis"] = basis_json;
        if (cmd == "cartier") {
            res["cartier"] = fqmatrix_json(C);
            res["cartier_power"] = fqmatrix_json(Cn);
            Json bj = Json::array();
            for (const auto& blk : blocks) {
                Json one;
                one["chi"] = exps_json(blk.chi);
                Json mem = Json::array();
                for (u32 i : blk.members) mem.push_back(i);
                one["members"] = mem;
                one["det"] = fqpoly_json(block_char_poly(Cn, blk));
                bj.push_back(one);
            }
            res["blocks"] = bj;
        } else {
            Json bj = Json::array();
            u32 total = 0;
            for (const auto& blk : blocks) {
                const OrbitReport orb = gamma_orbit_check(Cn, blocks, blk.chi);
                Json one;
                one["chi"] = exps_json(blk.chi);
                one["gamma"] = orb.gamma;
                one["orbit_length"] = orb.length;
                bj.push_back(one);
                total += gamma_block(Cn, blk);
            }
            res["blocks"] = bj;
            IsotypicBlock whole{blocks.front().chi, {}};
            for (u32 i = 0; i < Cn.n; ++i) whole.members.push_back(i);
            const u32 gamma_total = gamma_block(Cn, whole);
            res["gamma_total"] = gamma_total;
            res["additive_ok"] = (total == gamma_total);
            code = (total == gamma_total) ? 0 : 1;
        }
    } else if (cmd == "verify-idem") {
        if (ctx.relation.empty()) throw ConfigError("verify-idem: config needs relation.terms");
        Json terms = Json::array();
        for (const auto& t : ctx.relation) terms.push_back(term_json(t));
        res["terms"] = terms;
        const bool holds = verify_relation(ctx.H, ctx.relation, ctx.K);
        res["relation_holds"] = holds;
        code = 1;
        if (holds) {
            const LambdaTable T = table_for(ctx, ctx.H);
            const TheoremReport tr = theorem_check(T, ctx.relation, ctx.K);
            Json polys = Json::array();
            for (const auto& P : tr.polys) polys.push_back(cyclopoly_json(P));
            res["P"] = polys;
            Json degs = Json::array();
            for (u32 d : tr.degrees) degs.push_back(d);
            res["degrees"] = degs;
            res["lhs"] = cyclopoly_json(tr.lhs);
            res["rhs"] = cyclopoly_json(tr.rhs);
            res["identity_ok"] = tr.identity_ok;
            code = tr.identity_ok ? 0 : 1;
        }
    } else if (cmd == "verify-corollary") {
        if (ctx.relation.empty()) throw ConfigError("verify-corollary: config needs relation.terms");
        Json terms = Json::array();
        for (const auto& t : ctx.relation) terms.push_back(term_json(t));
        res["terms"] = terms;
        const bool holds = verify_relation(ctx.H, ctx.relation, ctx.K);
        res["relation_holds"] = holds;
        code = 1;
        if (holds) {
            const LambdaTable T = table_for(ctx, ctx.H);
            const CorollaryReport cr = corollary_check(T, ctx.relation, ctx.K);
            Json gam = Json::array();
            for (u32 g : cr.gammas) gam.push_back(g);
            res["gammas"] = gam;
            Json degs = Json::array();
            for (u32 d : cr.mod_p_degrees) degs.push_back(d);
            res["mod_p_degrees"] = degs;
            res["gamma_sum"] = cr.gamma_sum;
            res["degree_sum"] = cr.degree_sum;
            res["gamma_route_zero"] = cr.gamma_route_zero;
            res["degree_route_zero"] = cr.degree_route_zero;
            code = (cr.gamma_route_zero && cr.degree_route_zero) ? 0 : 1;
        }
    } else if (cmd == "embedding-check") {
        if (ctx.multiplicities.empty()) throw ConfigError("embedding-check: config needs embedding.multiplicities");
        const EmbeddingReport er = embedding_check(ctx.curve, ctx.H, ctx.conductor, ctx.multiplicities);
        Json orbits = Json::array();
        for (const auto& orb : er.orbits) {
            Json one;
            one["chi"] = exps_json(orb.rep);
            one["length"] = orb.length;
            one["multiplicity"] = orb.multiplicity;
            one["dim"] = orb.dim;
            one["gamma"] = orb.gamma;
            one["ok"] = orb.ok;
            orbits.push_back(one);
        }
        res["orbits"] = orbits;
        res["all_ok"] = er.all_ok;
        code = er.all_ok ? 0 : 1;
    } else {
        throw ConfigError("unknown command '" + cmd + "'");
    }

    rep["result"] = res;
    return {std::move(rep), code};
}

CommandResult genus_bound_command(u32 m, u32 n_p, u32 g) {
    const GenusBound gb = genus_bound(m, n_p, g);
    Json rep;
    rep["command"] = "genus-bound";
    Json inputs;
    inputs["m"] = m;
    inputs["np"] = n_p;
    inputs["g"] = g;
    rep["inputs"] = inputs;
    Json res;
    Json sg;
    sg["num"] = gb.sub_genus.get_num().get_str();
    sg["den"] = gb.sub_genus.get_den().get_str();
    res["sub_genus"] = sg;
    res["divisible"] = gb.divisible;
    res["bound"] = gb.bound;
    res["hypothesis_ok"] = gb.hypothesis_ok;
    if (!gb.hypothesis_ok) res["warning"] = "genus below 2 is outside the bound's hypothesis";
    rep["result"] = res;
    return {std::move(rep), 0};
}

} // namespace superell
