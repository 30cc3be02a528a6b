#include "blockip/reductions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace blockip {

namespace {

std::vector<long> first_primes(int n) {
    std::vector<long> ps;
    for (long c = 2; static_cast<int>(ps.size()) < n; ++c) {
        bool prime = true;
        for (long p : ps) {
            if (p * p > c) break;
            if (c % p == 0) prime = false;
        }
        if (prime) ps.push_back(c);
    }
    return ps;
}

// splitmix64: tiny, stable PRNG so generated instances are identical across
// library implementations.
struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform-ish in [lo, hi]; bias is irrelevant for test instances
    Int range(const Int& lo, const Int& hi) {
        Int span = hi - lo + 1;
        Int r = 0;
        for (int i = 0; i < 2; ++i) r = r * Int("18446744073709551616") + Int(next());
        return lo + int_mod(r, span);
    }
    long range(long lo, long hi) {
        return range(Int(lo), Int(hi)).get_si();
    }
};

}  // namespace

TwoStageProgram gen_3sat(const CnfFormula& phi) {
    std::vector<long> primes = first_primes(phi.nvars);
    TwoStageProgram P;
    P.globals = make_vars("x", 1);
    P.locals = make_vars("y", 16);
    P.rowNames = make_vars("r", 10);

    for (const CnfClause& cl : phi.clauses) {
        TwoStageBrick br;
        br.A = IntMat(P.globals, P.rowNames);
        br.D = IntMat(P.locals, P.rowNames);
        br.b = IntVec(P.rowNames);
        int ell = 0;
        for (int j = 0; j < 3; ++j) {
            int lit = cl.lit[j];
            if (lit == 0 || std::abs(lit) > phi.nvars)
                throw std::invalid_argument("gen_3sat: literal out of range");
            long p = primes[static_cast<std::size_t>(std::abs(lit)) - 1];
            int t = lit > 0 ? 1 : -1;
            if (t < 0) ++ell;
            std::size_t c = static_cast<std::size_t>(5 * j);  // a,b,c,d,e columns
            std::size_t r = static_cast<std::size_t>(3 * j);
            // -x + p*a + b + c = 0
            br.A.at(0, r) = -1;
            br.D.at(c + 0, r) = p;
            br.D.at(c + 1, r) = 1;
            br.D.at(c + 2, r) = 1;
            // (p-2)*b - c - d = 0
            br.D.at(c + 1, r + 1) = p - 2;
            br.D.at(c + 2, r + 1) = -1;
            br.D.at(c + 3, r + 1) = -1;
            // b + e = 1
            br.D.at(c + 1, r + 2) = 1;
            br.D.at(c + 4, r + 2) = 1;
            br.b[r + 2] = 1;
            // clause row: signed b-variables minus a slack
            br.D.at(c + 1, 9) = t;
        }
        br.D.at(15, 9) = -1;
        br.b[9] = 1 - ell;
        P.bricks.push_back(std::move(br));
    }
    return P;
}

NFoldProgram gen_subset_sum(const std::vector<Int>& a, const Int& target,
                            const std::vector<Int>& costs) {
    NFoldProgram P;
    P.locals = make_vars({"y", "yneg", "z"});
    P.linkRows = make_vars("s", 1);
    P.localRows = make_vars("r", 2);
    P.C = IntMat(P.locals, P.linkRows);
    P.C.at(2, 0) = 1;  // the z column carries a_i * y_i into the link row
    P.a = IntVec(P.linkRows);
    P.a[0] = target;
    for (std::size_t i = 0; i < a.size(); ++i) {
        NFoldBrick br;
        br.D = IntMat(P.locals, P.localRows);
        br.D.at(0, 0) = 1;  // y + yneg = 1
        br.D.at(1, 0) = 1;
        br.D.at(0, 1) = a[i];  // a_i * y - z = 0
        br.D.at(2, 1) = -1;
        br.b = IntVec(P.localRows);
        br.b[0] = 1;
        br.c = IntVec(P.locals);
        if (i < costs.size()) br.c[0] = costs[i];
        P.bricks.push_back(std::move(br));
    }
    return P;
}

namespace {

// Mutable row-major working form for the coefficient-shrinking rewrite.
struct Work {
    std::vector<std::string> gnames, lnames;
    struct LinkRow {
        std::vector<Int> bcoef;  // per global
        std::vector<Int> ccoef;  // per local, uniform
        Int rhs;
    };
    struct LocalRow {
        std::vector<Int> acoef;               // per global, uniform
        std::vector<std::vector<Int>> dcoef;  // per brick, per local
        std::vector<Int> rhs;                 // per brick
    };
    std::vector<LinkRow> links;
    std::vector<LocalRow> locals_rows;
    std::size_t nbricks = 0;

    std::size_t add_global(std::string name) {
        gnames.push_back(std::move(name));
        for (auto& r : links) r.bcoef.push_back(0);
        for (auto& r : locals_rows) r.acoef.push_back(0);
        return gnames.size() - 1;
    }
    std::size_t add_local(std::string name) {
        lnames.push_back(std::move(name));
        for (auto& r : links) r.ccoef.push_back(0);
        for (auto& r : locals_rows)
            for (auto& d : r.dcoef) d.push_back(0);
        return lnames.size() - 1;
    }
};

}  // namespace

FourBlockProgram shrink_4block(const FourBlockProgram& P) {
    std::size_t n = P.bricks.size();
    Int nI(static_cast<long>(n));
    auto check = [&](const IntMat& M, const char* what) {
        if (M.norm_inf() > nI)
            throw std::invalid_argument(std::string("shrink_4block: ") + what +
                                        " entry exceeds the brick count");
    };
    check(P.A, "A");
    check(P.Bhat, "Bhat");
    check(P.C, "C");

    Work W;
    W.nbricks = n;
    W.gnames = *P.globals;
    W.lnames = *P.locals;
    for (std::size_t i = 0; i < P.linkRows->size(); ++i) {
        Work::LinkRow r;
        for (std::size_t j = 0; j < W.gnames.size(); ++j) r.bcoef.push_back(P.Bhat.col[j][i]);
        for (std::size_t j = 0; j < W.lnames.size(); ++j) r.ccoef.push_back(P.C.col[j][i]);
        r.rhs = P.a[i];
        W.links.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < P.localRows->size(); ++i) {
        Work::LocalRow r;
        for (std::size_t j = 0; j < W.gnames.size(); ++j) r.acoef.push_back(P.A.col[j][i]);
        for (std::size_t t = 0; t < n; ++t) {
            std::vector<Int> d;
            for (std::size_t j = 0; j < W.lnames.size(); ++j)
                d.push_back(P.bricks[t].D.col[j][i]);
            r.dcoef.push_back(std::move(d));
            r.rhs.push_back(P.bricks[t].b[i]);
        }
        W.locals_rows.push_back(std::move(r));
    }

    // Step 1: big C entries move onto fresh globals z = sum_t y_{t,j}.
    std::size_t nlink0 = W.links.size();
    for (std::size_t i = 0; i < nlink0; ++i)
        for (std::size_t j = 0; j < W.lnames.size(); ++j) {
            Int c = W.links[i].ccoef[j];
            if (int_abs(c) <= 1) continue;
            std::size_t z = W.add_global("zc" + std::to_string(i) + "_" + std::to_string(j));
            Work::LinkRow def;
            def.bcoef.assign(W.gnames.size(), 0);
            def.ccoef.assign(W.lnames.size(), 0);
            def.bcoef[z] = -1;
            def.ccoef[j] = 1;
            def.rhs = 0;
            W.links.push_back(std::move(def));
            W.links[i].ccoef[j] = 0;
            W.links[i].bcoef[z] = c;  // large entry now in Bhat; removed below
        }

    // Copies of a global through the bricks: p'_t = x_j everywhere, p_t = p'_t
    // in the first alpha bricks and 0 in the rest, so sum_t p_t = alpha * x_j.
    auto emulate = [&](std::size_t xj, const Int& alpha, const std::string& tag) {
        std::size_t p = W.add_local("p" + tag);
        std::size_t pp = W.add_local("pp" + tag);
        Work::LocalRow copy;  // -x_j + p' = 0
        copy.acoef.assign(W.gnames.size(), 0);
        copy.acoef[xj] = -1;
        for (std::size_t t = 0; t < n; ++t) {
            std::vector<Int> d(W.lnames.size(), 0);
            d[pp] = 1;
            copy.dcoef.push_back(std::move(d));
            copy.rhs.push_back(0);
        }
        W.locals_rows.push_back(std::move(copy));
        Work::LocalRow gate;  // p - p' = 0 for t <= alpha, p = 0 after
        gate.acoef.assign(W.gnames.size(), 0);
        for (std::size_t t = 0; t < n; ++t) {
            std::vector<Int> d(W.lnames.size(), 0);
            d[p] = 1;
            if (Int(static_cast<long>(t + 1)) <= alpha) d[pp] = -1;
            gate.dcoef.push_back(std::move(d));
            gate.rhs.push_back(0);
        }
        W.locals_rows.push_back(std::move(gate));
        std::size_t z = W.add_global("zs" + tag);
        Work::LinkRow def;  // -z' + sum_t p_t = 0
        def.bcoef.assign(W.gnames.size(), 0);
        def.ccoef.assign(W.lnames.size(), 0);
        def.bcoef[z] = -1;
        def.ccoef[p] = 1;
        def.rhs = 0;
        W.links.push_back(std::move(def));
        return z;
    };

    // Step 2: big A entries.
    std::size_t nloc0 = W.locals_rows.size(), ng0 = W.gnames.size();
    for (std::size_t i = 0; i < nloc0; ++i)
        for (std::size_t j = 0; j < ng0; ++j) {
            Int a = W.locals_rows[i].acoef[j];
            if (int_abs(a) <= 1) continue;
            std::size_t z =
                emulate(j, int_abs(a), "a" + std::to_string(i) + "_" + std::to_string(j));
            W.locals_rows[i].acoef[j] = 0;
            W.locals_rows[i].acoef[z] = a < 0 ? -1 : 1;
        }

    // Step 3: big Bhat entries, including the ones created in step 1.
    std::size_t nlink1 = W.links.size(), ng1 = W.gnames.size();
    for (std::size_t i = 0; i < nlink1; ++i)
        for (std::size_t j = 0; j < ng1; ++j) {
            Int b = W.links[i].bcoef[j];
            if (int_abs(b) <= 1) continue;
            std::size_t z =
                emulate(j, int_abs(b), "b" + std::to_string(i) + "_" + std::to_string(j));
            W.links[i].bcoef[j] = 0;
            W.links[i].bcoef[z] = b < 0 ? -1 : 1;
        }

    // Pad everything square.
    std::size_t K = std::max({W.gnames.size(), W.lnames.size(), W.links.size(),
                              W.locals_rows.size()});
    while (W.gnames.size() < K) W.add_global("gpad" + std::to_string(W.gnames.size()));
    while (W.lnames.size() < K) W.add_local("lpad" + std::to_string(W.lnames.size()));
    while (W.links.size() < K) {
        Work::LinkRow r;
        r.bcoef.assign(W.gnames.size(), 0);
        r.ccoef.assign(W.lnames.size(), 0);
        r.rhs = 0;
        W.links.push_back(std::move(r));
    }
    while (W.locals_rows.size() < K) {
        Work::LocalRow r;
        r.acoef.assign(W.gnames.size(), 0);
        r.dcoef.assign(n, std::vector<Int>(W.lnames.size(), 0));
        r.rhs.assign(n, 0);
        W.locals_rows.push_back(r);
    }

    FourBlockProgram Q;
    Q.globals = make_vars(W.gnames);
    Q.locals = make_vars(W.lnames);
    Q.linkRows = make_vars("L", W.links.size());
    Q.localRows = make_vars("R", W.locals_rows.size());
    Q.Bhat = IntMat(Q.globals, Q.linkRows);
    Q.C = IntMat(Q.locals, Q.linkRows);
    Q.A = IntMat(Q.globals, Q.localRows);
    Q.a = IntVec(Q.linkRows);
    for (std::size_t i = 0; i < W.links.size(); ++i) {
        for (std::size_t j = 0; j < W.gnames.size(); ++j) Q.Bhat.at(j, i) = W.links[i].bcoef[j];
        for (std::size_t j = 0; j < W.lnames.size(); ++j) Q.C.at(j, i) = W.links[i].ccoef[j];
        Q.a[i] = W.links[i].rhs;
    }
    for (std::size_t t = 0; t < n; ++t) {
        FourBlockBrick br;
        br.D = IntMat(Q.locals, Q.localRows);
        br.b = IntVec(Q.localRows);
        for (std::size_t i = 0; i < W.locals_rows.size(); ++i) {
            for (std::size_t j = 0; j < W.lnames.size(); ++j)
                br.D.at(j, i) = W.locals_rows[i].dcoef[t][j];
            br.b[i] = W.locals_rows[i].rhs[t];
        }
        Q.bricks.push_back(std::move(br));
    }
    for (std::size_t i = 0; i < W.locals_rows.size(); ++i)
        for (std::size_t j = 0; j < W.gnames.size(); ++j)
            Q.A.at(j, i) = W.locals_rows[i].acoef[j];
    return Q;
}

RandomTwoStage gen_random_twostage(std::uint64_t seed, const TwoStageSizes& sz) {
    Rng rng{seed};
    RandomTwoStage R;
    TwoStageProgram& P = R.program;
    P.globals = make_vars("u", sz.globals);
    P.locals = make_vars("v", sz.locals);
    P.rowNames = make_vars("r", sz.rows);

    IntVec u(P.globals);
    for (std::size_t j = 0; j < sz.globals; ++j) u[j] = rng.range(0L, 5L);
    std::vector<IntVec> vs;
    for (std::size_t i = 0; i < sz.bricks; ++i) {
        TwoStageBrick br;
        br.A = IntMat(P.globals, P.rowNames);
        br.D = IntMat(P.locals, P.rowNames);
        for (std::size_t j = 0; j < sz.globals; ++j)
            for (std::size_t r = 0; r < sz.rows; ++r)
                br.A.at(j, r) = rng.range(-sz.amax, sz.amax);
        for (std::size_t j = 0; j < sz.locals; ++j)
            for (std::size_t r = 0; r < sz.rows; ++r)
                br.D.at(j, r) = rng.range(-sz.delta, sz.delta);
        IntVec v(P.locals);
        for (std::size_t j = 0; j < sz.locals; ++j) v[j] = rng.range(0L, 5L);
        br.b = mat_apply(br.A, u) + mat_apply(br.D, v);
        vs.push_back(std::move(v));
        P.bricks.push_back(std::move(br));
    }
    if (sz.perturb) {
        std::size_t i = static_cast<std::size_t>(rng.range(0L, static_cast<long>(sz.bricks) - 1));
        std::size_t r = static_cast<std::size_t>(rng.range(0L, static_cast<long>(sz.rows) - 1));
        P.bricks[i].b[r] += rng.next() % 2 ? 1 : -1;
    } else {
        R.planted = TwoStageWitness{u, vs};
    }
    return R;
}

RandomNFold gen_random_nfold(std::uint64_t seed, const NFoldSizes& sz) {
    Rng rng{seed};
    RandomNFold R;
    NFoldProgram& P = R.program;
    P.locals = make_vars("y", sz.locals);
    P.linkRows = make_vars("s", sz.linkRows);
    P.localRows = make_vars("r", sz.localRows);
    P.C = IntMat(P.locals, P.linkRows);
    for (std::size_t j = 0; j < sz.locals; ++j)
        for (std::size_t r = 0; r < sz.linkRows; ++r)
            P.C.at(j, r) = rng.range(-sz.cmax, sz.cmax);
    P.a = IntVec(P.linkRows);
    for (std::size_t i = 0; i < sz.bricks; ++i) {
        NFoldBrick br;
        br.D = IntMat(P.locals, P.localRows);
        for (std::size_t j = 0; j < sz.locals; ++j)
            for (std::size_t r = 0; r < sz.localRows; ++r)
                br.D.at(j, r) = rng.range(-sz.delta, sz.delta);
        IntVec y(P.locals);
        for (std::size_t j = 0; j < sz.locals; ++j) y[j] = rng.range(0L, 3L);
        br.b = mat_apply(br.D, y);
        br.c = IntVec(P.locals);
        for (std::size_t j = 0; j < sz.locals; ++j) br.c[j] = rng.range(-5L, 5L);
        P.a = P.a + mat_apply(P.C, y);
        R.planted.push_back(std::move(y));
        P.bricks.push_back(std::move(br));
    }
    return R;
}

}  // namespace blockip
