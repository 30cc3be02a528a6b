#include "blockip/certificate.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "blockip/errors.hpp"
#include "blockip/mip.hpp"

namespace blockip {

namespace {

std::string cert_key(const std::vector<IntVec>& gens, const IntVec& r) {
    std::ostringstream os;
    for (const IntVec& g : gens) {
        for (const Int& x : g.e) os << x.get_str() << ',';
        os << ';';
    }
    os << '|';
    for (const Int& x : r.e) os << x.get_str() << ',';
    return os.str();
}

std::mutex cache_mutex;
std::map<std::string, std::shared_ptr<const PolyhedralCertificate>> cache;

// The cache is keyed by entries only, so a hit may carry another caller's
// variable names; rewrap all vectors onto the requesting residue's tuple.
std::shared_ptr<const PolyhedralCertificate> reindexed(
    std::shared_ptr<const PolyhedralCertificate> cert, const VarTuple& idx) {
    if (same_tuple(cert->r.index, idx)) return cert;
    auto out = std::make_shared<PolyhedralCertificate>(*cert);
    out->r = IntVec(idx, cert->r.e);
    for (IntVec& g : out->generators) g = IntVec(idx, g.e);
    for (IntVec& f : out->facets) f = IntVec(idx, f.e);
    for (auto& [q, a] : out->inequalities) q = IntVec(idx, q.e);
    return out;
}

}  // namespace

Int facet_residue(const IntVec& f, const IntVec& r, const Int& B) {
    return int_mod(inner(f, r), B);
}

bool family_L_member(const DualRepresentation& rep, const ConeConstants& consts,
                     const IntVec& r, std::size_t G_mask) {
    const std::vector<IntVec>& gens = rep.generators;
    std::size_t t = r.dim(), n = gens.size(), nf = rep.facets.size();
    MixedProgram p;
    std::vector<std::size_t> v(t), w(t), lam(n);
    for (std::size_t i = 0; i < t; ++i)
        v[i] = p.add_var("v" + std::to_string(i + 1), std::nullopt, std::nullopt, Int(0), true);
    for (std::size_t i = 0; i < t; ++i)
        w[i] = p.add_var("w" + std::to_string(i + 1), std::nullopt, std::nullopt, Int(0), true);
    for (std::size_t j = 0; j < n; ++j)
        lam[j] = p.add_var("l" + std::to_string(j + 1), Int(0), std::nullopt, Int(0), true);
    for (std::size_t i = 0; i < t; ++i) {
        p.add_constraint({{v[i], 1}, {w[i], -consts.B}}, Rel::Eq, r[i]);
        std::vector<LinTerm> terms{{v[i], 1}};
        for (std::size_t j = 0; j < n; ++j)
            if (gens[j][i] != 0) terms.push_back({lam[j], -gens[j][i]});
        p.add_constraint(std::move(terms), Rel::Eq, Int(0));
    }
    for (std::size_t k = 0; k < nf; ++k) {
        const IntVec& f = rep.facets[k];
        Int pf = facet_residue(f, r, consts.B);
        std::vector<LinTerm> terms;
        for (std::size_t i = 0; i < t; ++i)
            if (f[i] != 0) terms.push_back({v[i], f[i]});
        if (G_mask & (std::size_t(1) << k))
            p.add_constraint(std::move(terms), Rel::Eq, pf);
        else
            p.add_constraint(std::move(terms), Rel::Ge, Int(pf + 1));
    }
    SolveOutcome out = mip_solve(p);
    if (out.status == SolveStatus::RESOURCE_LIMIT)
        throw ResourceLimitError("family_L_member: solver budget exhausted");
    return out.status == SolveStatus::FEASIBLE || out.status == SolveStatus::OPTIMAL;
}

std::shared_ptr<const PolyhedralCertificate> construct_Q(const std::vector<IntVec>& gens,
                                                         const IntVec& r) {
    std::string key = cert_key(gens, r);
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return reindexed(it->second, r.index);
    }

    DualRepresentation rep = weyl_dual(gens);
    ConeConstants consts = cone_constants(rep);
    for (std::size_t i = 0; i < r.dim(); ++i)
        if (r[i] < 0 || r[i] >= consts.B)
            throw std::invalid_argument("construct_Q: residue out of range");

    if (gens.empty()) {
        // cone({}) = {0}: pin every coordinate to zero, or rule the class out.
        auto cert = std::make_shared<PolyhedralCertificate>();
        cert->B = consts.B;
        cert->r = r;
        if (r.is_zero()) {
            cert->family_L = {0};
            cert->family_L_down = {0};
            for (std::size_t i = 0; i < r.dim(); ++i) {
                IntVec e(r.index);
                e[i] = 1;
                cert->inequalities.emplace_back(e, Int(0));
                cert->inequalities.emplace_back(-e, Int(0));
            }
        } else {
            cert->inequalities.emplace_back(IntVec(r.index), Int(1));
        }
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto [it, _] = cache.emplace(key, std::move(cert));
        return it->second;
    }

    auto cert = std::make_shared<PolyhedralCertificate>();
    cert->generators = gens;
    cert->B = consts.B;
    cert->r = r;
    cert->facets = rep.facets;
    std::size_t nf = rep.facets.size();
    for (const IntVec& f : rep.facets)
        cert->facet_residues.push_back(facet_residue(f, r, consts.B));

    std::vector<bool> inL(std::size_t(1) << nf, false);
    for (std::size_t mask = 0; mask < (std::size_t(1) << nf); ++mask)
        inL[mask] = family_L_member(rep, consts, r, mask);
    std::vector<bool> inLdown(std::size_t(1) << nf, false);
    for (std::size_t mask = 0; mask < (std::size_t(1) << nf); ++mask) {
        if (!inL[mask]) continue;
        // Mark all subsets of a realizable pattern.
        std::size_t sub = mask;
        for (;;) {
            inLdown[sub] = true;
            if (sub == 0) break;
            sub = (sub - 1) & mask;
        }
    }
    for (std::size_t mask = 0; mask < (std::size_t(1) << nf); ++mask) {
        if (inL[mask]) cert->family_L.push_back(mask);
        if (inLdown[mask]) cert->family_L_down.push_back(mask);
    }

    for (const IntVec& f : rep.facets) cert->inequalities.emplace_back(f, Int(0));
    for (std::size_t mask = 0; mask < (std::size_t(1) << nf); ++mask) {
        if (inLdown[mask]) continue;
        IntVec q(r.index);
        Int a = 1;
        for (std::size_t k = 0; k < nf; ++k) {
            if (!(mask & (std::size_t(1) << k))) continue;
            q = q + rep.facets[k];
            a += cert->facet_residues[k];
        }
        cert->inequalities.emplace_back(std::move(q), std::move(a));
    }

    std::lock_guard<std::mutex> lk(cache_mutex);
    auto [it, _] = cache.emplace(key, std::move(cert));
    return it->second;
}

bool certified_member(const PolyhedralCertificate& cert, const IntVec& v) {
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (int_mod(v[i] - cert.r[i], cert.B) != 0)
            throw std::invalid_argument("certified_member: wrong residue class");
    for (const auto& [q, a] : cert.inequalities)
        if (inner(q, v) < a) return false;
    return true;
}

}  // namespace blockip
