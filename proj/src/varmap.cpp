#include "projalg/varmap.hpp"

#include "projalg/rng.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace projalg {

RationalMap::RationalMap(RingPtr source, RingPtr target, std::vector<Poly> forms,
                         std::optional<Ideal> source_ideal)
    : source_(std::move(source)), target_(std::move(target)), forms_(std::move(forms)),
      source_ideal_(std::move(source_ideal)) {
    if (forms_.size() != target_->nvars())
        throw Error("rational map needs one form per target variable");
    if (source_->prime() != target_->prime()) throw Error("rational map across different primes");

    std::vector<int64_t> deg;
    bool any = false;
    for (auto& f : forms_) {
        if (f.is_zero()) continue;
        if (!f.ring()->same_vars(*source_)) throw Error("rational map form in a foreign ring");
        f = f.ring() == source_ ? f : f.with_ring(source_);
        if (!f.is_homogeneous_per_block())
            throw Error("rational map forms must be homogeneous in each factor");
        std::vector<int64_t> d;
        std::size_t start = 0;
        for (std::size_t bs : source_->blocks()) {
            std::vector<std::size_t> idx;
            for (std::size_t i = start; i < start + bs; ++i) idx.push_back(i);
            d.push_back(f.degree_in(idx));
            start += bs;
        }
        if (!any) {
            deg = d;
            any = true;
        } else if (deg != d) {
            throw Error("rational map forms of unequal multidegree");
        }
    }
    if (!any) throw Error("rational map with identically zero forms");
    if (source_ideal_ && !source_ideal_->ring()->same_vars(*source_))
        throw Error("source ideal lives in a different ring");
}

RationalMap RationalMap::with_source_ideal(Ideal i) const {
    return RationalMap(source_, target_, forms_, std::move(i));
}

Ideal RationalMap::forms_ideal() const {
    std::vector<Poly> gs = forms_;
    return Ideal(source_, std::move(gs));
}

RationalMap RationalMap::from_map_file(const MapFile& f, uint64_t prime) {
    RingPtr src = f.source;
    if (prime && src->prime() != prime) throw Error("map file prime mismatch");
    RingPtr tgt = Ring::make(src->prime(), f.target_vars);
    return RationalMap(src, tgt, f.forms);
}

RationalMap identity_map(const RingPtr& ring) {
    std::vector<Poly> forms;
    for (std::size_t i = 0; i < ring->nvars(); ++i) forms.push_back(Poly::variable(ring, i));
    return RationalMap(ring, ring, std::move(forms));
}

ProjPoint eval_map(const RationalMap& phi, const ProjPoint& x) {
    if (x.dim() != phi.source()->nvars()) throw Error("eval_map: point dimension mismatch");
    std::vector<uint64_t> out;
    out.reserve(phi.forms().size());
    bool nonzero = false;
    for (const auto& f : phi.forms()) {
        uint64_t v = f.is_zero() ? 0 : f.eval(x.coords());
        nonzero = nonzero || (v != 0);
        out.push_back(v);
    }
    if (!nonzero) throw BasePointError("map undefined: all forms vanish at " + x.to_string());
    return ProjPoint(std::move(out), phi.target()->blocks(), phi.target()->prime());
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
    if (!g.source()->same_vars(*f.target()))
        throw Error("compose: target/source rings do not match");
    std::vector<Poly> forms;
    forms.reserve(g.forms().size());
    for (const auto& h : g.forms())
        forms.push_back(apply_ring_map(f.forms(), h.with_ring(f.target())));
    return RationalMap(f.source(), g.target(), std::move(forms), f.source_ideal());
}

bool maps_equal(const RationalMap& f, const RationalMap& g) {
    if (!f.source()->same_vars(*g.source())) return false;
    if (f.forms().size() != g.forms().size()) return false;
    const GroebnerBasis* gb = nullptr;
    if (f.source_ideal()) gb = &f.source_ideal()->groebner(MonomialOrder::grevlex());
    auto reduces_to_zero = [&](const Poly& h) {
        if (h.is_zero()) return true;
        if (!gb) return false;
        return normal_form(h, *gb).is_zero();
    };
    bool degenerate = true;
    for (const auto& h : f.forms())
        if (!reduces_to_zero(h)) { degenerate = false; break; }
    if (degenerate) throw Error("maps_equal: map vanishes on its source");
    for (std::size_t i = 0; i < f.forms().size(); ++i)
        for (std::size_t j = i + 1; j < f.forms().size(); ++j) {
            Poly cross = f.forms()[i] * g.forms()[j].with_ring(f.source()) -
                         f.forms()[j] * g.forms()[i].with_ring(f.source());
            if (!reduces_to_zero(cross)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

ProjPoint random_source_point(const RingPtr& ring, Rng& rng) {
    const uint64_t p = ring->prime();
    std::vector<uint64_t> coords(ring->nvars(), 0);
    std::size_t start = 0;
    for (std::size_t bs : ring->blocks()) {
        for (;;) {
            bool nz = false;
            for (std::size_t i = start; i < start + bs; ++i) {
                coords[i] = rng.below(p);
                nz = nz || coords[i];
            }
            if (nz) break;
        }
        start += bs;
    }
    return ProjPoint(std::move(coords), ring->blocks(), p);
}

} // namespace

std::vector<ProjPoint> sample_points(const std::vector<RationalMap>& chain, std::size_t n,
                                     uint64_t seed) {
    if (chain.empty()) throw Error("sample_points: empty chain");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!chain[i + 1].source()->same_vars(*chain[i].target()))
            throw Error("sample_points: chain not composable");
    if (chain[0].source_ideal())
        throw Error("sample_points: first source must be a projective space");

    Rng rng(seed);
    std::vector<ProjPoint> out;
    out.reserve(n);
    const std::size_t budget_per_point = 800;
    while (out.size() < n) {
        bool ok = false;
        for (std::size_t attempt = 0; attempt < budget_per_point && !ok; ++attempt) {
            ProjPoint x = random_source_point(chain[0].source(), rng);
            try {
                for (const auto& phi : chain) x = eval_map(phi, x);
            } catch (const BasePointError&) {
                continue;
            }
            out.push_back(x);
            ok = true;
        }
        if (!ok) throw Error("sample_points: degenerate chain (rejection rate too high)");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Image

namespace {

int64_t source_variety_dimension(const RationalMap& phi) {
    if (phi.source_ideal()) return scheme_dimension(*phi.source_ideal());
    int64_t d = 0;
    for (std::size_t bs : phi.source()->blocks()) d += static_cast<int64_t>(bs) - 1;
    return d;
}

// rank of the degree-d piece of the ideal spanned by gens (as a subspace of
// the degree-d monomial space)
std::size_t ideal_piece_rank(const std::vector<Poly>& gens, const RingPtr& ring, int64_t d,
                             const std::vector<Exponents>& monos) {
    std::map<Exponents, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    std::vector<std::vector<uint64_t>> rows;
    for (const auto& g : gens) {
        const int64_t dg = g.degree();
        if (dg > d) continue;
        for (const auto& m : monomials_of_degree(ring->nvars(), d - dg, MonomialOrder::grevlex())) {
            Poly mg = g.mul_term(m, 1);
            std::vector<uint64_t> row(monos.size(), 0);
            for (const auto& t : mg.terms()) row[index.at(t.e)] = t.c;
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return 0;
    FpMatrix mat(rows.size(), monos.size(), ring->prime());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < monos.size(); ++j) mat.at(i, j) = rows[i][j];
    return matrix_rank(mat);
}

// Coefficient vectors (over the degree-d monomials) of all degree-d forms
// vanishing on the samples.
std::vector<std::vector<uint64_t>> vanishing_forms(const std::vector<ProjPoint>& samples,
                                                   const RingPtr& target,
                                                   const std::vector<Exponents>& monos) {
    const uint64_t p = target->prime();
    FpMatrix mat(samples.size(), monos.size(), p);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& c = samples[i].coords();
        for (std::size_t j = 0; j < monos.size(); ++j) {
            uint64_t v = 1;
            for (std::size_t k = 0; k < c.size(); ++k)
                if (monos[j][k]) v = mulmod(v, powmod(c[k], monos[j][k], p), p);
            mat.at(i, j) = v;
        }
    }
    return row_reduce(mat).kernel;
}

bool substitution_certificate(const RationalMap& phi, const Poly& g) {
    Poly sub = apply_ring_map(phi.forms(), g);
    if (sub.is_zero()) return true;
    if (!phi.source_ideal()) return false;
    return normal_form(sub, phi.source_ideal()->groebner(MonomialOrder::grevlex())).is_zero();
}

} // namespace

int64_t scheme_dimension(const Ideal& i) {
    auto [dim, deg] = hilbert_dim_degree(i);
    (void)deg;
    if (dim < 0) return -1;
    const int64_t krull = dim + 1;
    return krull - static_cast<int64_t>(i.ring()->blocks().size());
}

Ideal image(const RationalMap& phi, ImageStrategy strategy, int max_degree, uint64_t seed,
            const std::vector<RationalMap>& chain_in) {
    const RingPtr& target = phi.target();

    if (strategy == ImageStrategy::Elimination) {
        // graph ideal: source ideal + (T_i - f_i), eliminate the source block;
        // the target block gets fresh names so identity-like maps stay legal
        std::vector<std::string> vars = phi.source()->vars();
        std::vector<std::size_t> block;
        for (std::size_t i = 0; i < vars.size(); ++i) block.push_back(i);
        std::string base = "im";
        for (bool clash = true; clash;) {
            clash = false;
            for (std::size_t i = 0; i < target->nvars(); ++i)
                if (phi.source()->find_var(base + "_" + std::to_string(i))) clash = true;
            if (clash) base += "m";
        }
        for (std::size_t i = 0; i < target->nvars(); ++i)
            vars.push_back(base + "_" + std::to_string(i));
        RingPtr big = Ring::make(target->prime(), vars);
        std::vector<Poly> gens;
        if (phi.source_ideal())
            for (const auto& g : phi.source_ideal()->gens()) gens.push_back(g.rename_into(big));
        for (std::size_t i = 0; i < phi.forms().size(); ++i) {
            Poly t = Poly::variable(big, phi.source()->nvars() + i);
            gens.push_back(t - phi.forms()[i].rename_into(big));
        }
        Ideal graph(big, std::move(gens));
        Ideal elim = eliminate(graph, block);
        // positional rename from the fresh names back into the target ring
        std::vector<Poly> out;
        for (const auto& g : elim.gens()) {
            std::vector<Term> ts(g.terms().begin(), g.terms().end());
            out.push_back(Poly::from_terms(target, std::move(ts)));
        }
        Ideal result(target, std::move(out));
        for (const auto& g : result.gens())
            if (!substitution_certificate(phi, g))
                throw Error("image: elimination produced an uncertified generator");
        const GroebnerBasis& gb = result.groebner(MonomialOrder::grevlex());
        std::vector<Poly> canon;
        for (const auto& e : gb.elems) canon.push_back(e.with_ring(target));
        return Ideal(target, std::move(canon));
    }

    std::vector<RationalMap> chain = chain_in;
    if (chain.empty()) chain = {phi};

    // expected image dimension from a sampled generic fiber
    int64_t expected_dim = -2;
    {
        Rng rng(seed ^ 0x51a7eull);
        for (int attempt = 0; attempt < 8 && expected_dim == -2; ++attempt) {
            try {
                std::vector<ProjPoint> pts = sample_points(chain, 1, rng.next());
                Ideal f = fiber(phi, pts[0]);
                int64_t fdim = scheme_dimension(f);
                if (fdim < 0) continue;
                expected_dim = source_variety_dimension(phi) - fdim;
            } catch (const Error&) {
                continue;
            }
        }
        if (expected_dim == -2) throw Error("image: could not determine expected dimension");
    }

    int64_t target_space_dim = 0;
    for (std::size_t bs : target->blocks()) target_space_dim += static_cast<int64_t>(bs) - 1;

    std::vector<Poly> gens;
    for (int d = 1; d <= max_degree; ++d) {
        auto monos = monomials_of_degree(target->nvars(), d, MonomialOrder::grevlex());
        std::size_t nsamples = monos.size() + monos.size() / 4 + 25;
        std::vector<Poly> certified;
        for (int attempt = 0; attempt < 5; ++attempt) {
            certified.clear();
            auto samples = sample_points(chain, nsamples, seed + 1000 * static_cast<uint64_t>(d));
            auto kernel = vanishing_forms(samples, target, monos);
            bool all_ok = true;
            for (const auto& v : kernel) {
                std::vector<Term> ts;
                for (std::size_t j = 0; j < monos.size(); ++j)
                    if (v[j]) ts.push_back({monos[j], v[j]});
                Poly g = Poly::from_terms(target, std::move(ts));
                if (substitution_certificate(phi, g)) {
                    certified.push_back(std::move(g));
                } else {
                    all_ok = false;
                    break;
                }
            }
            if (all_ok) break;
            certified.clear();
            nsamples += nsamples / 2;
        }
        if (certified.empty() && gens.empty()) {
            // dominant map: nothing vanishes and the expected dimension fills
            // the target space, so the image closure is everything
            if (expected_dim == target_space_dim) return Ideal(target, {});
            continue;
        }
        for (auto& g : certified) gens.push_back(std::move(g));
        if (gens.empty()) continue;

        Ideal cand(target, gens);
        if (scheme_dimension(cand) != expected_dim) continue;

        // lookahead: the next degree contributes nothing beyond the span
        const int64_t dn = d + 1;
        auto monos_next = monomials_of_degree(target->nvars(), dn, MonomialOrder::grevlex());
        auto samples = sample_points(chain, monos_next.size() + monos_next.size() / 4 + 25,
                                     seed + 1000 * static_cast<uint64_t>(dn) + 7);
        auto kernel_next = vanishing_forms(samples, target, monos_next);
        std::size_t span_rank = ideal_piece_rank(gens, target, dn, monos_next);
        if (kernel_next.size() == span_rank) {
            const GroebnerBasis& gb = cand.groebner(MonomialOrder::grevlex());
            std::vector<Poly> canon;
            for (const auto& e : gb.elems) canon.push_back(e.with_ring(target));
            return Ideal(target, std::move(canon));
        }
    }
    throw Error("image: interpolation inconclusive up to degree " + std::to_string(max_degree));
}

Ideal image_toric(const RationalMap& phi) {
    const RingPtr& target = phi.target();
    const std::size_t n = phi.source()->nvars();
    const std::size_t m = phi.forms().size();
    for (const auto& f : phi.forms())
        if (f.nterms() != 1) throw Error("image_toric: map is not monomial");

    // integer kernel of the exponent matrix via unimodular column reduction
    std::vector<std::vector<int64_t>> a(n + m, std::vector<int64_t>(m, 0));
    for (std::size_t j = 0; j < m; ++j) {
        const Exponents& e = phi.forms()[j].lt().e;
        for (std::size_t i = 0; i < n; ++i) a[i][j] = e[i];
        a[n + j][j] = 1;
    }
    std::size_t done_cols = 0;
    for (std::size_t row = 0; row < n; ++row) {
        for (;;) {
            std::size_t piv = SIZE_MAX;
            int64_t best = 0;
            for (std::size_t j = done_cols; j < m; ++j) {
                if (a[row][j] != 0 && (piv == SIZE_MAX || std::abs(a[row][j]) < best)) {
                    piv = j;
                    best = std::abs(a[row][j]);
                }
            }
            if (piv == SIZE_MAX) break;
            for (std::size_t i = 0; i < n + m; ++i) std::swap(a[i][piv], a[i][done_cols]);
            bool clean = true;
            for (std::size_t j = done_cols + 1; j < m; ++j) {
                int64_t q = a[row][j] / a[row][done_cols];
                if (q)
                    for (std::size_t i = 0; i < n + m; ++i) a[i][j] -= q * a[i][done_cols];
                if (a[row][j] != 0) clean = false;
            }
            if (clean) {
                ++done_cols;
                break;
            }
        }
    }
    std::vector<Poly> binomials;
    const uint64_t p = target->prime();
    for (std::size_t j = done_cols; j < m; ++j) {
        Exponents plus(m, 0), minus(m, 0);
        bool nonzero = false;
        for (std::size_t i = 0; i < m; ++i) {
            int64_t v = a[n + i][j];
            if (v > 0) plus[i] = static_cast<uint16_t>(v);
            if (v < 0) minus[i] = static_cast<uint16_t>(-v);
            nonzero = nonzero || v;
        }
        if (!nonzero) continue;
        binomials.push_back(Poly::monomial(target, plus, 1) - Poly::monomial(target, minus, 1));
        (void)p;
    }
    Ideal cur(target, std::move(binomials));
    for (std::size_t v = 0; v < m; ++v) cur = saturate_single(cur, Poly::variable(target, v));
    const GroebnerBasis& gb = cur.groebner(MonomialOrder::grevlex());
    std::vector<Poly> canon;
    for (const auto& e : gb.elems) canon.push_back(e.with_ring(target));
    Ideal result(target, std::move(canon));
    for (const auto& g : result.gens())
        if (!substitution_certificate(phi, g))
            throw Error("image_toric: uncertified generator");
    return result;
}

Ideal base_locus(const RationalMap& phi) {
    Ideal forms = phi.forms_ideal();
    if (phi.source_ideal()) {
        std::vector<Poly> gens = forms.gens();
        for (const auto& g : phi.source_ideal()->gens()) gens.push_back(g);
        forms = Ideal(phi.source(), std::move(gens));
    }
    return saturate_blockwise_irrelevant(forms);
}

Ideal fiber(const RationalMap& phi, const ProjPoint& y) {
    if (y.dim() != phi.target()->nvars()) throw Error("fiber: point dimension mismatch");
    const RingPtr& src = phi.source();
    std::vector<Poly> gens;
    if (phi.source_ideal()) gens = phi.source_ideal()->gens();
    const auto& c = y.coords();
    for (std::size_t j = 0; j < phi.forms().size(); ++j)
        for (std::size_t k = j + 1; k < phi.forms().size(); ++k) {
            Poly m = phi.forms()[k].scaled(c[j]) - phi.forms()[j].scaled(c[k]);
            if (!m.is_zero()) gens.push_back(std::move(m));
        }
    Ideal unsaturated(src, std::move(gens));
    return saturate(unsaturated, phi.forms_ideal());
}

int64_t map_degree(const RationalMap& phi, uint64_t seed,
                   const std::vector<RationalMap>& source_chain) {
    std::vector<RationalMap> chain = source_chain;
    if (chain.empty()) {
        if (phi.source_ideal())
            throw Error("map_degree: a source with an ideal needs a sampling chain");
        chain = {identity_map(phi.source())};
    }
    Rng rng(seed ^ 0xd390ull);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<ProjPoint> pts;
        try {
            pts = sample_points(chain, 1, rng.next());
        } catch (const Error&) {
            continue;
        }
        ProjPoint y;
        try {
            y = eval_map(phi, pts[0]);
        } catch (const BasePointError&) {
            continue;
        }
        Ideal f = fiber(phi, y);
        auto [dim, deg] = hilbert_dim_degree(f);
        if (dim < 0) continue;
        const int64_t sdim = dim + 1 - static_cast<int64_t>(phi.source()->blocks().size());
        if (sdim != 0) continue;
        return deg;
    }
    throw Error("map_degree: no zero-dimensional fiber within the retry budget");
}

// ---------------------------------------------------------------------------
// Inverse by interpolation

RationalMap inverse_map(const RationalMap& phi, int max_degree, uint64_t seed,
                        const std::vector<RationalMap>& source_chain,
                        const std::optional<Ideal>& target_ideal) {
    const RingPtr& tgt = phi.target();
    const RingPtr& src = phi.source();
    const uint64_t p = tgt->prime();

    std::vector<RationalMap> chain = source_chain;
    if (chain.empty()) {
        if (phi.source_ideal())
            throw Error("inverse_map: a source with an ideal needs a sampling chain");
        chain = {identity_map(src)};
    }

    const GroebnerBasis* tgt_gb = nullptr;
    if (target_ideal) tgt_gb = &target_ideal->groebner(MonomialOrder::grevlex());
    const GroebnerBasis* src_gb = nullptr;
    if (phi.source_ideal()) src_gb = &phi.source_ideal()->groebner(MonomialOrder::grevlex());

    for (int e = 1; e <= max_degree; ++e) {
        auto all_monos = monomials_of_degree(tgt->nvars(), e, MonomialOrder::grevlex());
        // restrict to standard monomials modulo the image ideal
        std::vector<Exponents> monos;
        for (const auto& m : all_monos) {
            bool standard = true;
            if (tgt_gb)
                for (const auto& g : tgt_gb->elems)
                    if (exp_divides(g.lt().e, m)) { standard = false; break; }
            if (standard) monos.push_back(m);
        }
        const std::size_t M = monos.size();
        if (M == 0) continue;

        std::size_t nsamples = M + M / 3 + 40;
        for (int attempt = 0; attempt < 3; ++attempt) {
            // sample (x on source variety, y = phi(x))
            auto xs = sample_points(chain, nsamples,
                                    seed + 7919 * static_cast<uint64_t>(e) + static_cast<uint64_t>(attempt));
            std::vector<ProjPoint> xs_ok;
            std::vector<ProjPoint> ys;
            for (const auto& x : xs) {
                try {
                    ys.push_back(eval_map(phi, x));
                    xs_ok.push_back(x);
                } catch (const BasePointError&) {
                }
            }
            const std::size_t N = xs_ok.size();
            if (N < M + 10) {
                nsamples *= 2;
                continue;
            }

            // reference source coordinate: nonzero at the most samples
            std::size_t ref = 0;
            {
                std::size_t best = 0;
                for (std::size_t k = 0; k < src->nvars(); ++k) {
                    std::size_t cnt = 0;
                    for (const auto& x : xs_ok)
                        if (x.coords()[k]) ++cnt;
                    if (cnt > best) { best = cnt; ref = k; }
                }
            }
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < N; ++i)
                if (xs_ok[i].coords()[ref]) keep.push_back(i);
            if (keep.size() < M + 5) {
                nsamples *= 2;
                continue;
            }

            // monomial evaluations at the target samples
            std::vector<std::vector<uint64_t>> mono_eval(keep.size(), std::vector<uint64_t>(M));
            for (std::size_t r = 0; r < keep.size(); ++r) {
                const auto& yc = ys[keep[r]].coords();
                for (std::size_t j = 0; j < M; ++j) {
                    uint64_t v = 1;
                    for (std::size_t k = 0; k < yc.size(); ++k)
                        if (monos[j][k]) v = mulmod(v, powmod(yc[k], monos[j][k], p), p);
                    mono_eval[r][j] = v;
                }
            }

            // compatibility constraints on the reference form's coefficients:
            // for each other coordinate k, rows of [A_k | B_k] reduced so the
            // A_k block vanishes give linear conditions on c_ref
            std::vector<std::vector<uint64_t>> constraints;
            bool bad = false;
            for (std::size_t k = 0; k < src->nvars() && !bad; ++k) {
                if (k == ref) continue;
                FpMatrix mats(keep.size(), 2 * M, p);
                for (std::size_t r = 0; r < keep.size(); ++r) {
                    const auto& xc = xs_ok[keep[r]].coords();
                    for (std::size_t j = 0; j < M; ++j) {
                        mats.at(r, j) = mulmod(mono_eval[r][j], xc[ref], p);
                        mats.at(r, M + j) = mulmod(mono_eval[r][j], p - xc[k] % p, p);
                    }
                }
                RowReduceResult rr = row_reduce(mats);
                std::size_t rank_a = 0;
                for (std::size_t c : rr.pivot_cols)
                    if (c < M) ++rank_a;
                if (rank_a < M) { bad = true; break; } // A_k column-deficient: need more samples
                for (std::size_t r = rank_a; r < rr.rank(); ++r) {
                    std::vector<uint64_t> row(M);
                    for (std::size_t j = 0; j < M; ++j) row[j] = rr.reduced.at(r, M + j);
                    constraints.push_back(std::move(row));
                }
            }
            if (bad) {
                nsamples *= 2;
                continue;
            }

            // representations of one inverse can differ by the graph relation
            // when the image is a proper subvariety; take the canonical first
            // kernel vector and let the exact certificate decide
            std::vector<uint64_t> cref;
            if (constraints.empty()) {
                bad = true;
            } else {
                FpMatrix cm(constraints.size(), M, p);
                for (std::size_t r = 0; r < constraints.size(); ++r)
                    for (std::size_t j = 0; j < M; ++j) cm.at(r, j) = constraints[r][j];
                RowReduceResult rr = row_reduce(cm);
                if (rr.kernel.empty()) break; // no inverse at this degree
                cref = rr.kernel[0];
            }
            if (bad) {
                if (attempt + 1 < 3) { nsamples *= 2; continue; }
                break;
            }

            // back-solve every coordinate against the reference
            std::vector<Poly> forms(src->nvars());
            auto poly_from = [&](const std::vector<uint64_t>& v) {
                std::vector<Term> ts;
                for (std::size_t j = 0; j < M; ++j)
                    if (v[j]) ts.push_back({monos[j], v[j]});
                return Poly::from_terms(tgt, std::move(ts));
            };
            bool solved = true;
            for (std::size_t k = 0; k < src->nvars() && solved; ++k) {
                if (k == ref) { forms[k] = poly_from(cref); continue; }
                FpMatrix aug(keep.size(), M + 1, p);
                for (std::size_t r = 0; r < keep.size(); ++r) {
                    const auto& xc = xs_ok[keep[r]].coords();
                    for (std::size_t j = 0; j < M; ++j)
                        aug.at(r, j) = mulmod(mono_eval[r][j], xc[ref], p);
                    uint64_t rhs = 0;
                    for (std::size_t j = 0; j < M; ++j)
                        rhs = (rhs + mulmod(mono_eval[r][j], cref[j], p) * xc[k]) % p;
                    aug.at(r, M) = rhs;
                }
                RowReduceResult rr = row_reduce(aug);
                std::vector<uint64_t> ck(M, 0);
                for (std::size_t r = 0; r < rr.rank(); ++r) {
                    if (rr.pivot_cols[r] == M) { solved = false; break; } // inconsistent
                    ck[rr.pivot_cols[r]] = rr.reduced.at(r, M);
                }
                if (solved) forms[k] = poly_from(ck);
            }
            if (!solved) {
                nsamples *= 2;
                continue;
            }

            // normalize the global scalar: first nonzero coefficient of the
            // first nonzero form becomes 1
            uint64_t scale = 0;
            for (const auto& f : forms)
                if (!f.is_zero()) { scale = invmod(f.lt().c, p); break; }
            if (!scale) break;
            for (auto& f : forms) f = f.scaled(scale);

            // exact bilinear certificate
            bool certified = true;
            for (std::size_t j = 0; j < src->nvars() && certified; ++j) {
                for (std::size_t k = j + 1; k < src->nvars() && certified; ++k) {
                    Poly hj = apply_ring_map(phi.forms(), forms[j]);
                    Poly hk = apply_ring_map(phi.forms(), forms[k]);
                    Poly idcheck = hj * Poly::variable(src, k) - hk * Poly::variable(src, j);
                    if (idcheck.is_zero()) continue;
                    if (!src_gb || !normal_form(idcheck, *src_gb).is_zero()) certified = false;
                }
            }
            if (!certified) {
                nsamples *= 2;
                continue;
            }
            return RationalMap(tgt, src, std::move(forms), target_ideal);
        }
    }
    throw Error("inverse_map: no inverse found up to degree " + std::to_string(max_degree));
}

// ---------------------------------------------------------------------------
// Singular loci and node classification

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        out.push_back(idx);
        bool advanced = false;
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

} // namespace

Ideal jacobian_minors(const std::vector<Poly>& gens, std::size_t k) {
    if (gens.empty()) throw Error("jacobian_minors: no generators");
    const RingPtr& ring = gens[0].ring();
    const std::size_t n = ring->nvars();
    if (k == 0 || k > std::min(gens.size(), n)) throw Error("jacobian_minors: size out of range");

    std::vector<std::vector<Poly>> jac(gens.size(), std::vector<Poly>(n));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) jac[i][j] = gens[i].derivative(j);

    std::function<Poly(const std::vector<std::size_t>&, const std::vector<std::size_t>&)> det =
        [&](const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) -> Poly {
        if (r.size() == 1) return jac[r[0]][c[0]];
        Poly acc = Poly::zero(ring);
        std::vector<std::size_t> subr(r.begin() + 1, r.end());
        for (std::size_t j = 0; j < c.size(); ++j) {
            std::vector<std::size_t> subc;
            for (std::size_t t = 0; t < c.size(); ++t)
                if (t != j) subc.push_back(c[t]);
            Poly cofactor = jac[r[0]][c[j]] * det(subr, subc);
            acc = (j % 2 == 0) ? acc + cofactor : acc - cofactor;
        }
        return acc;
    };

    std::vector<Poly> minors;
    for (const auto& rows : combinations(gens.size(), k))
        for (const auto& cols : combinations(n, k)) {
            Poly m = det(rows, cols);
            if (!m.is_zero()) minors.push_back(std::move(m));
        }
    return Ideal(ring, std::move(minors));
}

Ideal singular_locus(const Ideal& x, int64_t dim) {
    const RingPtr& ring = x.ring();
    const int64_t n = static_cast<int64_t>(ring->nvars()) - 1;
    const std::size_t codim = static_cast<std::size_t>(n - dim);
    Ideal minors = jacobian_minors(x.gens(), codim);
    std::vector<Poly> gens = x.gens();
    for (const auto& m : minors.gens()) gens.push_back(m);
    Ideal sing(ring, std::move(gens));
    Ideal sat = saturate(sing, irrelevant_ideal(ring));
    const GroebnerBasis& gb = sat.groebner(MonomialOrder::grevlex());
    std::vector<Poly> canon;
    for (const auto& e : gb.elems) canon.push_back(e.with_ring(ring));
    return Ideal(ring, std::move(canon));
}

std::string to_string(NodeType t) {
    switch (t) {
    case NodeType::Smooth: return "smooth";
    case NodeType::Node: return "node";
    case NodeType::QuadricConeNode: return "quadric-cone-node";
    case NodeType::Other: return "other";
    }
    return "?";
}

NodeType node_type(const Ideal& x, const ProjPoint& pt) {
    Ideal cone = tangent_cone(x, pt);
    const RingPtr& chart = cone.ring();
    const GroebnerBasis& gb = cone.groebner(MonomialOrder::grevlex());
    if (gb.elems.empty()) return NodeType::Other;

    std::vector<Poly> linear, higher;
    for (const auto& g : gb.elems) {
        if (g.degree() == 1) linear.push_back(g.with_ring(chart));
        else higher.push_back(g.with_ring(chart));
    }
    if (higher.empty()) return NodeType::Smooth;

    // substitute the linear forms away (they are reduced: distinct lead vars)
    std::vector<std::size_t> kill;
    std::vector<Poly> subst(chart->nvars());
    for (std::size_t v = 0; v < chart->nvars(); ++v) subst[v] = Poly::variable(chart, v);
    for (const auto& l : linear) {
        std::size_t v = 0;
        for (std::size_t i = 0; i < chart->nvars(); ++i)
            if (l.lt().e[i]) { v = i; break; }
        subst[v] = Poly::variable(chart, v) - l.monic(); // v - l = -(tail)
        kill.push_back(v);
    }
    std::vector<Poly> reduced_gens;
    for (const auto& h : higher) {
        Poly r = apply_ring_map(subst, h);
        if (!r.is_zero()) reduced_gens.push_back(r);
    }
    if (reduced_gens.empty()) return NodeType::Smooth;

    const std::size_t remaining = chart->nvars() - kill.size();
    GroebnerBasis rg = buchberger(chart, reduced_gens, MonomialOrder::grevlex());
    if (rg.elems.size() != 1) return NodeType::Other;
    const Poly& q = rg.elems[0];
    if (q.degree() != 2 || !q.is_homogeneous()) return NodeType::Other;

    // rank of the symmetric matrix of the quadratic form (char != 2)
    const uint64_t p = chart->prime();
    if (p == 2) return NodeType::Other;
    const std::size_t n = chart->nvars();
    FpMatrix s(n, n, p);
    const uint64_t half = invmod(2, p);
    for (const auto& t : q.terms()) {
        std::size_t i = SIZE_MAX, j = SIZE_MAX;
        for (std::size_t v = 0; v < n; ++v) {
            if (t.e[v] == 2) { i = j = v; break; }
            if (t.e[v] == 1) {
                if (i == SIZE_MAX) i = v;
                else j = v;
            }
        }
        if (i == j) {
            s.at(i, i) = t.c;
        } else {
            uint64_t hc = mulmod(t.c, half, p);
            s.at(i, j) = hc;
            s.at(j, i) = hc;
        }
    }
    const std::size_t rank = matrix_rank(s);
    if (remaining == 2 && rank == 2) return NodeType::Node;
    if (remaining == 3 && rank == 3) return NodeType::QuadricConeNode;
    return NodeType::Other;
}

// ---------------------------------------------------------------------------
// Point-multiplicity conditions

FpMatrix condition_matrix(const ParamFamily& family, const ProjPoint& x, int m,
                          std::size_t* chart_out) {
    if (m < 1) throw Error("multiplicity must be >= 1");
    const RingPtr& ring = family.ring();
    const std::size_t np = ring->blocks()[0];
    const std::size_t ng = ring->blocks()[1];
    if (x.dim() != ng) throw Error("condition point dimension mismatch");
    const uint64_t p = ring->prime();

    // chart: last nonzero coordinate, scaled to 1
    std::size_t c = SIZE_MAX;
    for (std::size_t k = ng; k-- > 0;)
        if (x.coords()[k]) { c = k; break; }
    const uint64_t scale = invmod(x.coords()[c], p);
    std::vector<uint64_t> pc(x.coords());
    for (auto& v : pc) v = mulmod(v, scale, p);
    if (chart_out) *chart_out = c;

    Poly affine = family.generic().eval_partial({{np + c, 1}});

    std::vector<std::size_t> chart_vars;
    for (std::size_t k = 0; k < ng; ++k)
        if (k != c) chart_vars.push_back(k);

    // multi-indices over the chart variables of order < m, ascending by total
    // order then position
    std::vector<std::vector<int>> alphas;
    std::vector<int> cur(chart_vars.size(), 0);
    std::function<void(std::size_t, int)> gen = [&](std::size_t i, int rem) {
        if (i == chart_vars.size()) {
            alphas.push_back(cur);
            return;
        }
        for (int k = 0; k <= rem; ++k) {
            cur[i] = k;
            gen(i + 1, rem - k);
        }
        cur[i] = 0;
    };
    std::vector<std::vector<int>> by_order;
    for (int order = 0; order < m; ++order) {
        alphas.clear();
        gen(0, order);
        for (auto& a : alphas)
            if (std::accumulate(a.begin(), a.end(), 0) == order) by_order.push_back(a);
    }

    const auto params = family.param_indices();
    FpMatrix mat(by_order.size(), params.size(), p);
    for (std::size_t r = 0; r < by_order.size(); ++r) {
        Poly d = affine;
        for (std::size_t i = 0; i < chart_vars.size(); ++i)
            for (int k = 0; k < by_order[r][i]; ++k) d = d.derivative(np + chart_vars[i]);
        // evaluate geometric variables at the chart point
        std::vector<std::pair<std::size_t, uint64_t>> assign;
        for (std::size_t k = 0; k < ng; ++k)
            if (k != c) assign.push_back({np + k, pc[k]});
        Poly lin = d.eval_partial(assign); // linear in the parameters
        for (const auto& t : lin.terms()) {
            for (std::size_t pi = 0; pi < params.size(); ++pi) {
                if (t.e[params[pi]]) {
                    mat.at(r, pi) = addmod(mat.at(r, pi), t.c, p);
                    break;
                }
            }
        }
    }
    return mat;
}

ParamFamily impose_point_multiplicity(const ParamFamily& family, const ProjPoint& x, int m,
                                      std::size_t* chart_out) {
    FpMatrix mat = condition_matrix(family, x, m, chart_out);
    RowReduceResult rr = row_reduce(mat);
    const auto params = family.param_indices();
    const RingPtr& ring = family.ring();

    Poly generic_new = Poly::zero(ring);
    std::vector<bool> is_pivot(params.size(), false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::size_t kv = 0;
    for (std::size_t f = 0; f < params.size(); ++f) {
        if (is_pivot[f]) continue;
        const auto& v = rr.kernel[kv++];
        // member at parameter values v, lifted with the free parameter
        Poly member = Poly::zero(ring);
        for (std::size_t j = 0; j < params.size(); ++j) {
            if (!v[j]) continue;
            Poly part = Poly::zero(ring);
            std::vector<Term> ts;
            for (const auto& t : family.generic().terms())
                if (t.e[params[j]]) {
                    Term nt = t;
                    nt.e[params[j]] = 0; // strip the old parameter
                    ts.push_back(std::move(nt));
                }
            part = Poly::from_terms(ring, std::move(ts));
            member = member + part.scaled(v[j]);
        }
        generic_new = generic_new + Poly::variable(ring, params[f]) * member;
    }
    return ParamFamily::make(ring, generic_new);
}

int64_t plane_system_dimension(uint64_t prime, int d,
                               const std::vector<std::pair<ProjPoint, int>>& conditions) {
    auto monos = monomials_of_degree(3, d, MonomialOrder::grevlex());
    const std::size_t M = monos.size();
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < M; ++i) vars.push_back("c_" + std::to_string(i));
    vars.push_back("u_0");
    vars.push_back("u_1");
    vars.push_back("u_2");
    RingPtr ring = Ring::make(prime, vars, MonomialOrder::grevlex(), {M, 3});
    std::vector<Term> ts;
    for (std::size_t i = 0; i < M; ++i) {
        Term t{Exponents(M + 3, 0), 1};
        t.e[i] = 1;
        for (std::size_t k = 0; k < 3; ++k) t.e[M + k] = monos[i][k];
        ts.push_back(std::move(t));
    }
    ParamFamily family = ParamFamily::make(ring, Poly::from_terms(ring, std::move(ts)));

    std::vector<std::vector<uint64_t>> rows;
    for (const auto& [pt, mult] : conditions) {
        FpMatrix cm = condition_matrix(family, pt, mult);
        for (std::size_t r = 0; r < cm.rows(); ++r) {
            std::vector<uint64_t> row(M);
            for (std::size_t j = 0; j < M; ++j) row[j] = cm.at(r, j);
            rows.push_back(std::move(row));
        }
    }
    std::size_t rank = 0;
    if (!rows.empty()) {
        FpMatrix all(rows.size(), M, prime);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t j = 0; j < M; ++j) all.at(r, j) = rows[r][j];
        rank = matrix_rank(all);
    }
    return static_cast<int64_t>(M) - static_cast<int64_t>(rank) - 1;
}

} // namespace projalg
