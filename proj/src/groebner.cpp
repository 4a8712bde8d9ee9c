#include "projalg/groebner.hpp"

#include "projalg/rng.hpp"

#include <algorithm>
#include <cassert>

namespace projalg {

std::string GroebnerBasis::to_string() const {
    std::string s = ring->header_string();
    s += "\n";
    for (const auto& g : elems) {
        s += g.to_string();
        s += "\n";
    }
    return s;
}

uint64_t GroebnerBasis::hash() const { return fnv1a64(to_string()); }

Ideal::Ideal(RingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
    gens_.reserve(gens.size());
    for (auto& g : gens) {
        if (!g.ring()) continue;
        if (!g.ring()->same_vars(*ring_)) throw Error("ideal generator from a different ring");
        if (!g.is_zero()) gens_.push_back(g.ring() == ring_ ? std::move(g) : g.with_ring(ring_));
    }
}

bool Ideal::is_homogeneous() const {
    for (const auto& g : gens_)
        if (!g.is_homogeneous()) return false;
    return true;
}

Ideal Ideal::renamed_into(RingPtr target) const {
    std::vector<Poly> gs;
    gs.reserve(gens_.size());
    for (const auto& g : gens_) gs.push_back(g.rename_into(target));
    return Ideal(std::move(target), std::move(gs));
}

// ---------------------------------------------------------------------------
// Division

namespace {

Poly drop_lead(const Poly& f) {
    std::vector<Term> ts(f.terms().begin() + 1, f.terms().end());
    return Poly::from_terms(f.ring(), std::move(ts));
}

Poly normal_form_list(const Poly& f, const std::vector<Poly>& basis) {
    const uint64_t p = f.ring()->prime();
    Poly h = f;
    std::vector<Term> result;
    while (!h.is_zero()) {
        const Term& lt = h.lt();
        const Poly* reducer = nullptr;
        for (const auto& g : basis) {
            if (exp_divides(g.lt().e, lt.e)) { reducer = &g; break; }
        }
        if (reducer) {
            uint64_t c = mulmod(lt.c, invmod(reducer->lt().c, p), p);
            h = h - reducer->mul_term(exp_div(lt.e, reducer->lt().e), c);
        } else {
            result.push_back(lt);
            h = drop_lead(h);
        }
    }
    return Poly::from_terms(f.ring(), std::move(result));
}

Poly spoly(const Poly& f, const Poly& g) {
    const uint64_t p = f.ring()->prime();
    Exponents l = exp_lcm(f.lt().e, g.lt().e);
    Poly a = f.mul_term(exp_div(l, f.lt().e), invmod(f.lt().c, p));
    Poly b = g.mul_term(exp_div(l, g.lt().e), invmod(g.lt().c, p));
    return a - b;
}

bool coprime_lt(const Poly& f, const Poly& g) {
    const Exponents& a = f.lt().e;
    const Exponents& b = g.lt().e;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

struct Pair {
    std::size_t i, j;
    Exponents lcm;
    int64_t deg;
};

// Gebauer-Moeller pair update: prune the queue against the new element and
// add the surviving new pairs.
void gm_update(std::vector<Pair>& pairs, const std::vector<Poly>& basis, std::size_t t) {
    const Poly& h = basis[t];

    struct Cand {
        std::size_t i;
        Exponents lcm;
        bool keep = false;
    };
    std::vector<Cand> cands;
    cands.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
        cands.push_back({i, exp_lcm(basis[i].lt().e, h.lt().e), false});

    for (std::size_t a = 0; a < cands.size(); ++a) {
        bool dominated = false;
        if (!coprime_lt(basis[cands[a].i], h)) {
            for (std::size_t b = 0; b < cands.size() && !dominated; ++b) {
                if (b == a) continue;
                const bool b_alive = (b > a) || cands[b].keep;
                if (!b_alive) continue;
                if (cands[b].lcm != cands[a].lcm && exp_divides(cands[b].lcm, cands[a].lcm))
                    dominated = true;
            }
        }
        cands[a].keep = !dominated;
    }

    // prune old pairs whose lcm is strictly covered by the new lead term
    std::vector<Pair> surviving;
    surviving.reserve(pairs.size());
    for (auto& pr : pairs) {
        const Exponents lcm_ih = exp_lcm(basis[pr.i].lt().e, h.lt().e);
        const Exponents lcm_jh = exp_lcm(basis[pr.j].lt().e, h.lt().e);
        if (!exp_divides(h.lt().e, pr.lcm) || lcm_ih == pr.lcm || lcm_jh == pr.lcm)
            surviving.push_back(std::move(pr));
    }
    pairs = std::move(surviving);

    for (auto& c : cands) {
        if (!c.keep) continue;
        if (coprime_lt(basis[c.i], h)) continue; // Buchberger's first criterion
        pairs.push_back({c.i, t, c.lcm, exp_total_degree(c.lcm)});
    }
}

std::vector<Poly> interreduce(std::vector<Poly> gens, const RingPtr& ring) {
    bool changed = true;
    int rounds = 0;
    while (changed && rounds++ < 8) {
        changed = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            std::vector<Poly> others;
            others.reserve(gens.size() - 1);
            for (std::size_t j = 0; j < gens.size(); ++j)
                if (j != i) others.push_back(gens[j]);
            Poly r = normal_form_list(gens[i], others);
            if (r != gens[i]) {
                changed = true;
                if (r.is_zero()) {
                    gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
                    --i;
                } else {
                    gens[i] = r.monic();
                }
            }
        }
    }
    (void)ring;
    return gens;
}

} // namespace

Poly normal_form(const Poly& f, const GroebnerBasis& g) {
    if (!f.ring()->same_vars(*g.ring)) throw Error("normal_form: ring mismatch");
    Poly h = f.ring() == g.ring ? f : f.with_ring(g.ring);
    return normal_form_list(h, g.elems);
}

GroebnerBasis buchberger(RingPtr ring, std::vector<Poly> gens, const MonomialOrder& order) {
    RingPtr work = (ring->order() == order) ? ring : ring->with_order(order);

    std::vector<Poly> basis;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        Poly h = (g.ring() == work) ? g : g.with_ring(work);
        basis.push_back(h.monic());
    }
    std::sort(basis.begin(), basis.end(), [&](const Poly& a, const Poly& b) {
        return work->order().compare(a.lt().e, b.lt().e) < 0;
    });
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    basis = interreduce(std::move(basis), work);

    std::vector<Pair> pairs;
    for (std::size_t t = 0; t < basis.size(); ++t) gm_update(pairs, basis, t);

    while (!pairs.empty()) {
        // normal selection: lowest lcm degree first, ties by lcm order then index
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            const Pair& a = pairs[k];
            const Pair& b = pairs[best];
            int c;
            if (a.deg != b.deg) {
                c = a.deg < b.deg ? -1 : 1;
            } else {
                c = work->order().compare(a.lcm, b.lcm);
                if (c == 0) c = (a.i != b.i) ? (a.i < b.i ? -1 : 1) : (a.j < b.j ? -1 : (a.j > b.j ? 1 : 0));
            }
            if (c < 0) best = k;
        }
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        Poly s = spoly(basis[pr.i], basis[pr.j]);
        Poly r = normal_form_list(s, basis);
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        gm_update(pairs, basis, basis.size() - 1);
    }

    // minimalize: drop elements whose lead term another element's lead divides
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (exp_divides(basis[j].lt().e, basis[i].lt().e)) {
                if (basis[j].lt().e == basis[i].lt().e) redundant = j < i;
                else redundant = true;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // tail-reduce each element against the others
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced.push_back(normal_form_list(minimal[i], others).monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return work->order().compare(a.lt().e, b.lt().e) < 0;
    });
    return GroebnerBasis{work, std::move(reduced)};
}

const GroebnerBasis& Ideal::groebner(const MonomialOrder& order) const {
    if (!ring_) throw Error("groebner basis of a detached ideal");
    const std::string key = order.to_string();
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->bases.find(key);
    if (it == cache_->bases.end()) {
        auto gb = std::make_shared<GroebnerBasis>(buchberger(ring_, gens_, order));
        it = cache_->bases.emplace(key, std::move(gb)).first;
    }
    return *it->second;
}

bool gb_certificate_holds(const GroebnerBasis& g) {
    for (std::size_t i = 0; i < g.elems.size(); ++i)
        for (std::size_t j = i + 1; j < g.elems.size(); ++j) {
            Poly s = spoly(g.elems[i], g.elems[j]);
            if (!normal_form_list(s, g.elems).is_zero()) return false;
        }
    return true;
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
    if (!a.ring()->same_vars(*b.ring())) return false;
    const GroebnerBasis& ga = a.groebner(MonomialOrder::grevlex());
    const GroebnerBasis& gb = b.groebner(MonomialOrder::grevlex());
    if (ga.elems.size() != gb.elems.size()) return false;
    for (std::size_t i = 0; i < ga.elems.size(); ++i)
        if (!(ga.elems[i] == gb.elems[i])) return false;
    return true;
}

bool contains(const Ideal& i, const Ideal& j) {
    if (!i.ring()->same_vars(*j.ring())) throw Error("contains: ring mismatch");
    const GroebnerBasis& g = i.groebner(MonomialOrder::grevlex());
    for (const auto& f : j.gens())
        if (!normal_form(f, g).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Elimination and saturation

namespace {

RingPtr subring_of(const RingPtr& ring, const std::vector<std::size_t>& keep) {
    std::vector<std::string> vars;
    vars.reserve(keep.size());
    for (std::size_t i : keep) vars.push_back(ring->vars()[i]);
    return Ring::make(ring->prime(), std::move(vars));
}

// Ring with the given variables first (elimination block), rest in original
// order, under Elim(block size).
RingPtr elim_ring(const RingPtr& ring, const std::vector<std::size_t>& block) {
    std::vector<bool> in_block(ring->nvars(), false);
    for (std::size_t i : block) {
        if (i >= ring->nvars()) throw Error("eliminate: variable index out of range");
        in_block[i] = true;
    }
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        if (in_block[i]) vars.push_back(ring->vars()[i]);
    for (std::size_t i = 0; i < ring->nvars(); ++i)
        if (!in_block[i]) vars.push_back(ring->vars()[i]);
    return Ring::make(ring->prime(), std::move(vars), MonomialOrder::elim(block.size()));
}

bool uses_first_k(const Poly& f, std::size_t k) {
    for (const auto& t : f.terms())
        for (std::size_t i = 0; i < k; ++i)
            if (t.e[i]) return true;
    return false;
}

} // namespace

Ideal eliminate(const Ideal& i, const std::vector<std::size_t>& block) {
    const RingPtr& ring = i.ring();
    if (block.empty()) {
        const GroebnerBasis& g = i.groebner(MonomialOrder::grevlex());
        std::vector<Poly> gs;
        for (const auto& e : g.elems) gs.push_back(e.with_ring(ring));
        return Ideal(ring, std::move(gs));
    }
    RingPtr er = elim_ring(ring, block);
    std::vector<Poly> gs;
    for (const auto& g : i.gens()) gs.push_back(g.rename_into(er));
    GroebnerBasis gb = buchberger(er, std::move(gs), er->order());

    std::vector<bool> in_block(ring->nvars(), false);
    for (std::size_t v : block) in_block[v] = true;
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < ring->nvars(); ++v)
        if (!in_block[v]) keep.push_back(v);
    RingPtr sub = subring_of(ring, keep);

    std::vector<Poly> out;
    for (const auto& g : gb.elems)
        if (!uses_first_k(g, block.size())) out.push_back(g.rename_into(sub));
    return Ideal(sub, std::move(out));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
    if (!a.ring()->same_vars(*b.ring())) throw Error("intersect: ring mismatch");
    const RingPtr& ring = a.ring();
    if (a.gens().empty()) return b;
    if (b.gens().empty()) return a;
    std::string tname = ring->fresh_name("u");
    std::vector<std::string> vars = {tname};
    vars.insert(vars.end(), ring->vars().begin(), ring->vars().end());
    RingPtr er = Ring::make(ring->prime(), std::move(vars), MonomialOrder::elim(1));
    Poly t = Poly::variable(er, 0);
    Poly one_minus_t = Poly::constant(er, uint64_t{1}) - t;
    std::vector<Poly> gs;
    for (const auto& g : a.gens()) gs.push_back(t * g.rename_into(er));
    for (const auto& g : b.gens()) gs.push_back(one_minus_t * g.rename_into(er));
    GroebnerBasis gb = buchberger(er, std::move(gs), er->order());
    std::vector<Poly> out;
    for (const auto& g : gb.elems)
        if (!uses_first_k(g, 1)) out.push_back(g.rename_into(ring));
    return Ideal(ring, std::move(out));
}

namespace {

// I : x_v^inf for homogeneous I, by the grevlex-last division trick, iterated
// to a fixpoint.
Ideal saturate_variable_homogeneous(const Ideal& i, std::size_t v) {
    const RingPtr& ring = i.ring();
    std::vector<std::string> vars;
    for (std::size_t k = 0; k < ring->nvars(); ++k)
        if (k != v) vars.push_back(ring->vars()[k]);
    vars.push_back(ring->vars()[v]); // saturating variable cheapest under grevlex
    RingPtr r_last = Ring::make(ring->prime(), std::move(vars));
    const std::size_t vlast = r_last->nvars() - 1;

    std::vector<Poly> gens;
    for (const auto& g : i.gens()) gens.push_back(g.rename_into(r_last));
    for (int round = 0; round < 64; ++round) {
        GroebnerBasis gb = buchberger(r_last, gens, r_last->order());
        bool divided = false;
        gens.clear();
        for (const auto& g : gb.elems) {
            uint16_t content = UINT16_MAX;
            for (const auto& t : g.terms()) content = std::min(content, t.e[vlast]);
            if (content > 0) {
                divided = true;
                Exponents shift(r_last->nvars(), 0);
                std::vector<Term> ts;
                for (const auto& t : g.terms()) {
                    Term nt = t;
                    nt.e[vlast] = static_cast<uint16_t>(nt.e[vlast] - content);
                    ts.push_back(std::move(nt));
                }
                gens.push_back(Poly::from_terms(r_last, std::move(ts)));
            } else {
                gens.push_back(g);
            }
        }
        if (!divided) break;
    }
    std::vector<Poly> out;
    for (const auto& g : gens) out.push_back(g.rename_into(ring));
    return Ideal(ring, std::move(out));
}

bool poly_is_monomial(const Poly& f) { return f.nterms() == 1; }

} // namespace

Ideal saturate_single(const Ideal& i, const Poly& f) {
    const RingPtr& ring = i.ring();
    if (f.is_zero()) throw Error("saturation by the zero polynomial");
    if (f.degree() == 0) { // unit
        const GroebnerBasis& g = i.groebner(MonomialOrder::grevlex());
        std::vector<Poly> gs;
        for (const auto& e : g.elems) gs.push_back(e.with_ring(ring));
        return Ideal(ring, std::move(gs));
    }
    Poly h = f.ring() == ring ? f : f.rename_into(ring);
    if (poly_is_monomial(h) && i.is_homogeneous()) {
        Ideal cur = i;
        const Exponents& e = h.lt().e;
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v]) cur = saturate_variable_homogeneous(cur, v);
        return cur;
    }
    // aux-variable route: adjoin u, add u*f - 1, eliminate u
    std::string uname = ring->fresh_name("u");
    std::vector<std::string> vars = {uname};
    vars.insert(vars.end(), ring->vars().begin(), ring->vars().end());
    RingPtr er = Ring::make(ring->prime(), std::move(vars), MonomialOrder::elim(1));
    std::vector<Poly> gs;
    for (const auto& g : i.gens()) gs.push_back(g.rename_into(er));
    gs.push_back(Poly::variable(er, 0) * h.rename_into(er) - Poly::constant(er, uint64_t{1}));
    GroebnerBasis gb = buchberger(er, std::move(gs), er->order());
    std::vector<Poly> out;
    for (const auto& g : gb.elems)
        if (!uses_first_k(g, 1)) out.push_back(g.rename_into(ring));
    return Ideal(ring, std::move(out));
}

Ideal saturate(const Ideal& i, const Ideal& j) {
    if (j.gens().empty()) throw Error("saturation by the zero ideal");
    Ideal acc = saturate_single(i, j.gens()[0]);
    for (std::size_t k = 1; k < j.gens().size(); ++k)
        acc = intersect(acc, saturate_single(i, j.gens()[k]));
    return acc;
}

Ideal irrelevant_ideal(const RingPtr& ring) {
    std::vector<Poly> gs;
    for (std::size_t v = 0; v < ring->nvars(); ++v) gs.push_back(Poly::variable(ring, v));
    return Ideal(ring, std::move(gs));
}

Ideal saturate_blockwise_irrelevant(const Ideal& i) {
    const RingPtr& ring = i.ring();
    Ideal cur = i;
    std::size_t start = 0;
    for (std::size_t bs : ring->blocks()) {
        std::vector<Poly> gs;
        for (std::size_t v = start; v < start + bs; ++v) gs.push_back(Poly::variable(ring, v));
        cur = saturate(cur, Ideal(ring, std::move(gs)));
        start += bs;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Tangent cone

namespace {

Poly homogenize_with_aux(const Poly& f, const RingPtr& aux_ring) {
    // aux_ring = [a, vars of f's ring]; degree-equalizing exponent on a
    const int64_t d = f.degree();
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        Term nt{Exponents(aux_ring->nvars(), 0), t.c};
        for (std::size_t i = 0; i < t.e.size(); ++i) nt.e[i + 1] = t.e[i];
        nt.e[0] = static_cast<uint16_t>(d - exp_total_degree(t.e));
        ts.push_back(std::move(nt));
    }
    return Poly::from_terms(aux_ring, std::move(ts));
}

} // namespace

Ideal tangent_cone(const Ideal& i, const ProjPoint& point, std::size_t* chart_var) {
    const RingPtr& ring = i.ring();
    if (ring->blocks().size() != 1) throw Error("tangent cone requires a single projective factor");
    if (point.dim() != ring->nvars()) throw Error("tangent cone: point dimension mismatch");
    for (const auto& g : i.gens())
        if (g.eval(point.coords()) != 0) throw Error("tangent cone: point not on the variety");

    // canonical chart: last nonzero coordinate, scaled to 1
    std::size_t c = SIZE_MAX;
    for (std::size_t k = point.dim(); k-- > 0;)
        if (point.coords()[k]) { c = k; break; }
    const uint64_t p = ring->prime();
    const uint64_t scale = invmod(point.coords()[c], p);
    std::vector<uint64_t> pc(point.coords());
    for (auto& x : pc) x = mulmod(x, scale, p);
    if (chart_var) *chart_var = c;

    // translate the point to the origin of the chart: s_j -> s_j + p_j * s_c
    std::vector<Poly> images;
    for (std::size_t j = 0; j < ring->nvars(); ++j) {
        if (j == c) {
            images.push_back(Poly::variable(ring, c));
        } else {
            images.push_back(Poly::variable(ring, j) +
                             Poly::variable(ring, c).scaled(pc[j]));
        }
    }

    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < ring->nvars(); ++v)
        if (v != c) keep.push_back(v);
    RingPtr chart = subring_of(ring, keep);

    std::vector<Poly> affine;
    for (const auto& g : i.gens()) {
        Poly t = apply_ring_map(images, g).eval_partial({{c, 1}});
        if (!t.is_zero()) affine.push_back(t.rename_into(chart));
    }
    if (affine.empty()) return Ideal(chart, {});

    if (affine.size() == 1)
        return Ideal(chart, {affine[0].lowest_form().monic()});

    // classical algorithm: graded affine basis, homogenize, basis under a
    // graded order ranking the auxiliary variable highest, lowest forms
    GroebnerBasis g0 = buchberger(chart, affine, MonomialOrder::grevlex());
    std::string aux = chart->fresh_name("h");
    std::vector<std::string> vars = {aux};
    vars.insert(vars.end(), chart->vars().begin(), chart->vars().end());
    RingPtr aux_ring = Ring::make(chart->prime(), std::move(vars), MonomialOrder::aux_graded());
    std::vector<Poly> hom;
    for (const auto& g : g0.elems)
        hom.push_back(homogenize_with_aux(g.with_ring(chart), aux_ring));
    GroebnerBasis gh = buchberger(aux_ring, std::move(hom), aux_ring->order());

    std::vector<Poly> cone;
    for (const auto& g : gh.elems) {
        Poly dh = g.eval_partial({{0, 1}}).rename_into(chart);
        if (!dh.is_zero()) cone.push_back(dh.lowest_form().monic());
    }
    GroebnerBasis canon = buchberger(chart, std::move(cone), MonomialOrder::grevlex());
    return Ideal(chart, canon.elems);
}

} // namespace projalg
