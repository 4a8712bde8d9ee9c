#include "projalg/groebner.hpp"
#include "projalg/rng.hpp"

#include <algorithm>

namespace projalg {

namespace {

// Dense univariate polynomials over F_p, ascending coefficients.
using UPoly = std::vector<uint64_t>;

void utrim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    utrim(r);
    return r;
}

UPoly umod(UPoly a, const UPoly& m, uint64_t p) {
    utrim(a);
    while (a.size() >= m.size() && !a.empty()) {
        const uint64_t c = mulmod(a.back(), invmod(m.back(), p), p);
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[i + shift] = submod(a[i + shift], mulmod(c, m[i], p), p);
        utrim(a);
    }
    return a;
}

UPoly umonic(UPoly f, uint64_t p) {
    utrim(f);
    if (f.empty()) return f;
    const uint64_t inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    return f;
}

UPoly ugcd(UPoly a, UPoly b, uint64_t p) {
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        UPoly r = umod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(std::move(a), p);
}

UPoly upowmod(UPoly base, uint64_t e, const UPoly& m, uint64_t p) {
    UPoly r = {1};
    base = umod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = umod(umul(r, base, p), m, p);
        base = umod(umul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// Roots in F_p of a nonconstant polynomial; multiplicities stripped. The
// degree of the part with no rational root is accumulated into `unresolved`.
std::vector<uint64_t> fp_roots(UPoly g, uint64_t p, int64_t& unresolved) {
    utrim(g);
    if (g.size() <= 1) return {};
    g = umonic(std::move(g), p);

    std::vector<uint64_t> roots;
    if (p <= 4096) { // tiny fields: direct scan
        for (uint64_t x = 0; x < p; ++x) {
            uint64_t v = 0;
            for (std::size_t i = g.size(); i-- > 0;) v = (mulmod(v, x, p) + g[i]) % p;
            if (v == 0) roots.push_back(x);
        }
        std::size_t distinct_linear = roots.size();
        // count the non-split degree after removing rational roots with multiplicity
        UPoly rem = g;
        for (uint64_t r : roots) {
            for (;;) {
                // synthetic division by (x - r)
                UPoly q(rem.size() - 1, 0);
                uint64_t carry = 0;
                for (std::size_t i = rem.size(); i-- > 1;) {
                    carry = (rem[i] + mulmod(carry, r, p)) % p;
                    q[i - 1] = carry;
                }
                uint64_t remainder = (rem[0] + mulmod(carry, r, p)) % p;
                if (remainder != 0) break;
                rem = q;
                utrim(rem);
                if (rem.size() <= 1) break;
            }
        }
        unresolved += static_cast<int64_t>(rem.empty() ? 0 : rem.size() - 1);
        (void)distinct_linear;
        return roots;
    }

    // product of the distinct linear factors: gcd(x^p - x, g)
    UPoly x = {0, 1};
    UPoly xp = upowmod(x, p, g, p);
    if (xp.size() < 2) xp.resize(2, 0);
    UPoly diff = xp;
    diff[1] = submod(diff[1], 1, p);
    utrim(diff);
    UPoly lin = ugcd(g, diff, p);

    // split lin into linear factors, deterministic shift sequence
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t c : g) h = (h ^ c) * 0x100000001b3ull;
    Rng rng(h);
    std::vector<UPoly> stack;
    if (lin.size() > 1) stack.push_back(lin);
    while (!stack.empty()) {
        UPoly f = std::move(stack.back());
        stack.pop_back();
        if (f.size() == 2) {
            roots.push_back(mulmod(submod(0, f[0], p), invmod(f[1], p), p));
            continue;
        }
        if (f[0] == 0) { // x divides
            roots.push_back(0);
            UPoly q(f.begin() + 1, f.end());
            if (q.size() > 1) stack.push_back(std::move(q));
            continue;
        }
        for (;;) {
            const uint64_t c = rng.below(p);
            UPoly shifted = {c, 1};
            UPoly w = upowmod(shifted, (p - 1) / 2, f, p);
            if (w.empty()) w = {0};
            w[0] = submod(w[0], 1, p);
            utrim(w);
            UPoly d = ugcd(f, w, p);
            if (!d.empty() && d.size() > 1 && d.size() < f.size()) {
                UPoly q = f;
                // exact division q / d
                UPoly quot(q.size() - d.size() + 1, 0);
                while (q.size() >= d.size() && !q.empty()) {
                    const uint64_t lead = mulmod(q.back(), invmod(d.back(), p), p);
                    const std::size_t shift = q.size() - d.size();
                    quot[shift] = lead;
                    for (std::size_t i = 0; i < d.size(); ++i)
                        q[i + shift] = submod(q[i + shift], mulmod(lead, d[i], p), p);
                    utrim(q);
                }
                stack.push_back(std::move(d));
                utrim(quot);
                if (quot.size() > 1) stack.push_back(std::move(quot));
                break;
            }
        }
    }

    // unresolved degree: remove rational roots (with multiplicity) from g
    UPoly rem = g;
    for (uint64_t r : roots) {
        for (;;) {
            UPoly q(rem.size() - 1, 0);
            uint64_t carry = 0;
            for (std::size_t i = rem.size(); i-- > 1;) {
                carry = (rem[i] + mulmod(carry, r, p)) % p;
                q[i - 1] = carry;
            }
            uint64_t remainder = (rem[0] + mulmod(carry, r, p)) % p;
            if (remainder != 0) break;
            rem = q;
            utrim(rem);
            if (rem.size() <= 1) break;
        }
        if (rem.size() <= 1) break;
    }
    unresolved += static_cast<int64_t>(rem.empty() ? 0 : rem.size() - 1);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// The polynomial as dense univariate coefficients in variable v; requires
// support only on v.
UPoly to_univariate(const Poly& f, std::size_t v) {
    UPoly c;
    for (const auto& t : f.terms()) {
        for (std::size_t i = 0; i < t.e.size(); ++i)
            if (i != v && t.e[i]) throw Error("not univariate");
        if (c.size() <= t.e[v]) c.resize(t.e[v] + 1, 0);
        c[t.e[v]] = t.c;
    }
    return c;
}

void affine_points(const RingPtr& ring, const std::vector<Poly>& gens,
                   std::vector<std::vector<uint64_t>>& out,
                   std::vector<uint64_t>& partial, int64_t& unresolved) {
    const std::size_t n = ring->nvars();
    const uint64_t p = ring->prime();

    bool all_zero = true;
    for (const auto& g : gens)
        if (!g.is_zero()) { all_zero = false; break; }
    if (n == 0) {
        if (all_zero) out.push_back(partial);
        return;
    }
    if (all_zero) throw Error("rational point extraction on a positive-dimensional scheme");

    GroebnerBasis gb = buchberger(ring, gens, MonomialOrder::lex());
    if (gb.contains_constant()) return;

    // lex basis of a zero-dimensional ideal contains a univariate polynomial
    // in the last (cheapest) variable
    const std::size_t last = n - 1;
    UPoly eliminant;
    bool found = false;
    for (const auto& g : gb.elems) {
        bool only_last = true;
        for (const auto& t : g.terms())
            for (std::size_t i = 0; i < last; ++i)
                if (t.e[i]) { only_last = false; break; }
        if (only_last) {
            eliminant = to_univariate(g.with_ring(ring), last);
            found = true;
            break;
        }
    }
    if (!found) throw Error("rational point extraction on a positive-dimensional scheme");

    std::vector<uint64_t> roots = fp_roots(eliminant, p, unresolved);
    if (roots.empty()) return;

    // current ring's variables are the first n slots of `partial`
    if (n == 1) {
        for (uint64_t r : roots) {
            partial[0] = r;
            out.push_back(partial);
        }
        return;
    }

    std::vector<std::string> subvars(ring->vars().begin(), ring->vars().end() - 1);
    RingPtr sub = Ring::make(p, subvars);
    for (uint64_t r : roots) {
        std::vector<Poly> substituted;
        for (const auto& g : gb.elems) {
            Poly s = g.with_ring(ring).eval_partial({{last, r}});
            if (!s.is_zero()) substituted.push_back(s.rename_into(sub));
        }
        partial[last] = r;
        affine_points(sub, substituted, out, partial, unresolved);
    }
}

} // namespace

RationalPoints rational_points_zero_dim(const Ideal& i) {
    const RingPtr& ring = i.ring();
    if (ring->blocks().size() != 1)
        throw Error("rational point extraction requires a single projective factor");
    auto [dim, deg] = hilbert_dim_degree(i);
    (void)deg;
    if (dim > 0) throw Error("rational point extraction on a positive-dimensional scheme");
    RationalPoints result;
    if (dim < 0) return result;

    // peel charts from the last coordinate down: points with x_k = 1 and
    // x_j = 0 for j > k
    Ideal cur = i;
    RingPtr cur_ring = ring;
    std::vector<std::size_t> dropped; // count of trailing zeros
    for (std::size_t nv = ring->nvars(); nv >= 1; --nv) {
        const std::size_t chart = nv - 1;
        // affine part: x_chart = 1
        if (nv == 1) {
            bool all_zero = true;
            for (const auto& g : cur.gens())
                if (g.eval({1}) != 0) { all_zero = false; break; }
            if (all_zero) {
                std::vector<uint64_t> coords(ring->nvars(), 0);
                coords[0] = 1;
                result.points.emplace_back(coords, ring->blocks(), ring->prime());
            }
            break;
        }
        std::vector<std::string> subvars(cur_ring->vars().begin(), cur_ring->vars().end() - 1);
        RingPtr affine_ring = Ring::make(ring->prime(), subvars);
        std::vector<Poly> affine;
        for (const auto& g : cur.gens()) {
            Poly s = g.eval_partial({{chart, 1}});
            if (!s.is_zero()) affine.push_back(s.rename_into(affine_ring));
        }
        std::vector<std::vector<uint64_t>> pts;
        std::vector<uint64_t> partial(chart, 0);
        if (affine.empty()) throw Error("rational point extraction on a positive-dimensional scheme");
        affine_points(affine_ring, affine, pts, partial, result.unresolved_degree);
        for (auto& c : pts) {
            std::vector<uint64_t> coords(ring->nvars(), 0);
            for (std::size_t k = 0; k < chart; ++k) coords[k] = c[k];
            coords[chart] = 1;
            result.points.emplace_back(coords, ring->blocks(), ring->prime());
        }
        // points at infinity: substitute x_chart = 0, drop the variable
        std::vector<Poly> at_inf;
        for (const auto& g : cur.gens()) {
            Poly s = g.eval_partial({{chart, 0}});
            if (!s.is_zero()) at_inf.push_back(s.rename_into(affine_ring));
        }
        cur = Ideal(affine_ring, std::move(at_inf));
        cur_ring = affine_ring;
    }

    std::sort(result.points.begin(), result.points.end());
    return result;
}

} // namespace projalg
