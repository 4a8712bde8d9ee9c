#include "projalg/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace projalg {

int64_t exp_total_degree(const Exponents& e) {
    int64_t d = 0;
    for (uint16_t x : e) d += x;
    return d;
}

bool exp_divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents exp_mul(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<uint16_t>(a[i] + b[i]);
    return r;
}

Exponents exp_div(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<uint16_t>(a[i] - b[i]);
    return r;
}

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

namespace {

int grevlex_cmp_range(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) {
    int64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) { da += a[i]; db += b[i]; }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1; // last nonzero of a-b negative => a > b
    }
    return 0;
}

} // namespace

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
    if (a.size() != b.size()) throw Error("exponent vector length mismatch");
    const std::size_t n = a.size();
    switch (kind) {
    case Kind::Grevlex:
        return grevlex_cmp_range(a, b, 0, n);
    case Kind::Lex:
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    case Kind::Elim: {
        const std::size_t k = std::min(block, n);
        if (int c = grevlex_cmp_range(a, b, 0, k)) return c;
        return grevlex_cmp_range(a, b, k, n);
    }
    case Kind::Weighted: {
        if (weights.size() != n) throw Error("weight vector length mismatch");
        int64_t wa = 0, wb = 0;
        for (std::size_t i = 0; i < n; ++i) { wa += weights[i] * a[i]; wb += weights[i] * b[i]; }
        if (wa != wb) return wa < wb ? -1 : 1;
        return grevlex_cmp_range(a, b, 0, n);
    }
    case Kind::AuxGraded: {
        const int64_t da = exp_total_degree(a), db = exp_total_degree(b);
        if (da != db) return da < db ? -1 : 1;
        if (a[0] != b[0]) return a[0] < b[0] ? -1 : 1;
        return grevlex_cmp_range(a, b, 1, n);
    }
    }
    throw Error("unknown monomial order kind");
}

std::string MonomialOrder::to_string() const {
    switch (kind) {
    case Kind::Grevlex: return "grevlex";
    case Kind::Lex: return "lex";
    case Kind::Elim: return "elim:" + std::to_string(block);
    case Kind::Weighted: {
        std::string s = "weighted:";
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(weights[i]);
        }
        return s;
    }
    case Kind::AuxGraded: return "auxgraded";
    }
    return "?";
}

MonomialOrder MonomialOrder::parse(std::string_view s) {
    if (s == "grevlex") return grevlex();
    if (s == "lex") return lex();
    if (s.rfind("elim:", 0) == 0) {
        std::size_t k = 0;
        for (char c : s.substr(5)) {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad elimination block size");
            k = k * 10 + static_cast<std::size_t>(c - '0');
        }
        return elim(k);
    }
    throw Error("unknown monomial order '" + std::string(s) + "'");
}

RingPtr Ring::make(uint64_t prime, std::vector<std::string> vars, MonomialOrder order,
                   std::vector<std::size_t> blocks) {
    if (prime < 2 || prime >= (1ull << 31)) throw Error("prime out of range (need 2 <= p < 2^31)");
    if (!is_prime(prime)) throw Error("modulus " + std::to_string(prime) + " is not prime");
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw Error("duplicate variable name '" + vars[i] + "'");
    if (blocks.empty()) blocks = {vars.size()};
    if (std::accumulate(blocks.begin(), blocks.end(), std::size_t{0}) != vars.size())
        throw Error("block sizes do not cover the variables");
    auto r = std::shared_ptr<Ring>(new Ring());
    r->prime_ = prime;
    r->vars_ = std::move(vars);
    r->order_ = std::move(order);
    r->blocks_ = std::move(blocks);
    return r;
}

std::optional<std::size_t> Ring::find_var(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

std::size_t Ring::var_index(std::string_view name) const {
    auto i = find_var(name);
    if (!i) throw Error("unknown variable '" + std::string(name) + "'");
    return *i;
}

std::size_t Ring::block_of(std::size_t var) const {
    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (var < start + blocks_[b]) return b;
        start += blocks_[b];
    }
    throw Error("variable index out of range");
}

std::size_t Ring::block_start(std::size_t b) const {
    std::size_t start = 0;
    for (std::size_t i = 0; i < b; ++i) start += blocks_[i];
    return start;
}

bool Ring::compatible(const Ring& o) const {
    return prime_ == o.prime_ && vars_ == o.vars_ && order_ == o.order_;
}

bool Ring::same_vars(const Ring& o) const {
    return prime_ == o.prime_ && vars_ == o.vars_;
}

RingPtr Ring::with_order(MonomialOrder order) const {
    return Ring::make(prime_, vars_, std::move(order), blocks_);
}

std::string Ring::fresh_name(const std::string& base) const {
    for (std::size_t k = 0;; ++k) {
        std::string cand = base + "_" + std::to_string(k);
        if (!find_var(cand)) return cand;
    }
}

std::string Ring::header_string() const {
    std::string s = "ring p=" + std::to_string(prime_) + " vars=";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i) s += ',';
        s += vars_[i];
    }
    s += " order=" + order_.to_string();
    if (blocks_.size() > 1) {
        s += " blocks=";
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(blocks_[i]);
        }
    }
    return s;
}

RingPtr make_ring(uint64_t prime, const std::string& base, std::size_t n, MonomialOrder order) {
    std::vector<std::string> vars;
    vars.reserve(n);
    for (std::size_t i = 0; i < n; ++i) vars.push_back(base + "_" + std::to_string(i));
    return Ring::make(prime, std::move(vars), std::move(order));
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::zero(RingPtr ring) {
    Poly f;
    f.ring_ = std::move(ring);
    return f;
}

Poly Poly::constant(RingPtr ring, uint64_t c) {
    Poly f = zero(ring);
    c %= f.ring_->prime();
    if (c) f.terms_.push_back({Exponents(f.ring_->nvars(), 0), c});
    return f;
}

Poly Poly::constant(RingPtr ring, int64_t c) {
    uint64_t p = ring->prime();
    return constant(std::move(ring), Fp::from_int(c, p).value());
}

Poly Poly::variable(RingPtr ring, std::size_t i) {
    if (i >= ring->nvars()) throw Error("variable index out of range");
    Poly f = zero(ring);
    Exponents e(f.ring_->nvars(), 0);
    e[i] = 1;
    f.terms_.push_back({std::move(e), 1});
    return f;
}

Poly Poly::monomial(RingPtr ring, Exponents e, uint64_t c) {
    if (e.size() != ring->nvars()) throw Error("exponent vector length mismatch");
    Poly f = zero(std::move(ring));
    c %= f.ring_->prime();
    if (c) f.terms_.push_back({std::move(e), c});
    return f;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
    Poly f = zero(std::move(ring));
    f.terms_ = std::move(terms);
    f.normalize();
    return f;
}

void Poly::normalize() {
    const uint64_t p = ring_->prime();
    const MonomialOrder& ord = ring_->order();
    for (auto& t : terms_) t.c %= p;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.e, b.e) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().e == t.e) {
            out.back().c = addmod(out.back().c, t.c, p);
        } else {
            out.push_back(std::move(t));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.c == 0; }),
              out.end());
    terms_ = std::move(out);
}

const Term& Poly::lt() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return terms_.front();
}

namespace {

void require_compatible(const Poly& a, const Poly& b) {
    if (!a.ring() || !b.ring()) throw Error("operation on detached polynomial");
    if (a.ring() != b.ring() && !a.ring()->compatible(*b.ring()))
        throw Error("polynomial ring mismatch");
}

} // namespace

Poly Poly::operator+(const Poly& o) const {
    require_compatible(*this, o);
    const uint64_t p = ring_->prime();
    const MonomialOrder& ord = ring_->order();
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ord.compare(terms_[i].e, o.terms_[j].e);
        if (c > 0) {
            out.push_back(terms_[i++]);
        } else if (c < 0) {
            out.push_back(o.terms_[j++]);
        } else {
            uint64_t s = addmod(terms_[i].c, o.terms_[j].c, p);
            if (s) out.push_back({terms_[i].e, s});
            ++i; ++j;
        }
    }
    while (i < terms_.size()) out.push_back(terms_[i++]);
    while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
    Poly r = zero(ring_);
    r.terms_ = std::move(out);
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    const uint64_t p = ring_->prime();
    for (auto& t : r.terms_) t.c = p - t.c;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(uint64_t c) const {
    const uint64_t p = ring_->prime();
    c %= p;
    if (c == 0) return zero(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.c = mulmod(t.c, c, p);
    return r;
}

Poly Poly::mul_term(const Exponents& e, uint64_t c) const {
    const uint64_t p = ring_->prime();
    c %= p;
    if (c == 0) return zero(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) {
        t.e = exp_mul(t.e, e);
        t.c = mulmod(t.c, c, p);
    }
    return r; // multiplying by a monomial preserves the term order
}

Poly Poly::operator*(const Poly& o) const {
    require_compatible(*this, o);
    if (is_zero() || o.is_zero()) return zero(ring_);
    if (o.nterms() == 1) return mul_term(o.terms_[0].e, o.terms_[0].c);
    if (nterms() == 1) return o.mul_term(terms_[0].e, terms_[0].c);
    const uint64_t p = ring_->prime();
    std::map<Exponents, uint64_t> acc;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            Exponents e = exp_mul(a.e, b.e);
            uint64_t& slot = acc[std::move(e)];
            slot = (slot + a.c * b.c) % p;
        }
    }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (c) ts.push_back({e, c});
    return from_terms(ring_, std::move(ts));
}

bool Poly::operator==(const Poly& o) const {
    if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
    if (!ring_->same_vars(*o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    if (ring_->order() == o.ring_->order()) {
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].c != o.terms_[i].c || terms_[i].e != o.terms_[i].e) return false;
        return true;
    }
    return *this - o.with_ring(ring_) == zero(ring_);
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(invmod(terms_.front().c, ring_->prime()));
}

Poly Poly::pow(unsigned n) const {
    Poly r = constant(ring_, uint64_t{1});
    Poly b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= ring_->nvars()) throw Error("variable index out of range");
    const uint64_t p = ring_->prime();
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        if (t.e[var] == 0) continue;
        uint64_t c = mulmod(t.c, t.e[var] % p, p);
        if (!c) continue;
        Term nt{t.e, c};
        --nt.e[var];
        ts.push_back(std::move(nt));
    }
    return from_terms(ring_, std::move(ts));
}

int64_t Poly::degree() const {
    int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, exp_total_degree(t.e));
    return d;
}

int64_t Poly::degree_in(const std::vector<std::size_t>& vars) const {
    int64_t d = -1;
    for (const auto& t : terms_) {
        int64_t s = 0;
        for (std::size_t v : vars) s += t.e[v];
        d = std::max(d, s);
    }
    return d;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    const int64_t d = exp_total_degree(terms_[0].e);
    for (const auto& t : terms_)
        if (exp_total_degree(t.e) != d) return false;
    return true;
}

bool Poly::is_homogeneous_per_block() const {
    if (terms_.empty()) return true;
    const auto& blocks = ring_->blocks();
    std::size_t start = 0;
    for (std::size_t bs : blocks) {
        int64_t d = -1;
        for (const auto& t : terms_) {
            int64_t s = 0;
            for (std::size_t i = start; i < start + bs; ++i) s += t.e[i];
            if (d < 0) d = s;
            else if (d != s) return false;
        }
        start += bs;
    }
    return true;
}

uint64_t Poly::eval(const std::vector<uint64_t>& point) const {
    if (point.size() != ring_->nvars()) throw Error("evaluation point dimension mismatch");
    const uint64_t p = ring_->prime();
    uint64_t acc = 0;
    for (const auto& t : terms_) {
        uint64_t v = t.c;
        for (std::size_t i = 0; i < point.size(); ++i)
            if (t.e[i]) v = mulmod(v, powmod(point[i] % p, t.e[i], p), p);
        acc = addmod(acc, v, p);
    }
    return acc;
}

Poly Poly::eval_partial(const std::vector<std::pair<std::size_t, uint64_t>>& assignment) const {
    const uint64_t p = ring_->prime();
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term nt = t;
        for (const auto& [var, val] : assignment) {
            if (nt.e[var]) {
                nt.c = mulmod(nt.c, powmod(val % p, nt.e[var], p), p);
                nt.e[var] = 0;
            }
        }
        if (nt.c) ts.push_back(std::move(nt));
    }
    return from_terms(ring_, std::move(ts));
}

Poly Poly::homogeneous_component(int64_t d) const {
    std::vector<Term> ts;
    for (const auto& t : terms_)
        if (exp_total_degree(t.e) == d) ts.push_back(t);
    return from_terms(ring_, std::move(ts));
}

Poly Poly::lowest_form() const {
    if (is_zero()) throw Error("lowest form of zero polynomial");
    int64_t dmin = INT64_MAX;
    for (const auto& t : terms_) dmin = std::min(dmin, exp_total_degree(t.e));
    return homogeneous_component(dmin);
}

Poly Poly::lowest_form_in(const std::vector<std::size_t>& vars) const {
    if (is_zero()) throw Error("lowest form of zero polynomial");
    auto part_deg = [&](const Exponents& e) {
        int64_t s = 0;
        for (std::size_t v : vars) s += e[v];
        return s;
    };
    int64_t dmin = INT64_MAX;
    for (const auto& t : terms_) dmin = std::min(dmin, part_deg(t.e));
    std::vector<Term> ts;
    for (const auto& t : terms_)
        if (part_deg(t.e) == dmin) ts.push_back(t);
    return from_terms(ring_, std::move(ts));
}

Poly Poly::with_ring(RingPtr other) const {
    if (!ring_->same_vars(*other)) throw Error("with_ring: rings differ in variables or prime");
    return from_terms(std::move(other), terms_);
}

Poly Poly::rename_into(RingPtr target) const {
    std::vector<std::size_t> where(ring_->nvars(), SIZE_MAX);
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        auto j = target->find_var(ring_->vars()[i]);
        if (j) where[i] = *j;
    }
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term nt{Exponents(target->nvars(), 0), t.c};
        for (std::size_t i = 0; i < t.e.size(); ++i) {
            if (!t.e[i]) continue;
            if (where[i] == SIZE_MAX)
                throw Error("rename_into: variable '" + ring_->vars()[i] + "' missing from target ring");
            nt.e[where[i]] = t.e[i];
        }
        ts.push_back(std::move(nt));
    }
    return from_terms(std::move(target), std::move(ts));
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const Term& t = terms_[k];
        if (k) s += "+";
        const bool has_vars = exp_total_degree(t.e) > 0;
        bool wrote = false;
        if (t.c != 1 || !has_vars) {
            s += std::to_string(t.c);
            wrote = true;
        }
        for (std::size_t i = 0; i < t.e.size(); ++i) {
            if (!t.e[i]) continue;
            if (wrote) s += "*";
            s += ring_->vars()[i];
            if (t.e[i] > 1) s += "^" + std::to_string(t.e[i]);
            wrote = true;
        }
    }
    return s;
}

Poly apply_ring_map(const std::vector<Poly>& images, const Poly& f) {
    if (!f.ring()) throw Error("apply_ring_map: detached polynomial");
    if (images.size() != f.ring()->nvars())
        throw Error("apply_ring_map: expected " + std::to_string(f.ring()->nvars()) +
                    " images, got " + std::to_string(images.size()));
    if (images.empty()) throw Error("apply_ring_map: empty image list");
    RingPtr target = images[0].ring();
    for (const auto& g : images)
        if (!g.ring() || !g.ring()->compatible(*target))
            throw Error("apply_ring_map: images live in different rings");

    // memoized powers of each image
    std::vector<std::vector<Poly>> pows(images.size());
    auto power = [&](std::size_t i, uint16_t e) -> const Poly& {
        auto& cache = pows[i];
        if (cache.empty()) cache.push_back(Poly::constant(target, uint64_t{1}));
        while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
        return cache[e];
    };

    Poly acc = Poly::zero(target);
    for (const auto& t : f.terms()) {
        Poly m = Poly::constant(target, t.c);
        for (std::size_t i = 0; i < t.e.size(); ++i)
            if (t.e[i]) m = m * power(i, t.e[i]);
        acc = acc + m;
    }
    return acc;
}


std::vector<Exponents> monomials_of_degree(std::size_t nvars, int64_t d, const MonomialOrder& order) {
    std::vector<Exponents> out;
    Exponents cur(nvars, 0);
    // enumerate compositions of d into nvars parts
    struct Rec {
        std::size_t nvars;
        std::vector<Exponents>& out;
        Exponents& cur;
        void go(std::size_t i, int64_t rem) {
            if (i + 1 == nvars) {
                cur[i] = static_cast<uint16_t>(rem);
                out.push_back(cur);
                return;
            }
            for (int64_t k = rem; k >= 0; --k) {
                cur[i] = static_cast<uint16_t>(k);
                go(i + 1, rem - k);
            }
            cur[i] = 0;
        }
    } rec{nvars, out, cur};
    if (nvars == 0) return out;
    rec.go(0, d);
    std::sort(out.begin(), out.end(),
              [&](const Exponents& a, const Exponents& b) { return order.compare(a, b) > 0; });
    return out;
}

std::vector<uint64_t> coeff_vector(const Poly& f, const std::vector<Exponents>& monomials) {
    std::vector<uint64_t> v(monomials.size(), 0);
    for (const auto& t : f.terms()) {
        bool found = false;
        for (std::size_t i = 0; i < monomials.size(); ++i) {
            if (monomials[i] == t.e) {
                v[i] = t.c;
                found = true;
                break;
            }
        }
        if (!found) throw Error("coeff_vector: term outside the monomial list");
    }
    return v;
}

// ---------------------------------------------------------------------------
// Parsing. Grammar:
//   poly   := term (('+'|'-') term)*
//   term   := coeff? ('*'? var ('^' nat)?)*
//   var    := name '_' nat | name        name := [A-Za-z]+
// Whitespace is insignificant; integer coefficients are reduced mod p.

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    RingPtr ring;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    uint64_t parse_nat_mod(uint64_t p) {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected number", pos);
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = (v * 10 + static_cast<uint64_t>(s[pos] - '0')) % p;
            ++pos;
        }
        return v;
    }

    uint32_t parse_exponent() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError("malformed exponent", pos);
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<uint64_t>(s[pos] - '0');
            if (v > 10000) throw ParseError("exponent too large", start);
            ++pos;
        }
        return static_cast<uint32_t>(v);
    }

    std::size_t parse_var() {
        skip_ws();
        std::size_t start = pos;
        std::string name;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])))
            name += s[pos++];
        if (name.empty()) throw ParseError("expected variable name", pos);
        if (pos < s.size() && s[pos] == '_') {
            ++pos;
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                throw ParseError("expected index after '_'", pos);
            name += '_';
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                name += s[pos++];
        }
        auto idx = ring->find_var(name);
        if (!idx) throw ParseError("unknown variable '" + name + "'", start);
        return *idx;
    }

    Term parse_term() {
        const uint64_t p = ring->prime();
        Term t{Exponents(ring->nvars(), 0), 1};
        bool any = false;
        skip_ws();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            t.c = parse_nat_mod(p);
            any = true;
        }
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                skip_ws();
            }
            if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos]))) break;
            std::size_t v = parse_var();
            uint32_t e = 1;
            skip_ws();
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                e = parse_exponent();
            }
            uint64_t ne = static_cast<uint64_t>(t.e[v]) + e;
            if (ne > 60000) throw ParseError("exponent too large", pos);
            t.e[v] = static_cast<uint16_t>(ne);
            any = true;
        }
        if (!any) throw ParseError("expected term", pos);
        return t;
    }

    Poly parse() {
        const uint64_t p = ring->prime();
        std::vector<Term> terms;
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = (s[pos] == '-');
            ++pos;
        }
        for (;;) {
            Term t = parse_term();
            if (neg) t.c = (p - t.c % p) % p;
            terms.push_back(std::move(t));
            skip_ws();
            if (pos >= s.size()) break;
            if (s[pos] == '+') neg = false;
            else if (s[pos] == '-') neg = true;
            else throw ParseError(std::string("unexpected character '") + s[pos] + "'", pos);
            ++pos;
        }
        return Poly::from_terms(ring, std::move(terms));
    }
};

} // namespace

Poly parse_poly(const std::string& text, RingPtr ring) {
    Parser p{text, 0, std::move(ring)};
    return p.parse();
}

// ---------------------------------------------------------------------------
// ProjPoint

ProjPoint::ProjPoint(std::vector<uint64_t> coords, std::vector<std::size_t> blocks, uint64_t p)
    : coords_(std::move(coords)), blocks_(std::move(blocks)), p_(p) {
    if (blocks_.empty()) blocks_ = {coords_.size()};
    if (std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0}) != coords_.size())
        throw Error("point block sizes do not cover the coordinates");
    for (auto& c : coords_) c %= p_;
    std::size_t start = 0;
    for (std::size_t bs : blocks_) {
        std::size_t nz = SIZE_MAX;
        for (std::size_t i = start; i < start + bs; ++i)
            if (coords_[i]) { nz = i; break; }
        if (nz == SIZE_MAX) throw Error("projective point has an all-zero factor");
        const uint64_t inv = invmod(coords_[nz], p_);
        for (std::size_t i = start; i < start + bs; ++i)
            coords_[i] = mulmod(coords_[i], inv, p_);
        start += bs;
    }
}

ProjPoint ProjPoint::from_ints(std::vector<int64_t> coords, const RingPtr& ring) {
    std::vector<uint64_t> c;
    c.reserve(coords.size());
    for (int64_t v : coords) c.push_back(Fp::from_int(v, ring->prime()).value());
    return ProjPoint(std::move(c), ring->blocks(), ring->prime());
}

std::string ProjPoint::to_string() const {
    std::string s;
    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (b) s += "x";
        s += "[";
        for (std::size_t i = start; i < start + blocks_[b]; ++i) {
            if (i > start) s += ":";
            s += std::to_string(coords_[i]);
        }
        s += "]";
        start += blocks_[b];
    }
    return s;
}

bool ProjPoint::operator==(const ProjPoint& o) const {
    return p_ == o.p_ && blocks_ == o.blocks_ && coords_ == o.coords_;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
    return coords_ < o.coords_;
}

// ---------------------------------------------------------------------------
// ParamFamily

ParamFamily ParamFamily::make(RingPtr ring, Poly generic) {
    if (ring->blocks().size() != 2)
        throw Error("parametric family ring needs two blocks (parameters, geometry)");
    const std::size_t np = ring->blocks()[0];
    int64_t geo_degree = -1;
    for (const auto& t : generic.terms()) {
        int64_t pd = 0, gd = 0;
        for (std::size_t i = 0; i < np; ++i) pd += t.e[i];
        for (std::size_t i = np; i < t.e.size(); ++i) gd += t.e[i];
        if (pd != 1) throw Error("family element must be linear in the parameters");
        if (geo_degree < 0) geo_degree = gd;
        else if (geo_degree != gd)
            throw Error("family element must be homogeneous in the geometric variables");
    }
    ParamFamily f;
    f.ring_ = std::move(ring);
    f.generic_ = std::move(generic);
    return f;
}

std::vector<std::size_t> ParamFamily::param_indices() const {
    const std::size_t np = ring_->blocks()[0];
    std::vector<bool> seen(np, false);
    for (const auto& t : generic_.terms())
        for (std::size_t i = 0; i < np; ++i)
            if (t.e[i]) seen[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < np; ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

std::size_t ParamFamily::param_count() const { return param_indices().size(); }

RingPtr ParamFamily::geometric_ring() const {
    const std::size_t np = ring_->blocks()[0];
    std::vector<std::string> vars(ring_->vars().begin() + static_cast<std::ptrdiff_t>(np),
                                  ring_->vars().end());
    return Ring::make(ring_->prime(), std::move(vars));
}

Poly ParamFamily::generator_for(std::size_t param_index) const {
    const std::size_t np = ring_->blocks()[0];
    RingPtr geo = geometric_ring();
    std::vector<Term> ts;
    for (const auto& t : generic_.terms()) {
        if (!t.e[param_index]) continue;
        Term nt{Exponents(geo->nvars(), 0), t.c};
        for (std::size_t i = np; i < t.e.size(); ++i) nt.e[i - np] = t.e[i];
        ts.push_back(std::move(nt));
    }
    return Poly::from_terms(geo, std::move(ts));
}

std::vector<Poly> ParamFamily::generators() const {
    std::vector<Poly> out;
    for (std::size_t i : param_indices()) out.push_back(generator_for(i));
    return out;
}

// ---------------------------------------------------------------------------
// File formats

namespace {

RingPtr parse_ring_header(const std::string& line, uint64_t override_prime) {
    std::istringstream iss(line);
    std::string tok;
    iss >> tok;
    if (tok != "ring") throw Error("expected 'ring' header, got '" + line + "'");
    uint64_t prime = 0;
    std::vector<std::string> vars;
    std::vector<std::size_t> blocks;
    MonomialOrder order = MonomialOrder::grevlex();
    while (iss >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error("bad ring header field '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "p") {
            prime = std::stoull(val);
        } else if (key == "vars") {
            std::string name;
            std::istringstream vs(val);
            while (std::getline(vs, name, ','))
                if (!name.empty()) vars.push_back(name);
        } else if (key == "order") {
            order = MonomialOrder::parse(val);
        } else if (key == "blocks") {
            std::istringstream bs(val);
            std::string num;
            while (std::getline(bs, num, ','))
                if (!num.empty()) blocks.push_back(std::stoull(num));
        } else {
            throw Error("unknown ring header field '" + key + "'");
        }
    }
    if (!prime || vars.empty()) throw Error("incomplete ring header");
    if (override_prime) prime = override_prime;
    return Ring::make(prime, std::move(vars), std::move(order), std::move(blocks));
}

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == '#') continue;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        return true;
    }
    return false;
}

} // namespace

IdealFile read_ideal_file(std::istream& in, uint64_t override_prime) {
    std::string line;
    if (!next_content_line(in, line)) throw Error("empty ideal file");
    IdealFile f;
    f.ring = parse_ring_header(line, override_prime);
    while (next_content_line(in, line)) f.polys.push_back(parse_poly(line, f.ring));
    return f;
}

IdealFile read_ideal_file_path(const std::string& path, uint64_t override_prime) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_ideal_file(in, override_prime);
}

void write_ideal_file(std::ostream& out, const RingPtr& ring, const std::vector<Poly>& polys) {
    out << ring->header_string() << "\n";
    for (const auto& f : polys) out << f.to_string() << "\n";
}

MapFile read_map_file(std::istream& in, uint64_t override_prime) {
    std::string line;
    if (!next_content_line(in, line)) throw Error("empty map file");
    MapFile f;
    f.source = parse_ring_header(line, override_prime);
    if (!next_content_line(in, line)) throw Error("map file missing target line");
    {
        std::istringstream iss(line);
        std::string tok;
        iss >> tok;
        if (tok != "target") throw Error("expected 'target' line in map file");
        iss >> tok;
        if (tok.rfind("vars=", 0) != 0) throw Error("expected 'vars=' in target line");
        std::istringstream vs(tok.substr(5));
        std::string name;
        while (std::getline(vs, name, ','))
            if (!name.empty()) f.target_vars.push_back(name);
    }
    while (next_content_line(in, line)) f.forms.push_back(parse_poly(line, f.source));
    return f;
}

MapFile read_map_file_path(const std::string& path, uint64_t override_prime) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_map_file(in, override_prime);
}

} // namespace projalg
