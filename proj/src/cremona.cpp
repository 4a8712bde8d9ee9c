#include "projalg/cremona.hpp"

#include <algorithm>
#include <sstream>

namespace projalg {

int64_t PlaneSystem::mult_of(const std::string& label) const {
    for (const auto& [l, m] : mults)
        if (l == label) return m;
    return 0;
}

void PlaneSystem::set_mult(const std::string& label, int64_t m) {
    for (auto& [l, v] : mults)
        if (l == label) { v = m; return; }
    mults.push_back({label, m});
}

std::string PlaneSystem::to_string() const {
    std::string s = "(" + std::to_string(degree);
    if (!mults.empty()) s += ";";
    for (std::size_t i = 0; i < mults.size(); ++i) {
        s += (i ? ", " : " ") + std::to_string(mults[i].second) + "@" + mults[i].first;
    }
    s += ")";
    return s;
}

SystemInvariants system_invariants(const PlaneSystem& l) {
    int64_t sq = 0, lin = 0, gen = 0;
    for (const auto& [_, m] : l.mults) {
        sq += m * m;
        lin += m;
        gen += m * (m - 1) / 2;
    }
    const int64_t d = l.degree;
    return {d * d - sq, 3 * d - lin, (d - 1) * (d - 2) / 2 - gen};
}

PlaneSystem quadratic_transform(const PlaneSystem& l, const std::array<std::string, 3>& centers,
                                const std::map<std::string, std::string>& relabel) {
    if (centers[0] == centers[1] || centers[0] == centers[2] || centers[1] == centers[2])
        throw Error("quadratic transformation with repeated centers");
    auto renamed = [&](const std::string& old) -> std::string {
        auto it = relabel.find(old);
        return it == relabel.end() ? old : it->second;
    };
    const int64_t ma = l.mult_of(centers[0]);
    const int64_t mb = l.mult_of(centers[1]);
    const int64_t mc = l.mult_of(centers[2]);

    PlaneSystem out;
    out.degree = 2 * l.degree - ma - mb - mc;
    // exceptional label of each center: degree minus the other two centers
    out.set_mult(renamed(centers[0]), l.degree - mb - mc);
    out.set_mult(renamed(centers[1]), l.degree - ma - mc);
    out.set_mult(renamed(centers[2]), l.degree - ma - mb);
    for (const auto& [label, m] : l.mults) {
        if (label == centers[0] || label == centers[1] || label == centers[2]) continue;
        out.set_mult(renamed(label), m);
    }
    return out;
}

ChainResult run_chain(const PlaneSystem& l, const std::vector<ChainStep>& steps) {
    ChainResult r;
    r.trace.push_back(l);
    PlaneSystem cur = l;
    for (const auto& s : steps) {
        cur = quadratic_transform(cur, s.centers, s.relabel);
        r.trace.push_back(cur);
    }
    r.final = cur;
    return r;
}

std::vector<ChainStep> parse_chain_script(const std::string& text) {
    std::vector<ChainStep> steps;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        auto a = s.find_first_not_of(ws);
        if (a == std::string::npos) return std::string();
        auto b = s.find_last_not_of(ws);
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto semi = line.find(';');
        if (semi == std::string::npos) throw Error("chain step missing ';': " + line);
        std::string cpart = trim(line.substr(0, semi));
        std::string rpart = trim(line.substr(semi + 1));
        if (cpart.rfind("centers:", 0) != 0) throw Error("chain step missing 'centers:'");
        if (rpart.rfind("relabel:", 0) != 0) throw Error("chain step missing 'relabel:'");
        cpart = trim(cpart.substr(8));
        rpart = trim(rpart.substr(8));

        ChainStep step;
        {
            std::istringstream cs(cpart);
            std::string tok;
            std::vector<std::string> cs3;
            while (std::getline(cs, tok, ',')) cs3.push_back(trim(tok));
            if (cs3.size() != 3) throw Error("chain step needs exactly three centers");
            step.centers = {cs3[0], cs3[1], cs3[2]};
        }
        if (!rpart.empty()) {
            std::istringstream rs(rpart);
            std::string tok;
            while (std::getline(rs, tok, ',')) {
                tok = trim(tok);
                if (tok.empty()) continue;
                auto eq = tok.find('=');
                if (eq == std::string::npos) throw Error("bad relabel entry '" + tok + "'");
                step.relabel[trim(tok.substr(0, eq))] = trim(tok.substr(eq + 1));
            }
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& DivisorClass::basis_names() {
    static const std::vector<std::string> names = {
        "H",  "Ep",  "E0",  "E1",  "E2",  "E3",   "Ep1",  "Ep2",  "Ep3",  "Epp1",
        "Epp2", "Epp3", "F01", "F02", "F03", "F12", "F13", "F23", "R1", "R2", "R3"};
    return names;
}

DivisorClass::DivisorClass() : c_(basis_names().size(), 0) {}

DivisorClass DivisorClass::unit(const std::string& name) {
    DivisorClass d;
    d[name] = 1;
    return d;
}

int64_t& DivisorClass::operator[](const std::string& name) {
    const auto& names = basis_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return c_[i];
    throw Error("unknown divisor basis element '" + name + "'");
}

int64_t DivisorClass::at(const std::string& name) const {
    return const_cast<DivisorClass*>(this)->operator[](name);
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    DivisorClass r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
    DivisorClass r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

DivisorClass DivisorClass::scaled(int64_t c) const {
    DivisorClass r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * c;
    return r;
}

std::string DivisorClass::to_string() const {
    const auto& names = basis_names();
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        if (c_[i] > 0 && !s.empty()) s += "+";
        if (c_[i] == -1) s += "-";
        else if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
        s += names[i];
    }
    return s.empty() ? "0" : s;
}

} // namespace projalg
