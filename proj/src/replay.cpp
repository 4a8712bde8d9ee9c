#include "projalg/replay.hpp"

#include "scenario_common.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#ifndef PROJALG_DEFAULT_FIXTURES
#define PROJALG_DEFAULT_FIXTURES "fixtures"
#endif

namespace projalg {

std::string default_fixtures_dir() { return PROJALG_DEFAULT_FIXTURES; }

namespace detail {

Fixtures Fixtures::load(const std::string& dir, uint64_t prime) {
    const uint64_t ov = (prime == kDefaultPrime) ? 0 : prime;
    auto map_of = [&](const std::string& name) {
        return RationalMap::from_map_file(read_map_file_path(dir + "/" + name, ov), 0);
    };
    auto ideal_of = [&](const std::string& name) {
        IdealFile f = read_ideal_file_path(dir + "/" + name, ov);
        return Ideal(f.ring, f.polys);
    };
    Fixtures fx;
    fx.quotient_map = map_of("quotient_map.map");
    fx.image_quadrics = ideal_of("image_quadrics.ideal");
    fx.projection = map_of("projection.map");
    fx.intersection_quadrics = ideal_of("intersection_quadrics.ideal");
    fx.quadric_param = map_of("quadric_param.map");
    fx.quadric_param_inverse = map_of("quadric_param_inverse.map");
    fx.p3_recovery = map_of("p3_recovery.map");
    fx.sextic_system = map_of("sextic_system.map");
    {
        IdealFile f = read_ideal_file_path(dir + "/sextic_family.ideal", ov);
        fx.sextic_family = ParamFamily::make(f.ring, f.polys[0]);
        IdealFile g = read_ideal_file_path(dir + "/family_triple_point.ideal", ov);
        fx.family_triple_point = g.polys[0].rename_into(f.ring);
        IdealFile c = read_ideal_file_path(dir + "/cone_cubic.ideal", ov);
        fx.cone_ring = c.ring;
        fx.cone_cubic = c.polys[0];
        RingPtr geo = fx.sextic_family.geometric_ring();
        for (int i = 1; i <= 3; ++i) {
            IdealFile r = read_ideal_file_path(dir + "/line_r" + std::to_string(i) + ".ideal", ov);
            std::vector<Poly> gens;
            for (const auto& p : r.polys) gens.push_back(p.rename_into(geo));
            fx.lines_r.emplace_back(geo, std::move(gens));
        }
    }
    return fx;
}

ScenarioRun::ScenarioRun(const Scenario& s, Report& rep, std::string prefix)
    : s_(s), rep_(rep), prefix_(std::move(prefix)) {}

uint64_t ScenarioRun::seed_for(std::string_view purpose) const {
    return s_.seed ^ fnv1a64(std::string(prefix_) + std::string(purpose));
}

void ScenarioRun::check(const std::string& name, const std::string& expected,
                        const std::string& actual) {
    rep_.checks.push_back({prefix_ + name, expected, actual, expected == actual});
}

void ScenarioRun::check_bool(const std::string& name, bool ok) {
    rep_.checks.push_back({prefix_ + name, "true", ok ? "true" : "false", ok});
}

void ScenarioRun::note(const std::string& name, const std::string& text) {
    rep_.checks.push_back({prefix_ + name, text, text, true});
}

void ScenarioRun::step_begin(const std::string& name) {
    current_step_ = name;
    step_start_ = std::chrono::steady_clock::now();
}

void ScenarioRun::step_end() {
    double v = 0.0;
    if (s_.timings) {
        v = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                      step_start_)
                .count();
    }
    rep_.timings_ms.push_back({prefix_ + current_step_, v});
    current_step_.clear();
}

std::string fmt_dim_degree(const std::pair<int64_t, int64_t>& dd) {
    return "(" + std::to_string(dd.first) + ", " + std::to_string(dd.second) + ")";
}

std::string gb_tag(const Ideal& i) {
    const GroebnerBasis& gb = i.groebner(MonomialOrder::grevlex());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(gb.hash()));
    return "gb[" + std::to_string(gb.elems.size()) + "]#" + std::string(buf);
}

namespace {

Ideal kernel_linear_ideal(const RingPtr& ring, const FpMatrix& rows) {
    RowReduceResult rr = row_reduce(rows);
    std::vector<Poly> gens;
    for (const auto& v : rr.kernel) {
        std::vector<Term> ts;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j]) {
                Exponents e(ring->nvars(), 0);
                e[j] = 1;
                ts.push_back({std::move(e), v[j]});
            }
        gens.push_back(Poly::from_terms(ring, std::move(ts)));
    }
    return Ideal(ring, std::move(gens));
}

} // namespace

Ideal point_ideal(const RingPtr& ring, const ProjPoint& pt) {
    FpMatrix m(1, ring->nvars(), ring->prime());
    for (std::size_t j = 0; j < ring->nvars(); ++j) m.at(0, j) = pt.coords()[j];
    Ideal i = kernel_linear_ideal(ring, m);
    const GroebnerBasis& gb = i.groebner(MonomialOrder::grevlex());
    std::vector<Poly> canon;
    for (const auto& e : gb.elems) canon.push_back(e.with_ring(ring));
    return Ideal(ring, std::move(canon));
}

Ideal line_through(const RingPtr& ring, const ProjPoint& a, const ProjPoint& b) {
    FpMatrix m(2, ring->nvars(), ring->prime());
    for (std::size_t j = 0; j < ring->nvars(); ++j) {
        m.at(0, j) = a.coords()[j];
        m.at(1, j) = b.coords()[j];
    }
    if (matrix_rank(m) != 2) throw Error("line_through: coincident points");
    return kernel_linear_ideal(ring, m);
}

RationalMap plane_parametrization(const RingPtr& p3, const Poly& linear_form,
                                  const RingPtr& p2) {
    if (linear_form.degree() != 1) throw Error("plane_parametrization: not a linear form");
    FpMatrix m(1, p3->nvars(), p3->prime());
    for (const auto& t : linear_form.terms())
        for (std::size_t j = 0; j < p3->nvars(); ++j)
            if (t.e[j]) m.at(0, j) = t.c;
    RowReduceResult rr = row_reduce(m);
    if (rr.kernel.size() != p3->nvars() - 1) throw Error("plane_parametrization: not a plane");
    std::vector<Poly> forms;
    for (std::size_t j = 0; j < p3->nvars(); ++j) {
        Poly f = Poly::zero(p2);
        for (std::size_t k = 0; k < rr.kernel.size(); ++k)
            f = f + Poly::variable(p2, k).scaled(rr.kernel[k][j]);
        forms.push_back(f);
    }
    return RationalMap(p2, p3, std::move(forms));
}

ProjPoint plane_coordinates(const RationalMap& param, const ProjPoint& pt) {
    const RingPtr& p3 = param.target();
    const RingPtr& p2 = param.source();
    const uint64_t p = p3->prime();
    FpMatrix aug(p3->nvars(), p2->nvars() + 1, p);
    for (std::size_t row = 0; row < p3->nvars(); ++row) {
        for (std::size_t k = 0; k < p2->nvars(); ++k) {
            uint64_t c = 0;
            for (const auto& t : param.forms()[row].terms())
                if (t.e[k]) c = t.c;
            aug.at(row, k) = c;
        }
        aug.at(row, p2->nvars()) = pt.coords()[row];
    }
    RowReduceResult rr = row_reduce(aug);
    std::vector<uint64_t> u(p2->nvars(), 0);
    for (std::size_t r = 0; r < rr.rank(); ++r) {
        if (rr.pivot_cols[r] == p2->nvars())
            throw Error("plane_coordinates: point not on the plane");
        u[rr.pivot_cols[r]] = rr.reduced.at(r, p2->nvars());
    }
    return ProjPoint(std::move(u), p2->blocks(), p);
}

} // namespace detail

// ---------------------------------------------------------------------------

namespace {

Report run_single(const Scenario& s, const std::string& name, const std::string& prefix,
                  const detail::Fixtures& fix) {
    Report rep;
    rep.scenario = name;
    rep.prime = s.prime;
    rep.seed = s.seed;
    rep.strategy = (s.strategy == ImageStrategy::Interpolation) ? "interpolation" : "elimination";
    detail::ScenarioRun run(s, rep, prefix);
    if (name == "code1") detail::run_code1(run, fix);
    else if (name == "code2") detail::run_code2(run, fix);
    else if (name == "lemma") detail::run_lemma(run, fix);
    else if (name == "chain") detail::run_chain(run, fix);
    else throw Error("unknown scenario '" + name + "'");
    return rep;
}

} // namespace

Report run_scenario(const Scenario& s) {
    const std::string dir = s.fixtures_dir.empty() ? default_fixtures_dir() : s.fixtures_dir;
    detail::Fixtures fix = detail::Fixtures::load(dir, s.prime);

    if (s.name != "all") return run_single(s, s.name, "", fix);

    const std::vector<std::string> names = {"code1", "code2", "lemma", "chain"};
    std::vector<Report> parts(names.size());
    if (s.jobs > 1) {
        std::vector<std::thread> threads;
        for (std::size_t i = 0; i < names.size(); ++i)
            threads.emplace_back([&, i] { parts[i] = run_single(s, names[i], names[i] + ".", fix); });
        for (auto& t : threads) t.join();
    } else {
        for (std::size_t i = 0; i < names.size(); ++i)
            parts[i] = run_single(s, names[i], names[i] + ".", fix);
    }
    Report rep;
    rep.scenario = "all";
    rep.prime = s.prime;
    rep.seed = s.seed;
    rep.strategy = (s.strategy == ImageStrategy::Interpolation) ? "interpolation" : "elimination";
    for (auto& part : parts) {
        for (auto& c : part.checks) rep.checks.push_back(std::move(c));
        for (auto& t : part.timings_ms) rep.timings_ms.push_back(std::move(t));
    }
    return rep;
}

std::string emit_report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["scenario"] = r.scenario;
    j["prime"] = r.prime;
    j["seed"] = r.seed;
    j["strategy"] = r.strategy;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["expected"] = c.expected;
        jc["actual"] = c.actual;
        jc["pass"] = c.pass;
        j["checks"].push_back(std::move(jc));
    }
    j["timings_ms"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.timings_ms) j["timings_ms"][k] = v;
    j["pass"] = r.pass();
    return j.dump(2) + "\n";
}

std::string emit_report_text(const Report& r) {
    std::string s;
    s += "scenario " + r.scenario + " prime=" + std::to_string(r.prime) +
         " seed=" + std::to_string(r.seed) + " strategy=" + r.strategy + "\n";
    for (const auto& c : r.checks)
        s += std::string(c.pass ? "PASS" : "FAIL") + " " + c.name + ": expected=" + c.expected +
             " actual=" + c.actual + "\n";
    s += std::string(r.pass() ? "PASS" : "FAIL") + " (" + std::to_string(r.checks.size()) +
         " checks)\n";
    return s;
}

int emit_report(const Report& r, const Scenario& s) {
    const std::string doc = (s.format == "text") ? emit_report_text(r) : emit_report_json(r);
    if (s.out.empty()) {
        std::cout << doc;
    } else {
        std::ofstream out(s.out, std::ios::binary);
        if (!out) throw Error("cannot write report to '" + s.out + "'");
        out << doc;
    }
    if (!r.pass()) {
        const Check* f = r.first_failure();
        std::cerr << "FAILED: " << f->name << " (expected " << f->expected << ", got " << f->actual
                  << ")\n";
        return 1;
    }
    return 0;
}

} // namespace projalg
