#pragma once

// Report documents shared by the command-line tool and the tests. JSON
// output carries no timing so that identical runs are byte-identical.

#include "liftvf/corpus.hpp"
#include "liftvf/ksm.hpp"
#include "liftvf/liftgen.hpp"
#include "liftvf/localalg.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace liftvf {

using Json = nlohmann::json;

inline std::string i1_string(const IndexReport &r) {
    return r.i1_found() ? std::to_string(r.i1) : ">" + std::to_string(r.kmax);
}

inline std::string i2_string(const IndexReport &r) {
    switch (r.i2_kind) {
    case IndexReport::Bound::MinusInfinity:
        return "-inf";
    case IndexReport::Bound::AtLeast:
        return ">=" + std::to_string(r.i2);
    default:
        return std::to_string(r.i2);
    }
}

/// Integers stay numbers, bounds become strings.
inline Json i1_json(const IndexReport &r) { return r.i1_found() ? Json(r.i1) : Json(i1_string(r)); }
inline Json i2_json(const IndexReport &r) { return r.i2_finite() ? Json(r.i2) : Json(i2_string(r)); }

struct GermReport {
    Multigerm germ;
    StabilizationResult stab;
    IndexReport indices;
    std::optional<MinGenerators> min_generators;
    std::string min_generators_note; ///< reason when min_generators is empty
    int jet_order = -1;              ///< explicit order, -1 for the stabilization rule
    double seconds = 0;
};

inline GermReport analyze(const Multigerm &g, int kmax = -1, int jet_order = -1) {
    const auto t0 = std::chrono::steady_clock::now();
    GermReport r{g, stabilization(g), {}, std::nullopt, {}, jet_order, 0};
    r.indices = indices(g, r.stab, kmax, jet_order);
    try {
        r.min_generators = min_generators(g, r.stab, r.indices);
    } catch (const HypothesisError &e) {
        r.min_generators_note = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline Json levels_json(const IndexReport &r) {
    Json levels = Json::array();
    for (const auto &l : r.levels)
        levels.push_back({{"i", l.level},
                          {"computed", l.computed},
                          {"jet_order", l.computed ? Json(l.order) : Json(nullptr)},
                          {"delta", l.delta},
                          {"gamma", l.gamma},
                          {"surjective", l.surjective},
                          {"injective", l.injective},
                          {"domain_dim", l.domain_dim},
                          {"target_dim", l.target_dim},
                          {"kernel_dim", l.kernel_dim}});
    return levels;
}

inline Json to_json(const MinGenerators &m) {
    return {{"level", m.level}, {"direct", m.direct}, {"predicted", m.predicted}, {"value", m.value()}};
}

inline Json to_json(const GermReport &r) {
    Json doc;
    doc["germ"] = r.germ.to_json();
    doc["ell"] = r.stab.ell;
    doc["delta"] = r.stab.delta;
    doc["gamma"] = r.indices.levels.front().gamma;
    doc["max_index"] = r.indices.kmax;
    doc["jet_order"] = r.jet_order < 0 ? Json("auto") : Json(r.jet_order);
    doc["levels"] = levels_json(r.indices);
    doc["i1"] = i1_json(r.indices);
    doc["i2"] = i2_json(r.indices);
    const auto wb = r.indices.well_behaved();
    doc["well_behaved_index"] = wb ? Json(*wb) : Json(nullptr);
    if (r.min_generators)
        doc["min_generators"] = to_json(*r.min_generators);
    else
        doc["min_generators"] = {{"error", r.min_generators_note}};
    return doc;
}

inline std::string germ_line(const Multigerm &g) {
    std::ostringstream o;
    for (std::size_t j = 0; j < g.branch_count(); ++j) {
        o << (j ? ", " : "") << "(";
        const auto &c = g.branch(j).components;
        for (std::size_t q = 0; q < c.size(); ++q)
            o << (q ? ", " : "") << to_string(c[q]);
        o << ")";
    }
    return o.str();
}

inline std::string to_text(const GermReport &r) {
    std::ostringstream o;
    o << "germ " << (r.germ.name().empty() ? "" : r.germ.name() + " ") << "(n=" << r.germ.n()
      << ", p=" << r.germ.p() << "): " << germ_line(r.germ) << "\n";
    o << "stabilization order l = " << r.stab.ell << ", delta = " << r.stab.delta
      << ", gamma = " << r.indices.levels.front().gamma << "\n\n";
    o << "   i  order  i-delta  i-gamma  surj  inj  domain  target  kernel\n";
    char buf[128];
    for (const auto &l : r.indices.levels) {
        const std::string ord = l.computed ? std::to_string(l.order) : "-";
        std::snprintf(buf, sizeof buf, "%4d  %5s  %7ld  %7ld  %4s  %3s  %6zu  %6zu  %6zu%s\n", l.level,
                      ord.c_str(), l.delta, l.gamma, l.surjective ? "yes" : "no",
                      l.injective ? "yes" : "no", l.domain_dim, l.target_dim, l.kernel_dim,
                      l.computed ? "" : "  (inferred)");
        o << buf;
    }
    o << "\ni1 = " << i1_string(r.indices) << ", i2 = " << i2_string(r.indices);
    if (const auto wb = r.indices.well_behaved())
        o << ", i1 - i2 = " << *wb;
    o << "\n";
    if (r.min_generators)
        o << "minimal generators = " << r.min_generators->value() << " (level "
          << r.min_generators->level << "; direct " << r.min_generators->direct << ", formula "
          << r.min_generators->predicted << ")\n";
    else
        o << "minimal generators: " << r.min_generators_note << "\n";
    std::snprintf(buf, sizeof buf, "time %.3f s\n", r.seconds);
    o << buf;
    return o.str();
}

inline Json strings_json(const std::vector<Polynomial> &ps) {
    Json a = Json::array();
    for (const auto &p : ps)
        a.push_back(to_string(p));
    return a;
}

inline Json to_json(const LiftWitness &w) {
    Json a = Json::array();
    for (std::size_t j = 0; j < w.eta.size(); ++j)
        a.push_back({{"branch", j}, {"eta", strings_json(w.eta[j])}});
    return a;
}

inline Json to_json(const SpanCheck &c) {
    return {{"degree", c.degree},
            {"liftable_dim", c.liftable_dim},
            {"span_dim", c.span_dim},
            {"contained", c.contained},
            {"equal", c.equal}};
}

inline Json to_json(const GeneratorSet &set, const std::optional<SpanCheck> &check = std::nullopt) {
    Json gens = Json::array();
    for (std::size_t k = 0; k < set.generators.size(); ++k)
        gens.push_back({{"components", strings_json(set.generators[k].components)},
                        {"exact", set.witnesses[k].exact},
                        {"witnesses", to_json(set.witnesses[k])}});
    Json doc{{"level", set.level},
             {"rho", set.rho},
             {"jet_order", set.order},
             {"degree", set.degree},
             {"generators", gens}};
    if (check)
        doc["span_check"] = to_json(*check);
    return doc;
}

inline std::string to_text(const GeneratorSet &set, const std::optional<SpanCheck> &check = std::nullopt) {
    std::ostringstream o;
    o << "bijective level " << set.level << ", rho = " << set.rho << ", jet order " << set.order
      << ", correction degree <= " << set.degree << "\n";
    for (std::size_t k = 0; k < set.generators.size(); ++k) {
        o << "xi" << k + 1 << " = " << to_string(set.generators[k])
          << (set.witnesses[k].exact ? "  [exact]" : "  [to order " + std::to_string(set.order) + "]")
          << "\n";
        for (std::size_t j = 0; j < set.witnesses[k].eta.size(); ++j) {
            o << "    eta on branch " << j << ": (";
            const auto &eta = set.witnesses[k].eta[j];
            for (std::size_t c = 0; c < eta.size(); ++c)
                o << (c ? ", " : "") << to_string(eta[c]);
            o << ")\n";
        }
    }
    if (check)
        o << "span check at degree " << check->degree << ": liftable " << check->liftable_dim
          << ", generated " << check->span_dim << (check->equal ? " (equal)" : " (NOT equal)") << "\n";
    return o.str();
}

// ---- built-in corpus ------------------------------------------------------

struct CorpusOutcome {
    const CorpusEntry *entry = nullptr;
    long delta = 0, gamma = 0;
    IndexReport indices;
    std::optional<long> min_generators;
    std::string error; ///< unexpected failure, if any
    double seconds = 0;

    bool delta_ok() const { return delta == entry->delta; }
    bool gamma_ok() const { return gamma == entry->gamma; }
    bool i1_ok() const { return indices.i1_found() && indices.i1 == entry->i1; }
    bool i2_ok() const {
        if (!entry->i2)
            return indices.i2_kind == IndexReport::Bound::MinusInfinity;
        return indices.i2_finite() && indices.i2 == *entry->i2;
    }
    bool min_generators_ok() const { return min_generators == entry->min_generators; }
    bool pass() const {
        return error.empty() && delta_ok() && gamma_ok() && i1_ok() && i2_ok() && min_generators_ok();
    }
};

inline CorpusOutcome run_corpus_entry(const CorpusEntry &e) {
    const auto t0 = std::chrono::steady_clock::now();
    CorpusOutcome out;
    out.entry = &e;
    try {
        const auto r = analyze(e.germ());
        out.delta = r.stab.delta;
        out.gamma = r.indices.levels.front().gamma;
        out.indices = r.indices;
        if (r.min_generators)
            out.min_generators = r.min_generators->value();
    } catch (const std::exception &ex) {
        out.error = ex.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

struct FixtureOutcome {
    const GeneratorFixture *fixture = nullptr;
    int order = 0;
    std::vector<bool> liftable;   ///< per listed field, at `order`
    std::vector<bool> exact;      ///< per listed field
    std::optional<SpanCheck> listed, constructed;
    std::string error;

    bool pass() const {
        if (!error.empty() || !listed || !constructed)
            return false;
        for (std::size_t k = 0; k < liftable.size(); ++k)
            if (!liftable[k] || (fixture->exact && !exact[k]))
                return false;
        return listed->equal && constructed->equal;
    }
};

/// The listed fields must lift, and both they and the constructed
/// generators must span the liftable jets at degree level + 3.
inline FixtureOutcome run_fixture(const GeneratorFixture &f) {
    FixtureOutcome out;
    out.fixture = &f;
    try {
        const Multigerm g = corpus_entry(f.germ_id).germ();
        const auto s = stabilization(g);
        const auto set = construct_generators(g, s, indices(g, s));
        out.order = std::max(set.order, f.order);
        std::vector<TargetVectorField> fields;
        for (const auto &texts : f.fields) {
            fields.push_back(TargetVectorField::parse(texts, g.target()));
            const auto c = verify_liftable(g, fields.back(), out.order);
            out.liftable.push_back(c.ok);
            out.exact.push_back(c.witness.exact);
        }
        out.listed = span_check(g, s, fields, set.level + 3);
        out.constructed = span_check(g, set);
    } catch (const std::exception &ex) {
        out.error = ex.what();
    }
    return out;
}

struct CorpusRun {
    std::vector<CorpusOutcome> entries;
    std::vector<FixtureOutcome> fixtures;
    double seconds = 0;

    bool pass() const {
        for (const auto &e : entries)
            if (!e.pass())
                return false;
        for (const auto &f : fixtures)
            if (!f.pass())
                return false;
        return true;
    }
};

/// Entries run concurrently; results keep the corpus order.
inline CorpusRun run_corpus() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::future<CorpusOutcome>> jobs;
    for (const auto &e : corpus())
        jobs.push_back(std::async(std::launch::async, run_corpus_entry, std::cref(e)));
    std::vector<std::future<FixtureOutcome>> fjobs;
    for (const auto &f : generator_fixtures())
        fjobs.push_back(std::async(std::launch::async, run_fixture, std::cref(f)));
    CorpusRun run;
    for (auto &j : jobs)
        run.entries.push_back(j.get());
    for (auto &j : fjobs)
        run.fixtures.push_back(j.get());
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

inline Json optional_json(const std::optional<long> &v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const CorpusRun &run) {
    Json entries = Json::array();
    for (const auto &o : run.entries) {
        const CorpusEntry &e = *o.entry;
        Json expected{{"delta", e.delta},
                      {"gamma", e.gamma},
                      {"i1", e.i1},
                      {"i2", e.i2 ? Json(*e.i2) : Json("-inf")},
                      {"min_generators", optional_json(e.min_generators)}};
        Json observed{{"delta", o.delta},
                      {"gamma", o.gamma},
                      {"i1", i1_json(o.indices)},
                      {"i2", i2_json(o.indices)},
                      {"min_generators", optional_json(o.min_generators)}};
        Json row{{"id", e.id}, {"description", e.description}, {"expected", expected},
                 {"observed", observed}, {"pass", o.pass()}};
        if (!o.error.empty())
            row["error"] = o.error;
        entries.push_back(row);
    }
    Json fixtures = Json::array();
    for (const auto &f : run.fixtures) {
        Json row{{"germ", f.fixture->germ_id},
                 {"fields", f.fixture->fields},
                 {"jet_order", f.order},
                 {"liftable", f.liftable},
                 {"exact", f.exact},
                 {"pass", f.pass()}};
        if (f.listed)
            row["listed_span"] = to_json(*f.listed);
        if (f.constructed)
            row["constructed_span"] = to_json(*f.constructed);
        if (!f.error.empty())
            row["error"] = f.error;
        fixtures.push_back(row);
    }
    return {{"entries", entries}, {"fixtures", fixtures}, {"pass", run.pass()}};
}

inline std::string to_text(const CorpusRun &run) {
    std::ostringstream o;
    char buf[256];
    o << "id          delta   gamma    i1      i2      mingen    result   time\n";
    auto pair = [](const std::string &got, const std::string &want) {
        return got == want ? got : got + "/" + want;
    };
    auto opt = [](const std::optional<long> &v) { return v ? std::to_string(*v) : std::string("-"); };
    for (const auto &r : run.entries) {
        const CorpusEntry &e = *r.entry;
        std::snprintf(buf, sizeof buf, "%-10s  %-6s  %-6s  %-6s  %-6s  %-8s  %-6s  %6.3fs\n", e.id.c_str(),
                      pair(std::to_string(r.delta), std::to_string(e.delta)).c_str(),
                      pair(std::to_string(r.gamma), std::to_string(e.gamma)).c_str(),
                      pair(i1_string(r.indices), std::to_string(e.i1)).c_str(),
                      pair(i2_string(r.indices), e.i2 ? std::to_string(*e.i2) : "-inf").c_str(),
                      pair(opt(r.min_generators), opt(e.min_generators)).c_str(),
                      r.pass() ? "pass" : "FAIL", r.seconds);
        o << buf;
        if (!r.error.empty())
            o << "    error: " << r.error << "\n";
    }
    o << "\nfixtures (observed/expected shown on mismatch)\n";
    for (const auto &f : run.fixtures) {
        o << "  " << f.fixture->germ_id << ": " << f.fixture->fields.size() << " listed fields";
        if (f.listed && f.constructed)
            o << ", liftable jets " << f.listed->liftable_dim << ", listed span " << f.listed->span_dim
              << ", constructed span " << f.constructed->span_dim;
        o << "  " << (f.pass() ? "pass" : "FAIL") << "\n";
        if (!f.error.empty())
            o << "    error: " << f.error << "\n";
    }
    std::snprintf(buf, sizeof buf, "\n%s (%.3f s)\n", run.pass() ? "all expectations pass" : "FAILURES",
                  run.seconds);
    o << buf;
    return o.str();
}

} // namespace liftvf
