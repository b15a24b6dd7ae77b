// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "liftvf/liftvf.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace liftvf;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

struct Analysis {
    IndexReport indices;
    std::optional<long> min_generators;
    std::string note;
    double seconds = 0;
};

Analysis analyze_entry(const std::string &id, int kmax = -1) {
    const auto t0 = Clock::now();
    const auto g = corpus_entry(id).germ();
    const auto s = stabilization(g);
    Analysis a;
    a.indices = indices(g, s, kmax);
    try {
        a.min_generators = min_generators(g, s, a.indices).value();
    } catch (const HypothesisError &e) {
        a.note = e.what();
    }
    a.seconds = since(t0);
    return a;
}

std::string show(const std::optional<long> &v) { return v ? std::to_string(*v) : "none"; }

void mingen_criterion(Outcome &o, const std::vector<std::pair<std::string, long>> &cases,
                      double budget) {
    for (const auto &[id, want] : cases) {
        const auto a = analyze_entry(id);
        o.detail << " " << id << "=" << show(a.min_generators) << " (" << a.seconds << " s)";
        o.require(a.min_generators == want, id + " expected " + std::to_string(want));
        if (budget > 0)
            o.require(a.seconds < budget, id + " over the time budget");
    }
}

void indices_criterion(Outcome &o, const std::string &id, int i1, int i2, std::optional<long> mingen) {
    const auto a = analyze_entry(id);
    o.detail << " " << id << ": i1=" << i1_string(a.indices) << " i2=" << i2_string(a.indices)
             << " mingen=" << show(a.min_generators);
    o.require(a.indices.i1_found() && a.indices.i1 == i1, id + " i1");
    o.require(a.indices.i2_finite() && a.indices.i2 == i2, id + " i2");
    o.require(a.min_generators == mingen, id + " min generators");
}

std::vector<TargetVectorField> fixture_fields(const std::string &id, const Multigerm &g) {
    for (const auto &f : generator_fixtures())
        if (f.germ_id == id) {
            std::vector<TargetVectorField> out;
            for (const auto &t : f.fields)
                out.push_back(TargetVectorField::parse(t, g.target()));
            return out;
        }
    throw Error("missing fixture " + id);
}

Outcome criterion1() {
    Outcome o;
    mingen_criterion(o, {{"ex3.1-n2", 2}, {"ex3.1-n3", 3}}, 10.0);
    return o;
}

Outcome criterion2() {
    Outcome o;
    mingen_criterion(o, {{"ex3.2-k2", 4}, {"ex3.2-k3", 7}}, 0);
    return o;
}

Outcome criterion3() {
    Outcome o;
    mingen_criterion(o, {{"ex3.3-n2", 4}, {"ex3.3-n3", 11}}, 0);
    return o;
}

Outcome criterion4() {
    Outcome o;
    for (const char *id : {"ex3.5.1", "ex3.5.2", "ex3.5.3"})
        indices_criterion(o, id, 1, 1, 2);
    return o;
}

Outcome criterion5() {
    Outcome o;
    indices_criterion(o, "ex3.6", 1, 1, 2);
    return o;
}

Outcome criterion6() {
    Outcome o;
    mingen_criterion(o, {{"ex3.7", 17}}, 600.0);
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto g = corpus_entry("ex3.3-n2").germ();
    const auto s = stabilization(g);
    const auto set = construct_generators(g, s, indices(g, s));
    const auto listed = fixture_fields("ex3.3-n2", g);
    for (const auto &xi : listed) {
        const auto c = verify_liftable(g, xi, set.order);
        const bool clean = c.ok && (c.witness.exact || *c.witness.residual_order > set.order);
        o.require(clean, "listed field " + to_string(xi));
    }
    const LiftableJets lifted(g, s, set.level + 3);
    const auto mine = lifted.check(set.generators), theirs = lifted.check(listed);
    o.detail << " order " << set.order << ", liftable jets " << lifted.dim() << ", constructed span "
             << mine.span_dim << ", listed span " << theirs.span_dim;
    o.require(mine.equal && theirs.equal, "spans differ");
    return o;
}

Outcome criterion8() {
    Outcome o;
    const auto g = corpus_entry("ex3.5.2").germ();
    const auto s = stabilization(g);
    const auto listed = fixture_fields("ex3.5.2", g);
    for (int N : {12, 13, 16}) {
        for (const auto &xi : listed) {
            const auto c = verify_liftable(g, xi, N);
            o.require(c.ok && c.witness.exact, "listed field at order " + std::to_string(N));
        }
    }
    const auto set = construct_generators(g, s, indices(g, s));
    const LiftableJets lifted(g, s, set.level + 3);
    const auto mine = lifted.check(set.generators), theirs = lifted.check(listed);
    o.detail << " exact at orders 12, 13, 16; liftable jets " << lifted.dim() << ", constructed span "
             << mine.span_dim << ", listed span " << theirs.span_dim;
    o.require(mine.equal && theirs.equal, "spans differ");
    return o;
}

Outcome criterion9() {
    Outcome o;
    for (int l = 0; l <= 2; ++l) {
        const std::string id = "E" + std::to_string(l);
        const auto g = corpus_entry(id).germ();
        const auto r = indices(g);
        o.detail << " " << id << ": (" << i1_string(r) << ", " << i2_string(r) << ")";
        o.require(r.i1_found() && r.i1 == l && r.i2_finite() && r.i2 == 0, id + " indices");
        for (int i = 0; i <= l + 1; ++i) {
            const auto d = oracle::direct_omega(g, i);
            o.require((d.rank == d.target_dim) == (i >= l), id + " direct surjectivity at level " + std::to_string(i));
            o.require((d.kernel.rank() == 0) == (i == 0), id + " direct injectivity at level " + std::to_string(i));
        }
    }
    const auto g = corpus_entry("E0").germ();
    const auto s = stabilization(g);
    const auto a = analyze_entry("E0");
    o.require(a.min_generators == 2, "E0 min generators");
    const auto set = construct_generators(g, s, indices(g, s));
    const LiftableJets lifted(g, s, set.level + 3);
    o.require(lifted.check(set.generators).equal && lifted.check(fixture_fields("E0", g)).equal,
              "E0 generators do not span X d/dX, Y d/dY");
    o.detail << "; E0 min generators " << show(a.min_generators);
    return o;
}

Outcome criterion10() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t checks = 0;
    for (const auto &e : corpus()) {
        const auto g = e.germ();
        const auto s = stabilization(g);
        std::vector<OmegaMap> maps;
        for (int i = 0; i <= 4; ++i)
            maps.push_back(omega_map(g, i, s));
        for (int i = 0; i <= 3; ++i) {
            const GermJets w(g, s, i + 1);
            const auto pg = predicted_graded(g, i, s);
            o.require(graded_delta(w, i) == pg.delta, e.id + " i-delta at " + std::to_string(i));
            o.require(graded_gamma(w, i) == pg.gamma, e.id + " i-gamma at " + std::to_string(i));
            const auto &m = maps[static_cast<std::size_t>(i)], &next = maps[static_cast<std::size_t>(i) + 1];
            o.require(static_cast<long>(m.target_dim) == predicted_target_dim(g, i, s),
                      e.id + " target dimension at " + std::to_string(i));
            if (next.surjective())
                o.require(predicted_kernel_dim(g, i, s, next) == static_cast<long>(next.kernel_dim()),
                          e.id + " kernel formula at " + std::to_string(i));
            if (m.surjective())
                o.require(next.surjective(), e.id + " surjectivity not monotone");
            if (next.injective())
                o.require(m.injective(), e.id + " injectivity not monotone");
            checks += 6;
        }
        const auto r = indices(g, s);
        if (r.i1_found() && r.i2_finite())
            o.require(r.i1 >= r.i2, e.id + " i1 < i2");
        if (const auto b = r.bijective_level(); b && *b + 2 <= r.kmax) {
            const auto c = lemma_identity_check(g, *b, s);
            o.require(c.equal, e.id + " module identity at the bijective level");
            ++checks;
        }
    }
    const double t = since(t0);
    o.require(t < 900.0, "suite over 15 minutes");
    o.detail << " " << checks << " checks over " << corpus().size() << " germs in " << t << " s";
    return o;
}

std::string capture(const std::string &cmd, int &code) {
    std::string out;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw Error("cannot run " + cmd);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, got);
    const int status = pclose(pipe);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

Outcome criterion11() {
    Outcome o;
    const std::string cmd = std::string(LIFTVF_CLI_PATH) + " corpus --format json 2>/dev/null";
    int c1 = 0, c2 = 0;
    const auto a = capture(cmd, c1), b = capture(cmd, c2);
    o.require(!a.empty() && a == b, "outputs differ");
    o.require(c1 == c2, "exit codes differ");
    o.detail << " " << a.size() << " bytes, identical: " << (a == b ? "yes" : "no");
    return o;
}

} // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria = {
        criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
        criterion7, criterion8, criterion9, criterion10, criterion11};
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << ":" << o.detail.str()
                  << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
