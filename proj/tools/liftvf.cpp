// liftvf: invariants and generators of liftable vector fields for multigerms.
//
// Exit status: 0 success, 1 hypothesis failure / non-liftable field /
// failed corpus expectation, 2 input error.

#include "liftvf/liftvf.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace liftvf;

constexpr int kOk = 0;
constexpr int kHypothesis = 1;
constexpr int kInput = 2;

struct Options {
    int max_index = -1;
    int jet_order = -1;
    int degree = -1;
    std::string format = "text";
    std::string germ_file;
    std::string fields_file;
};

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

Multigerm read_germ(const std::string &path) {
    try {
        return load_multigerm(read_json(path));
    } catch (const InputError &e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<TargetVectorField> read_fields(const std::string &path, const Multigerm &g) {
    const Json doc = read_json(path);
    const Json &list = doc.is_object() && doc.contains("fields") ? doc.at("fields") : doc;
    if (!list.is_array() || list.empty())
        throw InputError(path + ": expected a non-empty array of fields");
    std::vector<TargetVectorField> out;
    for (const auto &item : list) {
        const Json &comps = item.is_object() && item.contains("components") ? item.at("components") : item;
        if (!comps.is_array() || comps.size() != g.p())
            throw InputError(path + ": every field needs " + std::to_string(g.p()) + " component strings");
        std::vector<std::string> texts;
        for (const auto &c : comps) {
            if (!c.is_string())
                throw InputError(path + ": field components must be strings");
            texts.push_back(c.get<std::string>());
        }
        try {
            out.push_back(TargetVectorField::parse(texts, g.target()));
        } catch (const ParseError &e) {
            throw InputError(path + ": " + e.what());
        }
    }
    return out;
}

void emit(const Options &o, const Json &doc, const std::string &text) {
    if (o.format == "json")
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

void log_time(const char *what, std::chrono::steady_clock::time_point t0) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "liftvf " << what << ": " << s << " s\n";
}

int cmd_analyze(const Options &o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = analyze(read_germ(o.germ_file), o.max_index, o.jet_order);
    emit(o, to_json(r), to_text(r));
    log_time("analyze", t0);
    return kOk;
}

int cmd_mingen(const Options &o) {
    const auto t0 = std::chrono::steady_clock::now();
    const Multigerm g = read_germ(o.germ_file);
    const auto s = stabilization(g);
    const auto m = min_generators(g, s, indices(g, s, o.max_index, o.jet_order));
    std::ostringstream t;
    t << m.value() << "\n  bijective level " << m.level << "\n  dim ker omega_" << m.level + 1
      << " (direct) = " << m.direct << "\n  kernel formula = " << m.predicted << "\n";
    emit(o, to_json(m), t.str());
    log_time("mingen", t0);
    return kOk;
}

int cmd_liftgen(const Options &o) {
    const auto t0 = std::chrono::steady_clock::now();
    const Multigerm g = read_germ(o.germ_file);
    const auto s = stabilization(g);
    const auto set = construct_generators(g, s, indices(g, s, o.max_index), o.degree, o.jet_order);
    const auto check = span_check(g, set);
    emit(o, to_json(set, check), to_text(set, check));
    log_time("liftgen", t0);
    return kOk;
}

int cmd_verify(const Options &o) {
    const auto t0 = std::chrono::steady_clock::now();
    const Multigerm g = read_germ(o.germ_file);
    const auto fields = read_fields(o.fields_file, g);
    const auto s = stabilization(g);
    const int N = o.jet_order >= 0 ? o.jet_order : 4 * s.ell - 1;
    Json results = Json::array();
    std::ostringstream t;
    bool all = true;
    for (const auto &xi : fields) {
        const auto c = verify_liftable(g, xi, N);
        const bool deeper = verify_liftable(g, xi, N + 2).ok;
        all = all && c.ok && deeper;
        Json r{{"components", xi.strings()}, {"ok", c.ok}, {"ok_at_order_plus_2", deeper}};
        t << to_string(xi) << ": " << (c.ok ? "liftable" : "NOT liftable") << " to order " << N
          << (deeper == c.ok ? "" : " (differs at order " + std::to_string(N + 2) + ")");
        if (c.ok) {
            r["exact"] = c.witness.exact;
            r["residual_order"] = c.witness.residual_order ? Json(*c.witness.residual_order) : Json(nullptr);
            r["witnesses"] = to_json(c.witness);
            t << (c.witness.exact ? ", exact" : "") << "\n";
            for (std::size_t j = 0; j < c.witness.eta.size(); ++j) {
                t << "    eta on branch " << j << ": (";
                for (std::size_t k = 0; k < c.witness.eta[j].size(); ++k)
                    t << (k ? ", " : "") << to_string(c.witness.eta[j][k]);
                t << ")\n";
            }
        } else {
            r["failing_branch"] = *c.failing_branch;
            t << ", first failing branch " << *c.failing_branch << "\n";
        }
        results.push_back(r);
    }
    emit(o, Json{{"jet_order", N}, {"fields", results}, {"all_liftable", all}}, t.str());
    log_time("verify", t0);
    return all ? kOk : kHypothesis;
}

int cmd_corpus(const Options &o) {
    const auto run = run_corpus();
    emit(o, to_json(run), to_text(run));
    std::cerr << "liftvf corpus: " << run.seconds << " s\n";
    return run.pass() ? kOk : kHypothesis;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Liftable vector fields over corank-one multigerms"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&](CLI::App *c) {
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    };
    auto add_germ = [&](CLI::App *c) {
        c->add_option("germ", o.germ_file, "Germ JSON file")->required();
    };
    auto add_index = [&](CLI::App *c) {
        c->add_option("--max-index", o.max_index, "Highest level examined (default l + 2)")
            ->check(CLI::PositiveNumber);
    };
    auto add_order = [&](CLI::App *c, const char *help) {
        c->add_option("--jet-order", o.jet_order, help)->check(CLI::NonNegativeNumber);
    };

    auto *analyze_cmd = app.add_subcommand("analyze", "Invariants, level table and indices");
    add_germ(analyze_cmd);
    add_index(analyze_cmd);
    add_order(analyze_cmd, "Jet order for every level, confirmed one order higher");
    add_format(analyze_cmd);

    auto *mingen_cmd = app.add_subcommand("mingen", "Minimal number of generators of liftable fields");
    add_germ(mingen_cmd);
    add_index(mingen_cmd);
    add_order(mingen_cmd, "Jet order for every level, confirmed one order higher");
    add_format(mingen_cmd);

    auto *liftgen_cmd = app.add_subcommand("liftgen", "Construct generators with lifting witnesses");
    add_germ(liftgen_cmd);
    add_index(liftgen_cmd);
    add_order(liftgen_cmd, "Source jet order of the witnesses");
    liftgen_cmd->add_option("--degree", o.degree, "Highest target degree of a correction")
        ->check(CLI::NonNegativeNumber);
    add_format(liftgen_cmd);

    auto *verify_cmd = app.add_subcommand("verify", "Test target vector fields for liftability");
    add_germ(verify_cmd);
    verify_cmd->add_option("fields", o.fields_file, "Fields JSON file")->required();
    add_order(verify_cmd, "Jet order of the test (default 4 l - 1)");
    add_format(verify_cmd);

    auto *corpus_cmd = app.add_subcommand("corpus", "Run the built-in examples against expectations");
    add_format(corpus_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*analyze_cmd)
            return cmd_analyze(o);
        if (*mingen_cmd)
            return cmd_mingen(o);
        if (*liftgen_cmd)
            return cmd_liftgen(o);
        if (*verify_cmd)
            return cmd_verify(o);
        return cmd_corpus(o);
    } catch (const HypothesisError &e) {
        std::cerr << "liftvf: " << e.what() << "\n";
        return kHypothesis;
    } catch (const InputError &e) {
        std::cerr << "liftvf: input error: " << e.what() << "\n";
        return kInput;
    } catch (const ParseError &e) {
        std::cerr << "liftvf: parse error: " << e.what() << "\n";
        return kInput;
    } catch (const RingError &e) {
        std::cerr << "liftvf: input error: " << e.what() << "\n";
        return kInput;
    } catch (const TruncationError &e) {
        std::cerr << "liftvf: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception &e) {
        std::cerr << "liftvf: internal error: " << e.what() << "\n";
        return kHypothesis;
    }
}
