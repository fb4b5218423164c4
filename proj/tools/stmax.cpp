#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stmax/bounds.hpp"
#include "stmax/errors.hpp"
#include "stmax/finite_field.hpp"
#include "stmax/graph_io.hpp"
#include "stmax/projective_plane.hpp"
#include "stmax/search.hpp"
#include "stmax/tree_count.hpp"
#include "stmax/version.hpp"

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

struct GlobalOpts {
    bool json_out = false;
    unsigned workers = 1;
    unsigned precision = 128;
    bool unchecked = false;
};

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json rational_json(const stmax::Rational& r) {
    return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

std::string rational_text(const stmax::Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Emits one report per run: JSON document or flat key = value lines.
struct Report {
    json doc;

    Report(const std::string& command, const GlobalOpts& g) {
        doc["schema_version"] = stmax::kSchemaVersion;
        doc["version"] = stmax::kVersion;
        doc["command"] = command;
        doc["params"] = json::object();
        doc["results"] = json::object();
        doc["timings_ms"] = json::object();
        doc["params"]["workers"] = g.workers;
    }

    void param(const std::string& k, json v) { doc["params"][k] = std::move(v); }
    void result(const std::string& k, json v) { doc["results"][k] = std::move(v); }
    void timing(const std::string& phase, double ms) { doc["timings_ms"][phase] = ms; }

    void print(bool as_json) const {
        if (as_json) {
            std::cout << doc.dump(2) << '\n';
            return;
        }
        std::cout << doc["command"].get<std::string>() << " (stmax " << stmax::kVersion << ")\n";
        print_flat("  param ", doc["params"]);
        print_flat("  ", doc["results"]);
        print_flat("  time(ms) ", doc["timings_ms"]);
    }

    static void print_flat(const std::string& prefix, const json& obj) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it.value().is_object() || it.value().is_array()) {
                std::cout << prefix << it.key() << " = " << it.value().dump() << '\n';
            } else if (it.value().is_string()) {
                std::cout << prefix << it.key() << " = " << it.value().get<std::string>() << '\n';
            } else {
                std::cout << prefix << it.key() << " = " << it.value().dump() << '\n';
            }
        }
    }
};

json edges_json(const std::vector<stmax::Edge>& edges) {
    json arr = json::array();
    for (const auto& [u, v] : edges) arr.push_back(json::array({u, v}));
    return arr;
}

json degree_histogram(const stmax::Graph& g) {
    std::map<std::uint32_t, std::uint32_t> hist;
    for (std::uint32_t d : g.degrees()) ++hist[d];
    json obj = json::object();
    for (const auto& [d, c] : hist) obj[std::to_string(d)] = c;
    return obj;
}

stmax::Rational parse_rational(const std::string& s) {
    try {
        stmax::Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw stmax::HypothesisViolated("cannot parse rational constant '" + s +
                                        "' (use p or p/q)");
    }
}

int run_er(const GlobalOpts& g, std::uint64_t q, std::uint64_t max_q, const std::string& out,
           const std::string& format) {
    if (q > max_q) {
        throw stmax::InstanceTooLarge("q = " + std::to_string(q) + " exceeds the cap " +
                                      std::to_string(max_q));
    }
    Report rep("er", g);
    rep.param("q", q);
    rep.param("format", format);
    auto t0 = Clock::now();
    auto spec = stmax::FieldSpec::make(q);
    auto bundle = stmax::build_er_graph(spec);
    rep.timing("construct", ms_since(t0));

    const stmax::Graph& graph = bundle.simple_graph;
    rep.result("n", graph.n());
    rep.result("m", graph.m());
    rep.result("degree_histogram", degree_histogram(graph));
    rep.result("absolute_points", bundle.absolute_indices.size());
    rep.result("connected", graph.is_connected());
    if (!out.empty()) {
        auto t1 = Clock::now();
        stmax::write_graph_file(graph, out,
                                format == "graph6" ? stmax::GraphFormat::Graph6
                                                   : stmax::GraphFormat::EdgeList);
        rep.timing("write", ms_since(t1));
        rep.result("out", out);
    }
    rep.print(g.json_out);
    return 0;
}

int run_tau(const GlobalOpts& g, const std::string& input, std::uint64_t er_q,
            const std::string& engine) {
    Report rep("tau", g);
    rep.param("engine", engine);
    stmax::TauEngine eng = stmax::TauEngine::Auto;
    if (engine == "bareiss") eng = stmax::TauEngine::Bareiss;
    if (engine == "crt") eng = stmax::TauEngine::Crt;

    stmax::Graph graph(1);
    bool from_er = input.empty();
    if (from_er) {
        rep.param("er_q", er_q);
        auto t0 = Clock::now();
        graph = stmax::build_er_graph(stmax::FieldSpec::make(er_q)).simple_graph;
        rep.timing("construct", ms_since(t0));
    } else {
        rep.param("input", input);
        graph = stmax::read_graph_file(input);
    }

    auto t1 = Clock::now();
    stmax::TreeCount tc = stmax::tau(graph, eng, g.workers);
    rep.timing("tau", ms_since(t1));
    rep.result("n", graph.n());
    rep.result("m", graph.m());
    rep.result("tau", tc.value.get_str());
    rep.result("engine_used", stmax::engine_name(tc.engine));

    int rc = 0;
    if (from_er) {
        mpz_class closed = stmax::tau_er_closed_form(er_q);
        bool equal = closed == tc.value;
        rep.result("closed_form", closed.get_str());
        rep.result("verdict", equal ? "EQUAL" : "MISMATCH");
        if (!equal) rc = 1;
    }
    rep.print(g.json_out);
    return rc;
}

int run_verify(const GlobalOpts& g, std::uint64_t q) {
    Report rep("verify", g);
    rep.param("q", q);
    auto t0 = Clock::now();
    auto spec = stmax::FieldSpec::make(q);  // NotAPrimePower -> usage error
    json checks = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok, const std::string& note = "") {
        json c{{"check", name}, {"pass", ok}};
        if (!note.empty()) c["note"] = note;
        checks.push_back(std::move(c));
        all_ok = all_ok && ok;
    };

    stmax::PolarityGraphBundle bundle{spec, {}, stmax::Graph(1), {}, 0};
    bool built = false;
    try {
        bundle = stmax::build_er_graph(spec);
        built = true;
        record("absolute_count", true);
    } catch (const stmax::PolarityDegenerate& e) {
        record("absolute_count", false, e.what());
    }
    rep.timing("construct", ms_since(t0));

    if (built) {
        const stmax::Graph& graph = bundle.simple_graph;
        const std::uint64_t n = graph.n();

        auto degs = graph.degrees();
        std::uint64_t deg_q = 0, deg_q1 = 0;
        for (std::uint32_t d : degs) {
            if (d == q) ++deg_q;
            if (d == q + 1) ++deg_q1;
        }
        record("degree_profile", deg_q == q + 1 && deg_q1 == q * q && n == q * q + q + 1);
        record("edge_count", graph.m() == q * (q + 1) * (q + 1) / 2);
        record("c4_free", graph.is_c4_free());
        record("connected", graph.is_connected());

        auto t1 = Clock::now();
        try {
            auto sr = stmax::verify_polarity_spectrum(bundle);
            record("spectral_identity", sr.identity_holds);
            record("trace", sr.trace == q + 1);
            rep.result("multiplicity_each", sr.mult_plus);
        } catch (const stmax::IdentityFailed& e) {
            record("spectral_identity", false, e.what());
        }
        rep.timing("spectral", ms_since(t1));

        auto t2 = Clock::now();
        stmax::TreeCount tc = stmax::tau(graph, stmax::TauEngine::Auto, g.workers);
        mpz_class closed = stmax::tau_er_closed_form(q);
        record("tau_equals_closed_form", tc.value == closed);
        rep.result("tau", tc.value.get_str());
        rep.timing("tau", ms_since(t2));
    }

    rep.result("checks", std::move(checks));
    rep.result("all_pass", all_ok);
    rep.print(g.json_out);
    return all_ok ? 0 : 1;
}

int run_bounds(const GlobalOpts& g, std::uint64_t q, std::int64_t t_opt) {
    if (!g.unchecked && q < 14) {
        throw stmax::HypothesisViolated("bounds require q >= 14 (use --unchecked for reference values)");
    }
    Report rep("bounds", g);
    rep.param("q", q);
    rep.param("precision_bits", g.precision);
    const bool hypothesis_ok = q >= 14;
    if (!hypothesis_ok) rep.result("warning", "hypothesis q >= 14 not satisfied; reference values only");
    rep.result("hypothesis_satisfied", hypothesis_ok);

    auto t0 = Clock::now();
    auto budget = stmax::furedi_budget(q);
    rep.result("furedi_edges", budget.edges.get_str());
    rep.result("furedi_valid", budget.valid);

    stmax::Rational p4 = stmax::prop4_upper_bound(q, !g.unchecked);
    rep.result("upper_bound", rational_json(p4));
    rep.result("n", q * q + q + 1);

    if (t_opt >= 0) {
        const auto t = static_cast<std::uint64_t>(t_opt);
        stmax::LogBound lb = stmax::deficit_bound(q, t, g.precision, !g.unchecked);
        json d;
        d["t"] = t;
        d["log_value"] = lb.natural_log_value.decimal();
        d["precision_bits"] = lb.precision_bits;
        d["deficit_exponent"] = rational_json(*lb.deficit_exponent);
        rep.result("deficit_bound", std::move(d));
    }

    if (hypothesis_ok && stmax::is_prime_power(q)) {
        stmax::LeadingTermReport lt = stmax::leading_term_report(q, g.precision);
        json l;
        l["log_lower"] = lt.log_lower.decimal();
        l["log_upper"] = lt.log_upper.decimal();
        l["half_n_log_n"] = lt.half_n_log_n.decimal();
        l["residual_lower"] = lt.residual_lower.to_double();
        l["residual_upper"] = lt.residual_upper.to_double();
        l["ordering_exact"] = lt.ordering_exact;
        rep.result("leading_term", std::move(l));
    }
    rep.timing("bounds", ms_since(t0));
    rep.print(g.json_out);
    return 0;
}

int run_envelope(const GlobalOpts& g, std::uint64_t n, std::int64_t edges, std::int64_t k2t_t,
                 std::int64_t c2k_k, const std::string& ck_str, const std::string& slack_str) {
    Report rep("envelope", g);
    rep.param("n", n);
    const stmax::Rational slack = slack_str.empty() ? stmax::Rational(0) : parse_rational(slack_str);

    int presets = (edges >= 0 ? 1 : 0) + (k2t_t >= 0 ? 1 : 0) + (c2k_k >= 0 ? 1 : 0);
    if (presets != 1) {
        throw stmax::HypothesisViolated("choose exactly one of --edges, --k2t, --c2k");
    }

    auto t0 = Clock::now();
    mpz_class budget;
    if (edges >= 0) {
        budget = static_cast<unsigned long>(edges);
        rep.param("edges", edges);
    } else if (k2t_t >= 0) {
        budget = stmax::k2t_edge_budget(n, static_cast<std::uint64_t>(k2t_t), slack);
        rep.param("k2t_t", k2t_t);
        rep.param("slack", slack_str.empty() ? "0" : slack_str);
    } else {
        if (ck_str.empty()) {
            throw stmax::HypothesisViolated("--c2k needs --ck (the paper leaves C_k unspecified)");
        }
        budget = stmax::c2k_edge_budget(n, static_cast<std::uint32_t>(c2k_k), parse_rational(ck_str),
                                        slack);
        rep.param("c2k_k", c2k_k);
        rep.param("ck", ck_str);
        rep.param("slack", slack_str.empty() ? "0" : slack_str);
    }

    if (!budget.fits_ulong_p() || 2 * budget.get_ui() / 2 != budget.get_ui()) {
        throw stmax::InstanceTooLarge("edge budget " + budget.get_str() + " too large");
    }
    const std::uint64_t eb = budget.get_ui();
    rep.result("edge_budget", budget.get_str());
    rep.result("degree_sum", mpz_class(2 * budget).get_str());
    rep.result("envelope_P", stmax::envelope_P(n, 2 * eb).get_str());
    stmax::Rational bound = stmax::generic_envelope_bound(n, eb);
    rep.result("tau_upper_bound", rational_json(bound));
    rep.result("tau_upper_bound_text", rational_text(bound));
    rep.timing("envelope", ms_since(t0));
    rep.print(g.json_out);
    return 0;
}

int run_search(const GlobalOpts& g, std::uint32_t n, const std::string& forbid, bool maximal_only,
               bool warmup) {
    Report rep("search", g);
    rep.param("n", n);
    rep.param("forbid", forbid);
    rep.param("maximal_only", maximal_only);
    const stmax::Forbidden f =
        forbid == "c3" ? stmax::Forbidden::C3 : stmax::Forbidden::C4;

    auto t0 = Clock::now();
    stmax::SearchResult sr = stmax::exhaustive_st(n, f, maximal_only, g.workers);
    rep.timing("search", ms_since(t0));
    rep.result("max_tau", sr.max_tau.get_str());
    rep.result("witness", edges_json(sr.witness));
    rep.result("graphs_examined", sr.graphs_examined);

    if (f == stmax::Forbidden::C4) {
        // polarity comparison when n = q^2+q+1 for a prime power q
        for (std::uint64_t q = 2; q * q + q + 1 <= n; ++q) {
            if (q * q + q + 1 == n && stmax::is_prime_power(q)) {
                mpz_class pv = stmax::tau_er_closed_form(q);
                rep.result("polarity_q", q);
                rep.result("polarity_tau", pv.get_str());
                rep.result("polarity_attains_max", pv == sr.max_tau);
            }
        }
    }
    if (warmup && f == stmax::Forbidden::C3) {
        stmax::WarmupReport wr = stmax::verify_warmup_guess(n, g.workers);
        rep.result("bipartite_tau", wr.bipartite_tau.get_str());
        rep.result("guess_holds", wr.guess_holds);
    }
    rep.print(g.json_out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spanning-tree maxima for C4-free graphs: polarity graphs, exact tau, bounds"};
    app.require_subcommand(1);
    app.fallthrough(true);
    GlobalOpts g;
    app.add_flag("--json", g.json_out, "emit a JSON report");
    app.add_option("--workers", g.workers, "worker threads for tau/search")->default_val(1);
    app.add_option("--precision", g.precision, "bits for logarithmic bounds")->default_val(128);
    app.add_flag("--unchecked", g.unchecked, "compute q < 14 bound formulas as reference values");

    std::uint64_t er_q = 0, er_max_q = 32;
    std::string er_out, er_format = "edgelist";
    auto* cmd_er = app.add_subcommand("er", "construct the orthogonal polarity graph ER_q");
    cmd_er->add_option("--q", er_q, "prime power field order")->required();
    cmd_er->add_option("--out", er_out, "output path (omit to skip writing)");
    cmd_er->add_option("--format", er_format, "edgelist or graph6")
        ->check(CLI::IsMember({"edgelist", "graph6"}));
    cmd_er->add_option("--max-q", er_max_q, "construction size cap")->default_val(32);

    std::string tau_input, tau_engine = "auto";
    std::uint64_t tau_q = 0;
    auto* cmd_tau = app.add_subcommand("tau", "exact spanning-tree count");
    auto* tau_in = cmd_tau->add_option("--input", tau_input, "graph file (edge list or graph6)");
    auto* tau_er = cmd_tau->add_option("--er", tau_q, "construct ER_q instead of reading a file");
    cmd_tau->add_option("--engine", tau_engine, "auto, bareiss, or crt")
        ->check(CLI::IsMember({"auto", "bareiss", "crt"}));
    tau_in->excludes(tau_er);

    std::uint64_t verify_q = 0;
    auto* cmd_verify = app.add_subcommand("verify", "full identity suite for ER_q");
    cmd_verify->add_option("--q", verify_q, "prime power field order")->required();

    std::uint64_t bounds_q = 0;
    std::int64_t bounds_t = -1;
    auto* cmd_bounds = app.add_subcommand("bounds", "upper bounds at n = q^2+q+1");
    cmd_bounds->add_option("--q", bounds_q, "parameter q >= 14")->required();
    cmd_bounds->add_option("--t", bounds_t, "edge deficit for the damped bound");

    std::uint64_t env_n = 0;
    std::int64_t env_edges = -1, env_k2t = -1, env_c2k = -1;
    std::string env_ck, env_slack;
    auto* cmd_env = app.add_subcommand("envelope", "degree-sum envelope bound for st(n, H)");
    cmd_env->add_option("--n", env_n, "vertex count")->required();
    cmd_env->add_option("--edges", env_edges, "explicit edge budget");
    cmd_env->add_option("--k2t", env_k2t, "K_{2,t} preset: t");
    cmd_env->add_option("--c2k", env_c2k, "C_{2k} preset: k");
    cmd_env->add_option("--ck", env_ck, "C_{2k} preset leading constant (p or p/q)");
    cmd_env->add_option("--slack", env_slack, "linear slack constant c (p or p/q)");

    std::uint32_t search_n = 0;
    std::string search_forbid;
    bool search_maximal = false, search_warmup = false;
    auto* cmd_search = app.add_subcommand("search", "exhaustive st(n, C3|C4) oracle");
    cmd_search->add_option("--n", search_n, "vertex count, 2..8")->required();
    cmd_search->add_option("--forbid", search_forbid, "c3 or c4")
        ->required()
        ->check(CLI::IsMember({"c3", "c4"}));
    cmd_search->add_flag("--maximal-only", search_maximal, "score only edge-maximal graphs");
    cmd_search->add_flag("--warmup", search_warmup,
                         "with --forbid c3: compare against the balanced bipartite closed form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_er->parsed()) return run_er(g, er_q, er_max_q, er_out, er_format);
        if (cmd_tau->parsed()) {
            if (tau_input.empty() && tau_q == 0) {
                throw stmax::HypothesisViolated("tau needs --input or --er");
            }
            return run_tau(g, tau_input, tau_q, tau_engine);
        }
        if (cmd_verify->parsed()) return run_verify(g, verify_q);
        if (cmd_bounds->parsed()) return run_bounds(g, bounds_q, bounds_t);
        if (cmd_env->parsed())
            return run_envelope(g, env_n, env_edges, env_k2t, env_c2k, env_ck, env_slack);
        if (cmd_search->parsed())
            return run_search(g, search_n, search_forbid, search_maximal, search_warmup);
    } catch (const stmax::PolarityDegenerate& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return 1;
    } catch (const stmax::IdentityFailed& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return 1;
    } catch (const stmax::ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {  // domain errors incl. NotAPrimePower
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
