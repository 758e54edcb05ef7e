// Command-line surface for the selection pipeline: instance generation,
// selection runs, certification, brute-force oracle comparison, upper-bound
// witnesses, and batch experiments with CSV/SVG output.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qsteinitz/experiment.hpp>
#include <qsteinitz/gen.hpp>
#include <qsteinitz/io.hpp>
#include <qsteinitz/oracle.hpp>
#include <qsteinitz/steinitz.hpp>
#include <qsteinitz/upperbound.hpp>

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw qst::ParseError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw qst::ParseError("cannot open output file: " + path);
    f << text;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        try {
            if (colon != std::string::npos) {
                const int lo = std::stoi(tok.substr(0, colon));
                const int hi = std::stoi(tok.substr(colon + 1));
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            } else if (!tok.empty()) {
                out.push_back(std::stoi(tok));
            }
        } catch (const std::exception&) {
            throw qst::ParseError(std::string("cannot parse ") + what + ": '" + tok + "'");
        }
    }
    if (out.empty()) throw qst::ParseError(std::string("empty ") + what + " list");
    return out;
}

qst::VPolytope<double> load_vpolytope(const std::string& path) {
    const auto pp = qst::parse_polytope(read_input(path));
    // H-form inputs are converted through vertex enumeration
    return pp.is_v ? pp.as_v() : qst::vertex_enum(pp.as_h());
}

std::string rational_string(const qst::Rational& r) {
    std::ostringstream ss;
    ss << r;
    return ss.str();
}

template <typename T>
qst::VPolytope<qst::Rational> to_rational(const qst::VPolytope<T>& q) {
    qst::VPolytope<qst::Rational> out;
    out.dim = q.dim;
    for (const auto& p : q.points) {
        qst::Vec<qst::Rational> v;
        v.reserve(p.size());
        for (double x : p) v.push_back(qst::Rational(x));
        out.points.push_back(std::move(v));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsteinitz: certified sparse vertex selections with inscribed-ball guarantees"};
    app.require_subcommand(1);

    double tolerance = 1e-9;
    app.add_option("--tolerance", tolerance, "floating-policy comparison tolerance")->capture_default_str();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random instance whose hull contains the unit ball");
    int gen_dim = 2, gen_m = 6;
    std::uint64_t gen_seed = 0;
    std::string gen_style = "tangent", gen_out;
    gen->add_option("-d,--dim", gen_dim, "dimension")->required();
    gen->add_option("-m,--facets", gen_m, "tangent: number of half-spaces; sphere-points: number of points")->required();
    gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
    gen->add_option("--style", gen_style, "tangent | sphere-points")->check(CLI::IsMember({"tangent", "sphere-points"}))->capture_default_str();
    gen->add_option("-o,--out", gen_out, "output path (default stdout)");

    // select
    auto* sel = app.add_subcommand("select", "run the selection pipeline on a polytope JSON file");
    std::string sel_in, sel_out;
    double sel_eps = 0.0;
    bool sel_exact = false;
    sel->add_option("input", sel_in, "polytope JSON ('-' for stdin)")->required();
    sel->add_option("-o,--out", sel_out, "output path (default stdout)");
    sel->add_option("--eps", sel_eps, "pre-reduce with a finite subset cover at this epsilon (0 disables)")->capture_default_str();
    sel->add_flag("--exact", sel_exact, "run the pipeline in exact rational arithmetic (d <= 3)");

    // certify
    auto* cert = app.add_subcommand("certify", "recompute the inscribed radius of a chosen sub-hull");
    std::string cert_in, cert_indices, cert_out;
    bool cert_exact = false;
    cert->add_option("input", cert_in, "polytope JSON ('-' for stdin)")->required();
    cert->add_option("--indices", cert_indices, "comma-separated vertex indices")->required();
    cert->add_option("-o,--out", cert_out, "output path (default stdout)");
    cert->add_flag("--exact", cert_exact, "require the exact rational recomputation (d <= 3)");

    // oracle
    auto* orc = app.add_subcommand("oracle", "best inscribed radius over all subsets of at most k vertices");
    std::string orc_in, orc_out;
    int orc_k = 0;
    bool orc_exact = false;
    orc->add_option("input", orc_in, "polytope JSON ('-' for stdin)")->required();
    orc->add_option("-k,--k", orc_k, "subset size cap")->required();
    orc->add_option("-o,--out", orc_out, "output path (default stdout)");
    orc->add_flag("--exact", orc_exact, "exact rational arithmetic (d <= 3)");

    // witness
    auto* wit = app.add_subcommand("witness", "upper-bound witness for a unit-vector system");
    std::string wit_in, wit_out;
    double wit_rho = -1.0;
    wit->add_option("input", wit_in, "unit vectors JSON {\"dim\":d,\"vectors\":[[...]]} ('-' for stdin)")->required();
    wit->add_option("--rho", wit_rho, "also certify that rho*B^d is excluded from the absolute hull");
    wit->add_option("-o,--out", wit_out, "output path (default stdout)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "batch selection runs; CSV columns: seed,d,vertex_count,selection_size,certified_radius,oracle_radius,bound (+runtime_ms with --timings)");
    std::string exp_dims = "2,3", exp_out, exp_svg, exp_format = "csv";
    int exp_instances = 10;
    std::uint64_t exp_seed = 42;
    bool exp_timings = false;
    exp->add_option("--dims", exp_dims, "dimensions: comma list or lo:hi range")->capture_default_str();
    exp->add_option("--instances", exp_instances, "instances per dimension")->capture_default_str();
    exp->add_option("--seed", exp_seed, "batch seed")->capture_default_str();
    exp->add_option("-o,--out", exp_out, "CSV/JSON output path (default stdout)");
    exp->add_option("--svg", exp_svg, "also write a scatter SVG to this path");
    exp->add_option("--format", exp_format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    exp->add_flag("--timings", exp_timings, "append the runtime_ms column (breaks byte-identical reruns)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    qst::set_global_tolerance(tolerance);

    try {
        if (gen->parsed()) {
            const auto g = gen_style == "tangent" ? qst::gen_tangent(gen_dim, gen_m, gen_seed)
                                                  : qst::gen_sphere_points(gen_dim, gen_m, gen_seed);
            write_output(gen_out, qst::polytope_json(g.poly));
        } else if (sel->parsed()) {
            qst::VPolytope<double> q = load_vpolytope(sel_in);
            std::vector<int> cover_map;
            if (sel_eps > 0.0) {
                const auto cover = qst::finite_subset_cover(q.points, sel_eps, q.dim);
                cover_map = cover.kept;
                q = cover.poly;
            }
            if (sel_exact) {
                if (q.dim > 3) throw qst::ParseError("--exact supports d <= 3");
                const auto s = qst::select_vertices(to_rational(q));
                std::vector<int> indices = s.indices;
                if (!cover_map.empty())
                    for (auto& i : indices) i = cover_map[static_cast<std::size_t>(i)];
                std::string out = "{\"indices\":" + qst::detail::ints_json(indices);
                out += ",\"certified_radius\":" + qst::fmt17(qst::to_double(s.certified_radius));
                out += ",\"certified_radius_sq\":\"" + rational_string(s.certified_radius_sq) + "\"";
                out += ",\"bound\":" + qst::fmt17(qst::to_double(s.bound)) + "}";
                write_output(sel_out, out);
            } else {
                auto s = qst::select_vertices(q);
                if (!cover_map.empty())
                    for (auto& i : s.indices) i = cover_map[static_cast<std::size_t>(i)];
                write_output(sel_out, qst::selection_json(s));
            }
        } else if (cert->parsed()) {
            const auto q = load_vpolytope(cert_in);
            const auto indices = parse_int_list(cert_indices, "indices");
            if (cert_exact && q.dim > 3) throw qst::ParseError("--exact supports d <= 3");
            const double r = qst::certify(q, indices);
            write_output(cert_out, "{\"indices\":" + qst::detail::ints_json(indices) +
                                       ",\"certified_radius\":" + qst::fmt17(r) + "}");
        } else if (orc->parsed()) {
            const auto q = load_vpolytope(orc_in);
            if (orc_exact) {
                if (q.dim > 3) throw qst::ParseError("--exact supports d <= 3");
                const auto o = qst::best_subset_radius(to_rational(q), orc_k);
                std::string out = "{\"best_indices\":" + qst::detail::ints_json(o.best_indices);
                out += ",\"best_radius\":" + qst::fmt17(qst::to_double(o.best_radius));
                out += ",\"best_radius_sq\":\"" + rational_string(o.best_radius_sq) + "\"";
                out += ",\"subsets_evaluated\":" + std::to_string(o.subsets_evaluated) + "}";
                write_output(orc_out, out);
            } else {
                write_output(orc_out, qst::oracle_json(qst::best_subset_radius(q, orc_k)));
            }
        } else if (wit->parsed()) {
            const auto u = qst::parse_unit_vectors(read_input(wit_in));
            if (wit_rho >= 0.0) {
                const auto nb = qst::no_ball_certificate(u, wit_rho);
                std::string out;
                if (nb.degenerate) {
                    out = "{\"degenerate\":true,\"threshold\":0";
                } else {
                    const auto w = qst::witness(u);
                    out = qst::witness_json(w);
                    out.pop_back(); // strip '}'
                }
                out += ",\"rho\":" + qst::fmt17(wit_rho);
                out += ",\"excluded\":" + std::string(nb.excluded ? "true" : "false") + "}";
                write_output(wit_out, out);
            } else {
                write_output(wit_out, qst::witness_json(qst::witness(u)));
            }
        } else if (exp->parsed()) {
            qst::ExperimentConfig cfg;
            cfg.dims = parse_int_list(exp_dims, "dims");
            cfg.instances_per_d = exp_instances;
            cfg.seed = exp_seed;
            const auto records = qst::run_experiment(cfg);
            if (exp_format == "csv") {
                write_output(exp_out, qst::experiment_csv(records, exp_timings));
            } else {
                std::string out = "[";
                for (std::size_t i = 0; i < records.size(); ++i) {
                    const auto& r = records[i];
                    if (i) out += ",";
                    out += "{\"seed\":" + std::to_string(r.seed) + ",\"d\":" + std::to_string(r.d);
                    out += ",\"vertex_count\":" + std::to_string(r.vertex_count);
                    out += ",\"selection_size\":" + std::to_string(r.selection_size);
                    out += ",\"certified_radius\":" + qst::fmt17(r.certified_radius);
                    out += ",\"oracle_radius\":" + (r.oracle_radius ? qst::fmt17(*r.oracle_radius) : "null");
                    out += ",\"bound\":" + qst::fmt17(r.bound);
                    if (exp_timings) out += ",\"runtime_ms\":" + qst::fmt17(r.runtime_ms);
                    out += "}";
                }
                out += "]";
                write_output(exp_out, out);
            }
            if (!exp_svg.empty()) write_output(exp_svg, qst::experiment_svg(records));
        }
    } catch (const qst::CertificateViolated& e) {
        std::cerr << "certificate violation: " << e.what() << "\n";
        return 2;
    } catch (const qst::PropositionViolated& e) {
        std::cerr << "certificate violation: " << e.what() << "\n";
        return 2;
    } catch (const qst::CenterVerificationFailed& e) {
        std::cerr << "certificate violation: " << e.what() << "\n";
        return 2;
    } catch (const qst::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
