#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matchstick/service.hpp"

namespace matchstick {

/// Exit codes: 0 success, 1 the graph fails the requested check, 2 usage or
/// input error.
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_usage = 2 };

namespace cli_detail {

struct Options {
    std::string format = "text";
    std::optional<double> unit_tol, coincidence_tol, rank_tol, symmetry_tol;
    std::string corpus_dir;
    std::string input;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline ToleranceProfile profile_from(const Options& o) {
    ToleranceProfile p;
    if (o.unit_tol) p.unit_tol = *o.unit_tol;
    if (o.coincidence_tol) p.coincidence_tol = *o.coincidence_tol;
    if (o.rank_tol) p.rank_tol = *o.rank_tol;
    if (o.symmetry_tol) p.symmetry_tol = *o.symmetry_tol;
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return p;
}

inline Corpus load_corpus(const Options& o) {
    return Corpus::load(o.corpus_dir.empty() ? Corpus::default_directory() : std::filesystem::path(o.corpus_dir));
}

/// A path to a graph file, or else a corpus id.
inline Graph load_input(const Options& o) {
    if (std::filesystem::is_regular_file(o.input)) return parse_graph(read_text_file(o.input));
    try {
        return load_corpus(o).get_graph(o.input);
    } catch (const CorpusError&) {
        throw UsageError("'" + o.input + "' is neither a graph file nor a corpus id");
    }
}

inline std::string fmt(double v, int precision = 12) {
    std::ostringstream ss;
    ss << std::setprecision(precision) << v;
    return ss.str();
}

inline std::string edge_text(Edge e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

inline void print_verify(std::ostream& out, const Graph& g, const VerificationReport& r, const ToleranceProfile& p) {
    out << "graph " << (g.meta().id.empty() ? "<unnamed>" : g.meta().id) << ": " << g.vertex_count() << " vertices, "
        << g.edge_count() << " edges, " << g.red_edges().size() << " red\n";
    out << "  4-regular:          " << (r.degrees.ok ? "yes" : "no");
    if (!r.degrees.ok) out << " (" << r.degrees.offending.size() << " vertices off)";
    out << "\n  max unit deviation: " << fmt(r.max_unit_deviation) << " (tol " << fmt(p.unit_tol) << ")\n";
    for (const auto& d : r.red_deviations)
        out << "  red " << edge_text(d.edge) << ": length " << fmt(1.0 + d.deviation, 11) << "\n";
    out << "  crossings:          " << r.crossings.size() << "\n";
    out << "  coincidences:       " << r.coincidences.vertex_pairs.size() + r.coincidences.vertex_edge.size() << "\n";
    out << "  min clearance:      " << fmt(r.min_clearance) << "\n";
    out << "  matchstick:         " << (r.is_matchstick ? "yes" : "no") << "\n";
    out << "  near-matchstick:    " << (r.is_near_matchstick ? "yes" : "no") << "\n";
}

}  // namespace cli_detail

/// Runs one command line.  Output goes to `out`, diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    Options o;
    CLI::App app{"Near-matchstick graph toolkit", "matchstick"};
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--unit-tol", o.unit_tol, "Max |length - 1| for a unit edge");
    app.add_option("--coincidence-tol", o.coincidence_tol, "Min vertex-vertex / vertex-edge distance");
    app.add_option("--rank-tol", o.rank_tol, "Relative singular value cutoff");
    app.add_option("--symmetry-tol", o.symmetry_tol, "Max point matching distance for symmetries");
    app.add_option("--corpus", o.corpus_dir, "Corpus directory");

    auto input_cmd = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("graph", o.input, "Graph file or corpus id")->required();
        return sub;
    };
    auto* verify_cmd = input_cmd("verify", "Check the drawing against the matchstick conditions");
    auto* rigidity_cmd = input_cmd("rigidity", "Infinitesimal rigidity analysis");
    std::string framework = "all_edges";
    rigidity_cmd->add_option("--framework", framework, "all_edges, or gray_only to let red edges float")
        ->check(CLI::IsMember({"all_edges", "gray_only"}));
    auto* relax_cmd = input_cmd("relax", "Least-squares relaxation toward unit edges");
    std::string mode = "all_unit", trace_path;
    int max_iterations = 500;
    relax_cmd->add_option("--mode", mode, "all_unit or preserve_red")->check(CLI::IsMember({"all_unit", "preserve_red"}));
    relax_cmd->add_option("--trace", trace_path, "Write trajectory frames to this file");
    relax_cmd->add_option("--max-iterations", max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
    std::string out_path;
    auto* flex_cmd = input_cmd("flex", "Drive forbidden distances toward unit length along a flex");
    FlexContinuationConfig flex_cfg;
    flex_cmd->add_option("--target", flex_cfg.target_red_deviation, "Stop at this max red deviation");
    flex_cmd->add_option("--max-stages", flex_cfg.max_stages, "Stage cap");
    flex_cmd->add_option("-o,--output", out_path, "Write the final graph to this file");
    auto* symmetry_cmd = input_cmd("symmetry", "Detect rotational and mirror symmetry");
    auto* frame_cmd = input_cmd("frame", "Outer boundary and frame triangles");
    auto* rules_cmd = input_cmd("rules", "Check the four construction rules");
    auto* svg_cmd = input_cmd("export-svg", "Write an SVG drawing");
    SvgStyle style;
    svg_cmd->add_option("-o,--output", out_path, "SVG file")->required();
    svg_cmd->add_option("--scale", style.scale, "Pixels per unit length");

    auto* corpus_cmd = app.add_subcommand("corpus", "Built-in graphs");
    corpus_cmd->fallthrough();
    corpus_cmd->require_subcommand(1);
    auto* corpus_list = corpus_cmd->add_subcommand("list", "List corpus entries");
    corpus_list->fallthrough();
    auto* corpus_show = corpus_cmd->add_subcommand("show", "Print one graph file");
    corpus_show->fallthrough();
    corpus_show->add_option("id", o.input, "Corpus id")->required();

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON service");
    serve_cmd->fallthrough();
    int port = 8080;
    std::string host = "127.0.0.1";
    serve_cmd->add_option("--port", port, "TCP port");
    serve_cmd->add_option("--host", host, "Bind address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << "Run with --help for usage.\n";
        return exit_usage;
    }

    const bool json = o.format == "json";
    try {
        const ToleranceProfile profile = profile_from(o);

        if (corpus_cmd->parsed()) {
            const Corpus corpus = load_corpus(o);
            if (corpus_list->parsed()) {
                if (json) {
                    out << dump_report(corpus_index_json(corpus));
                } else {
                    out << std::left << std::setw(20) << "id" << std::setw(10) << "vertices" << std::setw(6) << "red"
                        << "symmetry\n";
                    for (const auto& l : corpus.list())
                        out << std::setw(20) << l.id << std::setw(10) << l.vertices << std::setw(6) << l.red_edges
                            << l.symmetry.value_or("-") << "\n";
                }
                return exit_ok;
            }
            try {
                out << serialize_graph(corpus.get_graph(o.input));
            } catch (const CorpusError& e) {
                throw UsageError(e.what());
            }
            return exit_ok;
        }

        if (serve_cmd->parsed()) {
            Service service(load_corpus(o));
            httplib::Server server;
            service.bind(server);
            err << "listening on http://" << host << ":" << port << "\n";
            if (!server.listen(host, port)) {
                err << "cannot bind " << host << ":" << port << "\n";
                return exit_usage;
            }
            return exit_ok;
        }

        const Graph g = load_input(o);

        if (verify_cmd->parsed()) {
            const auto r = verify(g, profile);
            if (json)
                out << dump_report(to_json(r));
            else
                print_verify(out, g, r, profile);
            return r.is_matchstick ? exit_ok : exit_check_failed;
        }
        if (rigidity_cmd->parsed()) {
            const auto r = analyze_rigidity(g, profile, framework_from(framework));
            if (json) {
                out << dump_report(to_json(r));
            } else {
                out << to_string(r.framework) << ": rank " << r.rank << " of " << 2 * g.vertex_count() - 3 << ", dof " << r.dof << " -> "
                    << (r.infinitesimally_rigid ? "infinitesimally rigid" : "flexible") << "\n";
                if (r.rank > 0 && static_cast<std::size_t>(r.rank) < r.singular_values.size())
                    out << "  singular value gap: " << fmt(r.singular_values[static_cast<std::size_t>(r.rank) - 1])
                        << " | " << fmt(r.singular_values[static_cast<std::size_t>(r.rank)]) << "\n";
                else if (r.rank > 0)
                    out << "  smallest singular value: " << fmt(r.singular_values[static_cast<std::size_t>(r.rank) - 1])
                        << "\n";
            }
            return r.infinitesimally_rigid ? exit_ok : exit_check_failed;
        }
        if (relax_cmd->parsed()) {
            RelaxConfig cfg;
            cfg.mode = relax_mode_from(mode);
            cfg.max_iterations = max_iterations;
            cfg.record_trajectory = !trace_path.empty();
            const auto r = relax(g, cfg);
            if (!trace_path.empty()) {
                Json frames = Json::array();
                for (const auto& f : r.trajectory) frames.push_back(vertices_to_json(f));
                std::ofstream(trace_path) << dump_report(Json{{"id", g.meta().id}, {"frames", std::move(frames)}});
            }
            if (json) {
                RelaxResult brief = r;
                brief.trajectory.clear();
                out << dump_report(Json{{"result", to_json(brief)},
                                        {"graph", graph_to_json(g.with_vertices(r.final_vertices))}});
            } else {
                out << (r.converged ? "converged" : "not converged") << " after " << r.iterations << " iterations\n";
                out << "  objective: " << fmt(r.objective_history.front()) << " -> " << fmt(r.objective_history.back())
                    << "\n  max unit residual: " << fmt(r.max_unit_residual) << "\n";
                for (double d : r.red_residuals) out << "  red deviation: " << fmt(d) << "\n";
            }
            return r.converged ? exit_ok : exit_check_failed;
        }
        if (flex_cmd->parsed()) {
            flex_cfg.validate();
            const Json j = flex_json(g, flex_cfg, false);
            if (!out_path.empty()) std::ofstream(out_path) << dump_report(j.at("graph"));
            if (json) {
                out << dump_report(j);
            } else {
                out << j.at("stages").size() << " accepted stages\n";
                out << "  max red deviation: " << fmt(j.at("initial_max_red_deviation").get<double>()) << " -> "
                    << fmt(j.at("final_max_red_deviation").get<double>()) << "\n";
            }
            const bool reached = j.at("final_max_red_deviation").get<double>() <= flex_cfg.target_red_deviation;
            return reached ? exit_ok : exit_check_failed;
        }
        if (symmetry_cmd->parsed()) {
            const auto r = detect_symmetry(g, profile);
            if (json)
                out << dump_report(to_json(r));
            else
                out << r.label << "\n";
            return exit_ok;
        }
        if (frame_cmd->parsed()) {
            const auto r = frame_triangles(g, profile);
            if (json) {
                out << dump_report(to_json(r));
            } else {
                out << "outer cycle: " << r.outer_cycle.size() << " vertices\n";
                out << "frame triangles: " << r.frame_triangles.size() << "\n";
                out << "red edges in frame: " << r.red_in_frame.size() << "\n";
            }
            return r.red_in_frame.empty() ? exit_ok : exit_check_failed;
        }
        if (rules_cmd->parsed()) {
            const auto rig = analyze_rigidity(g, profile);
            const auto frame = frame_triangles(g, profile);
            const auto r = check_construction_rules(g, rig, frame, profile);
            if (json) {
                out << dump_report(to_json(r));
            } else {
                out << "rule 1 (rigid):            " << (r.rule1_rigid ? "pass" : "fail") << "\n";
                out << "rule 2 (frame clean):      " << (r.rule2_frame_clean ? "pass" : "fail") << "\n";
                out << "rule 3 (<= 3 red, has " << r.red_count << "): " << (r.rule3_red_count ? "pass" : "fail") << "\n";
                out << "rule 4 (deviation " << fmt(r.max_red_deviation, 6) << "): "
                    << (r.rule4_deviation_cap ? "pass" : "fail") << "\n";
            }
            return r.all_pass() ? exit_ok : exit_check_failed;
        }
        if (svg_cmd->parsed()) {
            const std::string svg = export_svg(g, style);
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw UsageError("cannot write " + out_path);
            file << svg;
            return exit_ok;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const GraphError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace matchstick
