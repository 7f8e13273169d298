#pragma once

#include <stdexcept>
#include <string>

#include "matchstick/analysis.hpp"
#include "matchstick/corpus.hpp"
#include "matchstick/model.hpp"
#include "matchstick/relax.hpp"
#include "matchstick/rigidity.hpp"
#include "matchstick/rules.hpp"
#include "matchstick/svg.hpp"
#include "matchstick/verifier.hpp"

// After Eigen: httplib pulls in <resolv.h>, whose _res macro breaks Eigen.
#include <httplib.h>

namespace matchstick {

struct ServiceResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// A request body that cannot be used as given (HTTP 400).
class BadRequest : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Request decoding shared by the CLI and the service

inline void apply_profile_overrides(ToleranceProfile& p, const Json& j) {
    if (j.is_null()) return;
    if (!j.is_object()) throw BadRequest("profile must be an object");
    auto take = [&](const char* key, double& field) {
        if (j.contains(key)) {
            if (!j.at(key).is_number()) throw BadRequest(std::string(key) + " must be a number");
            field = j.at(key).get<double>();
        }
    };
    take("unit_tol", p.unit_tol);
    take("coincidence_tol", p.coincidence_tol);
    take("rank_tol", p.rank_tol);
    take("symmetry_tol", p.symmetry_tol);
    take("rule_deviation_cap", p.rule_deviation_cap);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw BadRequest(e.what());
    }
}

inline RelaxConfig relax_config_from(const Json& j) {
    RelaxConfig c;
    c.record_trajectory = true;
    if (j.is_null()) return c;
    if (!j.is_object()) throw BadRequest("config must be an object");
    try {
        if (j.contains("mode")) c.mode = relax_mode_from(j.at("mode").get<std::string>());
        if (j.contains("unit_weight")) c.unit_weight = j.at("unit_weight").get<double>();
        if (j.contains("red_weight")) c.red_weight = j.at("red_weight").get<double>();
        if (j.contains("max_iterations")) c.max_iterations = j.at("max_iterations").get<int>();
        if (j.contains("gradient_tol")) c.gradient_tol = j.at("gradient_tol").get<double>();
        if (j.contains("damping_init")) c.damping_init = j.at("damping_init").get<double>();
        if (j.contains("pinned")) {
            const auto pins = j.at("pinned").get<std::vector<int>>();
            if (pins.size() != 2) throw BadRequest("pinned must be [anchor, direction]");
            c.pinned = {pins[0], pins[1]};
        }
        if (j.contains("trajectory")) c.record_trajectory = j.at("trajectory").get<bool>();
    } catch (const Json::exception& e) {
        throw BadRequest(e.what());
    } catch (const std::invalid_argument& e) {
        throw BadRequest(e.what());
    }
    return c;
}

inline FlexContinuationConfig flex_config_from(const Json& j) {
    FlexContinuationConfig c;
    if (j.is_null()) return c;
    if (!j.is_object()) throw BadRequest("config must be an object");
    try {
        if (j.contains("shrink_factor")) c.shrink_factor = j.at("shrink_factor").get<double>();
        if (j.contains("target_red_deviation")) c.target_red_deviation = j.at("target_red_deviation").get<double>();
        if (j.contains("unit_residual_cap")) c.unit_residual_cap = j.at("unit_residual_cap").get<double>();
        if (j.contains("max_stages")) c.max_stages = j.at("max_stages").get<int>();
        c.validate();
    } catch (const Json::exception& e) {
        throw BadRequest(e.what());
    } catch (const std::invalid_argument& e) {
        throw BadRequest(e.what());
    }
    return c;
}

// ---------------------------------------------------------------------------
// Report builders, one per endpoint / subcommand

inline Json verify_json(const Graph& g, const ToleranceProfile& p) { return to_json(verify(g, p)); }

inline Json rigidity_json(const Graph& g, const ToleranceProfile& p, Framework f = Framework::all_edges) {
    return to_json(analyze_rigidity(g, p, f));
}

inline Framework framework_from_config(const Json& j) {
    if (!j.is_object() || !j.contains("framework")) return Framework::all_edges;
    try {
        return framework_from(j.at("framework").get<std::string>());
    } catch (const Json::exception& e) {
        throw BadRequest(e.what());
    } catch (const std::invalid_argument& e) {
        throw BadRequest(e.what());
    }
}

inline Json relax_json(const Graph& g, const RelaxConfig& cfg) {
    const RelaxResult r = relax(g, cfg);
    return Json{{"result", to_json(r)}, {"graph", graph_to_json(g.with_vertices(r.final_vertices))}};
}

inline Json flex_json(const Graph& g, const FlexContinuationConfig& cfg, bool trajectory) {
    RelaxConfig solver;
    solver.record_trajectory = trajectory;
    const auto stages = flex_continuation(g, cfg, solver);
    Json j;
    Json arr = Json::array();
    Json frames = Json::array();
    frames.push_back(vertices_to_json(g.vertices()));
    for (const auto& s : stages) {
        arr.push_back(to_json(s));
        frames.push_back(vertices_to_json(s.final_vertices));
    }
    j["stages"] = std::move(arr);
    j["stage_frames"] = std::move(frames);
    double dev = 0.0;
    for (const auto& e : g.red_edges()) dev = std::max(dev, std::abs(g.length(e) - 1.0));
    j["initial_max_red_deviation"] = dev;
    j["final_max_red_deviation"] = stages.empty() ? dev : stages.back().max_red_deviation();
    j["graph"] = graph_to_json(stages.empty() ? g : g.with_vertices(stages.back().final_vertices));
    return j;
}

inline Json symmetry_json(const Graph& g, const ToleranceProfile& p) { return to_json(detect_symmetry(g, p)); }

inline Json frame_json(const Graph& g, const ToleranceProfile& p) { return to_json(frame_triangles(g, p)); }

inline Json rules_json(const Graph& g, const ToleranceProfile& p) {
    const auto rig = analyze_rigidity(g, p);
    const auto frame = frame_triangles(g, p);
    return to_json(check_construction_rules(g, rig, frame, p));
}

inline Json corpus_index_json(const Corpus& corpus) {
    Json arr = Json::array();
    for (const auto& e : corpus.entries()) {
        Json j = to_json(CorpusListing{e.id, e.graph.vertex_count(), static_cast<int>(e.graph.red_edges().size()),
                                       e.graph.meta().symmetry});
        j["caption"] = e.caption;
        j["aliases"] = e.aliases;
        j["gallery"] = e.gallery;
        arr.push_back(std::move(j));
    }
    return Json{{"entries", std::move(arr)}};
}

/// Serialized form shared by CLI --format json and the service bodies.
inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Service

/// Stateless JSON API over the toolkit; the corpus is its only data.
class Service {
public:
    explicit Service(Corpus corpus) : corpus_(std::move(corpus)) {}

    const Corpus& corpus() const { return corpus_; }

    ServiceResponse handle(const std::string& method, const std::string& path, const std::string& body) const {
        try {
            return dispatch(method, path, body);
        } catch (const BadRequest& e) {
            return error(400, e.what());
        } catch (const GraphError& e) {
            return error(400, e.what());
        } catch (const Json::exception& e) {
            return error(400, e.what());
        } catch (const CorpusError& e) {
            return error(404, e.what());
        } catch (const std::exception& e) {
            // Everything else is the input failing an operation's precondition
            // (crossing drawing, disconnected graph, degenerate edge, ...).
            return error(422, e.what());
        }
    }

    /// Registers every route plus permissive CORS headers on `server`.
    void bind(httplib::Server& server) const {
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                    {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                    {"Access-Control-Allow-Headers", "Content-Type"}});
        auto forward = [this](const httplib::Request& req, httplib::Response& res) {
            const auto r = handle(req.method, req.path, req.body);
            res.status = r.status;
            res.set_content(r.body, r.content_type);
        };
        server.Get(R"(/api/.*)", forward);
        server.Post(R"(/api/.*)", forward);
        server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }

private:
    static ServiceResponse ok(const Json& j) { return {200, dump_report(j)}; }
    static ServiceResponse error(int status, const std::string& message) {
        return {status, dump_report(Json{{"error", message}, {"status", status}})};
    }

    struct Request {
        Graph graph;
        ToleranceProfile profile;
        Json config;
    };

    static Request decode(const std::string& body) {
        Json doc;
        try {
            doc = Json::parse(body);
        } catch (const Json::parse_error& e) {
            throw BadRequest(std::string("malformed JSON: ") + e.what());
        }
        if (!doc.is_object()) throw BadRequest("body must be a JSON object");
        Request r;
        const Json& graph = doc.contains("graph") ? doc.at("graph") : doc;
        r.graph = graph_from_json(graph);
        if (doc.contains("profile")) apply_profile_overrides(r.profile, doc.at("profile"));
        if (doc.contains("config")) r.config = doc.at("config");
        return r;
    }

    ServiceResponse dispatch(const std::string& method, const std::string& path, const std::string& body) const {
        static const std::string corpus_prefix = "/api/corpus/";
        if (method == "GET") {
            if (path == "/api/corpus") return ok(corpus_index_json(corpus_));
            if (path.rfind(corpus_prefix, 0) == 0) {
                const std::string id = path.substr(corpus_prefix.size());
                return {200, serialize_graph(corpus_.get_graph(id))};
            }
            return error(404, "no route " + path);
        }
        if (method != "POST") return error(404, "no route " + method + " " + path);

        if (path == "/api/verify") {
            auto r = decode(body);
            return ok(verify_json(r.graph, r.profile));
        }
        if (path == "/api/rigidity") {
            auto r = decode(body);
            return ok(rigidity_json(r.graph, r.profile, framework_from_config(r.config)));
        }
        if (path == "/api/relax") {
            auto r = decode(body);
            return ok(relax_json(r.graph, relax_config_from(r.config)));
        }
        if (path == "/api/flex") {
            auto r = decode(body);
            const bool trajectory = r.config.is_object() && r.config.value("trajectory", false);
            return ok(flex_json(r.graph, flex_config_from(r.config), trajectory));
        }
        if (path == "/api/symmetry") {
            auto r = decode(body);
            return ok(symmetry_json(r.graph, r.profile));
        }
        if (path == "/api/frame") {
            auto r = decode(body);
            return ok(frame_json(r.graph, r.profile));
        }
        if (path == "/api/rules") {
            auto r = decode(body);
            return ok(rules_json(r.graph, r.profile));
        }
        if (path == "/api/svg") {
            auto r = decode(body);
            return {200, export_svg(r.graph), "image/svg+xml"};
        }
        return error(404, "no route " + path);
    }

    Corpus corpus_;
};

}  // namespace matchstick
