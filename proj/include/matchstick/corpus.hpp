#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "matchstick/model.hpp"

#ifndef MATCHSTICK_CORPUS_DIR
#define MATCHSTICK_CORPUS_DIR "corpus"
#endif

namespace matchstick {

class CorpusError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct CorpusEntry {
    std::string id;
    std::string file;
    std::string caption;
    std::vector<std::string> aliases;
    bool gallery = false;  // one of the 50-62 vertex candidates
    Graph graph;
};

struct CorpusListing {
    std::string id;
    int vertices = 0;
    int red_edges = 0;
    std::optional<std::string> symmetry;
};

inline std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Tolerance implied by a printed length: half a unit in its last decimal,
/// but never tighter than 1e-9.
inline double claim_tolerance(const std::string& literal) {
    const auto dot = literal.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(literal.size() - dot - 1);
    return std::max(1e-9, 0.5 * std::pow(10.0, -decimals));
}

/// The graph files of a corpus directory, loaded eagerly from its index.json.
class Corpus {
public:
    static std::filesystem::path default_directory() {
        if (const char* env = std::getenv("MATCHSTICK_CORPUS_DIR"); env && *env) return env;
        return MATCHSTICK_CORPUS_DIR;
    }

    static Corpus load(const std::filesystem::path& dir = default_directory()) {
        Corpus c;
        const Json index = Json::parse(read_text_file(dir / "index.json"));
        for (const auto& e : index.at("entries")) {
            CorpusEntry entry;
            entry.id = e.at("id").get<std::string>();
            entry.file = e.at("file").get<std::string>();
            entry.caption = e.value("caption", "");
            entry.gallery = e.value("gallery", false);
            if (e.contains("aliases")) entry.aliases = e.at("aliases").get<std::vector<std::string>>();
            entry.graph = parse_graph(read_text_file(dir / entry.file));
            if (c.find(entry.id)) throw CorpusError("duplicate corpus id " + entry.id);
            c.entries_.push_back(std::move(entry));
        }
        std::sort(c.entries_.begin(), c.entries_.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
            const int na = a.graph.vertex_count(), nb = b.graph.vertex_count();
            return na != nb ? na < nb : a.id < b.id;
        });
        return c;
    }

    const std::vector<CorpusEntry>& entries() const { return entries_; }

    std::vector<CorpusListing> list() const {
        std::vector<CorpusListing> out;
        for (const auto& e : entries_)
            out.push_back({e.id, e.graph.vertex_count(), static_cast<int>(e.graph.red_edges().size()),
                           e.graph.meta().symmetry});
        return out;
    }

    /// Looks up by id or alias.
    const CorpusEntry* find(const std::string& id) const {
        for (const auto& e : entries_)
            if (e.id == id || std::find(e.aliases.begin(), e.aliases.end(), id) != e.aliases.end()) return &e;
        return nullptr;
    }

    Graph get_graph(const std::string& id) const {
        const auto* e = find(id);
        if (!e) throw CorpusError("unknown corpus id '" + id + "'");
        return e->graph;
    }

private:
    std::vector<CorpusEntry> entries_;
};

inline Json to_json(const CorpusListing& l) {
    return Json{{"id", l.id},
                {"vertices", l.vertices},
                {"red_edges", l.red_edges},
                {"symmetry", l.symmetry ? Json(*l.symmetry) : Json(nullptr)}};
}

}  // namespace matchstick
