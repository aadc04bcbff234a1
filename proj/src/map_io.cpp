#include "surfemb/maps.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace surfemb::maps {

std::string map_to_text(const CombinatorialMap& m) {
    std::ostringstream os;
    os << "surfemb-map v1\n";
    os << "vertices " << m.num_vertices() << "\n";
    for (int v : m.alive_vertices()) {
        os << m.vertex_name[v] << " :";
        for (int d : m.rotation[v]) {
            os << " ";
            if (m.edge_sign[m.edge_of(d)] < 0) os << "~";
            os << m.vertex_name[m.head(d)];
        }
        os << "\n";
    }
    return os.str();
}

CombinatorialMap map_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "surfemb-map v1")
        throw std::invalid_argument("map file: bad header");
    int declared = -1;
    std::vector<std::string> names;
    std::map<std::string, int> index;
    std::vector<std::vector<std::pair<std::string, bool>>> raw;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first == "vertices") {
            ls >> declared;
            continue;
        }
        std::string colon;
        ls >> colon;
        if (colon != ":") throw std::invalid_argument("map file: expected ':' after vertex name");
        if (index.count(first)) throw std::invalid_argument("map file: duplicate vertex " + first);
        index[first] = static_cast<int>(names.size());
        names.push_back(first);
        raw.emplace_back();
        std::string tok;
        while (ls >> tok) {
            bool neg = !tok.empty() && tok[0] == '~';
            raw.back().push_back({neg ? tok.substr(1) : tok, neg});
        }
    }
    if (declared >= 0 && declared != static_cast<int>(names.size()))
        throw std::invalid_argument("map file: vertex count mismatch");
    std::vector<std::vector<int>> lists(names.size());
    std::vector<std::pair<int, int>> negatives;
    for (size_t v = 0; v < raw.size(); ++v) {
        for (auto& [name, neg] : raw[v]) {
            auto it = index.find(name);
            if (it == index.end())
                throw std::invalid_argument("map file: unknown neighbor " + name);
            lists[v].push_back(it->second);
            if (neg && static_cast<int>(v) < it->second)
                negatives.push_back({static_cast<int>(v), it->second});
        }
    }
    // Sign annotations must agree on both endpoints.
    for (size_t v = 0; v < raw.size(); ++v) {
        for (auto& [name, neg] : raw[v]) {
            int u = index.at(name);
            bool found = false;
            for (auto& [back, bneg] : raw[u]) {
                if (index.at(back) == static_cast<int>(v)) {
                    if (bneg != neg)
                        throw std::invalid_argument("map file: asymmetric edge sign " + name);
                    found = true;
                }
            }
            if (!found) throw std::invalid_argument("map file: one-sided edge to " + name);
        }
    }
    return map_from_rotations(lists, negatives, names);
}

}  // namespace surfemb::maps
