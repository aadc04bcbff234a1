#include "surfemb/maps.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace surfemb::maps {

std::vector<int> DiskMap::boundary_vertices() const {
    std::vector<int> out;
    out.reserve(outer.size());
    for (int d : outer) out.push_back(map.origin[d]);
    return out;
}

std::vector<int> dividing_edges(const DiskMap& d) {
    auto bverts = d.boundary_vertices();
    int k = static_cast<int>(bverts.size());
    std::map<int, int> pos;
    for (int i = 0; i < k; ++i) {
        if (pos.count(bverts[i]))
            throw std::invalid_argument("dividing_edges: boundary walk repeats a vertex");
        pos[bverts[i]] = i;
    }
    std::set<int> boundary_edge_ids;
    for (int dart : d.outer) boundary_edge_ids.insert(d.map.edge_of(dart));
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(d.map.edge_sign.size()); ++e) {
        if (!d.map.edge_alive(e) || boundary_edge_ids.count(e)) continue;
        auto iu = pos.find(d.map.origin[2 * e]);
        auto iv = pos.find(d.map.origin[2 * e + 1]);
        if (iu == pos.end() || iv == pos.end()) continue;
        int gap = std::abs(iu->second - iv->second);
        gap = std::min(gap, k - gap);
        if (gap != 1) out.push_back(e);
    }
    return out;
}

bool is_disk_triangulation(const DiskMap& d) {
    if (!d.map.is_simple()) return false;
    std::set<int> outer_darts(d.outer.begin(), d.outer.end());
    for (const auto& f : faces(d.map)) {
        if (outer_darts.count(f[0])) continue;
        if (f.size() != 3) return false;
    }
    return true;
}

namespace {

// Inserts dart `nd` into the rotation of its origin immediately after `anchor`.
void insert_after(CombinatorialMap& m, int anchor, int nd) {
    auto& r = m.rotation[m.origin[anchor]];
    auto it = std::find(r.begin(), r.end(), anchor);
    if (it == r.end()) throw std::logic_error("anchor dart missing");
    r.insert(it + 1, nd);
}

}  // namespace

int stellate_face(CombinatorialMap& m, const std::vector<int>& walk) {
    int c = m.add_vertex();
    std::vector<int> center_rot;
    for (int d : walk) {
        int corner_vertex = m.head(d);
        int dart_vc = m.add_edge_darts(corner_vertex, c);
        insert_after(m, m.twin(d), dart_vc);
        center_rot.push_back(m.twin(dart_vc));
    }
    std::reverse(center_rot.begin(), center_rot.end());
    m.rotation[c] = center_rot;
    return c;
}

DiskMap triangulate_disk(const DiskMap& input) {
    if (!dividing_edges(input).empty())
        throw std::invalid_argument("triangulate_disk: input has dividing edges");
    DiskMap out = input;
    CombinatorialMap& m = out.map;

    // Identify the outer face among traced faces by its dart set.
    auto all_faces = faces(m);
    std::set<int> outer_darts(out.outer.begin(), out.outer.end());
    std::vector<std::vector<int>> interior;
    bool outer_found = false;
    for (auto& f : all_faces) {
        if (outer_darts.count(f[0])) {
            // Confirm full match.
            std::set<int> fs(f.begin(), f.end());
            if (fs != outer_darts)
                throw std::invalid_argument("outer walk is not a face of the map");
            outer_found = true;
        } else {
            interior.push_back(f);
        }
    }
    if (!outer_found) throw std::invalid_argument("outer walk is not a face of the map");

    // Stellate every interior face: new center joined to each corner.
    std::vector<int> centers;
    for (const auto& walk : interior) centers.push_back(stellate_face(m, walk));
    m.check_valid();

    // A face visiting a vertex twice produced parallel center edges; subdivide
    // the extra copies and re-triangulate the two incident quads.
    for (int c : centers) {
        while (true) {
            std::map<int, int> first_dart;
            int dup = -1;
            for (int d : m.rotation[c]) {
                int h = m.head(d);
                if (first_dart.count(h)) {
                    dup = d;
                    break;
                }
                first_dart[h] = d;
            }
            if (dup < 0) break;
            int w = m.head(dup);
            // Subdivide c-w (the `dup` copy): c - mid - w.
            int mid = m.add_vertex();
            int d_cm = m.add_edge_darts(c, mid);
            int d_mw = m.add_edge_darts(mid, w);
            auto& rc = m.rotation[c];
            *std::find(rc.begin(), rc.end(), dup) = d_cm;
            auto& rw = m.rotation[w];
            *std::find(rw.begin(), rw.end(), m.twin(dup)) = m.twin(d_mw);
            m.origin[dup] = -1;
            m.origin[m.twin(dup)] = -1;
            m.edge_sign[m.edge_of(dup)] = 0;
            m.rotation[mid] = {m.twin(d_cm), d_mw};
            // The two incident faces are now quads (c, mid, w, x); add chords mid-x.
            for (int rounds = 0; rounds < 2; ++rounds) {
                // Trace the face starting from c->mid or mid->w to find the quad.
                int start = rounds == 0 ? d_cm : m.twin(d_cm);
                std::vector<int> walk;
                int d = start;
                do {
                    walk.push_back(d);
                    d = m.rot_next(m.twin(d));
                } while (d != start && walk.size() < 64);
                if (walk.size() == 3) continue;  // already a triangle
                if (walk.size() != 4) throw std::logic_error("unexpected face degree after subdivision");
                // walk visits 4 vertices; find mid's position and the opposite vertex.
                int mid_pos = -1;
                for (int i = 0; i < 4; ++i)
                    if (m.origin[walk[i]] == mid) mid_pos = i;
                if (mid_pos < 0) throw std::logic_error("mid not on its face");
                int opp_dart = walk[(mid_pos + 2) % 4];  // dart leaving the opposite vertex
                int x = m.origin[opp_dart];
                int d_mx = m.add_edge_darts(mid, x);
                // Insert at mid: wedge between twin(walk[mid_pos-1]) and walk[mid_pos].
                insert_after(m, m.twin(walk[(mid_pos + 3) % 4]), d_mx);
                insert_after(m, m.twin(walk[(mid_pos + 1) % 4]), m.twin(d_mx));
            }
        }
    }
    m.check_valid();
    return out;
}

}  // namespace surfemb::maps
