#include "surfemb/hex_pipeline.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace surfemb::hexp {

namespace {

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

// Hexagons are the elements of Q = Z2 x D_{g-1}; element (b, f, k) encodes
// x^b s^f r^k with x central. Crossing side j multiplies on the right by the
// side generator; all six generators are involutions, so the side pairings
// are mirror identifications (side j onto side j, parameter preserved) and
// the complex is a quotient of the right-angled hexagon reflection tiling.
struct GroupQ {
    int n;  // order of the rotation subgroup, n = g-1

    int size() const { return 4 * n; }
    int id(int b, int f, int k) const { return (b * 2 + f) * n + ((k % n) + n) % n; }
    std::array<int, 3> dec(int q) const {
        int k = q % n;
        int f = (q / n) % 2;
        int b = q / (2 * n);
        return {b, f, k};
    }
    // right multiplication by x, s, or s r^j (j = 0 or 1)
    int mul_x(int q) const {
        auto [b, f, k] = dec(q);
        return id(1 - b, f, k);
    }
    int mul_sr(int q, int j) const {
        auto [b, f, k] = dec(q);
        return id(b, 1 - f, j - k);  // s^f r^k * s r^j = s^{f+1} r^{j-k}
    }
    int side_neighbor(int q, int side) const {
        if (side % 2 == 0) return mul_x(q);
        return mul_sr(q, side == 3 ? 1 : 0);  // sides 1 and 5 carry s, side 3 carries s r
    }
};

}  // namespace

std::pair<int, int> HexComplex::partner(int hex, int side) const {
    const Pairing& p = pairings[pairing_of[hex][side]];
    if (p.hex_a == hex && p.side_a == side) return {p.hex_b, p.side_b};
    return {p.hex_a, p.side_a};
}

HexComplex canonical_hex_decomposition(int genus) {
    if (genus < 2) throw std::invalid_argument("genus must be >= 2");
    HexComplex c;
    c.genus = genus;
    GroupQ Q{genus - 1};
    int hexes = Q.size();
    c.pairing_of.assign(hexes, {-1, -1, -1, -1, -1, -1});

    for (int q = 0; q < hexes; ++q) {
        for (int s = 0; s < 6; ++s) {
            if (c.pairing_of[q][s] >= 0) continue;
            int p = Q.side_neighbor(q, s);
            int pid = static_cast<int>(c.pairings.size());
            c.pairings.push_back({q, s, p, s});
            c.pairing_of[q][s] = pid;
            c.pairing_of[p][s] = pid;
        }
    }

    // Vertex classes: the pairing identifies corners start-to-start.
    std::vector<int> parent(6 * hexes);
    std::iota(parent.begin(), parent.end(), 0);
    auto corner_id = [&](int h, int k) { return 6 * h + (k % 6); };
    for (const auto& pr : c.pairings) {
        int a0 = corner_id(pr.hex_a, pr.side_a), a1 = corner_id(pr.hex_a, pr.side_a + 1);
        int b0 = corner_id(pr.hex_b, pr.side_b), b1 = corner_id(pr.hex_b, pr.side_b + 1);
        parent[find_root(parent, a0)] = find_root(parent, b0);
        parent[find_root(parent, a1)] = find_root(parent, b1);
    }
    std::map<int, int> compact;
    c.corner_class.assign(hexes, {});
    for (int h = 0; h < hexes; ++h) {
        for (int k = 0; k < 6; ++k) {
            int root = find_root(parent, corner_id(h, k));
            auto it = compact.find(root);
            if (it == compact.end())
                it = compact.insert({root, static_cast<int>(compact.size())}).first;
            c.corner_class[h][k] = it->second;
        }
    }
    c.vertex_count = static_cast<int>(compact.size());

    // sigma2: right multiplication by the central generator x swaps every
    // hexagon with its side-0 neighbor. sigma1: left multiplication by s.
    c.sigma1.resize(hexes);
    c.sigma2.resize(hexes);
    for (int q = 0; q < hexes; ++q) {
        c.sigma2[q] = Q.mul_x(q);
        auto [b, f, k] = Q.dec(q);
        c.sigma1[q] = Q.id(b, 1 - f, k);  // s * s^f r^k = s^{1+f} r^k
    }

    validate_complex(c);
    return c;
}

void validate_complex(const HexComplex& c) {
    int hexes = c.num_hexagons();
    if (static_cast<int>(c.pairings.size()) != 12 * c.genus - 12)
        throw std::logic_error("hex complex: wrong edge count");
    if (c.vertex_count != 6 * c.genus - 6)
        throw std::logic_error("hex complex: wrong vertex count");
    if (c.euler_characteristic() != 2 - 2 * c.genus)
        throw std::logic_error("hex complex: wrong euler characteristic");
    for (int h = 0; h < hexes; ++h)
        for (int s = 0; s < 6; ++s) {
            int pid = c.pairing_of[h][s];
            if (pid < 0) throw std::logic_error("hex complex: unpaired side");
            const auto& p = c.pairings[pid];
            bool hit = (p.hex_a == h && p.side_a == s) || (p.hex_b == h && p.side_b == s);
            if (!hit) throw std::logic_error("hex complex: pairing table inconsistent");
        }
    // vertex classes have exactly four corners (degree-4 vertices)
    std::map<int, int> size;
    for (int h = 0; h < hexes; ++h)
        for (int k = 0; k < 6; ++k) ++size[c.corner_class[h][k]];
    for (auto& [cls, n] : size)
        if (n != 4) throw std::logic_error("hex complex: vertex degree != 4");
    // orientability: generator parity gives a bipartition opposing every pairing
    {
        std::vector<int> color(hexes, -1);
        std::vector<int> stack{0};
        color[0] = 0;
        while (!stack.empty()) {
            int h = stack.back();
            stack.pop_back();
            for (int s = 0; s < 6; ++s) {
                auto [p, ps] = c.partner(h, s);
                (void)ps;
                if (color[p] < 0) {
                    color[p] = 1 - color[h];
                    stack.push_back(p);
                } else if (color[p] == color[h]) {
                    throw std::logic_error("hex complex: non-orientable pairing pattern");
                }
            }
        }
    }
    // involutive automorphisms compatible with the pairings (sides fixed)
    for (const auto& sigma : {c.sigma1, c.sigma2}) {
        for (int h = 0; h < hexes; ++h)
            if (sigma[sigma[h]] != h) throw std::logic_error("hex complex: not an involution");
        for (const auto& p : c.pairings) {
            int ha = sigma[p.hex_a], hb = sigma[p.hex_b];
            int pid = c.pairing_of[ha][p.side_a];
            const auto& q = c.pairings[pid];
            bool match = (q.hex_a == ha && q.side_a == p.side_a && q.hex_b == hb &&
                          q.side_b == p.side_b) ||
                         (q.hex_a == hb && q.side_a == p.side_b && q.hex_b == ha &&
                          q.side_b == p.side_a);
            if (!match) throw std::logic_error("hex complex: involution breaks pairings");
        }
    }
}

}  // namespace surfemb::hexp
