#pragma once

#include <set>
#include <unordered_map>

#include "bcast/graph.hpp"

namespace bcast {

struct EmbeddingCheck {
    int faces = 0;
    bool euler_ok = false;
};

/// Independent certificate check: traverses all faces induced by the rotation
/// system and tests Euler's formula V - E + F = 2 on every connected
/// component. Throws if the rotation is not a permutation of each vertex's
/// neighborhood.
inline EmbeddingCheck verify_embedding(const Graph& g, const RotationSystem& rot) {
    int n = g.vertex_count();
    if (static_cast<int>(rot.order.size()) != n)
        throw contract_error("verify_embedding: rotation size mismatch");
    // position of u within rot.order[v]
    std::vector<std::unordered_map<int, int>> pos(n);
    for (int v = 0; v < n; ++v) {
        const auto& cyc = rot.order[v];
        if (static_cast<int>(cyc.size()) != g.degree(v))
            throw contract_error("verify_embedding: rotation at " + std::to_string(v) +
                                 " does not cover the neighborhood");
        for (size_t i = 0; i < cyc.size(); ++i) {
            int u = cyc[i];
            if (!g.has_edge(v, u) || pos[v].count(u))
                throw contract_error("verify_embedding: rotation at " + std::to_string(v) +
                                     " is not a permutation of its neighbors");
            pos[v][u] = static_cast<int>(i);
        }
    }

    // component ids
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int v = 0; v < n; ++v) {
        if (comp[v] >= 0) continue;
        std::queue<int> q;
        comp[v] = ncomp;
        q.push(v);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g.neighbors(u))
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    q.push(w);
                }
        }
        ++ncomp;
    }

    // face traversal over directed edges
    std::vector<int> faces_per_comp(ncomp, 0);
    std::map<std::pair<int, int>, bool> seen;
    for (const Edge& e : g.edges()) {
        seen[{e.u, e.v}] = false;
        seen[{e.v, e.u}] = false;
    }
    for (auto& [de, visited] : seen) {
        if (visited) continue;
        int su = de.first, sv = de.second;
        int u = su, v = sv;
        while (true) {
            seen[{u, v}] = true;
            const auto& cyc = rot.order[v];
            int w = cyc[(pos[v][u] + 1) % cyc.size()];
            u = v;
            v = w;
            if (u == su && v == sv) break;
        }
        ++faces_per_comp[comp[su]];
    }

    std::vector<int> vcnt(ncomp, 0), ecnt(ncomp, 0);
    for (int v = 0; v < n; ++v) {
        ++vcnt[comp[v]];
        if (g.degree(v) == 0) ++faces_per_comp[comp[v]];  // isolated vertex: one face
    }
    for (const Edge& e : g.edges()) ++ecnt[comp[e.u]];

    EmbeddingCheck out;
    out.euler_ok = true;
    for (int c = 0; c < ncomp; ++c) {
        out.faces += faces_per_comp[c];
        if (vcnt[c] - ecnt[c] + faces_per_comp[c] != 2) out.euler_ok = false;
    }
    return out;
}

struct PlanarityResult {
    bool planar = false;
    RotationSystem rotation;  // meaningful only when planar
};

namespace detail {

// Incremental face embedding of a biconnected graph (Demoucron-style):
// start from a cycle, repeatedly embed a path of an unembedded piece through
// a face containing all of the piece's attachments. Fails iff some piece has
// no admissible face.
class FaceEmbedder {
public:
    explicit FaceEmbedder(const Graph& g) : g_(g), n_(g.vertex_count()) {}

    bool run() {
        embedded_v_.assign(n_, false);
        auto cyc = find_cycle();
        for (int v : cyc) embedded_v_[v] = true;
        for (size_t i = 0; i < cyc.size(); ++i)
            set_embedded(cyc[i], cyc[(i + 1) % cyc.size()]);
        faces_.push_back(cyc);
        faces_.push_back(std::vector<int>(cyc.rbegin(), cyc.rend()));

        while (true) {
            auto pieces = compute_pieces();
            if (pieces.empty()) return true;
            // prefer a piece with a forced (unique) face
            int chosen = -1;
            std::vector<int> admissible;
            for (size_t p = 0; p < pieces.size(); ++p) {
                auto adm = admissible_faces(pieces[p]);
                if (adm.empty()) return false;
                if (adm.size() == 1) {
                    chosen = static_cast<int>(p);
                    admissible = adm;
                    break;
                }
                if (chosen < 0) {
                    chosen = static_cast<int>(p);
                    admissible = adm;
                }
            }
            embed_path(pieces[chosen], admissible.front());
        }
    }

    // rotation per vertex, reconstructed from the face walks
    RotationSystem rotations() const {
        std::vector<std::unordered_map<int, int>> succ(n_);
        for (const auto& f : faces_) {
            size_t L = f.size();
            for (size_t i = 0; i < L; ++i) {
                int a = f[i], b = f[(i + 1) % L], c = f[(i + 2) % L];
                succ[b][a] = c;  // after arriving at b from a, leave toward c
            }
        }
        RotationSystem rot;
        rot.order.assign(n_, {});
        for (int v = 0; v < n_; ++v) {
            if (g_.degree(v) == 0) continue;
            int start = g_.neighbors(v).front();
            int cur = start;
            do {
                rot.order[v].push_back(cur);
                cur = succ[v].at(cur);
            } while (cur != start);
        }
        return rot;
    }

private:
    struct Piece {
        std::vector<Edge> edges;
        std::vector<int> attachments;  // sorted
        std::vector<int> interior;     // non-embedded vertices
    };

    std::vector<int> find_cycle() const {
        // DFS from vertex 0 until a back edge closes a cycle
        std::vector<int> parent(n_, -2);
        std::vector<int> stack{0};
        parent[0] = -1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g_.neighbors(u)) {
                if (parent[w] == -2) {
                    parent[w] = u;
                    stack.push_back(w);
                } else if (w != parent[u] && parent[u] != -2) {
                    // close cycle u ... w through parent links
                    std::vector<int> pu;
                    for (int x = u; x != -1; x = parent[x]) pu.push_back(x);
                    std::vector<int> pw;
                    for (int x = w; x != -1; x = parent[x]) pw.push_back(x);
                    std::set<int> su(pu.begin(), pu.end());
                    int lca = -1;
                    for (int x : pw)
                        if (su.count(x)) {
                            lca = x;
                            break;
                        }
                    std::vector<int> cyc;
                    for (int x = u; x != lca; x = parent[x]) cyc.push_back(x);
                    cyc.push_back(lca);
                    std::vector<int> back;
                    for (int x = w; x != lca; x = parent[x]) back.push_back(x);
                    std::reverse(back.begin(), back.end());
                    for (int x : back) cyc.push_back(x);
                    if (cyc.size() >= 3) return cyc;
                }
            }
        }
        throw contract_error("face embedding: no cycle in biconnected component");
    }

    bool is_embedded(int u, int v) const { return emb_edges_.count(Edge(u, v)) > 0; }
    void set_embedded(int u, int v) { emb_edges_.insert(Edge(u, v)); }

    std::vector<Piece> compute_pieces() const {
        std::vector<Piece> out;
        std::vector<bool> visited(n_, false);
        // pieces grown from non-embedded vertices
        for (int v0 = 0; v0 < n_; ++v0) {
            if (embedded_v_[v0] || visited[v0]) continue;
            Piece p;
            std::set<int> att;
            std::queue<int> q;
            visited[v0] = true;
            q.push(v0);
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                p.interior.push_back(u);
                for (int w : g_.neighbors(u)) {
                    if (u < w || embedded_v_[w]) p.edges.emplace_back(u, w);
                    if (embedded_v_[w]) {
                        att.insert(w);
                    } else if (!visited[w]) {
                        visited[w] = true;
                        q.push(w);
                    }
                }
            }
            std::sort(p.edges.begin(), p.edges.end());
            p.edges.erase(std::unique(p.edges.begin(), p.edges.end()), p.edges.end());
            p.attachments.assign(att.begin(), att.end());
            out.push_back(std::move(p));
        }
        // chords between embedded vertices
        for (const Edge& e : g_.edges()) {
            if (embedded_v_[e.u] && embedded_v_[e.v] && !is_embedded(e.u, e.v)) {
                Piece p;
                p.edges.push_back(e);
                p.attachments = {e.u, e.v};
                out.push_back(std::move(p));
            }
        }
        return out;
    }

    std::vector<int> admissible_faces(const Piece& p) const {
        std::vector<int> out;
        for (size_t f = 0; f < faces_.size(); ++f) {
            std::set<int> fv(faces_[f].begin(), faces_[f].end());
            bool ok = true;
            for (int a : p.attachments)
                if (!fv.count(a)) {
                    ok = false;
                    break;
                }
            if (ok) out.push_back(static_cast<int>(f));
        }
        return out;
    }

    void embed_path(const Piece& p, int face_idx) {
        int alpha = p.attachments[0];
        std::vector<int> path;
        if (p.interior.empty()) {
            path = {p.edges[0].u, p.edges[0].v};
        } else {
            // BFS from alpha through piece interior to another attachment
            std::set<int> interior(p.interior.begin(), p.interior.end());
            std::set<int> targets(p.attachments.begin() + 1, p.attachments.end());
            std::map<int, int> parent;
            std::queue<int> q;
            // seed with alpha's piece neighbors
            std::set<Edge> pedges(p.edges.begin(), p.edges.end());
            for (int w : g_.neighbors(alpha)) {
                if (pedges.count(Edge(alpha, w)) && interior.count(w) && !parent.count(w)) {
                    parent[w] = alpha;
                    q.push(w);
                }
            }
            int reached = -1;
            while (!q.empty() && reached < 0) {
                int u = q.front();
                q.pop();
                for (int w : g_.neighbors(u)) {
                    if (!pedges.count(Edge(u, w))) continue;
                    if (targets.count(w)) {
                        parent[w] = u;
                        reached = w;
                        break;
                    }
                    if (interior.count(w) && !parent.count(w)) {
                        parent[w] = u;
                        q.push(w);
                    }
                }
            }
            if (reached < 0) throw contract_error("face embedding: disconnected piece");
            for (int x = reached; x != alpha; x = parent[x]) path.push_back(x);
            path.push_back(alpha);
            std::reverse(path.begin(), path.end());
        }

        int beta = path.back();
        const std::vector<int> face = faces_[face_idx];
        size_t i = std::find(face.begin(), face.end(), alpha) - face.begin();
        size_t j = std::find(face.begin(), face.end(), beta) - face.begin();
        size_t L = face.size();

        // face A: path forward, then face forward from beta around to alpha
        std::vector<int> fa(path.begin(), path.end() - 1);
        for (size_t t = j; t != i; t = (t + 1) % L) fa.push_back(face[t]);
        // face B: path backward, then face forward from alpha around to beta
        std::vector<int> fb(path.rbegin(), path.rend() - 1);
        for (size_t t = i; t != j; t = (t + 1) % L) fb.push_back(face[t]);

        faces_[face_idx] = std::move(fa);
        faces_.push_back(std::move(fb));

        for (size_t t = 0; t + 1 < path.size(); ++t) set_embedded(path[t], path[t + 1]);
        for (int x : path) embedded_v_[x] = true;
    }

    const Graph& g_;
    int n_;
    std::vector<bool> embedded_v_;
    std::set<Edge> emb_edges_;
    std::vector<std::vector<int>> faces_;
};

// Biconnected components as edge sets (Tarjan edge stack).
inline std::vector<std::vector<Edge>> biconnected_components(const Graph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<Edge>> out;
    std::vector<int> depth(n, -1), low(n, 0), parent(n, -1);
    std::vector<Edge> estack;

    for (int root = 0; root < n; ++root) {
        if (depth[root] >= 0) continue;
        std::vector<std::pair<int, size_t>> stack;
        depth[root] = 0;
        low[root] = 0;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            const auto& nb = g.neighbors(u);
            if (idx < nb.size()) {
                int w = nb[idx++];
                if (depth[w] < 0) {
                    estack.emplace_back(u, w);
                    depth[w] = depth[u] + 1;
                    low[w] = depth[w];
                    parent[w] = u;
                    stack.emplace_back(w, 0);
                } else if (w != parent[u] && depth[w] < depth[u]) {
                    estack.emplace_back(u, w);
                    low[u] = std::min(low[u], depth[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().first;
                    low[p] = std::min(low[p], low[u]);
                    if (low[u] >= depth[p]) {
                        // pop one biconnected component
                        std::vector<Edge> comp;
                        Edge top(p, u);
                        while (!estack.empty()) {
                            Edge e = estack.back();
                            estack.pop_back();
                            comp.push_back(e);
                            if (e == top) break;
                        }
                        if (!comp.empty()) out.push_back(std::move(comp));
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace detail

/// Planarity test producing a rotation system on success. The emitted
/// embedding is meant to be re-checked with verify_embedding; the certificate,
/// not the algorithm, is the binding contract. Capped at 1000 vertices.
inline PlanarityResult planarity_check(const Graph& g) {
    int n = g.vertex_count();
    if (n > 1000) throw capability_error("planarity_check: capped at 1000 vertices");
    PlanarityResult res;
    if (n >= 3 && g.edge_count() > 3 * n - 6) {
        res.planar = false;
        return res;
    }
    RotationSystem rot;
    rot.order.assign(n, {});

    auto comps = detail::biconnected_components(g);
    for (const auto& comp : comps) {
        if (comp.size() == 1) {
            rot.order[comp[0].u].push_back(comp[0].v);
            rot.order[comp[0].v].push_back(comp[0].u);
            continue;
        }
        // local relabeling
        std::set<int> vs;
        for (const Edge& e : comp) {
            vs.insert(e.u);
            vs.insert(e.v);
        }
        std::vector<int> to_global(vs.begin(), vs.end());
        std::map<int, int> to_local;
        for (size_t i = 0; i < to_global.size(); ++i) to_local[to_global[i]] = static_cast<int>(i);
        std::vector<Edge> ledges;
        for (const Edge& e : comp) ledges.emplace_back(to_local[e.u], to_local[e.v]);
        Graph lg(static_cast<int>(to_global.size()), std::move(ledges));

        detail::FaceEmbedder emb(lg);
        if (!emb.run()) {
            res.planar = false;
            return res;
        }
        RotationSystem lrot = emb.rotations();
        for (size_t lv = 0; lv < to_global.size(); ++lv)
            for (int lw : lrot.order[lv])
                rot.order[to_global[lv]].push_back(to_global[lw]);
    }

    res.planar = true;
    res.rotation = std::move(rot);
    return res;
}

}  // namespace bcast
