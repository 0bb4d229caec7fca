#include "treembed/projcomplex.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

#include "treembed/parallel.hpp"

namespace treembed::proj {

// ---------------------------------------------------------------------------
// Graphs

SpaceGraph::SpaceGraph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) : adj_(n) {
    if (n == 0) throw std::invalid_argument("space graph needs at least one vertex");
    std::set<std::pair<Vertex, Vertex>> seen;
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw std::invalid_argument("space edge out of range");
        if (a == b) continue;
        if (!seen.emplace(std::min(a, b), std::max(a, b)).second) continue;
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    edges_ = seen.size();
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    dist_.assign(n * n, kUnreachable);
    for (Vertex s = 0; s < n; ++s) {
        std::uint32_t* row = &dist_[s * n];
        row[s] = 0;
        std::deque<Vertex> q{s};
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop_front();
            for (Vertex v : adj_[u])
                if (row[v] == kUnreachable) {
                    row[v] = row[u] + 1;
                    q.push_back(v);
                }
        }
        for (std::size_t v = 0; v < n; ++v)
            if (row[v] == kUnreachable) throw std::invalid_argument("space graph is disconnected");
    }
}

void WeightedGraph::add_edge(Vertex a, Vertex b, std::uint32_t w) {
    adj[a].emplace_back(b, w);
    adj[b].emplace_back(a, w);
    ++edges;
}

std::vector<std::uint64_t> WeightedGraph::distances_from(Vertex source) const {
    std::vector<std::uint64_t> dist(adj.size(), UINT64_MAX);
    using Item = std::pair<std::uint64_t, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0;
    pq.emplace(0, source);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (auto [v, w] : adj[u])
            if (d + w < dist[v]) {
                dist[v] = d + w;
                pq.emplace(dist[v], v);
            }
    }
    return dist;
}

namespace {

std::vector<std::size_t> bfs(const std::vector<std::vector<std::size_t>>& g, std::size_t s) {
    std::vector<std::size_t> d(g.size(), SIZE_MAX);
    d[s] = 0;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop_front();
        for (std::size_t v : g[u])
            if (d[v] == SIZE_MAX) {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
    }
    return d;
}

bool contains(const std::vector<std::size_t>& sorted, std::size_t x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

// ---------------------------------------------------------------------------
// Projection systems

void ProjectionSystem::validate() const {
    std::size_t n = size();
    if (names.size() != n || proj.size() != n) throw std::invalid_argument("projection system sizes disagree");
    for (std::size_t Y = 0; Y < n; ++Y) {
        if (proj[Y].size() != n) throw std::invalid_argument("projection table has the wrong shape");
        for (std::size_t X = 0; X < n; ++X) {
            const auto& p = proj[Y][X];
            if (X == Y) {
                if (!p.empty()) throw std::invalid_argument("pi_Y(Y) must be left empty");
                continue;
            }
            if (p.empty()) throw std::invalid_argument("empty projection " + names[X] + " -> " + names[Y]);
            if (!std::is_sorted(p.begin(), p.end()) || std::adjacent_find(p.begin(), p.end()) != p.end())
                throw std::invalid_argument("projection sets must be sorted and duplicate-free");
            if (p.back() >= spaces[Y].size()) throw std::invalid_argument("projection vertex out of range");
        }
    }
}

std::size_t ProjectionSystem::diam(std::size_t Y, const std::vector<Vertex>& a, const std::vector<Vertex>& b) const {
    const SpaceGraph& g = spaces[Y];
    std::size_t best = 0;
    auto scan = [&](const std::vector<Vertex>& u, const std::vector<Vertex>& v) {
        for (Vertex x : u)
            for (Vertex y : v) best = std::max<std::size_t>(best, g.distance(x, y));
    };
    scan(a, a);
    scan(a, b);
    scan(b, b);
    return best;
}

std::size_t ProjectionSystem::d(std::size_t Y, std::size_t X, std::size_t Z) const {
    const auto& a = proj[Y][X];
    const auto& b = proj[Y][Z];
    if (a.size() == 1 && b.size() == 1) return spaces[Y].distance(a[0], b[0]);
    return diam(Y, a, b);
}

std::size_t point_d(const ProjectionSystem& sys, std::size_t Y, Point x, Point z) {
    auto pi = [&](Point p) { return p.index == Y ? std::vector<Vertex>{p.vertex} : sys.proj[Y][p.index]; };
    return sys.diam(Y, pi(x), pi(z));
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

nlohmann::json Report::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name}, {"passed", c.passed}, {"checked", c.checked},
                       {"counterexample", c.counterexample}});
    return {{"passed", passed()}, {"checks", arr}};
}

AxiomReport verify_axioms(const ProjectionSystem& sys) {
    sys.validate();
    std::size_t n = sys.size();
    AxiomReport out;
    out.declared_theta = sys.theta;
    std::size_t theta = sys.theta;

    CheckResult p3{"P3"}, p4{"P4"}, p5{"P5"}, p4p{"P4'"};
    std::size_t need = 0;
    for (std::size_t Y = 0; Y < n; ++Y)
        for (std::size_t X = 0; X < n; ++X) {
            if (X == Y) continue;
            ++p3.checked;
            std::size_t dm = sys.diam(Y, sys.proj[Y][X], {});
            need = std::max(need, dm);
            if (dm > theta) p3.fail({{"Y", sys.names[Y]}, {"X", sys.names[X]}, {"diam", dm}});
        }

    // Per triple, the least theta that satisfies it: the premise d_Y(X, Z) > theta
    // must fail, or both conclusions must hold.
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Y = 0; Y < n; ++Y) {
            if (Y == X) continue;
            for (std::size_t Z = 0; Z < n; ++Z) {
                if (Z == X || Z == Y) continue;
                std::size_t dY = sys.d(Y, X, Z);
                std::size_t dX = sys.d(X, Y, Z);
                bool same = sys.proj[X][Y] == sys.proj[X][Z];
                need = std::max(need, same ? std::min(dY, dX) : dY);
                ++p4.checked;
                ++p4p.checked;
                if (dY <= theta) continue;
                auto witness = [&] {
                    return nlohmann::json{{"X", sys.names[X]}, {"Y", sys.names[Y]}, {"Z", sys.names[Z]},
                                          {"d_Y(X,Z)", dY}, {"d_X(Y,Z)", dX}};
                };
                if (dX > theta) p4.fail(witness());
                if (!same) p4p.fail(witness());
            }
        }
    // Finitely many indices: (P5) cannot fail.
    p5.checked = n;
    out.min_theta = need;
    out.report.checks = {p3, p4, p5, p4p};
    return out;
}

std::vector<std::size_t> between_set(const ProjectionSystem& sys, std::size_t K, std::size_t X, std::size_t Z) {
    std::vector<std::size_t> out;
    if (X == Z) return out;
    for (std::size_t Y = 0; Y < sys.size(); ++Y)
        if (Y != X && Y != Z && sys.d(Y, X, Z) > K) out.push_back(Y);
    return out;
}

bool precedes(const ProjectionSystem& sys, std::size_t X, std::size_t Y, std::size_t Y2) {
    return sys.d(Y, X, Y2) > sys.theta;
}

namespace {

StandardPath order_path(const ProjectionSystem& sys, std::size_t X, std::size_t Z,
                        const std::vector<std::size_t>& interior) {
    StandardPath p{X, Z, {X}};
    if (X == Z) return p;
    std::size_t k = interior.size();
    std::vector<std::size_t> rank(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && precedes(sys, X, interior[j], interior[i])) ++rank[i];
    std::vector<std::size_t> slot(k, SIZE_MAX);
    for (std::size_t i = 0; i < k; ++i) {
        if (rank[i] >= k || slot[rank[i]] != SIZE_MAX)
            throw std::runtime_error("order on Y_K(" + sys.names[X] + ", " + sys.names[Z] + ") is not total");
        slot[rank[i]] = interior[i];
    }
    p.vertices.insert(p.vertices.end(), slot.begin(), slot.end());
    p.vertices.push_back(Z);
    return p;
}

}  // namespace

StandardPath standard_path(const ProjectionSystem& sys, std::size_t K, std::size_t X, std::size_t Z) {
    if (K < 2 * sys.theta) throw std::invalid_argument("standard paths need K >= 2 theta");
    if (X >= sys.size() || Z >= sys.size()) throw std::out_of_range("index out of range");
    return order_path(sys, X, Z, between_set(sys, K, X, Z));
}

// ---------------------------------------------------------------------------
// Complexes

Point ComplexBundle::point_of(Vertex global) const {
    auto it = std::upper_bound(offset.begin(), offset.end(), global);
    std::size_t Y = static_cast<std::size_t>(it - offset.begin()) - 1;
    return {Y, global - offset[Y]};
}

bool ComplexBundle::in_path(std::size_t X, std::size_t Z, std::size_t W) const {
    return W == X || W == Z || contains(between[X][Z], W);
}

ComplexBundle build_complexes(const ProjectionSystem& sys, std::size_t K, std::size_t basepoint,
                              std::uint64_t seed) {
    sys.validate();
    std::size_t n = sys.size();
    if (K == 0 || K < 4 * sys.theta) throw std::invalid_argument("complexes need K >= max(1, 4 theta)");
    if (basepoint >= n) throw std::invalid_argument("basepoint out of range");

    ComplexBundle b;
    b.K = K;
    b.basepoint = basepoint;
    b.seed = seed;
    b.between.assign(n, std::vector<std::vector<std::size_t>>(n));
    parallel_for(n, [&](std::size_t X) {
        for (std::size_t Z = 0; Z < n; ++Z) b.between[X][Z] = between_set(sys, K, X, Z);
    });

    b.P.assign(n, {});
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Z = 0; Z < n; ++Z)
            if (X != Z && b.between[X][Z].empty()) b.P[X].push_back(Z);

    std::set<std::pair<std::size_t, std::size_t>> tree_edges;
    for (std::size_t X = 0; X < n; ++X) {
        StandardPath p = order_path(sys, basepoint, X, b.between[basepoint][X]);
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
            std::size_t u = p.vertices[i], v = p.vertices[i + 1];
            tree_edges.emplace(std::min(u, v), std::max(u, v));
        }
    }
    b.T.assign(n, {});
    for (auto [u, v] : tree_edges) {
        b.T[u].push_back(v);
        b.T[v].push_back(u);
    }
    for (auto& nb : b.T) std::sort(nb.begin(), nb.end());

    // p(X, Y): least vertex of pi_X(Y) under a seeded numbering of C(X).
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> rank(n);
    for (std::size_t Y = 0; Y < n; ++Y) {
        auto& r = rank[Y];
        r.resize(sys.spaces[Y].size());
        std::iota(r.begin(), r.end(), std::size_t{0});
        for (std::size_t i = r.size(); i > 1; --i) std::swap(r[i - 1], r[rng() % i]);
    }
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Y : b.P[X]) {
            const auto& pi = sys.proj[X][Y];
            b.rep[{X, Y}] = *std::min_element(pi.begin(), pi.end(),
                                              [&](Vertex u, Vertex v) { return rank[X][u] < rank[X][v]; });
        }

    b.offset.resize(n);
    Vertex total = 0;
    for (std::size_t Y = 0; Y < n; ++Y) {
        b.offset[Y] = total;
        total += static_cast<Vertex>(sys.spaces[Y].size());
    }
    b.CK.adj.assign(total, {});
    b.CKT.adj.assign(total, {});
    for (std::size_t Y = 0; Y < n; ++Y) {
        const auto& adj = sys.spaces[Y].adjacency();
        for (Vertex u = 0; u < adj.size(); ++u)
            for (Vertex v : adj[u])
                if (u < v) {
                    b.CK.add_edge(b.offset[Y] + u, b.offset[Y] + v, 1);
                    b.CKT.add_edge(b.offset[Y] + u, b.offset[Y] + v, 1);
                    ++b.intra_edges;
                }
    }
    auto w = static_cast<std::uint32_t>(K);
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Y : b.P[X]) {
            if (Y < X) continue;
            for (Vertex u : sys.proj[X][Y])
                for (Vertex v : sys.proj[Y][X]) b.CK.add_edge(b.offset[X] + u, b.offset[Y] + v, w);
        }
    for (auto [u, v] : tree_edges) b.CKT.add_edge(b.offset[u] + b.rep.at({u, v}), b.offset[v] + b.rep.at({v, u}), w);
    return b;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct Context {
    const ProjectionSystem& sys;
    const ComplexBundle& b;
    std::vector<std::vector<StandardPath>> paths;  // [X][Z]

    nlohmann::json names(std::initializer_list<std::size_t> ids) const {
        nlohmann::json j = nlohmann::json::array();
        for (auto i : ids) j.push_back(sys.names[i]);
        return j;
    }
    nlohmann::json path_json(const StandardPath& p) const {
        nlohmann::json j = nlohmann::json::array();
        for (auto v : p.vertices) j.push_back(sys.names[v]);
        return j;
    }
    std::string point_name(Vertex g) const {
        Point p = b.point_of(g);
        return sys.names[p.index] + ":" + std::to_string(p.vertex);
    }
};

void check_quasigeodesic(Context& c, CheckResult& r, const std::vector<std::vector<std::size_t>>& dP) {
    std::size_t n = c.sys.size();
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Z = X + 1; Z < n; ++Z) {
            ++r.checked;
            std::size_t L = c.paths[X][Z].L();
            std::size_t d = dP[X][Z];
            // (L - 1) / 2 <= d <= L - 1
            if (d == SIZE_MAX || L - 1 > 2 * d || d > L - 1)
                r.fail({{"X", c.sys.names[X]}, {"Z", c.sys.names[Z]}, {"L", L}, {"d_P", d}});
        }
}

void check_tree(Context& c, CheckResult& r) {
    std::size_t n = c.sys.size();
    std::size_t edges = 0;
    for (const auto& nb : c.b.T) edges += nb.size();
    edges /= 2;
    auto d = bfs(c.b.T, c.b.basepoint);
    std::size_t reached = static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](std::size_t x) {
        return x != SIZE_MAX;
    }));
    r.checked = 1;
    if (edges + 1 != n || reached != n) r.fail({{"vertices", n}, {"edges", edges}, {"reached", reached}});
}

void check_tree_qi(Context& c, CheckResult& r, const std::vector<std::vector<std::size_t>>& dP,
                   const std::vector<std::vector<std::size_t>>& dT) {
    std::size_t n = c.sys.size();
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Z = X + 1; Z < n; ++Z) {
            ++r.checked;
            std::size_t p = dP[X][Z], t = dT[X][Z];
            // d_T >= d_P and 2 d_P + 5 >= d_T
            if (t == SIZE_MAX || t < p || 2 * p + 5 < t)
                r.fail({{"X", c.sys.names[X]}, {"Z", c.sys.names[Z]}, {"d_P", p}, {"d_T", t}});
        }
}

void check_distances(Context& c, CheckResult* formula, CheckResult* tree_spaces) {
    const ProjectionSystem& sys = c.sys;
    std::size_t n = sys.size();
    std::size_t K = c.b.K;
    std::size_t V = c.b.vertex_count();

    // S[X][Z]: the sum over Y other than X, Z; the two endpoint terms depend on the points.
    std::vector<std::vector<std::size_t>> S(n, std::vector<std::size_t>(n, 0));
    parallel_for(n, [&](std::size_t X) {
        for (std::size_t Z = 0; Z < n; ++Z)
            for (std::size_t Y = 0; Y < n; ++Y) {
                if (Y == X || Y == Z) continue;
                std::size_t d = sys.d(Y, X, Z);
                if (d > K) S[X][Z] += d;
            }
    });

    struct Row {
        std::size_t checked = 0;
        std::optional<nlohmann::json> formula_bad, tree_bad;
    };
    std::vector<Row> rows(V);
    parallel_for(V, [&](std::size_t s) {
        auto dk = c.b.CK.distances_from(static_cast<Vertex>(s));
        std::vector<std::uint64_t> dt;
        if (tree_spaces) dt = c.b.CKT.distances_from(static_cast<Vertex>(s));
        Point x = c.b.point_of(static_cast<Vertex>(s));
        Row& row = rows[s];
        for (std::size_t t = s + 1; t < V; ++t) {
            ++row.checked;
            Point z = c.b.point_of(static_cast<Vertex>(t));
            std::uint64_t d = dk[t];
            if (formula && !row.formula_bad) {
                std::uint64_t sigma = 0;
                if (x.index == z.index) {
                    std::size_t own = point_d(sys, x.index, x, z);
                    if (own > K) sigma += own;
                    sigma += S[x.index][x.index];
                } else {
                    std::size_t dx = point_d(sys, x.index, x, z), dz = point_d(sys, z.index, x, z);
                    if (dx > K) sigma += dx;
                    if (dz > K) sigma += dz;
                    sigma += S[x.index][z.index];
                }
                if (d == UINT64_MAX || sigma > 4 * d || d > 2 * sigma + 3 * K)
                    row.formula_bad = nlohmann::json{{"x", c.point_name(static_cast<Vertex>(s))},
                                                     {"z", c.point_name(static_cast<Vertex>(t))},
                                                     {"d_CK", d},
                                                     {"sum", sigma}};
            }
            if (tree_spaces && !row.tree_bad) {
                std::uint64_t e = dt[t];
                if (d == UINT64_MAX || e == UINT64_MAX || e < d || e > 8 * d + 20 * K)
                    row.tree_bad = nlohmann::json{{"x", c.point_name(static_cast<Vertex>(s))},
                                                  {"z", c.point_name(static_cast<Vertex>(t))},
                                                  {"d_CK", d},
                                                  {"d_CKT", e}};
            }
        }
    });
    for (const auto& row : rows) {
        if (formula) {
            formula->checked += row.checked;
            if (row.formula_bad) formula->fail(*row.formula_bad);
        }
        if (tree_spaces) {
            tree_spaces->checked += row.checked;
            if (row.tree_bad) tree_spaces->fail(*row.tree_bad);
        }
    }
}

/// Prefix of p shared with q, as a count of vertices.
std::size_t common_prefix(const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
    std::size_t i = 0;
    while (i < p.size() && i < q.size() && p[i] == q[i]) ++i;
    return i;
}

std::size_t common_suffix(const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
    std::size_t i = 0;
    while (i < p.size() && i < q.size() && p[p.size() - 1 - i] == q[q.size() - 1 - i]) ++i;
    return i;
}

std::vector<std::array<std::size_t, 3>> triples(std::size_t n, std::size_t samples, std::uint64_t seed) {
    std::vector<std::array<std::size_t, 3>> out;
    if (n < 3) return out;
    if (n * (n - 1) * (n - 2) <= samples) {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    if (x != y && y != z && x != z) out.push_back({x, y, z});
        return out;
    }
    std::mt19937_64 rng(seed);
    while (out.size() < samples) {
        std::size_t x = rng() % n, y = rng() % n, z = rng() % n;
        if (x != y && y != z && x != z) out.push_back({x, y, z});
    }
    return out;
}

void check_triangles(Context& c, CheckResult& r, const VerifyOptions& opt) {
    for (auto [X, Y, Z] : triples(c.sys.size(), opt.triple_samples, opt.seed)) {
        ++r.checked;
        const auto& pxz = c.paths[X][Z].vertices;
        const auto& pxy = c.paths[X][Y].vertices;
        const auto& pyz = c.paths[Y][Z].vertices;
        std::size_t a = common_prefix(pxz, pxy);
        std::size_t s = std::min(common_suffix(pxz, pyz), pxz.size() - a);
        std::size_t middle = pxz.size() - a - s;
        bool ok = middle <= 2;
        for (std::size_t i = a; ok && i < a + middle; ++i)
            if (std::find(pxy.begin(), pxy.end(), pxz[i]) != pxy.end() ||
                std::find(pyz.begin(), pyz.end(), pxz[i]) != pyz.end())
                ok = false;
        if (!ok)
            r.fail({{"X", c.sys.names[X]},
                    {"Y", c.sys.names[Y]},
                    {"Z", c.sys.names[Z]},
                    {"path_XZ", c.path_json(c.paths[X][Z])},
                    {"path_XY", c.path_json(c.paths[X][Y])},
                    {"path_YZ", c.path_json(c.paths[Y][Z])}});
    }
}

void check_order_conditions(Context& c, CheckResult& r) {
    const ProjectionSystem& sys = c.sys;
    std::size_t n = sys.size();
    std::size_t th = sys.theta;
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Z = 0; Z < n; ++Z) {
            const auto& in = c.b.between[X][Z];
            for (std::size_t Y : in)
                for (std::size_t Y2 : in) {
                    if (Y == Y2) continue;
                    ++r.checked;
                    bool c1 = sys.d(Y, X, Y2) > th;
                    bool c2 = sys.d(Y2, Y, Z) > th;
                    bool c3 = sys.d(Y, Y2, Z) <= th;
                    bool c4 = sys.d(Y2, X, Y) <= th;
                    bool agree = c1 == c2 && c2 == c3 && c3 == c4;
                    // (5) and (6) hold for every W; spot-check a few.
                    if (agree && c1)
                        for (std::size_t t = 0; t < 4; ++t) {
                            std::size_t W = (X * 7 + Z * 13 + Y * 3 + Y2 + t * 31) % n;
                            if (W != Y && sys.d(Y, Y2, W) != sys.d(Y, Z, W)) agree = false;
                            if (W != Y2 && sys.d(Y2, Y, W) != sys.d(Y2, X, W)) agree = false;
                        }
                    if (!agree)
                        r.fail({{"X", sys.names[X]},
                                {"Z", sys.names[Z]},
                                {"Y", sys.names[Y]},
                                {"Y'", sys.names[Y2]},
                                {"conditions", {c1, c2, c3, c4}}});
                }
        }
}

void check_order_laws(Context& c, CheckResult& r) {
    const ProjectionSystem& sys = c.sys;
    std::size_t n = sys.size();
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Z = 0; Z < n; ++Z) {
            if (X == Z) continue;
            const auto& v = c.paths[X][Z].vertices;
            std::size_t L = v.size();
            ++r.checked;
            bool ok = v.front() == X && v.back() == Z;
            // The relation on interior vertices must agree with path positions.
            for (std::size_t i = 1; ok && i + 1 < L; ++i)
                for (std::size_t j = 1; ok && j + 1 < L; ++j)
                    if (i != j && precedes(sys, X, v[i], v[j]) != (i < j)) ok = false;
            std::size_t dXZ = 0;
            for (std::size_t j = 1; ok && j + 1 < L; ++j) {
                dXZ = sys.d(v[j], X, Z);
                for (std::size_t i = 0; ok && i < j; ++i)
                    for (std::size_t l = j + 1; ok && l < L; ++l)
                        if (sys.d(v[j], v[i], v[l]) != dXZ) ok = false;
            }
            if (!ok) r.fail({{"X", sys.names[X]}, {"Z", sys.names[Z]}, {"path", c.path_json(c.paths[X][Z])}});
        }
}

void check_between_closure(Context& c, CheckResult& r) {
    std::size_t n = c.sys.size();
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Z = 0; Z < n; ++Z) {
            if (X == Z) continue;
            const auto& v = c.paths[X][Z].vertices;
            const auto& outer = c.b.between[X][Z];
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j) {
                    ++r.checked;
                    for (std::size_t Y2 : c.b.between[v[i]][v[j]])
                        if (!contains(outer, Y2)) {
                            r.fail({{"X", c.sys.names[X]},
                                    {"Z", c.sys.names[Z]},
                                    {"Y", c.sys.names[v[i]]},
                                    {"Y''", c.sys.names[v[j]]},
                                    {"Y'", c.sys.names[Y2]}});
                            break;
                        }
                }
        }
}

void check_adjacency(Context& c, CheckResult& r) {
    std::size_t n = c.sys.size();
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Z = 0; Z < n; ++Z) {
            const auto& v = c.paths[X][Z].vertices;
            for (std::size_t i = 0; i + 1 < v.size(); ++i) {
                ++r.checked;
                if (!c.b.between[v[i]][v[i + 1]].empty())
                    r.fail({{"X", c.sys.names[X]}, {"Z", c.sys.names[Z]}, {"step", c.names({v[i], v[i + 1]})}});
            }
        }
}

void check_subpaths(Context& c, CheckResult& r) {
    std::size_t n = c.sys.size();
    for (std::size_t X = 0; X < n; ++X)
        for (std::size_t Z = 0; Z < n; ++Z) {
            const auto& v = c.paths[X][Z].vertices;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j) {
                    ++r.checked;
                    const auto& sub = c.paths[v[i]][v[j]].vertices;
                    if (!std::equal(sub.begin(), sub.end(), v.begin() + static_cast<std::ptrdiff_t>(i),
                                    v.begin() + static_cast<std::ptrdiff_t>(j + 1)) ||
                        sub.size() != j - i + 1)
                        r.fail({{"X", c.sys.names[X]},
                                {"Z", c.sys.names[Z]},
                                {"from", c.sys.names[v[i]]},
                                {"to", c.sys.names[v[j]]}});
                }
        }
}

void check_diversions(Context& c, CheckResult& r) {
    const ProjectionSystem& sys = c.sys;
    std::size_t n = sys.size();
    std::size_t K = c.b.K;
    std::vector<CheckResult> per(n);
    parallel_for(n, [&](std::size_t X) {
        CheckResult& pr = per[X];
        for (std::size_t Y = 0; Y < n; ++Y)
            for (std::size_t Z = 0; Z < n; ++Z) {
                if (X == Y || Y == Z || X == Z) continue;
                for (std::size_t W : c.paths[X][Y].vertices) {
                    bool inXZ = c.b.in_path(X, Z, W), inYZ = c.b.in_path(Y, Z, W);
                    if (inYZ) continue;
                    ++pr.checked;
                    auto witness = [&](int which, std::size_t value) {
                        return nlohmann::json{{"case", which}, {"X", sys.names[X]}, {"Y", sys.names[Y]},
                                              {"Z", sys.names[Z]}, {"W", sys.names[W]}, {"value", value}};
                    };
                    if (inXZ) {
                        std::size_t d = sys.d(W, Y, Z);
                        if (d > K) pr.fail(witness(1, d));
                    } else {
                        std::size_t d = sys.d(W, X, Y);
                        if (d > 2 * K) pr.fail(witness(2, d));
                    }
                }
            }
    });
    for (auto& pr : per) {
        r.checked += pr.checked;
        if (!pr.passed) r.fail(pr.counterexample);
    }
}

}  // namespace

Report verify_section5(const ProjectionSystem& sys, const ComplexBundle& b, const VerifyOptions& opt) {
    std::size_t n = sys.size();
    if (b.between.size() != n) throw std::invalid_argument("bundle does not match the system");
    for (const auto& name : opt.checks) {
        const auto& all = all_section_checks();
        if (std::find(all.begin(), all.end(), name) == all.end())
            throw std::invalid_argument("unknown check: " + name);
    }
    auto wanted = [&](const std::string& name) { return opt.checks.empty() || opt.checks.count(name) > 0; };

    Context c{sys, b, std::vector<std::vector<StandardPath>>(n, std::vector<StandardPath>(n))};
    parallel_for(n, [&](std::size_t X) {
        for (std::size_t Z = 0; Z < n; ++Z) c.paths[X][Z] = order_path(sys, X, Z, b.between[X][Z]);
    });
    std::vector<std::vector<std::size_t>> dP(n), dT(n);
    parallel_for(n, [&](std::size_t X) {
        dP[X] = bfs(b.P, X);
        dT[X] = bfs(b.T, X);
    });

    Report rep;
    for (const auto& name : all_section_checks()) {
        if (!wanted(name)) continue;
        rep.checks.push_back(CheckResult{name});
    }
    auto slot = [&](const std::string& name) -> CheckResult* {
        for (auto& r : rep.checks)
            if (r.name == name) return &r;
        return nullptr;
    };
    if (auto* r = slot("standard_path_quasigeodesic")) check_quasigeodesic(c, *r, dP);
    if (auto* r = slot("tree_acyclic")) check_tree(c, *r);
    if (auto* r = slot("tree_quasiisometry")) check_tree_qi(c, *r, dP, dT);
    if (slot("distance_formula") || slot("tree_of_spaces"))
        check_distances(c, slot("distance_formula"), slot("tree_of_spaces"));
    if (auto* r = slot("triangle_middle")) check_triangles(c, *r, opt);
    if (auto* r = slot("order_conditions")) check_order_conditions(c, *r);
    if (auto* r = slot("order_laws")) check_order_laws(c, *r);
    if (auto* r = slot("between_closure")) check_between_closure(c, *r);
    if (auto* r = slot("path_adjacency")) check_adjacency(c, *r);
    if (auto* r = slot("subpaths")) check_subpaths(c, *r);
    if (auto* r = slot("diversion_bounds")) check_diversions(c, *r);
    return rep;
}

// ---------------------------------------------------------------------------
// Tree segments

ProjectionSystem segments_instance(std::size_t n_vertices, const std::vector<std::pair<Vertex, Vertex>>& tree_edges,
                                   const std::vector<std::vector<Vertex>>& segments) {
    if (n_vertices == 0) throw std::invalid_argument("tree needs a vertex");
    if (tree_edges.size() + 1 != n_vertices) throw std::invalid_argument("a tree on n vertices has n - 1 edges");
    std::vector<std::vector<std::size_t>> adj(n_vertices);
    for (auto [u, v] : tree_edges) {
        if (u >= n_vertices || v >= n_vertices || u == v) throw std::invalid_argument("bad tree edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    auto reach = bfs(adj, 0);
    if (std::count(reach.begin(), reach.end(), SIZE_MAX) > 0) throw std::invalid_argument("tree is disconnected");
    if (segments.empty()) throw std::invalid_argument("need at least one segment");

    std::vector<int> owner(n_vertices, -1);
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        if (seg.empty()) throw std::invalid_argument("empty segment");
        for (std::size_t i = 0; i < seg.size(); ++i) {
            if (seg[i] >= n_vertices) throw std::invalid_argument("segment vertex out of range");
            if (owner[seg[i]] != -1) throw std::invalid_argument("segments must be disjoint");
            owner[seg[i]] = static_cast<int>(s);
            if (i > 0 && std::find(adj[seg[i]].begin(), adj[seg[i]].end(), seg[i - 1]) == adj[seg[i]].end())
                throw std::invalid_argument("segment is not a path in the tree");
        }
    }

    std::size_t m = segments.size();
    ProjectionSystem sys;
    sys.theta = 0;
    for (std::size_t s = 0; s < m; ++s) {
        sys.names.push_back("S" + std::to_string(s));
        std::vector<std::pair<Vertex, Vertex>> path;
        for (Vertex i = 1; i < segments[s].size(); ++i) path.emplace_back(i - 1, i);
        sys.spaces.emplace_back(segments[s].size(), path);
    }
    sys.proj.assign(m, std::vector<std::vector<Vertex>>(m));
    for (std::size_t X = 0; X < m; ++X) {
        // Multi-source search from segment X, then the closest vertices of each other segment.
        std::vector<std::size_t> dist(n_vertices, SIZE_MAX);
        std::deque<std::size_t> q;
        for (Vertex v : segments[X]) {
            dist[v] = 0;
            q.push_back(v);
        }
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop_front();
            for (std::size_t v : adj[u])
                if (dist[v] == SIZE_MAX) {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
        }
        for (std::size_t Y = 0; Y < m; ++Y) {
            if (Y == X) continue;
            std::size_t best = SIZE_MAX;
            for (Vertex v : segments[Y]) best = std::min(best, dist[v]);
            for (Vertex i = 0; i < segments[Y].size(); ++i)
                if (dist[segments[Y][i]] == best) sys.proj[Y][X].push_back(i);
        }
    }
    sys.validate();
    return sys;
}

TreeSegments random_tree_segments(std::uint64_t seed, std::size_t n_vertices, std::size_t n_segments) {
    if (n_vertices == 0 || n_segments == 0) throw std::invalid_argument("need vertices and segments");
    if (n_segments > n_vertices) throw std::runtime_error("more segments than vertices");
    std::mt19937_64 rng(seed);
    TreeSegments t;
    t.n_vertices = n_vertices;
    std::vector<std::vector<Vertex>> adj(n_vertices);
    for (Vertex v = 1; v < n_vertices; ++v) {
        auto p = static_cast<Vertex>(rng() % v);
        t.tree_edges.emplace_back(p, v);
        adj[p].push_back(v);
        adj[v].push_back(p);
    }
    std::vector<bool> used(n_vertices, false);
    std::size_t attempts = 0;
    while (t.segments.size() < n_segments) {
        if (++attempts > 1000 * n_segments) throw std::runtime_error("could not place the segments disjointly");
        auto start = static_cast<Vertex>(rng() % n_vertices);
        if (used[start]) continue;
        std::size_t target = 1 + rng() % 8;
        std::vector<Vertex> seg{start};
        used[start] = true;
        while (seg.size() < target) {
            std::vector<Vertex> next;
            for (Vertex v : adj[seg.back()])
                if (!used[v]) next.push_back(v);
            if (next.empty()) break;
            Vertex v = next[rng() % next.size()];
            used[v] = true;
            seg.push_back(v);
        }
        t.segments.push_back(std::move(seg));
    }
    return t;
}

ProjectionSystem tree_segments_instance(std::uint64_t seed, std::size_t n_vertices, std::size_t n_segments) {
    TreeSegments t = random_tree_segments(seed, n_vertices, n_segments);
    return segments_instance(t.n_vertices, t.tree_edges, t.segments);
}

// ---------------------------------------------------------------------------
// Free product of two copies of Z^2

FreeProductElement fp_multiply(const FreeProductElement& g, const FreeProductElement& h) {
    FreeProductElement out = g;
    for (const Syllable& s : h) {
        if (!out.empty() && out.back().factor == s.factor) {
            out.back().x += s.x;
            out.back().y += s.y;
            if (out.back().x == 0 && out.back().y == 0) out.pop_back();
        } else {
            out.push_back(s);
        }
    }
    return out;
}

FreeProductElement fp_inverse(const FreeProductElement& g) {
    FreeProductElement out(g.rbegin(), g.rend());
    for (auto& s : out) {
        s.x = -s.x;
        s.y = -s.y;
    }
    return out;
}

std::size_t fp_length(const FreeProductElement& g) {
    std::size_t n = 0;
    for (const auto& s : g) n += static_cast<std::size_t>(std::llabs(s.x) + std::llabs(s.y));
    return n;
}

std::string fp_to_string(const FreeProductElement& g) {
    if (g.empty()) return "e";
    std::ostringstream os;
    for (const auto& s : g) os << (s.factor == 0 ? 'A' : 'B') << '(' << s.x << ',' << s.y << ')';
    return os.str();
}

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> diamond(std::int64_t r) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t x = -r; x <= r; ++x)
        for (std::int64_t y = -r; y <= r; ++y)
            if (std::llabs(x) + std::llabs(y) <= r) out.emplace_back(x, y);
    return out;
}

void extend(std::vector<FreeProductElement>& out, FreeProductElement& g, std::size_t used, std::size_t R) {
    out.push_back(g);
    for (int f = 0; f < 2; ++f) {
        if (!g.empty() && g.back().factor == f) continue;
        for (auto [x, y] : diamond(static_cast<std::int64_t>(R - used))) {
            if (x == 0 && y == 0) continue;
            g.push_back({f, x, y});
            extend(out, g, used + static_cast<std::size_t>(std::llabs(x) + std::llabs(y)), R);
            g.pop_back();
        }
    }
}

}  // namespace

ProjectionSystem free_product_instance(std::size_t radius) {
    if (radius > kMaxFreeProductRadius)
        throw std::invalid_argument("free product radius is capped at " + std::to_string(kMaxFreeProductRadius));
    std::vector<FreeProductElement> elems;
    FreeProductElement g;
    extend(elems, g, 0, radius);
    std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) {
        auto la = fp_length(a), lb = fp_length(b);
        return la != lb ? la < lb : a < b;
    });

    struct Coset {
        FreeProductElement rep;
        int factor;
        std::map<std::pair<std::int64_t, std::int64_t>, Vertex> index;
    };
    std::vector<Coset> cosets;
    ProjectionSystem sys;
    sys.theta = 0;
    for (const auto& e : elems)
        for (int f = 0; f < 2; ++f) {
            if (!e.empty() && e.back().factor == f) continue;
            Coset c{e, f, {}};
            auto pts = diamond(static_cast<std::int64_t>(radius - fp_length(e)));
            for (Vertex i = 0; i < pts.size(); ++i) c.index[pts[i]] = i;
            std::vector<std::pair<Vertex, Vertex>> edges;
            for (const auto& [p, i] : c.index) {
                auto right = c.index.find({p.first + 1, p.second});
                auto up = c.index.find({p.first, p.second + 1});
                if (right != c.index.end()) edges.emplace_back(i, right->second);
                if (up != c.index.end()) edges.emplace_back(i, up->second);
            }
            sys.names.push_back(fp_to_string(e) + (f == 0 ? ".A" : ".B"));
            sys.spaces.emplace_back(pts.size(), edges);
            cosets.push_back(std::move(c));
        }

    std::size_t n = cosets.size();
    sys.proj.assign(n, std::vector<std::vector<Vertex>>(n));
    parallel_for(n, [&](std::size_t Y) {
        const Coset& cy = cosets[Y];
        FreeProductElement inv = fp_inverse(cy.rep);
        for (std::size_t X = 0; X < n; ++X) {
            if (X == Y) continue;
            // Entry point of X into Y: the leading Y-factor syllable of rep(Y)^-1 rep(X).
            FreeProductElement w = fp_multiply(inv, cosets[X].rep);
            std::pair<std::int64_t, std::int64_t> v{0, 0};
            if (!w.empty() && w.front().factor == cy.factor) v = {w.front().x, w.front().y};
            sys.proj[Y][X] = {cy.index.at(v)};
        }
    });
    sys.validate();
    return sys;
}

// ---------------------------------------------------------------------------
// JSON

InstanceSpec instance_spec_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
        InstanceSpec s;
        s.kind = j.value("kind", std::string("tree_segments"));
        if (s.kind == "free_product") {
            s.radius = j.at("radius").get<std::size_t>();
            return s;
        }
        if (s.kind != "tree_segments") throw std::invalid_argument("unknown instance kind: " + s.kind);
        s.seed = j.value("seed", s.seed);
        s.n_vertices = j.value("n_vertices", s.n_vertices);
        s.n_segments = j.value("n_segments", s.n_segments);
        if (j.contains("tree_edges")) {
            TreeSegments t;
            t.n_vertices = j.at("n_vertices").get<std::size_t>();
            t.tree_edges = j.at("tree_edges").get<std::vector<std::pair<Vertex, Vertex>>>();
            t.segments = j.at("segments").get<std::vector<std::vector<Vertex>>>();
            s.explicit_tree = std::move(t);
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed instance: ") + e.what());
    }
}

nlohmann::json instance_spec_to_json(const InstanceSpec& spec) {
    if (spec.kind == "free_product") return {{"kind", spec.kind}, {"radius", spec.radius}};
    nlohmann::json j{{"kind", spec.kind}, {"seed", spec.seed}, {"n_vertices", spec.n_vertices},
                     {"n_segments", spec.n_segments}};
    if (spec.explicit_tree) {
        j["n_vertices"] = spec.explicit_tree->n_vertices;
        j["n_segments"] = spec.explicit_tree->segments.size();
        j["tree_edges"] = spec.explicit_tree->tree_edges;
        j["segments"] = spec.explicit_tree->segments;
    }
    return j;
}

ProjectionSystem build_instance(const InstanceSpec& spec) {
    if (spec.kind == "free_product") return free_product_instance(spec.radius);
    if (spec.explicit_tree)
        return segments_instance(spec.explicit_tree->n_vertices, spec.explicit_tree->tree_edges,
                                 spec.explicit_tree->segments);
    return tree_segments_instance(spec.seed, spec.n_vertices, spec.n_segments);
}

}  // namespace treembed::proj
