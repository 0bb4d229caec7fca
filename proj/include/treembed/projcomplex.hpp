#ifndef TREEMBED_PROJCOMPLEX_HPP
#define TREEMBED_PROJCOMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace treembed::proj {

using Vertex = std::uint32_t;
inline constexpr std::uint32_t kUnreachable = UINT32_MAX;

/// A finite connected graph with unit edges and its all-pairs distance table.
class SpaceGraph {
public:
    SpaceGraph() : SpaceGraph(1, {}) {}
    /// Throws std::invalid_argument if the graph is empty, an edge is out of
    /// range, or the graph is disconnected.
    SpaceGraph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    std::size_t size() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_; }
    const std::vector<std::vector<Vertex>>& adjacency() const { return adj_; }
    std::uint32_t distance(Vertex a, Vertex b) const { return dist_[a * adj_.size() + b]; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::uint32_t> dist_;
    std::size_t edges_ = 0;
};

/// Indices 0..n-1, one space C(Y) per index, and projections pi_Y(X) given
/// as sorted vertex sets of C(Y).
struct ProjectionSystem {
    std::vector<std::string> names;
    std::vector<SpaceGraph> spaces;
    /// proj[Y][X]; empty when X == Y.
    std::vector<std::vector<std::vector<Vertex>>> proj;
    std::size_t theta = 0;

    std::size_t size() const { return spaces.size(); }
    /// Shape checks: sizes agree, projections nonempty, sorted and in range.
    void validate() const;

    std::size_t diam(std::size_t Y, const std::vector<Vertex>& a, const std::vector<Vertex>& b) const;
    /// d_Y(X, Z) = diam(pi_Y(X) u pi_Y(Z)) for X, Z != Y.
    std::size_t d(std::size_t Y, std::size_t X, std::size_t Z) const;
};

/// A point x of C(X).
struct Point {
    std::size_t index = 0;
    Vertex vertex = 0;
};

/// Extended projection distance: pi_Y(x) is {x} when Y is x's own index.
std::size_t point_d(const ProjectionSystem& sys, std::size_t Y, Point x, Point z);

struct CheckResult {
    explicit CheckResult(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    bool passed = true;
    std::size_t checked = 0;
    nlohmann::json counterexample;  // null when passed

    void fail(nlohmann::json witness) {
        if (passed) counterexample = std::move(witness);
        passed = false;
    }
};

struct Report {
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* find(const std::string& name) const;
    nlohmann::json to_json() const;
};

struct AxiomReport {
    std::size_t declared_theta = 0;
    /// Least theta for which (P3), (P4) and (P4') all hold.
    std::size_t min_theta = 0;
    Report report;

    bool passed() const { return report.passed(); }
};

/// Exhaustive over index triples. (P5) holds trivially for finite systems.
AxiomReport verify_axioms(const ProjectionSystem& sys);

/// {Y != X, Z : d_Y(X, Z) > K}, ascending. Empty when X == Z.
std::vector<std::size_t> between_set(const ProjectionSystem& sys, std::size_t K, std::size_t X, std::size_t Z);

/// The order used on Y_K[X, Z]: Y < Y' iff d_Y(X, Y') > theta.
bool precedes(const ProjectionSystem& sys, std::size_t X, std::size_t Y, std::size_t Y2);

struct StandardPath {
    std::size_t from = 0;
    std::size_t to = 0;
    /// X = X_0 < X_1 < ... < X_k < Z.
    std::vector<std::size_t> vertices;

    std::size_t L() const { return vertices.size(); }
};

/// Throws std::invalid_argument when K < 2 theta and std::runtime_error when
/// the order on the between set is not a strict total order.
StandardPath standard_path(const ProjectionSystem& sys, std::size_t K, std::size_t X, std::size_t Z);

/// Weighted undirected graph on global vertex ids.
struct WeightedGraph {
    std::vector<std::vector<std::pair<Vertex, std::uint32_t>>> adj;
    std::size_t edges = 0;

    void add_edge(Vertex a, Vertex b, std::uint32_t w);
    /// Uniform-cost search from `source`.
    std::vector<std::uint64_t> distances_from(Vertex source) const;
};

struct ComplexBundle {
    std::size_t K = 0;
    std::size_t basepoint = 0;
    std::uint64_t seed = 0;
    /// between[X][Z] = Y_K(X, Z).
    std::vector<std::vector<std::vector<std::size_t>>> between;
    std::vector<std::vector<std::size_t>> P;  // projection complex
    std::vector<std::vector<std::size_t>> T;  // union of standard paths from the basepoint
    std::vector<Vertex> offset;               // global id of vertex v of C(Y) is offset[Y] + v
    WeightedGraph CK;
    WeightedGraph CKT;
    /// p(X, Y) for every P_K edge, as a vertex of C(X).
    std::map<std::pair<std::size_t, std::size_t>, Vertex> rep;
    std::size_t intra_edges = 0;

    std::size_t vertex_count() const { return CK.adj.size(); }
    Point point_of(Vertex global) const;
    bool in_path(std::size_t X, std::size_t Z, std::size_t W) const;
};

/// Throws std::invalid_argument when K < max(1, 4 theta) or B is out of range.
ComplexBundle build_complexes(const ProjectionSystem& sys, std::size_t K, std::size_t basepoint, std::uint64_t seed);

inline const std::vector<std::string>& all_section_checks() {
    static const std::vector<std::string> names{"standard_path_quasigeodesic", "tree_acyclic",
                                                "tree_quasiisometry",          "distance_formula",
                                                "tree_of_spaces",              "triangle_middle",
                                                "order_conditions",            "order_laws",
                                                "between_closure",             "path_adjacency",
                                                "subpaths",                    "diversion_bounds"};
    return names;
}

struct VerifyOptions {
    /// Empty means every check in all_section_checks().
    std::set<std::string> checks;
    std::size_t triple_samples = 1000;
    std::uint64_t seed = 1;
};

/// Runs the requested checks; every failure carries its first counterexample.
Report verify_section5(const ProjectionSystem& sys, const ComplexBundle& bundle, const VerifyOptions& opt = {});

// ---------------------------------------------------------------------------
// Instances

/// Disjoint vertex paths of a finite tree with nearest-point projections.
ProjectionSystem segments_instance(std::size_t n_vertices, const std::vector<std::pair<Vertex, Vertex>>& tree_edges,
                                   const std::vector<std::vector<Vertex>>& segments);

struct TreeSegments {
    std::size_t n_vertices = 0;
    std::vector<std::pair<Vertex, Vertex>> tree_edges;
    std::vector<std::vector<Vertex>> segments;
};

/// Random tree on n_vertices with n_segments disjoint paths. Throws
/// std::runtime_error when the segments cannot be placed.
TreeSegments random_tree_segments(std::uint64_t seed, std::size_t n_vertices, std::size_t n_segments);
ProjectionSystem tree_segments_instance(std::uint64_t seed, std::size_t n_vertices, std::size_t n_segments);

inline constexpr std::size_t kMaxFreeProductRadius = 4;

/// Cosets of the two Z^2 factors of Z^2 * Z^2 meeting the ball of the given
/// radius. Generators a, b span the first factor and c, d the second.
ProjectionSystem free_product_instance(std::size_t radius);

/// Element of Z^2 * Z^2 as alternating syllables (factor, x, y).
struct Syllable {
    int factor = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Syllable&, const Syllable&) = default;
    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};
using FreeProductElement = std::vector<Syllable>;

FreeProductElement fp_multiply(const FreeProductElement& g, const FreeProductElement& h);
FreeProductElement fp_inverse(const FreeProductElement& g);
std::size_t fp_length(const FreeProductElement& g);
std::string fp_to_string(const FreeProductElement& g);

/// Instance description, as read from or written to JSON.
struct InstanceSpec {
    std::string kind = "tree_segments";  // or "free_product"
    std::uint64_t seed = 1;
    std::size_t n_vertices = 60;
    std::size_t n_segments = 8;
    std::optional<TreeSegments> explicit_tree;
    std::size_t radius = 2;
};

/// Throws std::invalid_argument on malformed descriptions.
InstanceSpec instance_spec_from_json(const nlohmann::json& j);
nlohmann::json instance_spec_to_json(const InstanceSpec& spec);
ProjectionSystem build_instance(const InstanceSpec& spec);

}  // namespace treembed::proj

#endif  // TREEMBED_PROJCOMPLEX_HPP
