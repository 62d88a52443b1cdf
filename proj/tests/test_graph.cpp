#include <doctest.h>

#include <random>

#include "unigad/graph.hpp"

using namespace unigad;

namespace {

Graph random_connected_graph(int n, std::mt19937_64& rng, int extra_edges = 4) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        const int p = std::uniform_int_distribution<int>(0, v - 1)(rng);
        edges.emplace_back(std::min(p, v), std::max(p, v));
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < extra_edges; ++k) {
        const int u = pick(rng), v = pick(rng);
        if (u == v) continue;
        const Edge e{std::min(u, v), std::max(u, v)};
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
    return Graph(n, edges);
}

Signal random_signal(const Graph& g, std::mt19937_64& rng) {
    Eigen::VectorXd x(g.node_count());
    std::normal_distribution<double> dist;
    for (int v = 0; v < g.node_count(); ++v) x[v] = dist(rng);
    return make_signal(std::move(x), g);
}

}  // namespace

TEST_CASE("construction validates edges") {
    CHECK_THROWS(Graph(3, {{0, 0}}));              // self loop
    CHECK_THROWS(Graph(3, {{0, 3}}));              // out of range
    CHECK_THROWS(Graph(2, {{-1, 0}}));             // negative id
    const Graph g(3, {{0, 1}, {1, 0}, {1, 2}});    // duplicate collapses
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("adjacency is symmetric") {
    std::mt19937_64 rng(3);
    const Graph g = random_connected_graph(20, rng, 15);
    for (int u = 0; u < g.node_count(); ++u) {
        for (int v : g.neighbors(u)) {
            const auto nb = g.neighbors(v);
            CHECK(std::find(nb.begin(), nb.end(), u) != nb.end());
        }
    }
}

TEST_CASE("labeled edges must exist") {
    Graph g(3, {{0, 1}});
    CHECK_THROWS(g.set_edge_labels({{{0, 2}, 1}}));
    g.set_edge_labels({{{0, 1}, 1}});
    CHECK(g.has_edge_labels());
}

TEST_CASE("rayleigh quotient hand examples") {
    const Graph p2(2, {{0, 1}});

    SUBCASE("constant signal lies in the null space") {
        const Signal x = make_signal(Eigen::VectorXd::Constant(2, 3.0), p2);
        const std::vector<int> all{0, 1};
        const Fraction rq = rayleigh_quotient(x, p2, all);
        CHECK(rq.num == 0.0);
        CHECK(rq.value() == 0.0);
    }
    SUBCASE("2-node path with x = (1, -1) gives 2") {
        Eigen::VectorXd x(2);
        x << 1, -1;
        const std::vector<int> all{0, 1};
        const Fraction rq = rayleigh_quotient(make_signal(x, p2), p2, all);
        CHECK(rq.num == 4.0);
        CHECK(rq.den == 2.0);
    }
    SUBCASE("empty node set is a domain error") {
        const Signal x = make_signal(Eigen::VectorXd::Ones(2), p2);
        CHECK_THROWS(rayleigh_quotient(x, p2, std::vector<int>{}));
    }
}

TEST_CASE("edge-sum form equals the dense matrix oracle") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 1000; ++t) {
        const int n = std::uniform_int_distribution<int>(2, 10)(rng);
        const Graph g = random_connected_graph(n, rng);
        const Signal x = random_signal(g, rng);
        std::vector<int> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        const Fraction rq = rayleigh_quotient(x, g, all);
        const Eigen::MatrixXd L = laplacian_dense(g);
        const double oracle = x.values.dot(L * x.values) / x.values.squaredNorm();
        CHECK(rq.value() == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("rayleigh quotient bounds and scale invariance") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const int n = std::uniform_int_distribution<int>(2, 12)(rng);
        const Graph g = random_connected_graph(n, rng);
        const Signal x = random_signal(g, rng);
        std::vector<int> all(n);
        for (int v = 0; v < n; ++v) all[v] = v;
        const Fraction rq = rayleigh_quotient(x, g, all);
        CHECK(rq.value() >= 0.0);
        CHECK(rq.value() <= 2.0 * g.max_degree() + 1e-12);
        const Signal scaled = make_signal(x.values * -2.5, g);
        const Fraction rq2 = rayleigh_quotient(scaled, g, all);
        CHECK(rq2.value() == doctest::Approx(rq.value()).epsilon(1e-12));
    }
}

TEST_CASE("dense laplacian forms") {
    SUBCASE("2-node path regular form") {
        const Eigen::MatrixXd L = laplacian_dense(Graph(2, {{0, 1}}));
        CHECK(L(0, 0) == 1.0);
        CHECK(L(0, 1) == -1.0);
        CHECK(L(1, 0) == -1.0);
        CHECK(L(1, 1) == 1.0);
    }
    SUBCASE("triangle row sums are zero") {
        const Eigen::MatrixXd L = laplacian_dense(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
        CHECK(L.rowwise().sum().cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
    SUBCASE("regular laplacian is positive semidefinite") {
        std::mt19937_64 rng(29);
        const Graph g = random_connected_graph(6, rng);
        const Eigen::MatrixXd L = laplacian_dense(g);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
    SUBCASE("normalized form treats isolated nodes as zero") {
        const Graph g(3, {{0, 1}});  // node 2 isolated
        const Eigen::MatrixXd L = laplacian_dense(g, true);
        CHECK(L(2, 2) == 0.0);
        CHECK(L(2, 0) == 0.0);
        CHECK(L(0, 1) == doctest::Approx(-1.0));
    }
}

TEST_CASE("composite feature signal") {
    SUBCASE("single dimension min-max identity") {
        Eigen::MatrixXd f(3, 1);
        f << 0, 5, 10;
        const Signal s = composite_feature(f);
        CHECK(s[0] == 0.0);
        CHECK(s[1] == doctest::Approx(0.5));
        CHECK(s[2] == 1.0);
    }
    SUBCASE("constant dimensions map to zero") {
        const Signal s = composite_feature(Eigen::MatrixXd::Constant(4, 3, 7.0));
        for (int v = 0; v < 4; ++v) CHECK(s[v] == 0.0);
    }
    SUBCASE("two dimensions, hand evaluation") {
        Eigen::MatrixXd f(3, 2);
        f << 0, 2, 4, 0, 2, 1;
        const Signal s = composite_feature(f);
        CHECK(s[0] == doctest::Approx(1.0));
        CHECK(s[1] == doctest::Approx(1.0));
        CHECK(s[2] == doctest::Approx(1.0));
    }
}
