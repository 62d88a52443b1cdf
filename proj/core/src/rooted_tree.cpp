#include "unigad/sampler.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace unigad {

RootedTree build_rooted_tree(const Graph& graph, const std::vector<int>& roots, int depth) {
    if (roots.empty() || roots.size() > 2) {
        throw std::invalid_argument("build_rooted_tree: need 1 or 2 roots");
    }
    if (depth < 1) throw std::invalid_argument("build_rooted_tree: depth must be >= 1");
    for (int r : roots) {
        if (r < 0 || r >= graph.node_count()) {
            throw std::invalid_argument("build_rooted_tree: root out of range");
        }
    }
    if (roots.size() == 2 && !graph.has_edge(roots[0], roots[1])) {
        throw std::invalid_argument("build_rooted_tree: edge roots must be adjacent");
    }

    RootedTree tree;
    tree.roots = roots;
    std::sort(tree.roots.begin(), tree.roots.end());
    tree.depth_cap = depth;

    std::unordered_map<int, int> index_of;  // graph id -> tree index
    for (int r : tree.roots) {
        index_of.emplace(r, tree.size());
        tree.nodes.push_back(r);
        tree.parent.push_back(-1);
        tree.hop.push_back(0);
    }

    // Level-synchronous BFS; each level is expanded in ascending graph-id
    // order so the lower-id parent claims a contested child.
    int level_begin = 0;
    for (int level = 0; level < depth; ++level) {
        const int level_end = tree.size();
        if (level_begin == level_end) break;
        std::vector<int> order;
        for (int ti = level_begin; ti < level_end; ++ti) order.push_back(ti);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return tree.nodes[a] < tree.nodes[b]; });
        for (int ti : order) {
            const int u = tree.nodes[ti];
            for (int w : graph.neighbors(u)) {
                if (index_of.count(w)) continue;
                index_of.emplace(w, tree.size());
                tree.nodes.push_back(w);
                tree.parent.push_back(ti);
                tree.hop.push_back(level + 1);
            }
        }
        level_begin = level_end;
    }

    tree.children.assign(tree.size(), {});
    for (int ti = 0; ti < tree.size(); ++ti) {
        if (tree.parent[ti] >= 0) tree.children[tree.parent[ti]].push_back(ti);
    }
    for (auto& kids : tree.children) {
        std::sort(kids.begin(), kids.end(),
                  [&](int a, int b) { return tree.nodes[a] < tree.nodes[b]; });
    }
    return tree;
}

}  // namespace unigad
