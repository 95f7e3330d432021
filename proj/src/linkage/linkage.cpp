#include "spamflow/linkage/linkage.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "spamflow/util/csv.hpp"
#include "spamflow/util/errors.hpp"
#include "spamflow/util/union_find.hpp"

namespace spamflow::linkage {

const char* edge_kind_name(EdgeKind kind) {
    return kind == EdgeKind::shared_address ? "shared_address" : "shared_cluster";
}

LinkageGraph build_linkage(const std::vector<BucketNode>& buckets,
                           const std::map<std::string, int>& cluster_of_address) {
    LinkageGraph graph;
    graph.nodes = buckets;
    std::sort(graph.nodes.begin(), graph.nodes.end(),
              [](const BucketNode& a, const BucketNode& b) { return a.bucket_id < b.bucket_id; });

    // per-bucket cluster-id sets; unclustered addresses contribute none
    std::vector<std::set<int>> cluster_sets(graph.nodes.size());
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        for (const auto& addr : graph.nodes[i].addresses) {
            auto it = cluster_of_address.find(addr);
            if (it != cluster_of_address.end()) cluster_sets[i].insert(it->second);
        }
    }

    auto intersection_size = [](const auto& a, const auto& b) {
        std::int64_t count = 0;
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (*ia < *ib) {
                ++ia;
            } else if (*ib < *ia) {
                ++ib;
            } else {
                ++count;
                ++ia;
                ++ib;
            }
        }
        return count;
    };

    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < graph.nodes.size(); ++j) {
            if (const auto shared = intersection_size(graph.nodes[i].addresses,
                                                      graph.nodes[j].addresses)) {
                graph.edges.push_back({graph.nodes[i].bucket_id, graph.nodes[j].bucket_id,
                                       EdgeKind::shared_address, shared});
            }
            if (const auto shared = intersection_size(cluster_sets[i], cluster_sets[j])) {
                graph.edges.push_back({graph.nodes[i].bucket_id, graph.nodes[j].bucket_id,
                                       EdgeKind::shared_cluster, shared});
            }
        }
    }
    return graph;
}

std::vector<Component> components(const LinkageGraph& graph) {
    std::unordered_map<int, std::size_t> index;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        index.emplace(graph.nodes[i].bucket_id, i);
    }
    util::UnionFind uf(graph.nodes.size());
    for (const Edge& e : graph.edges) {
        uf.unite(index.at(e.bucket_a), index.at(e.bucket_b));
    }

    std::size_t total_emails = 0;
    std::set<std::string> all_addresses;
    for (const auto& node : graph.nodes) {
        total_emails += node.email_count;
        all_addresses.insert(node.addresses.begin(), node.addresses.end());
    }

    std::map<std::size_t, Component> by_root;
    std::map<std::size_t, std::set<std::string>> root_addresses;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        const std::size_t root = uf.find(i);
        Component& c = by_root[root];
        c.bucket_ids.push_back(graph.nodes[i].bucket_id);
        c.email_count += graph.nodes[i].email_count;
        root_addresses[root].insert(graph.nodes[i].addresses.begin(),
                                    graph.nodes[i].addresses.end());
    }

    std::vector<Component> result;
    for (auto& [root, comp] : by_root) {
        std::sort(comp.bucket_ids.begin(), comp.bucket_ids.end());
        comp.email_share = total_emails == 0 ? 0.0
                                             : static_cast<double>(comp.email_count) /
                                                   static_cast<double>(total_emails);
        comp.address_share = all_addresses.empty()
                                 ? 0.0
                                 : static_cast<double>(root_addresses[root].size()) /
                                       static_cast<double>(all_addresses.size());
        result.push_back(std::move(comp));
    }
    std::sort(result.begin(), result.end(), [](const Component& a, const Component& b) {
        if (a.bucket_ids.size() != b.bucket_ids.size()) {
            return a.bucket_ids.size() > b.bucket_ids.size();
        }
        return a.bucket_ids.front() < b.bucket_ids.front();
    });
    return result;
}

void write_edges_csv(const LinkageGraph& graph, std::ostream& out) {
    util::CsvWriter csv(out);
    csv.row({"bucket_a", "bucket_b", "kind", "weight"});
    std::vector<Edge> sorted = graph.edges;
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        if (a.bucket_a != b.bucket_a) return a.bucket_a < b.bucket_a;
        if (a.bucket_b != b.bucket_b) return a.bucket_b < b.bucket_b;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    for (const Edge& e : sorted) {
        csv.row({std::to_string(e.bucket_a), std::to_string(e.bucket_b), edge_kind_name(e.kind),
                 std::to_string(e.weight)});
    }
}

void write_components_csv(const std::vector<Component>& comps, std::ostream& out) {
    util::CsvWriter csv(out);
    csv.row({"component", "node_count", "email_count", "email_share", "address_share"});
    char share[32];
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const Component& c = comps[i];
        std::string row_share, row_addr;
        std::snprintf(share, sizeof share, "%.6f", c.email_share);
        row_share = share;
        std::snprintf(share, sizeof share, "%.6f", c.address_share);
        row_addr = share;
        csv.row({std::to_string(i), std::to_string(c.bucket_ids.size()),
                 std::to_string(c.email_count), row_share, row_addr});
    }
}

void write_dot(const LinkageGraph& graph, std::ostream& out) {
    out << "graph bucket_linkage {\n";
    out << "  node [shape=circle fontsize=10];\n";
    for (const auto& node : graph.nodes) {
        out << "  b" << node.bucket_id << " [label=\"" << node.bucket_id;
        if (!node.campaign.empty()) out << "\\n" << node.campaign;
        out << "\"];\n";
    }
    std::vector<Edge> sorted = graph.edges;
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        if (a.bucket_a != b.bucket_a) return a.bucket_a < b.bucket_a;
        if (a.bucket_b != b.bucket_b) return a.bucket_b < b.bucket_b;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    for (const Edge& e : sorted) {
        out << "  b" << e.bucket_a << " -- b" << e.bucket_b << " [color="
            << (e.kind == EdgeKind::shared_address ? "red" : "black") << " penwidth="
            << std::min<std::int64_t>(1 + e.weight, 8) << "];\n";
    }
    out << "}\n";
}

}  // namespace spamflow::linkage
