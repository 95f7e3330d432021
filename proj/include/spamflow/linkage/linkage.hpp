#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace spamflow::linkage {

enum class EdgeKind { shared_address, shared_cluster };

const char* edge_kind_name(EdgeKind kind);

struct BucketNode {
    int bucket_id = 0;
    std::string campaign;
    std::size_t email_count = 0;
    std::set<std::string> addresses;  // payment addresses seen in the bucket
};

struct Edge {
    int bucket_a = 0;  // bucket_a < bucket_b
    int bucket_b = 0;
    EdgeKind kind{};
    std::int64_t weight = 0;  // number of shared entities
};

struct LinkageGraph {
    std::vector<BucketNode> nodes;  // sorted by bucket id
    std::vector<Edge> edges;        // at most one per (pair, kind)
};

// Builds the bucket graph: a shared_address edge when two buckets mention a
// common payment address, a shared_cluster edge when their address sets map
// into a common cluster. Unclustered addresses participate only in
// shared_address edges. Weight counts the shared entities.
LinkageGraph build_linkage(const std::vector<BucketNode>& buckets,
                           const std::map<std::string, int>& cluster_of_address);

struct Component {
    std::vector<int> bucket_ids;  // ascending
    std::size_t email_count = 0;
    double email_share = 0.0;    // of all emails across graph nodes
    double address_share = 0.0;  // of all distinct addresses across graph nodes
};

// Connected components over the union of both edge kinds, largest first.
// Isolated nodes appear as singleton components, so email shares sum to 1.
std::vector<Component> components(const LinkageGraph& graph);

void write_edges_csv(const LinkageGraph& graph, std::ostream& out);
void write_components_csv(const std::vector<Component>& comps, std::ostream& out);

// DOT rendering: shared_address edges red, shared_cluster edges black,
// penwidth scaled by weight, nodes labeled with bucket id and campaign.
void write_dot(const LinkageGraph& graph, std::ostream& out);

}  // namespace spamflow::linkage
