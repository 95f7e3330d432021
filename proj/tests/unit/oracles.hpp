#pragma once

// Independent test oracles. These deliberately avoid the library's own code
// paths: big-integer base58 via GMP, hashing via OpenSSL, clustering via
// naive merge-to-fixpoint, components via BFS, Welch terms via long double.

#include <gmp.h>
#include <openssl/sha.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "spamflow/chain/chainstore.hpp"
#include "spamflow/cluster/clusterer.hpp"

namespace oracles {

// Base58Check address validation: decode the string as a base-58 big
// integer with GMP, re-serialize to bytes, restore leading-'1' zeros, check
// length 25 and the double-SHA256 checksum via OpenSSL.
inline bool base58check_address_valid(const std::string& s) {
    static const std::string alphabet =
        "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
    mpz_t n;
    mpz_init_set_ui(n, 0);
    for (char c : s) {
        const auto pos = alphabet.find(c);
        if (pos == std::string::npos) {
            mpz_clear(n);
            return false;
        }
        mpz_mul_ui(n, n, 58);
        mpz_add_ui(n, n, static_cast<unsigned long>(pos));
    }
    std::size_t count = 0;
    std::vector<unsigned char> bytes((mpz_sizeinbase(n, 2) + 7) / 8 + 1);
    mpz_export(bytes.data(), &count, 1, 1, 1, 0, n);
    bytes.resize(count);
    mpz_clear(n);

    std::size_t leading_ones = 0;
    while (leading_ones < s.size() && s[leading_ones] == '1') ++leading_ones;
    std::vector<unsigned char> full(leading_ones, 0);
    full.insert(full.end(), bytes.begin(), bytes.end());

    if (full.size() != 25) return false;
    unsigned char d1[SHA256_DIGEST_LENGTH];
    unsigned char d2[SHA256_DIGEST_LENGTH];
    SHA256(full.data(), 21, d1);
    SHA256(d1, SHA256_DIGEST_LENGTH, d2);
    return std::equal(d2, d2 + 4, full.begin() + 21);
}

inline std::string openssl_sha256_hex(const std::string& data) {
    unsigned char d[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), d);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned char b : d) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xf]);
    }
    return out;
}

// Multiple-input clustering by repeated pairwise merging until fixpoint.
inline std::vector<std::vector<std::string>> cluster_fixpoint(
    const std::vector<spamflow::chain::Transaction>& txs, bool exclude_coinjoin,
    const spamflow::cluster::CoinJoinParams& params = {}) {
    std::vector<std::set<std::string>> groups;
    for (const auto& tx : txs) {
        for (const auto& in : tx.inputs) groups.push_back({in.address});
        if (tx.inputs.size() < 2) continue;
        if (exclude_coinjoin && spamflow::cluster::detect_coinjoin(tx, params)) continue;
        std::set<std::string> joint;
        for (const auto& in : tx.inputs) joint.insert(in.address);
        groups.push_back(std::move(joint));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < groups.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < groups.size() && !changed; ++j) {
                const bool overlap =
                    std::any_of(groups[i].begin(), groups[i].end(), [&](const std::string& a) {
                        return groups[j].count(a) > 0;
                    });
                if (overlap) {
                    groups[i].insert(groups[j].begin(), groups[j].end());
                    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
            }
        }
    }
    std::vector<std::vector<std::string>> out;
    for (const auto& g : groups) out.emplace_back(g.begin(), g.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<std::string>> clustering_as_partition(
    const spamflow::cluster::Clustering& clustering) {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : clustering.clusters) out.push_back(c.addresses);
    std::sort(out.begin(), out.end());
    return out;
}

// Connected components by BFS over an adjacency list keyed by node id.
inline std::vector<std::set<int>> bfs_components(const std::vector<int>& nodes,
                                                 const std::vector<std::pair<int, int>>& edges) {
    std::map<int, std::vector<int>> adj;
    for (int n : nodes) adj[n];
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<int> seen;
    std::vector<std::set<int>> comps;
    for (int n : nodes) {
        if (seen.count(n)) continue;
        std::set<int> comp;
        std::queue<int> q;
        q.push(n);
        seen.insert(n);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            comp.insert(v);
            for (int w : adj[v]) {
                if (seen.insert(w).second) q.push(w);
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Welch terms recomputed from scratch in extended precision.
struct WelchTerms {
    long double t;
    long double df;
};

inline WelchTerms welch_terms(const std::vector<double>& a, const std::vector<double>& b) {
    auto moments = [](const std::vector<double>& v) {
        long double mean = 0.0L;
        for (double x : v) mean += x;
        mean /= static_cast<long double>(v.size());
        long double ss = 0.0L;
        for (double x : v) ss += (x - mean) * (x - mean);
        const long double var = ss / static_cast<long double>(v.size() - 1);
        return std::pair<long double, long double>(mean, var);
    };
    const auto [ma, va] = moments(a);
    const auto [mb, vb] = moments(b);
    const long double ra = va / static_cast<long double>(a.size());
    const long double rb = vb / static_cast<long double>(b.size());
    WelchTerms w{};
    w.t = (ma - mb) / std::sqrt(ra + rb);
    w.df = (ra + rb) * (ra + rb) /
           (ra * ra / static_cast<long double>(a.size() - 1) +
            rb * rb / static_cast<long double>(b.size() - 1));
    return w;
}

// Two-sided Student-t p-value by adaptive Simpson quadrature of the density,
// independent of the incomplete-beta route.
inline double student_t_density(double x, double df) {
    const double half = (df + 1.0) / 2.0;
    const double log_c = std::lgamma(half) - std::lgamma(df / 2.0) -
                         0.5 * std::log(df * 3.14159265358979323846);
    return std::exp(log_c - half * std::log1p(x * x / df));
}

inline double simpson(double (*f)(double, double), double df, double a, double b, int steps) {
    const double h = (b - a) / steps;
    double sum = f(a, df) + f(b, df);
    for (int i = 1; i < steps; ++i) {
        sum += f(a + i * h, df) * (i % 2 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

inline double quadrature_two_sided_p(double t, double df) {
    const double at = std::fabs(t);
    // integrate the tail from |t| out to a far bound
    const double far = at + 400.0;
    return 2.0 * simpson(student_t_density, df, at, far, 200000);
}

}  // namespace oracles
