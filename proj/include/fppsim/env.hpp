#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "fppsim/lattice.hpp"
#include "fppsim/rng.hpp"

namespace fpp {

enum class WeightMode {
    IID,       // independent Exp(1) weight per edge of Z^2
    Periodic,  // weights on E(n)^o extended by t_{e+nz} = t_e
    Debug,     // constant weight 1 on every edge
};

std::string to_string(WeightMode mode);
WeightMode weight_mode_from_string(const std::string& s);

/// True when the edge belongs to E(n)^o, the fundamental domain of the
/// period-n environment: edges of E(n) with at least one endpoint in B(n-1).
inline bool in_fundamental_domain(const Edge& e, int n) {
    if (e.u.x < 0 || e.u.y < 0) return false;
    if (e.horizontal()) return e.v.x <= n && e.u.y <= n - 1 && e.u.x <= n - 1;
    return e.v.y <= n && e.u.x <= n - 1 && e.u.y <= n - 1;
}

/// Translate an edge by n*z into the fundamental domain E(n)^o. Identity on
/// E(n)^o itself.
inline Edge reduce_edge(const Edge& e, int n) {
    auto mod = [n](int a) {
        int r = a % n;
        return r < 0 ? r + n : r;
    };
    const int dx = e.v.x - e.u.x;
    const int dy = e.v.y - e.u.y;
    const Vertex u{mod(e.u.x), mod(e.u.y)};
    return Edge{u, Vertex{u.x + dx, u.y + dy}};
}

/// Immutable assignment of strictly positive weights to lattice edges.
///
/// Weights are never stored: each lookup hashes (seed, canonical edge)
/// through a counter-based generator and inverts the Exp(1) CDF, so the
/// environment covers arbitrarily large windows at zero memory cost and is
/// safe for concurrent reads. The periodic mode shares the IID hash on its
/// fundamental domain, which makes couple() exact by construction.
class Environment {
  public:
    Environment(WeightMode mode, int n, std::uint64_t seed) : mode_(mode), n_(n), seed_(seed) {
        if (n <= 0) throw std::invalid_argument("environment size n must be >= 1");
    }

    WeightMode mode() const { return mode_; }
    int period() const { return n_; }
    std::uint64_t seed() const { return seed_; }

    double weight(const Edge& e) const {
        Edge key = (mode_ == WeightMode::Periodic) ? reduce_edge(e, n_) : e;
        if (overrides_) {
            auto it = overrides_->find(key);
            if (it != overrides_->end()) return it->second;
        }
        if (mode_ == WeightMode::Debug) return 1.0;
        return exp_from_bits(edge_bits(key));
    }

    double weight(const Vertex& a, const Vertex& b) const { return weight(Edge{a, b}); }

    /// Copy of this environment with one edge weight replaced. In periodic
    /// mode the override applies to the whole translation class, keeping the
    /// periodicity invariant intact.
    Environment with_weight(const Edge& e, double w) const {
        if (w <= 0.0) throw std::invalid_argument("edge weights must be positive");
        Environment out = *this;
        auto table = overrides_ ? std::make_shared<std::map<Edge, double>>(*overrides_)
                                : std::make_shared<std::map<Edge, double>>();
        (*table)[mode_ == WeightMode::Periodic ? reduce_edge(e, n_) : e] = w;
        out.overrides_ = std::move(table);
        return out;
    }

    std::string descriptor_json() const;
    static Environment from_descriptor_json(const std::string& text);

  private:
    std::uint64_t edge_bits(const Edge& key) const {
        std::uint64_t h = mix64(seed_ ^ 0xA24BAED4963EE407ull);
        h = hash2(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(key.u.x)) << 32 |
                         static_cast<std::uint32_t>(key.u.y));
        h = hash2(h, key.horizontal() ? 0x1ull : 0x2ull);
        return h;
    }

    WeightMode mode_;
    int n_;
    std::uint64_t seed_;
    std::shared_ptr<const std::map<Edge, double>> overrides_;
};

/// IID and periodic environments agreeing edge-for-edge on E(n)^o.
struct CoupledEnvironment {
    Environment iid;
    Environment periodic;
    int n;
};

Environment sample_environment(WeightMode mode, int n, std::uint64_t seed);
CoupledEnvironment couple(int n, std::uint64_t seed);

}  // namespace fpp
