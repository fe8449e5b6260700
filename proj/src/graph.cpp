#include "crn/graph.hpp"

#include <algorithm>
#include <numeric>

#include "crn/exactlin.hpp"

namespace crn {

namespace {

struct TarjanState {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, lowlink, scc_of;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int counter = 0;
    int scc_count = 0;

    explicit TarjanState(const std::vector<std::vector<int>>& a)
        : adj(a),
          index(a.size(), -1),
          lowlink(a.size(), 0),
          scc_of(a.size(), -1),
          on_stack(a.size(), false) {}

    void run(int v) {
        // Iterative Tarjan; recursion depth is harmless at desk scale but
        // the iterative form avoids surprises on adversarial inputs.
        struct Frame {
            int v;
            size_t edge;
        };
        std::vector<Frame> frames{{v, 0}};
        index[static_cast<size_t>(v)] = lowlink[static_cast<size_t>(v)] = counter++;
        stack.push_back(v);
        on_stack[static_cast<size_t>(v)] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[static_cast<size_t>(f.v)].size()) {
                int w = adj[static_cast<size_t>(f.v)][f.edge++];
                if (index[static_cast<size_t>(w)] < 0) {
                    index[static_cast<size_t>(w)] = lowlink[static_cast<size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    lowlink[static_cast<size_t>(f.v)] =
                        std::min(lowlink[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
                }
            } else {
                if (lowlink[static_cast<size_t>(f.v)] == index[static_cast<size_t>(f.v)]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = false;
                        scc_of[static_cast<size_t>(w)] = scc_count;
                        if (w == f.v) break;
                    }
                    ++scc_count;
                }
                int child = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    int parent = frames.back().v;
                    lowlink[static_cast<size_t>(parent)] = std::min(
                        lowlink[static_cast<size_t>(parent)], lowlink[static_cast<size_t>(child)]);
                }
            }
        }
    }
};

int find_root(std::vector<int>& parent, int x) {
    while (parent[static_cast<size_t>(x)] != x) {
        parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        x = parent[static_cast<size_t>(x)];
    }
    return x;
}

}  // namespace

StructureSummary structure(const ReactionNetwork& net) {
    const Index n = net.species_count();
    const Index d = net.complex_count();
    const Index m = net.reaction_count();
    const int dc = static_cast<int>(d);

    StructureSummary out;
    out.n = n;
    out.m = m;
    out.d = d;

    const auto mats = build_matrices(net);
    out.d_star = mats.reactant_count;
    out.rank_N = rank(to_rational(mats.N));
    out.codimension = n - out.rank_N;

    std::vector<std::vector<int>> adj(static_cast<size_t>(d));
    std::vector<int> parent(static_cast<size_t>(d));
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& r : net.reactions()) {
        adj[static_cast<size_t>(r.reactant)].push_back(r.product);
        int a = find_root(parent, r.reactant);
        int b = find_root(parent, r.product);
        if (a != b) parent[static_cast<size_t>(a)] = b;
    }

    // Connected components (isolated complexes count).
    std::vector<int> comp_root(static_cast<size_t>(d));
    for (int v = 0; v < dc; ++v) comp_root[static_cast<size_t>(v)] = find_root(parent, v);
    std::vector<int> root_to_comp(static_cast<size_t>(d), -1);
    out.component_of.assign(static_cast<size_t>(d), -1);
    for (int v = 0; v < dc; ++v) {
        int root = comp_root[static_cast<size_t>(v)];
        if (root_to_comp[static_cast<size_t>(root)] < 0) {
            root_to_comp[static_cast<size_t>(root)] = out.components++;
            out.component_members.emplace_back();
        }
        int c = root_to_comp[static_cast<size_t>(root)];
        out.component_of[static_cast<size_t>(v)] = c;
        out.component_members[static_cast<size_t>(c)].push_back(v);
    }

    // Strongly connected components and their terminality.
    TarjanState tarjan(adj);
    for (int v = 0; v < dc; ++v)
        if (tarjan.index[static_cast<size_t>(v)] < 0) tarjan.run(v);
    std::vector<bool> terminal(static_cast<size_t>(tarjan.scc_count), true);
    for (int v = 0; v < dc; ++v)
        for (int w : adj[static_cast<size_t>(v)])
            if (tarjan.scc_of[static_cast<size_t>(v)] != tarjan.scc_of[static_cast<size_t>(w)])
                terminal[static_cast<size_t>(tarjan.scc_of[static_cast<size_t>(v)])] = false;

    std::vector<std::vector<int>> scc_members(static_cast<size_t>(tarjan.scc_count));
    for (int v = 0; v < dc; ++v)
        scc_members[static_cast<size_t>(tarjan.scc_of[static_cast<size_t>(v)])].push_back(v);

    std::vector<int> terminal_per_comp(static_cast<size_t>(out.components), 0);
    for (int s = 0; s < tarjan.scc_count; ++s) {
        if (!terminal[static_cast<size_t>(s)]) continue;
        ++out.terminal_sccs;
        out.terminal_members.push_back(scc_members[static_cast<size_t>(s)]);
        int comp = out.component_of[static_cast<size_t>(scc_members[static_cast<size_t>(s)][0])];
        ++terminal_per_comp[static_cast<size_t>(comp)];
    }
    auto by_first = [](const std::vector<int>& a, const std::vector<int>& b) {
        return a.front() < b.front();
    };
    for (auto& v : out.terminal_members) std::sort(v.begin(), v.end());
    std::sort(out.terminal_members.begin(), out.terminal_members.end(), by_first);

    out.one_terminal_per_component =
        std::all_of(terminal_per_comp.begin(), terminal_per_comp.end(),
                    [](int t) { return t == 1; });

    // Weak reversibility: every SCC terminal and one per component.
    out.weakly_reversible =
        (tarjan.scc_count == out.components) &&
        std::all_of(terminal.begin(), terminal.end(), [](bool t) { return t; });

    out.deficiency = d - out.rank_N - out.components;

    const int zero = net.zero_complex();
    out.zero_complex_present = zero >= 0;
    if (zero >= 0)
        out.zero_in_terminal = terminal[static_cast<size_t>(tarjan.scc_of[static_cast<size_t>(zero)])];

    return out;
}

ReactionNetwork subnetwork(const ReactionNetwork& net, const RateAssignment& k) {
    return subnetwork(net, k.support_mask());
}

ReactionNetwork subnetwork(const ReactionNetwork& net, const std::vector<bool>& keep) {
    if (keep.size() != static_cast<size_t>(net.reaction_count()))
        throw NetworkError("subnetwork: support mask length mismatch");
    std::vector<Reaction> reactions;
    std::map<std::string, Rational> rates;
    for (size_t j = 0; j < keep.size(); ++j) {
        if (!keep[j]) continue;
        const Reaction& r = net.reactions()[j];
        reactions.push_back(r);
        auto it = net.rate_values().find(r.label);
        if (it != net.rate_values().end()) rates.emplace(*it);
    }
    return ReactionNetwork(net.species(), net.complexes(), std::move(reactions), std::move(rates),
                           net.name());
}

}  // namespace crn
