#include "tradenet/scc.hpp"

#include <algorithm>

namespace tradenet {

namespace {

// Iterative Tarjan; recursion depth would otherwise scale with n.
struct TarjanState {
    const Matrix& a;
    std::size_t n;
    std::vector<std::size_t> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<std::size_t> stack;
    std::size_t next_index = 0;
    std::vector<std::vector<std::size_t>> components;

    static constexpr std::size_t unvisited = static_cast<std::size_t>(-1);

    explicit TarjanState(const Matrix& m)
        : a(m), n(m.size()), index(n, unvisited), lowlink(n, 0), on_stack(n, false) {}

    void run(std::size_t root) {
        struct Frame {
            std::size_t v;
            std::size_t next_edge;
        };
        std::vector<Frame> frames;
        frames.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!frames.empty()) {
            Frame& f = frames.back();
            bool descended = false;
            while (f.next_edge < n) {
                std::size_t w = f.next_edge++;
                if (a(f.v, w) <= 0.0 || w == f.v) continue;
                if (index[w] == unvisited) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[f.v] = std::min(lowlink[f.v], index[w]);
            }
            if (descended) continue;

            if (lowlink[f.v] == index[f.v]) {
                std::vector<std::size_t> component;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != f.v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
            std::size_t v = f.v;
            frames.pop_back();
            if (!frames.empty())
                lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        }
    }
};

} // namespace

std::vector<std::vector<std::size_t>> strongly_connected_components(const Matrix& a) {
    TarjanState state(a);
    for (std::size_t v = 0; v < state.n; ++v)
        if (state.index[v] == TarjanState::unvisited) state.run(v);
    std::sort(state.components.begin(), state.components.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return state.components;
}

bool is_strongly_connected(const Matrix& a) {
    if (a.size() == 0) return false;
    return strongly_connected_components(a).size() == 1;
}

std::vector<std::size_t> smallest_component(const Matrix& a) {
    auto components = strongly_connected_components(a);
    if (components.empty()) return {};
    auto best = components.begin();
    for (auto it = components.begin(); it != components.end(); ++it) {
        if (it->size() < best->size() ||
            (it->size() == best->size() && it->front() < best->front()))
            best = it;
    }
    return *best;
}

} // namespace tradenet
