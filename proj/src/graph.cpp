#include "dimin/graph.h"

#include <algorithm>
#include <utility>

namespace dimin {

std::vector<std::size_t> strongly_connected(const Adjacency& succ, std::size_t& count) {
    const std::size_t n = succ.size();
    constexpr std::size_t unvisited = ~std::size_t{0};
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<std::size_t> stack;
    std::vector<char>        on_stack(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> call;  // node, next successor position
    std::size_t counter = 0;
    count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos == 0 && index[v] == unvisited) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (pos < succ[v].size()) {
                auto w = succ[v][pos++];
                if (index[w] == unvisited) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            auto done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}


} // namespace dimin
