#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ultra {

/// Maximum bipartite matching by augmenting paths. `edge(l, r)` is queried
/// lazily. Returns, for each left vertex, its matched right vertex or -1.
std::vector<int> max_bipartite_matching(std::size_t left, std::size_t right,
                                        const std::function<bool(std::size_t, std::size_t)>& edge);

/// True when every left vertex can be matched.
bool saturates_left(std::size_t left, std::size_t right,
                    const std::function<bool(std::size_t, std::size_t)>& edge);

}  // namespace ultra
