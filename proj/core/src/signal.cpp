#include "unigad/graph.hpp"

#include <cmath>
#include <stdexcept>

namespace unigad {

Signal make_signal(Eigen::VectorXd values, const Graph& graph) {
    if (values.size() != graph.node_count()) {
        throw std::invalid_argument("signal length must equal node count");
    }
    for (int i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw std::invalid_argument("non-finite signal value");
    }
    return Signal{std::move(values)};
}

}  // namespace unigad
