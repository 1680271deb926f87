#include "asp/procs/process.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "asp/errors.hpp"

namespace asp::procs {

ProcessSpec::ProcessSpec(ProcessKind kind, std::vector<double> m, genlaw::GeneratingLaw law)
    : kind_(kind), m_(std::move(m)), T_(0.0), law_(std::move(law)) {
    if (m_.size() < 2) throw DomainError("process dimension must be at least 2");
    for (double v : m_)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("activity parameters must be positive");
    T_ = std::accumulate(m_.begin(), m_.end(), 0.0);
}

ProcessSpec ProcessSpec::asp(int n, genlaw::GeneratingLaw law) {
    if (n < 2) throw DomainError("process dimension must be at least 2");
    return ProcessSpec(ProcessKind::asp, std::vector<double>(n, 1.0), std::move(law));
}

ProcessSpec ProcessSpec::liouville(std::vector<double> activity, genlaw::GeneratingLaw law) {
    return ProcessSpec(ProcessKind::liouville, std::move(activity), std::move(law));
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw DomainError("time grid needs at least two points");
    if (times_.size() > static_cast<std::size_t>(max_steps) + 1)
        throw DomainError("time grid has more than 10000 steps");
    if (!(times_.front() >= 0.0 && times_.front() < 1.0)) throw DomainError("time grid must start in [0, 1)");
    if (times_.back() != 1.0) throw DomainError("time grid must end at 1");
    for (std::size_t k = 1; k < times_.size(); ++k)
        if (!(times_[k] > times_[k - 1])) {
            std::ostringstream os;
            os << "time grid is not strictly increasing at index " << k;
            throw DomainError(os.str());
        }
}

TimeGrid TimeGrid::uniform(int steps) { return uniform(0.0, steps); }

TimeGrid TimeGrid::uniform(double start, int steps) {
    if (steps < 1 || steps > max_steps) throw DomainError("steps must lie in [1, 10000]");
    std::vector<double> t(steps + 1);
    for (int k = 0; k <= steps; ++k) t[k] = start + (1.0 - start) * k / steps;
    t.back() = 1.0;
    return TimeGrid(std::move(t));
}

std::vector<double> MultiPath::row(std::size_t k) const {
    return {values.begin() + k * dim, values.begin() + (k + 1) * dim};
}

}  // namespace asp::procs
