#pragma once

#include <cstdint>
#include <vector>

#include "asp/genlaw/law.hpp"

namespace asp::procs {

enum class ProcessKind { asp, liouville };

// n, m, T = |m| and nu of an ASP (m = 1) or a Liouville process.
class ProcessSpec {
public:
    static ProcessSpec asp(int n, genlaw::GeneratingLaw law);
    static ProcessSpec liouville(std::vector<double> activity, genlaw::GeneratingLaw law);

    ProcessKind kind() const { return kind_; }
    int dim() const { return static_cast<int>(m_.size()); }
    const std::vector<double>& activity() const { return m_; }
    double total_activity() const { return T_; }
    const genlaw::GeneratingLaw& law() const { return law_; }

private:
    ProcessSpec(ProcessKind kind, std::vector<double> m, genlaw::GeneratingLaw law);

    ProcessKind kind_;
    std::vector<double> m_;
    double T_;
    genlaw::GeneratingLaw law_;
};

// Strictly increasing times ending at 1. Samplers started at 0 need times[0] = 0;
// conditional samplers accept a later start.
class TimeGrid {
public:
    static constexpr int max_steps = 10000;

    explicit TimeGrid(std::vector<double> times);
    static TimeGrid uniform(int steps);
    // steps equal steps from start to 1
    static TimeGrid uniform(double start, int steps);

    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }
    double operator[](std::size_t k) const { return times_[k]; }
    double start() const { return times_.front(); }

private:
    std::vector<double> times_;
};

// values is row-major [time][dim]; norm[k] is the row sum (exactly R at t = 1
// for the split samplers).
struct MultiPath {
    TimeGrid grid;
    int dim;
    std::vector<double> values;
    std::vector<double> norm;

    double at(std::size_t k, int i) const { return values[k * dim + i]; }
    std::vector<double> row(std::size_t k) const;
};

}  // namespace asp::procs
